//! Orders on (exponent, component) pairs.
//!
//! Every order is a cascade of integer weight rows (each with optional
//! per-component shifts), an optional position comparison, and a final
//! graded-reverse-lexicographic or lexicographic tie-break. Schreyer orders
//! instead compare `lexp(P_mu) + alpha` under a base order and break ties by
//! the component index.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{DmodError, Result};
use crate::mono::{self, Mono};
use crate::operator::{ShiftVector, WeightVector};
use crate::ring::{Extension, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    BaseMonomial,
    FOrder,
    HOrder,
    MhOrder,
    HDegOrder,
    Schreyer,
    Weighted,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightRow {
    pub weights: Vec<i64>,
    pub shifts: Vec<i64>,
    /// Rows that only measure the homogenizing variable or total degree; they
    /// are skipped when comparing in the dehomogenized sense.
    pub homogenizing: bool,
}

impl WeightRow {
    #[inline]
    fn eval(&self, m: &[u16], comp: usize) -> i64 {
        let s: i64 = self.weights.iter().zip(m).map(|(w, &e)| w * e as i64).sum();
        s + self.shifts.get(comp).copied().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tie {
    Grevlex,
    Lex,
}

/// Where the component index enters the comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    /// After the weight rows and before the tie-break; a larger index is larger.
    Pot,
    /// After the tie-break; a larger index is larger.
    Top,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchreyerFrame {
    pub base: OrderSpec,
    /// Leading (exponent, component) of each previous-level basis element.
    pub leads: Vec<(Mono, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderSpec {
    pub kind: OrderKind,
    pub nvars: usize,
    pub rank: usize,
    pub rows: Vec<WeightRow>,
    pub position: Position,
    pub tie: Tie,
    pub schreyer: Option<Arc<SchreyerFrame>>,
    /// Slot of `t0`/`h`; graded reverse lex treats it as the last variable.
    pub lambda: Option<usize>,
}

fn extend_weight(ring: &RingSpec, w: &WeightVector) -> Vec<i64> {
    let mut v = w.0.clone();
    v.resize(ring.nvars(), 0);
    v
}

impl OrderSpec {
    /// Graded reverse lexicographic order, position first.
    pub fn grevlex(ring: &RingSpec, rank: usize) -> OrderSpec {
        OrderSpec {
            kind: OrderKind::BaseMonomial,
            nvars: ring.nvars(),
            rank,
            rows: Vec::new(),
            position: Position::Pot,
            tie: Tie::Grevlex,
            schreyer: None,
            lambda: ring.lambda(),
        }
    }

    pub fn lex(ring: &RingSpec, rank: usize) -> OrderSpec {
        OrderSpec { tie: Tie::Lex, ..OrderSpec::grevlex(ring, rank) }
    }

    /// Weight rows over the plain exponent slots, followed by `tie`.
    pub fn weighted(
        ring: &RingSpec,
        rank: usize,
        rows: Vec<Vec<i64>>,
        position: Position,
        tie: Tie,
    ) -> Result<OrderSpec> {
        let mut out = Vec::new();
        for r in rows {
            if r.len() > ring.nvars() {
                return Err(DmodError::Dimension(format!(
                    "weight row of length {} for {} slots",
                    r.len(),
                    ring.nvars()
                )));
            }
            let mut r = r;
            r.resize(ring.nvars(), 0);
            out.push(WeightRow { weights: r, shifts: Vec::new(), homogenizing: false });
        }
        Ok(OrderSpec {
            kind: OrderKind::Weighted,
            nvars: ring.nvars(),
            rank,
            rows: out,
            position,
            tie,
            schreyer: None,
            lambda: ring.lambda(),
        })
    }

    /// The order `<_F`: `<w,.> + m_i` first, then position, then grevlex.
    /// Not a well-order in general.
    pub fn f_order(ring: &RingSpec, w: &WeightVector, m: &ShiftVector) -> Result<OrderSpec> {
        w.validate(ring)?;
        check_shift(m, m.len())?;
        let rank = m.len();
        Ok(OrderSpec {
            kind: OrderKind::FOrder,
            nvars: ring.nvars(),
            rank,
            rows: vec![WeightRow { weights: extend_weight(ring, w), shifts: m.0.clone(), homogenizing: false }],
            position: Position::Pot,
            tie: Tie::Grevlex,
            schreyer: None,
            lambda: ring.lambda(),
        })
    }

    /// The order `<_H` on `A[t0]^r`: the power of `t0` first, then position,
    /// then grevlex.
    pub fn h_order_t0(ring: &RingSpec, rank: usize) -> Result<OrderSpec> {
        let l = ring
            .lambda()
            .filter(|_| ring.extension == Extension::T0)
            .ok_or_else(|| DmodError::InvalidOrder("H-order needs the t0 extension".into()))?;
        let mut w = vec![0; ring.nvars()];
        w[l] = 1;
        Ok(OrderSpec {
            kind: OrderKind::HOrder,
            nvars: ring.nvars(),
            rank,
            rows: vec![WeightRow { weights: w, shifts: Vec::new(), homogenizing: true }],
            position: Position::Pot,
            tie: Tie::Grevlex,
            schreyer: None,
            lambda: ring.lambda(),
        })
    }

    /// The order `<_{h[n]}` on `A^(h)`: total degree with shift `n`, then
    /// `<w,.> + m_i`, then position, then grevlex (where `h` is compared last,
    /// which makes `h^2 < x_j dx_j`).
    pub fn h_deg_order(ring: &RingSpec, w: &WeightVector, m: &ShiftVector, n: &ShiftVector) -> Result<OrderSpec> {
        if ring.extension != Extension::H {
            return Err(DmodError::InvalidOrder("h[n]-order needs the h extension".into()));
        }
        w.validate(ring)?;
        check_shift(n, m.len())?;
        let mut deg = vec![0; ring.nvars()];
        for x in deg.iter_mut().take(2 * ring.pairs() + 1) {
            *x = 1;
        }
        Ok(OrderSpec {
            kind: OrderKind::HDegOrder,
            nvars: ring.nvars(),
            rank: m.len(),
            rows: vec![
                WeightRow { weights: deg, shifts: n.0.clone(), homogenizing: true },
                WeightRow { weights: extend_weight(ring, w), shifts: m.0.clone(), homogenizing: false },
            ],
            position: Position::Pot,
            tie: Tie::Grevlex,
            schreyer: None,
            lambda: ring.lambda(),
        })
    }

    /// The order `<_mh` on `A[v, w]`: total degree in the parameters first.
    pub fn mh_order(ring: &RingSpec, rank: usize) -> OrderSpec {
        let mut w = vec![0; ring.nvars()];
        for j in 0..ring.params.len() {
            w[ring.param(j)] = 1;
        }
        OrderSpec {
            kind: OrderKind::MhOrder,
            nvars: ring.nvars(),
            rank,
            rows: vec![WeightRow { weights: w, shifts: Vec::new(), homogenizing: false }],
            position: Position::Pot,
            tie: Tie::Grevlex,
            schreyer: None,
            lambda: ring.lambda(),
        }
    }

    /// Block order eliminating the given slots: their total degree first.
    pub fn elimination(ring: &RingSpec, rank: usize, slots: &[usize]) -> OrderSpec {
        let mut w = vec![0; ring.nvars()];
        for &s in slots {
            w[s] = 1;
        }
        OrderSpec {
            kind: OrderKind::Weighted,
            nvars: ring.nvars(),
            rank,
            rows: vec![WeightRow { weights: w, shifts: Vec::new(), homogenizing: false }],
            position: Position::Pot,
            tie: Tie::Grevlex,
            schreyer: None,
            lambda: ring.lambda(),
        }
    }

    /// Prepends a homogenizing total-degree row (all Weyl slots and `h`,
    /// parameters included) to an order on the dehomogenized ring, giving an
    /// order on the `h`-homogenized ring.
    pub fn homogenized(&self, hring: &RingSpec) -> OrderSpec {
        assert_eq!(hring.extension, Extension::H);
        let l = hring.lambda().unwrap();
        let lift = |w: &Vec<i64>| {
            let mut v = w.clone();
            v.insert(l, 0);
            v
        };
        let mut rows = vec![WeightRow { weights: vec![1; hring.nvars()], shifts: Vec::new(), homogenizing: true }];
        rows.extend(self.rows.iter().map(|r| WeightRow {
            weights: lift(&r.weights),
            shifts: r.shifts.clone(),
            homogenizing: r.homogenizing,
        }));
        OrderSpec { nvars: hring.nvars(), rows, schreyer: None, lambda: Some(l), ..self.clone() }
    }

    /// The Schreyer order induced by `base` and the given leading exponents.
    pub fn schreyer(base: &OrderSpec, leads: Vec<(Mono, usize)>) -> OrderSpec {
        OrderSpec {
            kind: OrderKind::Schreyer,
            nvars: base.nvars,
            rank: leads.len(),
            rows: Vec::new(),
            position: Position::Pot,
            tie: base.tie,
            schreyer: Some(Arc::new(SchreyerFrame { base: base.clone(), leads })),
            lambda: base.lambda,
        }
    }

    /// Whether no infinite strictly decreasing sequence exists.
    pub fn is_well_order(&self) -> bool {
        if let Some(s) = &self.schreyer {
            return s.base.is_well_order();
        }
        for r in &self.rows {
            if r.weights.iter().all(|&w| w > 0) {
                return true;
            }
            if r.weights.iter().any(|&w| w < 0) {
                return false;
            }
        }
        true
    }

    #[inline]
    pub fn compare(&self, a: (&[u16], usize), b: (&[u16], usize)) -> Ordering {
        self.compare_inner(a, b, false)
    }

    /// Comparison with homogenizing rows skipped.
    pub fn compare_dehomogenized(&self, a: (&[u16], usize), b: (&[u16], usize)) -> Ordering {
        self.compare_inner(a, b, true)
    }

    fn compare_inner(&self, a: (&[u16], usize), b: (&[u16], usize), skip_h: bool) -> Ordering {
        if let Some(s) = &self.schreyer {
            let (la, lb) = (&s.leads[a.1], &s.leads[b.1]);
            let ea = mono::add(&la.0, a.0);
            let eb = mono::add(&lb.0, b.0);
            return match s.base.compare_inner((&ea, la.1), (&eb, lb.1), skip_h) {
                Ordering::Equal => b.1.cmp(&a.1),
                o => o,
            };
        }
        for r in &self.rows {
            if skip_h && r.homogenizing {
                continue;
            }
            let o = r.eval(a.0, a.1).cmp(&r.eval(b.0, b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        if self.position == Position::Pot && a.1 != b.1 {
            return a.1.cmp(&b.1);
        }
        let o = match self.tie {
            Tie::Grevlex => grevlex_with(a.0, b.0, self.lambda),
            Tie::Lex => lex_with(a.0, b.0, self.lambda),
        };
        if o != Ordering::Equal {
            return o;
        }
        a.1.cmp(&b.1)
    }

    /// Leading (largest) term key among `keys`.
    pub fn max_of<'a, I>(&self, keys: I) -> Option<(&'a Mono, usize)>
    where
        I: IntoIterator<Item = (&'a Mono, usize)>,
    {
        keys.into_iter().fold(None, |best, k| match best {
            None => Some(k),
            Some(b) => {
                if self.compare((k.0, k.1), (b.0, b.1)) == Ordering::Greater {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        })
    }
}

fn check_shift(m: &ShiftVector, r: usize) -> Result<()> {
    if m.len() != r {
        return Err(DmodError::Dimension(format!("shift vector of length {} for rank {r}", m.len())));
    }
    Ok(())
}

#[inline]
pub fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    grevlex_with(a, b, None)
}

/// Graded reverse lex where `last` (if any) is treated as the last variable.
#[inline]
pub fn grevlex_with(a: &[u16], b: &[u16], last: Option<usize>) -> Ordering {
    let o = mono::degree(a).cmp(&mono::degree(b));
    if o != Ordering::Equal {
        return o;
    }
    if let Some(l) = last {
        if a[l] != b[l] {
            return b[l].cmp(&a[l]);
        }
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

/// Lexicographic with slot 0 most significant; `last` (if any) is compared
/// after every other slot.
#[inline]
pub fn lex_with(a: &[u16], b: &[u16], last: Option<usize>) -> Ordering {
    for i in 0..a.len() {
        if Some(i) != last && a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    match last {
        Some(l) => a[l].cmp(&b[l]),
        None => Ordering::Equal,
    }
}

/// Result of [`validate_adapted`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adaptedness {
    pub adapted: bool,
    pub witness: Option<String>,
}

/// Checks that `ord` (in the dehomogenized sense) is adapted to `F_w[m]`:
/// its first non-homogenizing key is `<w,.> + m_i`, and `e_i < x_j dx_j e_i`.
pub fn validate_adapted(ring: &RingSpec, ord: &OrderSpec, w: &WeightVector, m: &ShiftVector) -> Adaptedness {
    let nv = ring.nvars();
    let p = ring.pairs();
    let full_w = extend_weight(ring, w);
    let rank = ord.rank.max(1);
    let structural = match &ord.schreyer {
        Some(_) => true,
        None => ord.rows.iter().find(|r| !r.homogenizing).is_some_and(|r| {
            r.weights == full_w && (0..rank).all(|i| r.shifts.get(i).copied().unwrap_or(0) == m.get(i))
        }),
    };
    if !structural {
        // Look for an explicit violation among low-degree monomials.
        let mut monos: Vec<Mono> = vec![mono::zero_mono(nv)];
        for i in 0..2 * p {
            monos.push(mono::unit_mono(nv, i));
        }
        for a in &monos {
            for b in &monos {
                for i in 0..rank {
                    for j in 0..rank {
                        let wa = w.eval(a) + m.get(i);
                        let wb = w.eval(b) + m.get(j);
                        if wa < wb && ord.compare_dehomogenized((a, i), (b, j)) != Ordering::Less {
                            let names = ring.var_names();
                            return Adaptedness {
                                adapted: false,
                                witness: Some(format!(
                                    "({}, e{}) has smaller weight than ({}, e{}) but is not smaller",
                                    mono_name(&names, a),
                                    i + 1,
                                    mono_name(&names, b),
                                    j + 1
                                )),
                            };
                        }
                    }
                }
            }
        }
        return Adaptedness { adapted: false, witness: Some("first non-homogenizing key is not <w,.> + m".into()) };
    }
    for i in 0..rank {
        for j in 0..p {
            let mut xd = mono::zero_mono(nv);
            xd[j] = 1;
            xd[p + j] = 1;
            let one = mono::zero_mono(nv);
            if ord.compare_dehomogenized((&one, i), (&xd, i)) != Ordering::Less {
                let names = ring.var_names();
                return Adaptedness {
                    adapted: false,
                    witness: Some(format!("e{} is not smaller than {}*e{}", i + 1, mono_name(&names, &xd), i + 1)),
                };
            }
        }
    }
    Adaptedness { adapted: true, witness: None }
}

fn mono_name(names: &[String], m: &[u16]) -> String {
    let f: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
        .collect();
    if f.is_empty() {
        "1".into()
    } else {
        f.join("*")
    }
}
