//! Global b-functions along `t_1 = ... = t_d = 0`.
//!
//! The pipeline takes an F[m]-Gröbner basis for the V-filtration, splits the
//! graded module into cyclic pieces, intersects each piece with the subring
//! generated by `t_i dt_i` through multi-homogenization, eliminates `dx` and
//! finally contracts to `Q[theta]` with `theta = s_1 + ... + s_d`.

use std::fmt;

use rayon::prelude::*;

use crate::coef::Coef;
use crate::error::{DmodError, Result};
use crate::groebner::engine;
use crate::groebner::poly::Poly;
use crate::groebner::{buchberger, f_groebner, lead_of, Flavor, GroebnerBasis, Route};
use crate::mono;
use crate::operator::{mh_ring, Operator, ShiftVector, WeightVector};
use crate::order::{OrderKind, OrderSpec, Position, Tie};
use crate::ring::{Extension, Ring, RingSpec};
use crate::upoly::{self, UPoly};

/// A monic polynomial in `theta`, or zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BPoly {
    /// Ascending coefficients; empty for the zero polynomial.
    pub coeffs: Vec<Coef>,
}

impl BPoly {
    pub fn from_coeffs(coeffs: Vec<Coef>) -> BPoly {
        BPoly { coeffs: upoly::monic(coeffs) }
    }

    pub fn zero() -> BPoly {
        BPoly { coeffs: Vec::new() }
    }

    pub fn one() -> BPoly {
        BPoly { coeffs: vec![Coef::one()] }
    }

    /// `prod (theta - r)` over the given roots.
    pub fn from_roots(roots: &[Coef]) -> BPoly {
        let mut p = vec![Coef::one()];
        for r in roots {
            p = upoly::mul(&p, &[-r, Coef::one()]);
        }
        BPoly { coeffs: p }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        upoly::degree(&self.coeffs)
    }

    pub fn eval(&self, x: &Coef) -> Coef {
        upoly::eval(&self.coeffs, x)
    }

    /// Distinct integer zeros in increasing order.
    pub fn integer_roots(&self) -> Vec<i64> {
        upoly::integer_roots(&self.coeffs)
    }

    /// Minimum and maximum integer root.
    pub fn k0_k1(&self) -> Option<(i64, i64)> {
        let r = self.integer_roots();
        Some((*r.first()?, *r.last()?))
    }

    /// Distinct rational zeros with multiplicity.
    pub fn rational_roots(&self) -> Vec<(Coef, usize)> {
        upoly::rational_roots(&self.coeffs)
    }

    /// `b(theta - c)`: every root moves by `+c`.
    pub fn translate(&self, c: &Coef) -> BPoly {
        BPoly::from_coeffs(upoly::compose_linear(&self.coeffs, &Coef::one(), &-c))
    }

    /// `b(-s - 1)`, made monic.
    pub fn reflect(&self) -> BPoly {
        BPoly::from_coeffs(upoly::compose_linear(&self.coeffs, &Coef::from_int(-1), &Coef::from_int(-1)))
    }

    pub fn lcm(&self, other: &BPoly) -> BPoly {
        BPoly { coeffs: upoly::lcm(&self.coeffs, &other.coeffs) }
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &BPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        upoly::divrem(&other.coeffs, &self.coeffs).1.is_empty()
    }

    pub fn render(&self, var: &str) -> String {
        upoly::render(&self.coeffs, var)
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("theta"))
    }
}

/// Sorted integer roots and `(k0, k1)`.
#[allow(clippy::type_complexity)]
pub fn integer_roots(b: &BPoly) -> Result<(Vec<i64>, Option<(i64, i64)>)> {
    if b.is_zero() {
        return Err(DmodError::NotSpecializable);
    }
    let r = b.integer_roots();
    let k = r.first().map(|&a| (a, *r.last().unwrap()));
    Ok((r, k))
}

/// V-weight and shift read off an F-order.
fn f_data(g: &GroebnerBasis) -> Result<(WeightVector, ShiftVector)> {
    if g.order.kind != OrderKind::FOrder || g.flavor != Flavor::F || g.order.position != Position::Pot {
        return Err(DmodError::InvalidOrder("expected an F-flavored basis with position after the weight".into()));
    }
    let p = g.ring.pairs();
    let row = &g.order.rows[0];
    Ok((WeightVector(row.weights[..2 * p].to_vec()), ShiftVector(row.shifts.clone())))
}

/// Generators of the successive quotients of the graded submodule, one
/// rank-1 set per component.
pub fn gr_components(g: &GroebnerBasis) -> Result<Vec<Vec<Operator>>> {
    let (w, m) = f_data(g)?;
    let mut out = vec![Vec::new(); g.rank];
    for e in &g.elements {
        let Some(k) = e.order_of(&w, &m) else { continue };
        let sigma = e.filter(|c, x| w.eval(x) + m.get(c) == k);
        let i = sigma.max_component().unwrap();
        out[i].push(sigma.component(i));
    }
    Ok(out)
}

/// `A_n[s_1..s_d]` for a ring `A_{d+n}`.
pub fn s_ring(ring: &RingSpec) -> Ring {
    let names = ring.pos_names[ring.d..].to_vec();
    let params = (1..=ring.d).map(|i| format!("s{i}")).collect();
    RingSpec::new(0, ring.n, Extension::None).with_names(names).with_params(params).into_ring()
}

/// `K[x, theta]`, realized as `A_n[theta]`.
pub fn theta_ring(ring: &RingSpec) -> Ring {
    let names = ring.pos_names[ring.d..].to_vec();
    RingSpec::new(0, ring.n, Extension::None).with_names(names).with_params(vec!["theta".into()]).into_ring()
}

/// `prod_{i in lo..hi} (s + i)` as an operator.
fn shifted_product(ring: &Ring, slot: usize, lo: i64, hi: i64) -> Operator {
    let s = Operator::var(ring, slot);
    let mut acc = Operator::one(ring);
    for i in lo..hi {
        acc = acc.mul(&s.add(&Operator::constant(ring, Coef::from_int(i))));
    }
    acc
}

/// The map `psi`: a multi-homogeneous `P` of `A_{d+n}` is multiplied on the
/// left by `t^k` or `dt^k` so that it becomes a polynomial in `t_i dt_i`,
/// which is then written with `s_i` in place of `t_i dt_i`.
pub fn psi(p: &Operator, target: &Ring) -> Result<Operator> {
    let ring = &p.ring;
    let (d, np) = (ring.d, ring.pairs());
    let mut out = Operator::zero(target, 1);
    let Some(((_, first), _)) = p.terms.iter().next() else { return Ok(out) };
    let k: Vec<i64> = (0..d).map(|j| first[np + j] as i64 - first[j] as i64).collect();
    for ((_, e), c) in &p.terms {
        let mut mnm = mono::zero_mono(target.nvars());
        for i in 0..ring.n {
            mnm[i] = e[d + i];
            mnm[ring.n + i] = e[np + d + i];
        }
        let mut acc = Operator::monomial(target, 1, 0, mnm, c.clone());
        for j in 0..d {
            let (mu, nu) = (e[j] as i64, e[np + j] as i64);
            if nu - mu != k[j] {
                return Err(DmodError::Precondition("psi needs a multi-homogeneous operator".into()));
            }
            let slot = target.param(j);
            // t^nu dt^nu = s (s - 1) ... (s - nu + 1)
            acc = acc.mul(&shifted_product(target, slot, -nu + 1, 1));
            if k[j] < 0 {
                // dt^a t^a = (s + 1) ... (s + a)
                acc = acc.mul(&shifted_product(target, slot, 1, -k[j] + 1));
            }
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Generators of `I ∩ D_Y[t_1 dt_1, ..., t_d dt_d]` for the ideal `I`
/// generated by `gi`, written in `A_n[s]`.
pub fn theta_subring_generators(gi: &[Operator]) -> Result<Vec<Operator>> {
    let Some(first) = gi.first() else { return Ok(Vec::new()) };
    let ring = first.ring.clone();
    if ring.d == 0 {
        return Err(DmodError::Precondition("b-functions need at least one t variable".into()));
    }
    let target = s_ring(&ring);
    let mh = mh_ring(&ring);
    let mut gens = Vec::with_capacity(gi.len() + ring.d);
    for p in gi {
        if p.rank != 1 {
            return Err(DmodError::Dimension("rank-1 generators expected".into()));
        }
        if !p.is_zero() {
            gens.push(p.multi_homogenize()?);
        }
    }
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    for j in 0..ring.d {
        let vw = Operator::var(&mh, mh.param(j)).mul(&Operator::var(&mh, mh.param(ring.d + j)));
        gens.push(Operator::one(&mh).sub(&vw));
    }
    let g1 = buchberger(&gens, &OrderSpec::mh_order(&mh, 1))?;
    let params: Vec<usize> = (0..2 * ring.d).map(|j| mh.param(j)).collect();
    let map: Vec<usize> = (0..mh.nvars()).map(|i| i.min(ring.nvars() - 1)).collect();
    g1.elements.iter().filter(|p| !p.involves(&params)).map(|p| psi(&p.remap(&ring, &map), &target)).collect()
}

/// `<g2> ∩ K[x, theta]` with `theta = s_1 + ... + s_d`, as operators of
/// [`theta_ring`].
pub fn eliminate_to_theta(g2: &[Operator]) -> Result<Vec<Operator>> {
    let Some(first) = g2.first() else { return Ok(Vec::new()) };
    let sring = first.ring.clone();
    let (n, d) = (sring.n, sring.params.len());
    let mut params = vec!["theta".to_string()];
    params.extend((2..=d).map(|j| format!("s{j}")));
    let names = sring.pos_names.clone();
    let ering = RingSpec::new(0, n, Extension::None).with_names(names.clone()).with_params(params).into_ring();
    let theta = ering.param(0);
    let mut images: Vec<Operator> = (0..2 * n).map(|i| Operator::var(&ering, i)).collect();
    let mut s1 = Operator::var(&ering, theta);
    for j in 1..d {
        s1 = s1.sub(&Operator::var(&ering, ering.param(j)));
    }
    images.push(s1);
    images.extend((1..d).map(|j| Operator::var(&ering, ering.param(j))));
    let gens: Vec<Operator> = g2.iter().map(|p| p.substitute(&ering, &images)).collect();

    let nv = ering.nvars();
    let mut heavy = vec![0; nv];
    heavy[n..2 * n].fill(1);
    for j in 1..d {
        heavy[ering.param(j)] = 1;
    }
    let mut xs = vec![0; nv];
    for x in xs.iter_mut().take(n) {
        *x = 1;
    }
    let ord = OrderSpec::weighted(&ering, 1, vec![heavy.clone(), xs], Position::Pot, Tie::Grevlex)?;
    let g = buchberger(&gens, &ord)?;
    let tring = RingSpec::new(0, n, Extension::None).with_names(names).with_params(vec!["theta".into()]).into_ring();
    let map: Vec<usize> = (0..nv).map(|i| i.min(tring.nvars() - 1)).collect();
    Ok(g.elements
        .iter()
        .filter(|e| {
            let (lm, _) = lead_of(e, &ord);
            heavy.iter().zip(lm.iter()).all(|(&h, &x)| h == 0 || x == 0)
        })
        .map(|e| e.remap(&tring, &map))
        .collect())
}

/// Monic generator of `J ∩ K[theta]` (zero when the contraction is zero).
pub fn contract_to_theta(j: &[Operator]) -> Result<BPoly> {
    let Some(first) = j.first() else { return Ok(BPoly::zero()) };
    let ring = first.ring.clone();
    let nv = ring.nvars();
    let theta = ring.param(0);
    let mut xs = vec![1; nv];
    xs[theta] = 0;
    let ord = OrderSpec::weighted(&ring, 1, vec![xs], Position::Pot, Tie::Grevlex)?;
    let g = buchberger(j, &ord)?;
    let mut acc: UPoly = Vec::new();
    for e in &g.elements {
        if e.terms.keys().all(|(_, m)| m.iter().enumerate().all(|(i, &x)| i == theta || x == 0)) {
            let mut p = vec![Coef::zero(); 1 + e.terms.keys().map(|(_, m)| m[theta] as usize).max().unwrap_or(0)];
            for ((_, m), c) in &e.terms {
                p[m[theta] as usize] = c.clone();
            }
            acc = upoly::gcd(&acc, &p);
        }
    }
    Ok(BPoly::from_coeffs(acc))
}

/// Generator of `∩ (J_i ∩ K[theta])`.
pub fn global_b(js: &[Vec<Operator>]) -> Result<BPoly> {
    let mut b = BPoly::one();
    for j in js {
        b = b.lcm(&contract_to_theta(j)?);
    }
    Ok(b)
}

/// Output of the full b-function pipeline.
#[derive(Clone, Debug)]
pub struct BFunction {
    pub b: BPoly,
    /// `J_i ⊂ K[x, theta]` per component.
    pub components: Vec<Vec<Operator>>,
    /// Contraction of each `J_i`, before shifting by `m_i`.
    pub contractions: Vec<BPoly>,
    pub basis: GroebnerBasis,
    pub shift: ShiftVector,
}

impl BFunction {
    pub fn is_specializable(&self) -> bool {
        !self.b.is_zero()
    }
}

/// The global b-function of `A^r / N` along `t = 0` with shift `m`.
pub fn b_function(gens: &[Operator], m: &ShiftVector, route: Route) -> Result<BFunction> {
    let first = gens.first().ok_or_else(|| DmodError::Precondition("at least one generator".into()))?;
    let ring = first.ring.clone();
    if ring.d == 0 {
        return Err(DmodError::Precondition("b-functions need at least one t variable".into()));
    }
    let w = WeightVector::v_weight(ring.d, ring.n);
    let basis = f_groebner(gens, &w, m, route)?;
    let pieces = gr_components(&basis)?;
    let per: Vec<(Vec<Operator>, BPoly)> = pieces
        .par_iter()
        .map(|gi| -> Result<(Vec<Operator>, BPoly)> {
            let g2 = theta_subring_generators(gi)?;
            let j = eliminate_to_theta(&g2)?;
            let c = contract_to_theta(&j)?;
            Ok((j, c))
        })
        .collect::<Result<_>>()?;
    let mut b = BPoly::one();
    for (i, (_, c)) in per.iter().enumerate() {
        b = b.lcm(&c.translate(&Coef::from_int(m.get(i))));
    }
    let (components, contractions) = per.into_iter().unzip();
    Ok(BFunction { b, components, contractions, basis, shift: m.clone() })
}

/// `sum_k c_k theta^k` evaluated at `theta = t_1 dt_1 + ... + t_d dt_d`.
pub fn theta_operator(ring: &Ring, p: &[Coef]) -> Operator {
    let mut th = Operator::zero(ring, 1);
    for j in 0..ring.d {
        th = th.add(&Operator::var(ring, ring.t(j)).mul(&Operator::var(ring, ring.dt(j))));
    }
    let mut acc = Operator::zero(ring, 1);
    for c in p.iter().rev() {
        acc = acc.mul(&th).add(&Operator::constant(ring, c.clone()));
    }
    acc
}

/// Whether `b(theta)` kills the degree-zero graded piece of `A^r / N`, for the
/// F-flavored basis `g` of `N`: each `b(theta + m_i) e_i` must reduce to an
/// element of V-order below `m_i`.
pub fn annihilates(g: &GroebnerBasis, b: &BPoly) -> Result<bool> {
    let (w, m) = f_data(g)?;
    if b.is_zero() {
        return Ok(true);
    }
    // The V-filtration is a grading, so `b(theta + m_i) e_i` lies in
    // `N + F_(m_i - 1)` exactly when it reduces to zero by the initial forms.
    // Reduction stays in one F-degree, where the tie-break is a well-order.
    let initials: Vec<Poly> = g
        .elements
        .iter()
        .filter_map(|e| {
            let k = e.order_of(&w, &m)?;
            Some(Poly::from_op(&e.filter(|c, x| w.eval(x) + m.get(c) == k), &g.order))
        })
        .collect();
    for i in 0..g.rank {
        let shifted = upoly::compose_linear(&b.coeffs, &Coef::one(), &Coef::from_int(m.get(i)));
        let op = theta_operator(&g.ring, &shifted).embed(g.rank, i);
        let r = engine::reduce(&g.ring, &g.order, Poly::from_op(&op, &g.order), &initials, true, None);
        if !r.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
