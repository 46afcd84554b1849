//! Schreyer syzygies and free resolutions adapted to a weight filtration.

use crate::error::{DmodError, Result};
use crate::mono::{self, Mono};
use crate::operator::{Operator, ShiftVector, WeightVector};
use crate::order::OrderSpec;
use crate::ring::{Extension, Ring};

use super::engine::{self, Quotient};
use super::fgb::{f_groebner, Route};
use super::poly::{mul_mono, Poly};
use super::{lead_of, GroebnerBasis};

/// Generators of the syzygy module of a Gröbner basis, a Gröbner basis of it
/// under the induced Schreyer order.
#[derive(Clone, Debug)]
pub struct SyzygyModule {
    /// Elements of the free module of rank `basis.len()`.
    pub generators: Vec<Operator>,
    pub order: OrderSpec,
    /// `ord_w[m](rho(g_i))` for each basis element.
    pub m: ShiftVector,
    /// `deg[n](g_i)` for each basis element (zeros outside `A^(h)`).
    pub n: ShiftVector,
}

fn dehom(p: &Operator) -> Result<Operator> {
    if p.ring.has_lambda() {
        p.dehomogenize()
    } else {
        Ok(p.clone())
    }
}

/// Shifts induced on the next free module.
pub(crate) fn next_shifts(
    elems: &[Operator],
    w: Option<&WeightVector>,
    m: &ShiftVector,
    n: &ShiftVector,
) -> Result<(ShiftVector, ShiftVector)> {
    let mut mm = Vec::with_capacity(elems.len());
    let mut nn = Vec::with_capacity(elems.len());
    for g in elems {
        let rg = dehom(g)?;
        mm.push(match w {
            Some(w) => rg.order_of(w, m).unwrap_or(0),
            None => 0,
        });
        nn.push(if g.ring.extension == Extension::H { g.total_degree(n).unwrap_or(0) } else { 0 });
    }
    Ok((ShiftVector(mm), ShiftVector(nn)))
}

/// Sorts a basis by leading component, then by leading exponent in
/// decreasing lexicographic order. Iterating Schreyer syzygies on bases
/// sorted this way drops one variable from the leading terms per level.
pub fn sort_for_schreyer(g: &mut GroebnerBasis) {
    let ord = g.order.clone();
    let mut keyed: Vec<((Mono, usize), Operator)> = g.elements.drain(..).map(|e| (lead_of(&e, &ord), e)).collect();
    keyed.sort_by(|a, b| a.0 .1.cmp(&b.0 .1).then_with(|| b.0 .0.cmp(&a.0 .0)));
    g.elements = keyed.into_iter().map(|(_, e)| e).collect();
}

/// Syzygies `V_ij` of a Gröbner basis under a well-order. Only pairs whose
/// leading monomial `lcm/lead_i` is minimal among those of `e_i` are kept;
/// they still form a Gröbner basis for the Schreyer order.
pub fn syzygy_basis(
    g: &GroebnerBasis,
    w: Option<&WeightVector>,
    m: &ShiftVector,
    n: &ShiftVector,
) -> Result<SyzygyModule> {
    if !g.order.is_well_order() {
        return Err(DmodError::Precondition("syzygies need a homogenized or well-ordered basis".into()));
    }
    let ring = g.ring.clone();
    let ord = &g.order;
    let k = g.len();
    let basis: Vec<Poly> = g.elements.iter().map(|e| Poly::from_op(e, ord)).collect();
    let leads: Vec<(Mono, usize)> = basis.iter().map(|p| (p.lead().m.clone(), p.lead().c)).collect();
    let (mm, nn) = next_shifts(&g.elements, w, m, n)?;
    let schreyer = OrderSpec::schreyer(ord, leads.clone());

    // Candidate leading monomials per position i.
    let mut jobs: Vec<(usize, usize, Mono)> = Vec::new();
    for i in 0..k {
        let mut cands: Vec<(usize, Mono)> = Vec::new();
        for j in i + 1..k {
            if leads[j].1 != leads[i].1 {
                continue;
            }
            let l = mono::lcm(&leads[i].0, &leads[j].0);
            cands.push((j, mono::sub(&l, &leads[i].0)));
        }
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a != b && keep[b] && mono::divides(&cands[b].1, &cands[a].1) && (cands[b].1 != cands[a].1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        for (c, kept) in cands.into_iter().zip(keep) {
            if kept {
                jobs.push((i, c.0, c.1));
            }
        }
    }

    let build = |&(i, j, ref sji): &(usize, usize, Mono)| -> Operator {
        let l = mono::add(sji, &leads[i].0);
        let sij = mono::sub(&l, &leads[j].0);
        let (ci, cj) = (basis[i].lead().k.clone(), basis[j].lead().k.clone());
        // cj * S_ji g_i - ci * S_ij g_j has cancelling leading terms.
        let a = mul_mono(&ring, ord, &cj, sji, &basis[i]);
        let b = mul_mono(&ring, ord, &ci, &sij, &basis[j]);
        let s = a.sub(&b, ord);
        let mut qs: Vec<Quotient> = vec![Vec::new(); k];
        let r = engine::reduce(&ring, ord, s, &basis, false, Some(&mut qs));
        debug_assert!(r.is_zero(), "S-pair of a Gröbner basis must reduce to zero");
        let mut v = Operator::zero(&ring, k);
        v.add_term(i as u32, sji.clone(), cj);
        v.add_term(j as u32, sij, -ci);
        for (l, q) in qs.into_iter().enumerate() {
            for (mq, cq) in q {
                v.add_term(l as u32, mq, -cq);
            }
        }
        v
    };
    use rayon::prelude::*;
    let generators: Vec<Operator> = jobs.par_iter().map(build).collect();
    Ok(SyzygyModule { generators, order: schreyer, m: mm, n: nn })
}

/// A free resolution `... -> F_2 -> F_1 -> F_0` by matrices acting on row
/// vectors: level `j` has one row (an element of `F_(j-1)`) per basis vector
/// of `F_j`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Ring,
    pub levels: Vec<Vec<Operator>>,
    /// `m_0, ..., m_l`.
    pub shifts: Vec<ShiftVector>,
    /// `n_0, ..., n_l` (zeros unless the route is `h`).
    pub degree_shifts: Vec<ShiftVector>,
    pub adapted_to: WeightVector,
    pub route: Route,
    /// The homogenized rows each level was dehomogenized from.
    pub lifted: Vec<Vec<Operator>>,
}

impl Resolution {
    /// Rank of `F_j`.
    pub fn rank(&self, j: usize) -> usize {
        self.shifts[j].len()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Betti numbers `r_1, r_2, ...`.
    pub fn betti(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

/// Row vector times matrix: `sum_i v_i * rows_i`.
pub fn apply_rows(v: &Operator, rows: &[Operator], target_rank: usize) -> Operator {
    let ring = &v.ring;
    let mut out = Operator::zero(ring, target_rank);
    for (i, row) in rows.iter().enumerate() {
        let vi = v.component(i);
        if vi.is_zero() {
            continue;
        }
        out = out.add(&vi.mul(row));
    }
    out
}

/// A free resolution of `A^r / N` of at most `length` maps, adapted to the
/// filtration `F_w[m]`.
pub fn adapted_resolution(
    gens: &[Operator],
    w: &WeightVector,
    m: &ShiftVector,
    length: usize,
    route: Route,
) -> Result<Resolution> {
    let first = gens.first().ok_or_else(|| DmodError::Precondition("at least one generator".into()))?;
    let ring = first.ring.clone();
    let mut res = Resolution {
        ring: ring.clone(),
        levels: Vec::new(),
        shifts: vec![m.clone()],
        degree_shifts: vec![ShiftVector::zero(m.len())],
        adapted_to: w.clone(),
        route,
        lifted: Vec::new(),
    };
    if length == 0 || gens.iter().all(Operator::is_zero) {
        return Ok(res);
    }
    let fgb = f_groebner(gens, w, m, route)?;
    let lift = fgb.lifted.as_ref().unwrap();
    let mut cur = lift.basis.clone();
    sort_for_schreyer(&mut cur);
    let mut m_prev = m.clone();
    let mut n_prev = ShiftVector::zero(m.len());
    let mut level = 1;
    loop {
        let rows = cur.elements.iter().map(dehom).collect::<Result<Vec<_>>>()?;
        let (mm, nn) = next_shifts(&cur.elements, Some(w), &m_prev, &n_prev)?;
        res.levels.push(rows);
        res.lifted.push(cur.elements.clone());
        res.shifts.push(mm.clone());
        res.degree_shifts.push(nn.clone());
        if level == length || cur.is_empty() {
            break;
        }
        let syz = syzygy_basis(&cur, Some(w), &m_prev, &n_prev)?;
        if syz.generators.is_empty() {
            break;
        }
        let mut next = GroebnerBasis {
            ring: cur.ring.clone(),
            rank: cur.len(),
            order: syz.order,
            elements: syz.generators,
            reduced: false,
            flavor: cur.flavor,
            lifted: None,
        };
        sort_for_schreyer(&mut next);
        m_prev = mm;
        n_prev = nn;
        cur = next;
        level += 1;
    }
    Ok(res)
}

/// Checks `rows_(j+1) * rows_j = 0` for every level.
pub fn composite_is_zero(res: &Resolution) -> bool {
    for j in 1..res.levels.len() {
        let target = res.rank(j - 1);
        for v in &res.levels[j] {
            if !apply_rows(v, &res.levels[j - 1], target).is_zero() {
                return false;
            }
        }
    }
    true
}
