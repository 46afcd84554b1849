//! Finitely presented modules `A^l / (relations)` and the cohomology of a
//! two-step complex of free modules.

use std::collections::BTreeSet;

use crate::coef::Coef;
use crate::error::{DmodError, Result};
use crate::mono::{self, Mono};
use crate::operator::Operator;
use crate::order::{OrderSpec, Position, Tie};
use crate::ring::Ring;

use super::{buchberger, lead_of};

/// Rows of a matrix over the ring; each row is an element of the free module
/// of rank `cols`.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub ring: Ring,
    pub cols: usize,
    pub rows: Vec<Operator>,
}

impl Matrix {
    pub fn new(ring: &Ring, cols: usize, rows: Vec<Operator>) -> Matrix {
        Matrix { ring: ring.clone(), cols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ring: Ring,
    pub rank: usize,
    pub relations: Vec<Operator>,
}

impl ModulePresentation {
    pub fn new(ring: &Ring, rank: usize, relations: Vec<Operator>) -> ModulePresentation {
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        ModulePresentation { ring: ring.clone(), rank, relations }
    }

    pub fn zero(ring: &Ring) -> ModulePresentation {
        ModulePresentation { ring: ring.clone(), rank: 0, relations: Vec::new() }
    }

    /// Dimension over Q when the ring has no variables.
    pub fn dimension(&self) -> Option<usize> {
        if self.ring.pairs() != 0 || !self.ring.params.is_empty() {
            return None;
        }
        Some(self.rank - const_rank(&self.relations, self.rank))
    }
}

/// Rank over Q of rows of constants.
fn const_rank(rows: &[Operator], cols: usize) -> usize {
    let mut m: Vec<Vec<Coef>> =
        rows.iter().map(|r| (0..cols).map(|c| r.component(c).constant_coef()).collect()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inv();
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = &row[col] * &inv;
                for (x, p) in row[col..cols].iter_mut().zip(&pivot[col..cols]) {
                    *x -= &(&f * p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pot(ring: &Ring, rank: usize) -> OrderSpec {
    OrderSpec::grevlex(ring, rank)
}

/// Generators of `{v : sum v_i rows_i = 0}` for `rows` in `A^cols`, as
/// elements of `A^rows.len()`.
pub fn syzygies_of(ring: &Ring, rows: &[Operator], cols: usize) -> Result<Vec<Operator>> {
    let a = rows.len();
    if a == 0 {
        return Ok(Vec::new());
    }
    // Layout: identity part in components 0..a, the rows in a..a+cols, so the
    // row part dominates under position-over-term.
    let total = a + cols;
    let mut gens = Vec::with_capacity(a);
    for (i, r) in rows.iter().enumerate() {
        if r.rank != cols {
            return Err(DmodError::Dimension(format!("row of rank {} in a map to rank {cols}", r.rank)));
        }
        let mut v = Operator::zero(ring, total);
        v.add_term(i as u32, mono::zero_mono(ring.nvars()), Coef::one());
        for (c, m, k) in r.iter() {
            v.add_term((a + c) as u32, m.clone(), k.clone());
        }
        gens.push(v);
    }
    let g = buchberger(&gens, &pot(ring, total))?;
    let mut out = Vec::new();
    for e in &g.elements {
        if e.max_component().is_some_and(|c| c < a) {
            let mut v = Operator::zero(ring, a);
            for (c, m, k) in e.iter() {
                v.add_term(c as u32, m.clone(), k.clone());
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// `ker(kernel_of) / im(image_of)` for maps of row vectors
/// `A^s --image_of--> A^a --kernel_of--> A^b`.
pub fn presentation_cohomology(kernel_of: &Matrix, image_of: &Matrix) -> Result<ModulePresentation> {
    let ring = &kernel_of.ring;
    let a = kernel_of.nrows();
    if image_of.cols != a {
        return Err(DmodError::Dimension(format!("image rows of rank {} into a source of rank {a}", image_of.cols)));
    }
    for b in &image_of.rows {
        let mut img = Operator::zero(ring, kernel_of.cols);
        for (i, row) in kernel_of.rows.iter().enumerate() {
            let bi = b.component(i);
            if !bi.is_zero() {
                img = img.add(&bi.mul(row));
            }
        }
        if !img.is_zero() {
            return Err(DmodError::Precondition("composite of the two maps is zero".into()));
        }
    }
    let kernel: Vec<Operator> = if kernel_of.cols == 0 || kernel_of.rows.iter().all(Operator::is_zero) {
        (0..a).map(|i| Operator::unit(ring, a, i)).collect()
    } else {
        syzygies_of(ring, &kernel_of.rows, kernel_of.cols)?
    };
    let l = kernel.len();
    if l == 0 {
        return Ok(ModulePresentation::zero(ring));
    }
    let mut stacked = kernel.clone();
    stacked.extend(image_of.rows.iter().filter(|r| !r.is_zero()).cloned());
    let syz = syzygies_of(ring, &stacked, a)?;
    let relations = syz
        .iter()
        .map(|s| {
            let mut v = Operator::zero(ring, l);
            for (c, m, k) in s.iter() {
                if c < l {
                    v.add_term(c as u32, m.clone(), k.clone());
                }
            }
            v
        })
        .collect();
    Ok(ModulePresentation::new(ring, l, relations))
}

pub fn is_zero_module(p: &ModulePresentation) -> Result<bool> {
    if p.rank == 0 {
        return Ok(true);
    }
    if p.relations.is_empty() {
        return Ok(false);
    }
    let g = buchberger(&p.relations, &pot(&p.ring, p.rank))?;
    for i in 0..p.rank {
        if !g.normal_form(&Operator::unit(&p.ring, p.rank, i))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Components of `r` that are nonzero constants.
fn constant_components(r: &Operator) -> Vec<(usize, Coef)> {
    let comps: BTreeSet<usize> = r.iter().map(|(c, _, _)| c).collect();
    comps
        .into_iter()
        .filter_map(|c| {
            let rc = r.component(c);
            (rc.is_constant() && !rc.is_zero()).then(|| (c, rc.constant_coef()))
        })
        .collect()
}

/// The pivot `(relation, component, unit)` with the least expected fill-in.
fn pick_pivot(rels: &[Operator], rank: usize) -> Option<(usize, usize, Coef)> {
    let mut uses = vec![0usize; rank];
    for r in rels {
        let comps: BTreeSet<usize> = r.iter().map(|(c, _, _)| c).collect();
        for c in comps {
            uses[c] += 1;
        }
    }
    let mut best: Option<(usize, usize, usize, Coef)> = None;
    for (i, r) in rels.iter().enumerate() {
        for (c, u) in constant_components(r) {
            let cost = (r.len() - 1) * (uses[c] - 1);
            if best.as_ref().is_none_or(|b| cost < b.0) {
                best = Some((cost, i, c, u));
            }
        }
    }
    best.map(|(_, i, c, u)| (i, c, u))
}

/// Uses relation `r` with constant `u` at component `c` to remove generator
/// `c` from every other relation.
fn eliminate(rels: Vec<Operator>, r: &Operator, c: usize, u: &Coef, rank: usize) -> Vec<Operator> {
    let ring = r.ring.clone();
    let ui = u.inv();
    let collapse = |v: &Operator| -> Operator {
        let mut out = Operator::zero(&ring, rank - 1);
        for (cc, m, k) in v.iter() {
            if cc == c {
                continue;
            }
            let idx = if cc > c { cc - 1 } else { cc };
            out.add_term(idx as u32, m.clone(), k.clone());
        }
        out
    };
    let r_rest = collapse(r).scale(&ui);
    rels.iter()
        .map(|s| {
            let sc = s.component(c);
            let base = collapse(s);
            if sc.is_zero() {
                base
            } else {
                base.sub(&sc.mul(&r_rest))
            }
        })
        .filter(|v| !v.is_zero())
        .collect()
}

/// Removes generators that some relation expresses through the others, then
/// returns the reduced Gröbner basis of the remaining relations.
pub fn minimize_presentation(p: &ModulePresentation) -> Result<ModulePresentation> {
    let ring = p.ring.clone();
    let mut rank = p.rank;
    let mut rels: Vec<Operator> = p.relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    loop {
        while let Some((pos, c, u)) = pick_pivot(&rels, rank) {
            let r = rels.swap_remove(pos);
            rels = eliminate(rels, &r, c, &u, rank);
            rank -= 1;
        }
        if rank == 0 || rels.is_empty() {
            return Ok(ModulePresentation::new(&ring, rank, rels));
        }
        let g = buchberger(&rels, &pot(&ring, rank))?;
        let ord = &g.order;
        if g.elements.iter().any(|e| lead_of(e, ord).0.iter().all(|&x| x == 0)) {
            rels = g.elements;
            continue;
        }
        return Ok(ModulePresentation::new(&ring, rank, g.elements));
    }
}

/// Rank over the rational functions `Q(x)`: the number of standard
/// derivative monomials of a Gröbner basis for an order that compares
/// derivative exponents first. `None` when that number is infinite.
pub fn holonomic_rank(p: &ModulePresentation) -> Result<Option<usize>> {
    let ring = &p.ring;
    let np = ring.pairs();
    if p.rank == 0 {
        return Ok(Some(0));
    }
    if np == 0 {
        return Ok(p.dimension());
    }
    let nv = ring.nvars();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut deg = vec![0; nv];
    for i in 0..np {
        deg[np + i] = 1;
    }
    rows.push(deg);
    for i in 0..np {
        let mut r = vec![0; nv];
        r[np + i] = 1;
        rows.push(r);
    }
    let ord = OrderSpec::weighted(ring, p.rank, rows, Position::Top, Tie::Grevlex)?;
    let mut cones: Vec<Vec<Mono>> = vec![Vec::new(); p.rank];
    if !p.relations.is_empty() {
        let g = buchberger(&p.relations, &ord)?;
        for e in &g.elements {
            let (m, c) = lead_of(e, &ord);
            cones[c].push(m[np..2 * np].iter().copied().collect());
        }
    }
    let mut total = 0;
    for cone in &cones {
        match count_standard(cone, np) {
            Some(k) => total += k,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

/// Monomials in `n` variables outside the ideal generated by `gens`.
fn count_standard(gens: &[Mono], n: usize) -> Option<usize> {
    let mut bound = vec![0u16; n];
    for i in 0..n {
        let pure = gens.iter().filter(|g| (0..n).all(|j| j == i || g[j] == 0)).map(|g| g[i]).min()?;
        bound[i] = pure;
    }
    let mut count = 0;
    let mut e = vec![0u16; n];
    loop {
        if !gens.iter().any(|g| mono::divides(g, &e)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Some(count);
            }
            e[i] += 1;
            if e[i] < bound[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}
