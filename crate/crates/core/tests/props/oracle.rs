//! Dense linear algebra over the rationals, used as an independent check on
//! Gröbner bases and syzygies. Nothing here calls into the Gröbner engine.

use std::collections::BTreeMap;

use dmod_core::groebner::lead_of;
use dmod_core::mono::{self, Mono};
use dmod_core::{Coef, Operator, OrderSpec, Ring};

type Key = (usize, Mono);
type Pivot = (Key, BTreeMap<Key, Coef>, BTreeMap<usize, Coef>);

/// All exponent vectors of total degree at most `deg` in `nv` slots.
pub fn monomials_up_to(nv: usize, deg: u32) -> Vec<Mono> {
    let mut out = vec![mono::zero_mono(nv)];
    let mut frontier = out.clone();
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in start..nv {
                let mut k = m.clone();
                k[i] += 1;
                next.push(k);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn mono_op(ring: &Ring, m: &Mono) -> Operator {
    Operator::monomial(ring, 1, 0, m.clone(), Coef::one())
}

fn to_row(p: &Operator) -> BTreeMap<Key, Coef> {
    p.iter().map(|(c, m, k)| ((c, m.clone()), k.clone())).collect()
}

fn axpy(row: &mut BTreeMap<Key, Coef>, a: &Coef, other: &BTreeMap<Key, Coef>) {
    for (k, v) in other {
        let e = row.entry(k.clone()).or_insert_with(Coef::zero);
        *e -= &(a * v);
        if e.is_zero() {
            row.remove(k);
        }
    }
}

/// Leading keys of an echelon basis of the span of `m * g_i`, `deg m <= bound`.
/// Every ideal element of that span has one of these leading keys.
pub fn span_leads(gens: &[Operator], bound: u32, ord: &OrderSpec) -> Vec<(Mono, usize)> {
    let ring = gens[0].ring.clone();
    let rows: Vec<Operator> = monomials_up_to(ring.nvars(), bound)
        .iter()
        .flat_map(|m| gens.iter().map(move |g| (m, g)))
        .map(|(m, g)| mono_op(&ring, m).mul(g))
        .collect();
    let mut pivots: Vec<(Key, Operator)> = Vec::new();
    for mut r in rows {
        loop {
            if r.is_zero() {
                break;
            }
            let (lm, lc) = lead_of(&r, ord);
            let key = (lc, lm);
            match pivots.iter().find(|(k, _)| *k == key) {
                Some((_, p)) => {
                    let a = lead_value(&r, &key);
                    let b = lead_value(p, &key);
                    r = r.sub(&p.scale(&(&a / &b)));
                }
                None => {
                    pivots.push((key, r));
                    break;
                }
            }
        }
    }
    pivots.into_iter().map(|(k, _)| (k.1, k.0)).collect()
}

fn lead_value(p: &Operator, key: &(usize, Mono)) -> Coef {
    p.iter().find(|(c, m, _)| *c == key.0 && **m == key.1).map(|(_, _, k)| k.clone()).unwrap()
}

/// A basis of the relations `sum_i c_i g_i = 0` with every `c_i` of total
/// degree at most `bound`, as elements of the free module of rank `g.len()`.
pub fn relations(g: &[Operator], bound: u32) -> Vec<Operator> {
    let ring = g[0].ring.clone();
    let k = g.len();
    let mut unknowns: Vec<(usize, Mono)> = Vec::new();
    let mut images: Vec<BTreeMap<Key, Coef>> = Vec::new();
    for m in monomials_up_to(ring.nvars(), bound) {
        for (i, gi) in g.iter().enumerate() {
            images.push(to_row(&mono_op(&ring, &m).mul(gi)));
            unknowns.push((i, m.clone()));
        }
    }
    // Row-reduce the images while tracking the combination of unknowns.
    let mut pivots: Vec<Pivot> = Vec::new();
    let mut kernel = Vec::new();
    for (j, img) in images.into_iter().enumerate() {
        let mut row = img;
        let mut comb: BTreeMap<usize, Coef> = BTreeMap::from([(j, Coef::one())]);
        for (key, prow, pcomb) in &pivots {
            if let Some(a) = row.get(key).cloned() {
                let a = &a / &prow[key];
                axpy(&mut row, &a, prow);
                for (u, v) in pcomb {
                    let e = comb.entry(*u).or_insert_with(Coef::zero);
                    *e -= &(&a * v);
                    if e.is_zero() {
                        comb.remove(u);
                    }
                }
            }
        }
        match row.keys().next().cloned() {
            Some(key) => pivots.push((key, row, comb)),
            None => kernel.push(comb),
        }
    }
    kernel
        .into_iter()
        .map(|comb| {
            Operator::from_terms(&ring, k, comb.into_iter().map(|(u, c)| (unknowns[u].0, unknowns[u].1.clone(), c)))
        })
        .collect()
}
