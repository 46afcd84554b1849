//! Division and the Buchberger algorithm on working polynomials.

use std::cmp::Ordering;

use crate::coef::Coef;
use crate::mono::{self, Mono};
use crate::order::OrderSpec;
use crate::ring::RingSpec;

use super::poly::{mul_mono, Poly, Term};

/// Quotient accumulated as a list of `(monomial, coefficient)` per divisor.
pub type Quotient = Vec<(Mono, Coef)>;

fn find_divisor(basis: &[Poly], t: &Term, skip: Option<usize>) -> Option<usize> {
    basis.iter().enumerate().position(|(i, g)| {
        let l = g.lead();
        Some(i) != skip && l.c == t.c && mono::divides(&l.m, &t.m)
    })
}

/// Reduces `p` by `basis`. With `full` every term is reduced, otherwise only
/// leading terms. When `quotients` is given, records `p = sum q_i g_i + r`.
pub fn reduce(
    ring: &RingSpec,
    ord: &OrderSpec,
    p: Poly,
    basis: &[Poly],
    full: bool,
    quotients: Option<&mut Vec<Quotient>>,
) -> Poly {
    reduce_skip(ring, ord, p, basis, full, quotients, None)
}

/// As [`reduce`], ignoring `basis[skip]`.
pub fn reduce_skip(
    ring: &RingSpec,
    ord: &OrderSpec,
    mut p: Poly,
    basis: &[Poly],
    full: bool,
    mut quotients: Option<&mut Vec<Quotient>>,
    skip: Option<usize>,
) -> Poly {
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lt) = p.terms.last() {
        match find_divisor(basis, lt, skip) {
            Some(i) => {
                let g = &basis[i];
                let gl = g.lead();
                let factor = &lt.k / &gl.k;
                let m = mono::sub(&lt.m, &gl.m);
                let prod = mul_mono(ring, ord, &factor, &m, g);
                if let Some(q) = quotients.as_deref_mut() {
                    q[i].push((m, factor));
                }
                p = p.sub(&prod, ord);
            }
            None => {
                if !full {
                    break;
                }
                rem.push(p.terms.pop().unwrap());
            }
        }
    }
    if full {
        rem.reverse();
        p.terms.extend(rem);
    }
    p
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    comp: usize,
    deg: u32,
}

/// Options for [`buchberger`].
#[derive(Clone, Debug)]
pub struct BuchbergerOptions {
    /// Return the reduced basis.
    pub reduce: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { reduce: true }
    }
}

fn pair_cmp(ord: &OrderSpec, a: &Pair, b: &Pair) -> Ordering {
    a.deg
        .cmp(&b.deg)
        .then_with(|| ord.compare((&a.lcm, a.comp), (&b.lcm, b.comp)))
        .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
}

/// Gebauer–Möller update without the product criterion, which fails in the
/// Weyl algebra.
fn update(basis: &[Poly], pairs: &mut Vec<Pair>, active: &[bool], new: usize) {
    let hl = basis[new].lead();
    // Drop old pairs whose lcm is strictly covered through the new element.
    pairs.retain(|p| {
        if p.comp != hl.c || !mono::divides(&hl.m, &p.lcm) {
            return true;
        }
        let li = mono::lcm(&basis[p.i].lead().m, &hl.m);
        let lj = mono::lcm(&basis[p.j].lead().m, &hl.m);
        li == p.lcm || lj == p.lcm
    });
    let mut cand: Vec<Pair> = Vec::new();
    for (i, g) in basis.iter().enumerate().take(new) {
        if !active[i] || g.lead().c != hl.c {
            continue;
        }
        let l = mono::lcm(&g.lead().m, &hl.m);
        let deg = mono::degree(&l);
        cand.push(Pair { i, j: new, lcm: l, comp: hl.c, deg });
    }
    // Keep only pairs whose lcm is minimal; for equal lcms keep the first.
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        for b in 0..cand.len() {
            if a == b || !keep[b] {
                continue;
            }
            if mono::divides(&cand[b].lcm, &cand[a].lcm) && (cand[b].lcm != cand[a].lcm || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    pairs.extend(cand.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p));
}

/// S-polynomial of two monic elements with the same leading component.
fn spoly(ring: &RingSpec, ord: &OrderSpec, basis: &[Poly], p: &Pair) -> Poly {
    let (gi, gj) = (&basis[p.i], &basis[p.j]);
    let mi = mono::sub(&p.lcm, &gi.lead().m);
    let mj = mono::sub(&p.lcm, &gj.lead().m);
    let a = mul_mono(ring, ord, &gj.lead().k, &mi, gi);
    let b = mul_mono(ring, ord, &gi.lead().k, &mj, gj);
    a.sub(&b, ord)
}

/// Computes a Gröbner basis of the module generated by `gens`.
pub fn buchberger(ring: &RingSpec, ord: &OrderSpec, gens: Vec<Poly>, opts: &BuchbergerOptions) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut inputs = gens;
    inputs.retain(|g| !g.is_zero());
    inputs.sort_by(|a, b| {
        let (la, lb) = (a.lead(), b.lead());
        mono::degree(&la.m).cmp(&mono::degree(&lb.m)).then_with(|| ord.compare((&la.m, la.c), (&lb.m, lb.c)))
    });
    let add = |mut h: Poly, basis: &mut Vec<Poly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>| {
        h.make_monic();
        let hl = h.lead().clone();
        basis.push(h);
        active.push(true);
        let new = basis.len() - 1;
        update(basis, pairs, active, new);
        // Elements whose lead is divisible by the new lead stay in the basis
        // for reduction but form no new pairs.
        for i in 0..new {
            if active[i] {
                let l = basis[i].lead();
                if l.c == hl.c && mono::divides(&hl.m, &l.m) {
                    active[i] = false;
                }
            }
        }
    };
    for g in inputs {
        let r = reduce(ring, ord, g, &basis, true, None);
        if !r.is_zero() {
            add(r, &mut basis, &mut active, &mut pairs);
        }
    }
    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            if pair_cmp(ord, &pairs[k], &pairs[best]) == Ordering::Less {
                best = k;
            }
        }
        let p = pairs.swap_remove(best);
        let s = spoly(ring, ord, &basis, &p);
        let r = reduce(ring, ord, s, &basis, true, None);
        if !r.is_zero() {
            add(r, &mut basis, &mut active, &mut pairs);
        }
    }
    if opts.reduce {
        interreduce(ring, ord, basis)
    } else {
        basis.into_iter().zip(active).filter(|(_, a)| *a).map(|(g, _)| g).collect()
    }
}

/// Turns a Gröbner basis into the reduced one: minimal leads, monic, tails
/// reduced. Output is sorted by leading term ascending.
pub fn interreduce(ring: &RingSpec, ord: &OrderSpec, basis: Vec<Poly>) -> Vec<Poly> {
    let mut gs: Vec<Poly> = basis.into_iter().filter(|g| !g.is_zero()).collect();
    gs.sort_by(|a, b| {
        let (la, lb) = (a.lead(), b.lead());
        ord.compare((&la.m, la.c), (&lb.m, lb.c))
    });
    let mut minimal: Vec<Poly> = Vec::new();
    for g in gs {
        let l = g.lead();
        if minimal.iter().any(|h| {
            let hl = h.lead();
            hl.c == l.c && mono::divides(&hl.m, &l.m)
        }) {
            continue;
        }
        minimal.push(g);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let mut g = minimal[idx].clone();
        let lead = g.terms.pop().unwrap();
        let mut tail = reduce_skip(ring, ord, g, &minimal, true, None, Some(idx));
        tail.terms.push(lead);
        tail.make_monic();
        out.push(tail);
    }
    out
}
