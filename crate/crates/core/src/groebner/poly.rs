//! Working representation for the Gröbner engine: terms sorted ascending under
//! a fixed order, so the leading term is the last element.

use std::cmp::Ordering;

use crate::coef::Coef;
use crate::mono::{self, weyl_product, Mono};
use crate::operator::Operator;
use crate::order::OrderSpec;
use crate::ring::{Ring, RingSpec};

#[derive(Clone, Debug)]
pub struct Term {
    pub m: Mono,
    pub c: usize,
    pub k: Coef,
}

#[derive(Clone, Debug, Default)]
pub struct Poly {
    /// Ascending; the leading term is last.
    pub terms: Vec<Term>,
}

impl Poly {
    pub fn from_op(op: &Operator, ord: &OrderSpec) -> Poly {
        let mut terms: Vec<Term> = op.iter().map(|(c, m, k)| Term { m: m.clone(), c, k: k.clone() }).collect();
        terms.sort_by(|a, b| ord.compare((&a.m, a.c), (&b.m, b.c)));
        Poly { terms }
    }

    pub fn to_op(&self, ring: &Ring, rank: usize) -> Operator {
        Operator::from_terms(ring, rank, self.terms.iter().map(|t| (t.c, t.m.clone(), t.k.clone())))
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lead(&self) -> &Term {
        self.terms.last().expect("lead of zero")
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&mut self, c: &Coef) {
        for t in &mut self.terms {
            t.k = &t.k * c;
        }
    }

    pub fn make_monic(&mut self) {
        if let Some(l) = self.terms.last() {
            if !l.k.is_one() {
                let inv = l.k.inv();
                self.scale(&inv);
            }
        }
    }

    /// `self - other`, both sorted ascending.
    pub fn sub(&self, other: &Poly, ord: &OrderSpec) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match ord.compare((&a[i].m, a[i].c), (&b[j].m, b[j].c)) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(Term { m: b[j].m.clone(), c: b[j].c, k: -&b[j].k });
                    j += 1;
                }
                Ordering::Equal => {
                    let k = &a[i].k - &b[j].k;
                    if !k.is_zero() {
                        out.push(Term { m: a[i].m.clone(), c: a[i].c, k });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term { m: t.m.clone(), c: t.c, k: -&t.k }));
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly, ord: &OrderSpec) -> Poly {
        let neg = Poly { terms: other.terms.iter().map(|t| Term { m: t.m.clone(), c: t.c, k: -&t.k }).collect() };
        self.sub(&neg, ord)
    }
}

/// `k * m * g` for a normally ordered monomial `m`, re-sorted under `ord`.
pub fn mul_mono(ring: &RingSpec, ord: &OrderSpec, k: &Coef, m: &[u16], g: &Poly) -> Poly {
    let p = ring.pairs();
    let commutes = |t: &Term| (0..p).all(|i| m[p + i] == 0 || t.m[i] == 0);
    if g.terms.iter().all(commutes) {
        // Pure exponent translation preserves the order.
        return Poly { terms: g.terms.iter().map(|t| Term { m: mono::add(m, &t.m), c: t.c, k: k * &t.k }).collect() };
    }
    let mut raw: Vec<Term> = Vec::with_capacity(g.terms.len() * 2);
    for t in &g.terms {
        let kt = k * &t.k;
        for (mm, c) in weyl_product(ring, m, &t.m) {
            raw.push(Term { m: mm, c: t.c, k: &kt * &c });
        }
    }
    raw.sort_by(|a, b| ord.compare((&a.m, a.c), (&b.m, b.c)));
    let mut out: Vec<Term> = Vec::with_capacity(raw.len());
    for t in raw {
        if let Some(last) = out.last_mut() {
            if last.c == t.c && last.m == t.m {
                last.k = &last.k + &t.k;
                if last.k.is_zero() {
                    out.pop();
                }
                continue;
            }
        }
        out.push(t);
    }
    Poly { terms: out }
}
