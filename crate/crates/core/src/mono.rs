//! Flat exponent vectors and the Weyl product of normally ordered monomials.

use smallvec::SmallVec;

use crate::coef::Coef;
use crate::ring::RingSpec;

/// Flat exponent vector; layout described in [`crate::ring`].
pub type Mono = SmallVec<[u16; 24]>;

pub fn zero_mono(nvars: usize) -> Mono {
    SmallVec::from_elem(0, nvars)
}

pub fn unit_mono(nvars: usize, i: usize) -> Mono {
    let mut m = zero_mono(nvars);
    m[i] = 1;
    m
}

#[inline]
pub fn add(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).expect("exponent overflow")).collect()
}

/// `a - b`, assuming `b` divides `a`.
#[inline]
pub fn sub(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[inline]
pub fn divides(b: &[u16], a: &[u16]) -> bool {
    b.iter().zip(a).all(|(x, y)| x <= y)
}

#[inline]
pub fn lcm(a: &[u16], b: &[u16]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

#[inline]
pub fn degree(a: &[u16]) -> u32 {
    a.iter().map(|&x| x as u32).sum()
}

/// Structured view of an exponent: `t0^λ t^μ x^α dt^ν dx^β` plus parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Exponent {
    pub lambda: u16,
    pub mu: Vec<u16>,
    pub nu: Vec<u16>,
    pub alpha: Vec<u16>,
    pub beta: Vec<u16>,
    pub params: Vec<u16>,
}

impl Exponent {
    pub fn from_mono(ring: &RingSpec, m: &[u16]) -> Exponent {
        let (d, n, p) = (ring.d, ring.n, ring.pairs());
        Exponent {
            lambda: ring.lambda().map_or(0, |i| m[i]),
            mu: m[..d].to_vec(),
            alpha: m[d..p].to_vec(),
            nu: m[p..p + d].to_vec(),
            beta: m[p + d..p + d + n].to_vec(),
            params: m[ring.param(0)..].to_vec(),
        }
    }

    pub fn to_mono(&self, ring: &RingSpec) -> Mono {
        let mut m = zero_mono(ring.nvars());
        let p = ring.pairs();
        for (i, &e) in self.mu.iter().enumerate() {
            m[i] = e;
        }
        for (i, &e) in self.alpha.iter().enumerate() {
            m[ring.d + i] = e;
        }
        for (i, &e) in self.nu.iter().enumerate() {
            m[p + i] = e;
        }
        for (i, &e) in self.beta.iter().enumerate() {
            m[p + ring.d + i] = e;
        }
        if let Some(l) = ring.lambda() {
            m[l] = self.lambda;
        }
        for (j, &e) in self.params.iter().enumerate() {
            m[ring.param(j)] = e;
        }
        m
    }
}

/// Binomial coefficient as an exact rational.
pub fn binomial(n: u32, k: u32) -> Coef {
    if k > n {
        return Coef::zero();
    }
    let k = k.min(n - k);
    let mut acc = Coef::one();
    for i in 0..k {
        acc = &(&acc * &Coef::from_int((n - i) as i64)) / &Coef::from_int((i + 1) as i64);
    }
    acc
}

/// Product `a * b` of two normally ordered monomials, returned in normal order.
///
/// Uses `dx^b x^c = sum_k C(b,k) C(c,k) k! x^(c-k) dx^(b-k)` per variable pair,
/// with an extra `h^(2k)` in the homogenized algebra.
pub fn weyl_product(ring: &RingSpec, a: &[u16], b: &[u16]) -> SmallVec<[(Mono, Coef); 4]> {
    let p = ring.pairs();
    let base = add(a, b);
    let mut active: SmallVec<[(usize, Vec<Coef>); 4]> = SmallVec::new();
    for i in 0..p {
        let bi = a[p + i] as u32;
        let ci = b[i] as u32;
        if bi > 0 && ci > 0 {
            let kmax = bi.min(ci);
            let mut fs = Vec::with_capacity(kmax as usize + 1);
            let mut fact = Coef::one();
            for k in 0..=kmax {
                if k > 0 {
                    fact = &fact * &Coef::from_int(k as i64);
                }
                fs.push(&(&binomial(bi, k) * &binomial(ci, k)) * &fact);
            }
            active.push((i, fs));
        }
    }
    let mut out: SmallVec<[(Mono, Coef); 4]> = SmallVec::new();
    if active.is_empty() {
        out.push((base, Coef::one()));
        return out;
    }
    let h = ring.h_index();
    let mut ks = vec![0usize; active.len()];
    loop {
        let mut m = base.clone();
        let mut c = Coef::one();
        let mut total = 0u16;
        for (slot, (i, fs)) in active.iter().enumerate() {
            let k = ks[slot];
            m[*i] -= k as u16;
            m[p + *i] -= k as u16;
            total += k as u16;
            c = &c * &fs[k];
        }
        if let Some(hi) = h {
            m[hi] += 2 * total;
        }
        out.push((m, c));
        let mut slot = 0;
        loop {
            if slot == active.len() {
                return out;
            }
            ks[slot] += 1;
            if ks[slot] < active[slot].1.len() {
                break;
            }
            ks[slot] = 0;
            slot += 1;
        }
    }
}
