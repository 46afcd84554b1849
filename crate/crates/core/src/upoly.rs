//! Dense univariate polynomials over Q, coefficients in ascending order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::coef::{denominator_lcm, Coef};

pub type UPoly = Vec<Coef>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Coef::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Coef]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn monic(p: UPoly) -> UPoly {
    let p = trim(p);
    match p.last() {
        None => p,
        Some(l) => {
            let inv = l.inv();
            p.iter().map(|c| c * &inv).collect()
        }
    }
}

pub fn add(a: &[Coef], b: &[Coef]) -> UPoly {
    let mut out = vec![Coef::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn mul(a: &[Coef], b: &[Coef]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Coef::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            out[i + j] += &t;
        }
    }
    trim(out)
}

/// `(q, r)` with `a = q b + r` and `deg r < deg b`.
pub fn divrem(a: &[Coef], b: &[Coef]) -> (UPoly, UPoly) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = b[db].inv();
    let mut q = vec![Coef::zero(); r.len() - db];
    while let Some(dr) = degree(&r).filter(|&d| d >= db) {
        let f = &r[dr] * &inv;
        for (j, c) in b.iter().enumerate() {
            let t = &f * c;
            r[dr - db + j] -= &t;
        }
        q[dr - db] = f;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn gcd(a: &[Coef], b: &[Coef]) -> UPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

pub fn lcm(a: &[Coef], b: &[Coef]) -> UPoly {
    if degree(a).is_none() || degree(b).is_none() {
        return Vec::new();
    }
    let g = gcd(a, b);
    monic(divrem(&mul(a, b), &g).0)
}

pub fn eval(p: &[Coef], x: &Coef) -> Coef {
    let mut acc = Coef::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// `p(a*theta + b)`.
pub fn compose_linear(p: &[Coef], a: &Coef, b: &Coef) -> UPoly {
    let lin = vec![b.clone(), a.clone()];
    let mut acc: UPoly = Vec::new();
    for c in p.iter().rev() {
        acc = add(&mul(&acc, &lin), std::slice::from_ref(c));
    }
    acc
}

/// Integer coefficients with the same roots.
fn primitive(p: &[Coef]) -> Vec<BigInt> {
    let l = denominator_lcm(p.iter());
    p.iter().map(|c| (c.to_big() * num_rational::BigRational::from_integer(l.clone())).to_integer()).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

/// Distinct rational roots with multiplicities, in increasing order.
pub fn rational_roots(p: &[Coef]) -> Vec<(Coef, usize)> {
    let mut p = trim(p.to_vec());
    let mut out: Vec<(Coef, usize)> = Vec::new();
    if p.is_empty() {
        return out;
    }
    let zeros = p.iter().position(|c| !c.is_zero()).unwrap();
    if zeros > 0 {
        out.push((Coef::zero(), zeros));
        p.drain(..zeros);
    }
    if p.len() > 1 {
        let ints = primitive(&p);
        let lead = ints.last().unwrap().clone();
        let low = ints[0].clone();
        let (num, den) = (divisors(&low), divisors(&lead));
        let mut cands: Vec<Coef> = Vec::new();
        for a in &num {
            for b in &den {
                let q = Coef::from_big(num_rational::BigRational::new(a.clone(), b.clone()));
                cands.push(-&q);
                cands.push(q);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            let mut mult = 0;
            let lin = [-&c, Coef::one()];
            loop {
                if degree(&p).unwrap_or(0) == 0 || !eval(&p, &c).is_zero() {
                    break;
                }
                p = divrem(&p, &lin).0;
                mult += 1;
            }
            if mult > 0 {
                out.push((c, mult));
            }
        }
    }
    out.sort();
    out
}

/// Distinct integer roots in increasing order.
pub fn integer_roots(p: &[Coef]) -> Vec<i64> {
    let p = trim(p.to_vec());
    let Some(zeros) = p.iter().position(|c| !c.is_zero()) else { return Vec::new() };
    let mut out = Vec::new();
    if zeros > 0 {
        out.push(0);
    }
    let rest = &p[zeros..];
    if rest.len() > 1 {
        let ints = primitive(rest);
        for d in divisors(&ints[0]) {
            for k in [-d.clone(), d] {
                let Ok(k64) = i64::try_from(&k) else { continue };
                if eval(rest, &Coef::from_int(k64)).is_zero() {
                    out.push(k64);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn render(p: &[Coef], var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let (neg, abs) = (c.is_negative(), c.abs());
        let body = if mono.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            mono
        } else {
            format!("{abs}*{mono}")
        };
        if parts.is_empty() {
            parts.push(if neg { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if neg { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}
