//! Exact rational coefficients.
//!
//! Values that fit in machine words are kept as a reduced `i64` pair; anything
//! larger is promoted to a [`BigRational`]. The two representations never
//! overlap, so derived equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub enum Coef {
    /// numerator, denominator; denominator > 0 and gcd = 1; neither is `i64::MIN`.
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl Coef {
    pub fn zero() -> Coef {
        Coef::Small(0, 1)
    }

    pub fn one() -> Coef {
        Coef::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Coef {
        if n == i64::MIN {
            return Coef::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Coef::Small(n, 1)
    }

    pub fn from_frac(n: i64, d: i64) -> Coef {
        assert!(d != 0, "zero denominator");
        Coef::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Coef {
        let g = gcd128(n, d);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (n / g, d / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if fits(n) && fits(d) {
            Coef::Small(n as i64, d as i64)
        } else {
            Coef::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    /// Builds from an arbitrary rational, demoting to the small form when possible.
    pub fn from_big(r: BigRational) -> Coef {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Coef::Small(n, d);
            }
        }
        Coef::Big(Box::new(r))
    }

    pub fn from_bigint(n: BigInt) -> Coef {
        Coef::from_big(BigRational::from_integer(n))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Coef::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Coef::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coef::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coef::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Coef::Small(_, d) => *d == 1,
            Coef::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coef::Small(n, _) => *n < 0,
            Coef::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Coef {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Coef::Small(n, _) => BigInt::from(*n),
            Coef::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Coef::Small(_, d) => BigInt::from(*d),
            Coef::Big(b) => b.denom().clone(),
        }
    }

    /// The value as an `i64` when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coef::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn inv(&self) -> Coef {
        match self {
            Coef::Small(0, _) => panic!("inverse of zero"),
            Coef::Small(n, d) => Coef::from_i128(*d as i128, *n as i128),
            Coef::Big(b) => Coef::from_big(b.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Coef {
        let mut acc = Coef::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Coef {
    fn default() -> Self {
        Coef::zero()
    }
}

impl PartialEq for Coef {
    fn eq(&self, other: &Coef) -> bool {
        match (self, other) {
            (Coef::Small(a, b), Coef::Small(c, d)) => a == c && b == d,
            (Coef::Big(a), Coef::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Coef {}

impl Hash for Coef {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Coef::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Coef::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Coef {
    fn partial_cmp(&self, other: &Coef) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coef {
    fn cmp(&self, other: &Coef) -> Ordering {
        match (self, other) {
            (Coef::Small(a, b), Coef::Small(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Coef> for &'a Coef {
    type Output = Coef;
    fn add(self, rhs: &Coef) -> Coef {
        match (self, rhs) {
            (Coef::Small(0, _), _) => rhs.clone(),
            (_, Coef::Small(0, _)) => self.clone(),
            (Coef::Small(a, b), Coef::Small(c, d)) => {
                if b == d {
                    Coef::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Coef::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Coef::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Coef> for &'a Coef {
    type Output = Coef;
    fn sub(self, rhs: &Coef) -> Coef {
        match (self, rhs) {
            (_, Coef::Small(0, _)) => self.clone(),
            (Coef::Small(a, b), Coef::Small(c, d)) => {
                if b == d {
                    Coef::from_i128(*a as i128 - *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Coef::from_i128(a * d - c * b, b * d)
                }
            }
            _ => Coef::from_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl<'a> Mul<&'a Coef> for &'a Coef {
    type Output = Coef;
    fn mul(self, rhs: &Coef) -> Coef {
        match (self, rhs) {
            (Coef::Small(0, _), _) | (_, Coef::Small(0, _)) => Coef::zero(),
            (Coef::Small(1, 1), _) => rhs.clone(),
            (_, Coef::Small(1, 1)) => self.clone(),
            (Coef::Small(a, b), Coef::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g1 = gcd128(a, d).max(1);
                let g2 = gcd128(c, b).max(1);
                let n = (a / g1) * (c / g2);
                let m = (b / g2) * (d / g1);
                if fits(n) && fits(m) {
                    Coef::Small(n as i64, m as i64)
                } else {
                    Coef::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(m))))
                }
            }
            _ => Coef::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Coef> for &'a Coef {
    type Output = Coef;
    fn div(self, rhs: &Coef) -> Coef {
        self * &rhs.inv()
    }
}

impl Neg for Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        match self {
            Coef::Small(n, d) => Coef::Small(-n, d),
            Coef::Big(b) => Coef::from_big(-*b),
        }
    }
}

impl Neg for &Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coef> for Coef {
            type Output = Coef;
            fn $m(self, rhs: Coef) -> Coef {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Coef> for Coef {
            type Output = Coef;
            fn $m(self, rhs: &Coef) -> Coef {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Coef> for Coef {
    fn add_assign(&mut self, rhs: &Coef) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Coef> for Coef {
    fn sub_assign(&mut self, rhs: &Coef) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Coef> for Coef {
    fn mul_assign(&mut self, rhs: &Coef) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Coef {
    fn from(n: i64) -> Coef {
        Coef::from_int(n)
    }
}

impl From<BigRational> for Coef {
    fn from(r: BigRational) -> Coef {
        Coef::from_big(r)
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Small(n, 1) => write!(f, "{n}"),
            Coef::Small(n, d) => write!(f, "{n}/{d}"),
            Coef::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseCoefError(pub String);

impl fmt::Display for ParseCoefError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal `{}`", self.0)
    }
}

impl std::error::Error for ParseCoefError {}

impl FromStr for Coef {
    type Err = ParseCoefError;
    fn from_str(s: &str) -> Result<Coef, ParseCoefError> {
        let err = || ParseCoefError(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Coef::from_big(BigRational::new(n, d)))
    }
}

/// Least common multiple of the denominators of `cs`.
pub fn denominator_lcm<'a>(cs: impl IntoIterator<Item = &'a Coef>) -> BigInt {
    let mut l = BigInt::one();
    for c in cs {
        l = l.lcm(&c.denom());
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_reduces() {
        let a = Coef::from_frac(2, 4);
        assert_eq!(a, Coef::from_frac(1, 2));
        let b = &a + &Coef::from_frac(1, 3);
        assert_eq!(b, Coef::from_frac(5, 6));
        assert_eq!(&b * &Coef::from_int(6), Coef::from_int(5));
        assert_eq!((&b - &b), Coef::zero());
        assert_eq!(Coef::from_frac(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Coef::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Coef::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back, Coef::Small(..)));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-7", "3/4", "-22/7", "123456789012345678901234567891/2"] {
            let c: Coef = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("1/0".parse::<Coef>().is_err());
    }
}
