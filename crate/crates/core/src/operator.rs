//! Elements of free modules over Weyl algebras, in normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coef::Coef;
use crate::error::{DmodError, Result};
use crate::mono::{self, weyl_product, Mono};
use crate::ring::{Extension, Ring, RingSpec};

/// Integer shift vector `m` (one entry per module component).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ShiftVector(pub Vec<i64>);

impl ShiftVector {
    pub fn zero(r: usize) -> ShiftVector {
        ShiftVector(vec![0; r])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

/// Integer weights for `t, x` (first `d+n` entries) and `dt, dx` (last `d+n`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    /// The weight `(t:-1, x:0, dt:1, dx:0)` defining the V-filtration along `t = 0`.
    pub fn v_weight(d: usize, n: usize) -> WeightVector {
        let mut w = vec![0; 2 * (d + n)];
        for i in 0..d {
            w[i] = -1;
            w[d + n + i] = 1;
        }
        WeightVector(w)
    }

    pub fn validate(&self, ring: &RingSpec) -> Result<()> {
        let p = ring.pairs();
        if self.0.len() != 2 * p {
            return Err(DmodError::Dimension(format!("weight vector has length {}, expected {}", self.0.len(), 2 * p)));
        }
        for i in 0..p {
            if self.0[i] + self.0[p + i] < 0 {
                return Err(DmodError::InvalidWeight(format!(
                    "w_{} + w_{} = {} < 0",
                    i + 1,
                    p + i + 1,
                    self.0[i] + self.0[p + i]
                )));
            }
        }
        Ok(())
    }

    /// Weight of a flat exponent; central slots have weight zero.
    #[inline]
    pub fn eval(&self, m: &[u16]) -> i64 {
        self.0.iter().zip(m).map(|(w, &e)| w * e as i64).sum()
    }
}

pub type Key = (u32, Mono);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Operator {
    pub ring: Ring,
    pub rank: usize,
    pub terms: BTreeMap<Key, Coef>,
}

impl Operator {
    pub fn zero(ring: &Ring, rank: usize) -> Operator {
        Operator { ring: ring.clone(), rank, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, c: Coef) -> Operator {
        let mut op = Operator::zero(ring, 1);
        if !c.is_zero() {
            op.terms.insert((0, mono::zero_mono(ring.nvars())), c);
        }
        op
    }

    pub fn one(ring: &Ring) -> Operator {
        Operator::constant(ring, Coef::one())
    }

    /// The variable in exponent slot `slot`.
    pub fn var(ring: &Ring, slot: usize) -> Operator {
        Operator::monomial(ring, 1, 0, mono::unit_mono(ring.nvars(), slot), Coef::one())
    }

    pub fn monomial(ring: &Ring, rank: usize, comp: usize, m: Mono, c: Coef) -> Operator {
        let mut op = Operator::zero(ring, rank);
        if !c.is_zero() {
            op.terms.insert((comp as u32, m), c);
        }
        op
    }

    /// Unit vector `e_i` in a free module of the given rank.
    pub fn unit(ring: &Ring, rank: usize, i: usize) -> Operator {
        Operator::monomial(ring, rank, i, mono::zero_mono(ring.nvars()), Coef::one())
    }

    pub fn from_terms(ring: &Ring, rank: usize, terms: impl IntoIterator<Item = (usize, Mono, Coef)>) -> Operator {
        let mut op = Operator::zero(ring, rank);
        for (c, m, k) in terms {
            op.add_term(c as u32, m, k);
        }
        op
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * m * e_comp` in place.
    pub fn add_term(&mut self, comp: u32, m: Mono, c: Coef) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((comp, m)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Operator) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.rank != other.rank {
            return Err(DmodError::Dimension(format!("rank {} vs {}", self.rank, other.rank)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Operator) -> Result<Operator> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for ((c, m), k) in &other.terms {
            out.add_term(*c, m.clone(), k.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Operator) -> Operator {
        self.try_add(other).expect("operator addition")
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Operator {
        self.scale(&Coef::from_int(-1))
    }

    pub fn scale(&self, c: &Coef) -> Operator {
        if c.is_zero() {
            return Operator::zero(&self.ring, self.rank);
        }
        Operator {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Ring product `self * q` where `self` has rank 1 and `q` any rank.
    pub fn try_mul(&self, q: &Operator) -> Result<Operator> {
        self.ring.check_same(&q.ring)?;
        if self.rank != 1 {
            return Err(DmodError::Dimension("left factor must have rank 1".into()));
        }
        let mut out = Operator::zero(&q.ring, q.rank);
        for ((_, a), ca) in &self.terms {
            for ((comp, b), cb) in &q.terms {
                let cab = ca * cb;
                for (m, c) in weyl_product(&self.ring, a, b) {
                    out.add_term(*comp, m, &cab * &c);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, q: &Operator) -> Operator {
        self.try_mul(q).expect("operator product")
    }

    pub fn pow(&self, e: u32) -> Operator {
        let mut acc = Operator::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Component `i` as a rank-1 operator.
    pub fn component(&self, i: usize) -> Operator {
        let mut out = Operator::zero(&self.ring, 1);
        for ((c, m), k) in &self.terms {
            if *c as usize == i {
                out.terms.insert((0, m.clone()), k.clone());
            }
        }
        out
    }

    pub fn components(&self) -> Vec<Operator> {
        (0..self.rank).map(|i| self.component(i)).collect()
    }

    pub fn from_components(ring: &Ring, comps: &[Operator]) -> Operator {
        let mut out = Operator::zero(ring, comps.len());
        for (i, c) in comps.iter().enumerate() {
            for ((_, m), k) in &c.terms {
                out.terms.insert((i as u32, m.clone()), k.clone());
            }
        }
        out
    }

    /// Rank-1 operator placed in component `i` of a rank-`rank` module.
    pub fn embed(&self, rank: usize, i: usize) -> Operator {
        let mut out = Operator::zero(&self.ring, rank);
        for ((_, m), k) in &self.terms {
            out.terms.insert((i as u32, m.clone()), k.clone());
        }
        out
    }

    /// Largest component index carrying a term.
    pub fn max_component(&self) -> Option<usize> {
        self.terms.keys().map(|(c, _)| *c as usize).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|(_, m)| m.iter().all(|&e| e == 0))
    }

    /// The constant term of a rank-1 operator.
    pub fn constant_coef(&self) -> Coef {
        self.terms
            .iter()
            .find(|((_, m), _)| m.iter().all(|&e| e == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coef::zero)
    }

    /// Whether any term has a nonzero exponent in one of `slots`.
    pub fn involves(&self, slots: &[usize]) -> bool {
        self.terms.keys().any(|(_, m)| slots.iter().any(|&s| m[s] > 0))
    }

    /// max over terms of `<w, exponent> + m_component`; `None` for zero.
    pub fn order_of(&self, w: &WeightVector, m: &ShiftVector) -> Option<i64> {
        self.terms.keys().map(|(c, e)| w.eval(e) + m.get(*c as usize)).max()
    }

    /// V-order along the `t` variables with shift `m`.
    pub fn v_order(&self, m: &ShiftVector) -> Option<i64> {
        self.order_of(&WeightVector::v_weight(self.ring.d, self.ring.n), m)
    }

    /// max over terms of `deg + n_component`, counting the `h` exponent.
    pub fn total_degree(&self, n: &ShiftVector) -> Option<i64> {
        let ring = &self.ring;
        let p = ring.pairs();
        let h = ring.h_index();
        self.terms
            .keys()
            .map(|(c, e)| {
                let mut s: i64 = e[..2 * p].iter().map(|&x| x as i64).sum();
                if let Some(h) = h {
                    s += e[h] as i64;
                }
                s + n.get(*c as usize)
            })
            .max()
    }

    /// Substitutes 1 for `t0` or `h`.
    pub fn dehomogenize(&self) -> Result<Operator> {
        let l =
            self.ring.lambda().ok_or_else(|| DmodError::Precondition("dehomogenize on a ring without t0/h".into()))?;
        let target = self.ring.with_extension(Extension::None).into_ring();
        let mut out = Operator::zero(&target, self.rank);
        for ((c, m), k) in &self.terms {
            let mut mm: Mono = m.iter().copied().collect();
            mm.remove(l);
            out.add_term(*c, mm, k.clone());
        }
        Ok(out)
    }

    /// Inserts a zero `t0`/`h` slot, moving to the extended ring.
    pub fn lift_to(&self, ext: Extension) -> Result<Operator> {
        if self.ring.extension != Extension::None || ext == Extension::None {
            return Err(DmodError::Precondition("lift from a ring without extension".into()));
        }
        let target = self.ring.with_extension(ext).into_ring();
        let l = target.lambda().unwrap();
        let mut out = Operator::zero(&target, self.rank);
        for ((c, m), k) in &self.terms {
            let mut mm = m.clone();
            mm.insert(l, 0);
            out.terms.insert((*c, mm), k.clone());
        }
        Ok(out)
    }

    /// F[m]-homogenization with `t0`: each term gains `t0^(|nu|-|mu|+m_i-k)`.
    pub fn homogenize_f(&self, m: &ShiftVector) -> Result<Operator> {
        self.homogenize_f_weight(&WeightVector::v_weight(self.ring.d, self.ring.n), m)
    }

    pub fn homogenize_f_weight(&self, w: &WeightVector, m: &ShiftVector) -> Result<Operator> {
        let lifted = self.lift_to(Extension::T0)?;
        let Some(k) = self.order_of(w, m).map(|_| self.min_weight(w, m)) else {
            return Ok(lifted);
        };
        let l = lifted.ring.lambda().unwrap();
        let mut out = Operator::zero(&lifted.ring, self.rank);
        for ((c, e), coef) in &lifted.terms {
            let mut e = e.clone();
            e[l] = (w.eval(&e) + m.get(*c as usize) - k) as u16;
            out.terms.insert((*c, e), coef.clone());
        }
        Ok(out)
    }

    fn min_weight(&self, w: &WeightVector, m: &ShiftVector) -> i64 {
        self.terms.keys().map(|(c, e)| w.eval(e) + m.get(*c as usize)).min().unwrap_or(0)
    }

    /// h[n]-homogenization: each term gains `h^(k - |alpha| - |beta| - n_i)`.
    pub fn homogenize_h(&self, n: &ShiftVector) -> Result<Operator> {
        let lifted = self.lift_to(Extension::H)?;
        let Some(k) = self.total_degree(n) else {
            return Ok(lifted);
        };
        let l = lifted.ring.lambda().unwrap();
        let p = self.ring.pairs();
        let mut out = Operator::zero(&lifted.ring, self.rank);
        for ((c, e), coef) in &lifted.terms {
            let mut e = e.clone();
            let deg: i64 = e[..2 * p].iter().map(|&x| x as i64).sum();
            e[l] = (k - deg - n.get(*c as usize)) as u16;
            out.terms.insert((*c, e), coef.clone());
        }
        Ok(out)
    }

    /// Homogenizes with respect to total degree over every slot (including
    /// parameters), using `h`. Used to run non-graded computations in the
    /// homogenized algebra.
    pub fn homogenize_all(&self) -> Result<Operator> {
        if self.ring.extension != Extension::None {
            return Err(DmodError::Precondition("homogenize_all on extended ring".into()));
        }
        let lifted = self.lift_to(Extension::H)?;
        let l = lifted.ring.lambda().unwrap();
        let Some(k) = self.terms.keys().map(|(_, e)| mono::degree(e)).max() else {
            return Ok(lifted);
        };
        let mut out = Operator::zero(&lifted.ring, self.rank);
        for ((c, e), coef) in &lifted.terms {
            let mut e = e.clone();
            e[l] = (k - mono::degree(&e)) as u16;
            out.terms.insert((*c, e), coef.clone());
        }
        Ok(out)
    }

    /// Re-embeds into `target`, mapping slot `i` of `self` to slot `map[i]`.
    /// Slots of `target` not in the image get exponent zero.
    pub fn remap(&self, target: &Ring, map: &[usize]) -> Operator {
        let mut out = Operator::zero(target, self.rank);
        let nv = target.nvars();
        for ((c, e), coef) in &self.terms {
            let mut m = mono::zero_mono(nv);
            for (i, &x) in e.iter().enumerate() {
                m[map[i]] += x;
            }
            out.add_term(*c, m, coef.clone());
        }
        out
    }

    /// Algebra homomorphism given by the images of every slot. Each term
    /// `x^a dx^b c^e` is sent to the ordered product of images, so images must
    /// satisfy the defining relations of the source ring for the result to be
    /// meaningful.
    pub fn substitute(&self, target: &Ring, images: &[Operator]) -> Operator {
        let mut out = Operator::zero(target, self.rank);
        let mut cache: BTreeMap<(usize, u16), Operator> = BTreeMap::new();
        for ((c, e), coef) in &self.terms {
            let mut acc = Operator::constant(target, coef.clone());
            for (slot, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let pw = cache.entry((slot, x)).or_insert_with(|| images[slot].pow(x as u32)).clone();
                acc = acc.mul(&pw);
            }
            for ((_, m), k) in acc.terms {
                out.add_term(*c, m, k);
            }
        }
        out
    }

    /// Partial derivative of a commutative polynomial (a `dx`-free operator)
    /// with respect to the position variable in `slot`.
    pub fn poly_derivative(&self, slot: usize) -> Operator {
        let mut out = Operator::zero(&self.ring, self.rank);
        for ((c, e), coef) in &self.terms {
            if e[slot] > 0 {
                let mut m = e.clone();
                m[slot] -= 1;
                out.add_term(*c, m, coef * &Coef::from_int(e[slot] as i64));
            }
        }
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(usize, &[u16]) -> bool) -> Operator {
        Operator {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|((c, e), _)| keep(*c as usize, e))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Mono, &Coef)> {
        self.terms.iter().map(|((c, m), k)| (*c as usize, m, k))
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::render(self))
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::render(self))
    }
}

/// Builds the ring `A_{d+n}[v_1..v_d, w_1..w_d]` used by multi-homogenization.
pub fn mh_ring(ring: &RingSpec) -> Ring {
    let mut params: Vec<String> = (1..=ring.d).map(|i| format!("v{i}")).collect();
    params.extend((1..=ring.d).map(|i| format!("w{i}")));
    Arc::new(ring.without_params().with_params(params))
}

impl Operator {
    /// Multi-homogenization: each term gains `prod_j v_j^(nu_j - mu_j - kappa_j)`
    /// where `kappa_j` is the minimum of `nu_j - mu_j` over the terms.
    /// The result lives in [`mh_ring`].
    pub fn multi_homogenize(&self) -> Result<Operator> {
        let ring = &self.ring;
        if ring.extension != Extension::None || !ring.params.is_empty() {
            return Err(DmodError::Precondition("multi_homogenize on a plain Weyl algebra".into()));
        }
        if ring.d == 0 {
            return Err(DmodError::Precondition("multi_homogenize needs d >= 1".into()));
        }
        let target = mh_ring(ring);
        let p = ring.pairs();
        let d = ring.d;
        let mut kappa = vec![i64::MAX; d];
        for (_, e) in self.terms.keys() {
            for j in 0..d {
                kappa[j] = kappa[j].min(e[p + j] as i64 - e[j] as i64);
            }
        }
        let mut out = Operator::zero(&target, self.rank);
        for ((c, e), coef) in &self.terms {
            let mut m = mono::zero_mono(target.nvars());
            m[..2 * p].copy_from_slice(&e[..2 * p]);
            for j in 0..d {
                m[target.param(j)] = (e[p + j] as i64 - e[j] as i64 - kappa[j]) as u16;
            }
            out.terms.insert((*c, m), coef.clone());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    fn op(ring: &Ring, s: &str) -> Operator {
        parse(ring, s).unwrap()
    }

    #[test]
    fn commutation_relations() {
        let r = RingSpec::weyl(0, 1);
        assert_eq!(op(&r, "dx1").mul(&op(&r, "x1")), op(&r, "x1*dx1 + 1"));
        assert_eq!(op(&r, "dx1^2").mul(&op(&r, "x1")), op(&r, "x1*dx1^2 + 2*dx1"));
        let rh = RingSpec::new(0, 1, Extension::H).into_ring();
        assert_eq!(op(&rh, "dx1").mul(&op(&rh, "x1")), op(&rh, "x1*dx1 + h^2"));
    }

    #[test]
    fn homogenizations() {
        let r = RingSpec::weyl(1, 0);
        let p = op(&r, "dt1 + t1");
        let hp = p.homogenize_f(&ShiftVector::zero(1)).unwrap();
        assert_eq!(hp, op(&hp.ring, "t0^2*dt1 + t1"));
        assert_eq!(hp.dehomogenize().unwrap(), p);
        let q = op(&r, "t1*dt1 + 1");
        let hq = q.homogenize_f(&ShiftVector::zero(1)).unwrap();
        assert_eq!(hq, op(&hq.ring, "t1*dt1 + 1"));

        let r2 = RingSpec::weyl(0, 2);
        let p2 = op(&r2, "2*x1*dx1 + 3*x2*dx2 + 6");
        let h2 = p2.homogenize_h(&ShiftVector::zero(1)).unwrap();
        assert_eq!(h2, op(&h2.ring, "2*x1*dx1 + 3*x2*dx2 + 6*h^2"));
        assert_eq!(h2.dehomogenize().unwrap(), p2);
        let x2 = op(&r2, "x1^2");
        assert_eq!(x2.homogenize_h(&ShiftVector::zero(1)).unwrap().dehomogenize().unwrap(), x2);
    }

    #[test]
    fn module_homogenization_uses_shifts() {
        let r = RingSpec::weyl(1, 0);
        let v = Operator::from_components(&r, &[op(&r, "dt1"), op(&r, "t1")]);
        let m = ShiftVector(vec![0, 2]);
        assert_eq!(v.order_of(&WeightVector::v_weight(1, 0), &m), Some(1));
        let h = v.homogenize_f(&m).unwrap();
        // k = min(1, -1 + 2) = 1, so neither term gains t0.
        assert!(h.terms.keys().all(|(_, e)| e[h.ring.lambda().unwrap()] == 0));
    }

    #[test]
    fn orders_and_degrees() {
        let r = RingSpec::weyl(1, 0);
        let w = WeightVector::v_weight(1, 0);
        assert_eq!(op(&r, "t1*dt1").order_of(&w, &ShiftVector::zero(1)), Some(0));
        assert_eq!(op(&r, "dt1^2").order_of(&w, &ShiftVector::zero(1)), Some(2));
        let e2 = op(&r, "t1").embed(2, 1);
        assert_eq!(e2.order_of(&w, &ShiftVector(vec![0, 3])), Some(2));
        assert_eq!(Operator::zero(&r, 1).order_of(&w, &ShiftVector::zero(1)), None);

        let rh = RingSpec::new(0, 1, Extension::H).into_ring();
        assert_eq!(op(&rh, "h^2*x1").total_degree(&ShiftVector::zero(1)), Some(3));
        let r1 = RingSpec::weyl(0, 1);
        assert_eq!(op(&r1, "x1*dx1 + 1").total_degree(&ShiftVector::zero(1)), Some(2));
        let v = Operator::from_components(&r1, &[op(&r1, "x1"), op(&r1, "1")]);
        assert_eq!(v.total_degree(&ShiftVector(vec![0, 5])), Some(5));
    }

    #[test]
    fn multi_homogenization() {
        let r = RingSpec::weyl(1, 0);
        let p = op(&r, "dt1 + t1").multi_homogenize().unwrap();
        assert_eq!(p, op(&p.ring, "v1^2*dt1 + t1"));
        let q = op(&r, "t1*dt1^2 + dt1").multi_homogenize().unwrap();
        assert_eq!(q, op(&q.ring, "t1*dt1^2 + dt1"));
    }
}
