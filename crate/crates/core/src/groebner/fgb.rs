//! Gröbner bases for the (non-well) orders `<_F` adapted to a weight `w` and
//! shift `m`, computed through one of the two homogenizations.

use std::sync::Arc;

use crate::error::{DmodError, Result};
use crate::mono;
use crate::operator::{Operator, ShiftVector, WeightVector};
use crate::order::OrderSpec;
use crate::ring::{Extension, Ring};

use super::engine::{self, BuchbergerOptions};
use super::poly::Poly;
use super::{extended, Flavor, GroebnerBasis};

/// Which homogenized algebra carries the computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Route {
    /// `A[t0]` with the `F[m]`-homogenization and `<_H`.
    T0,
    /// `A^(h)` with the `h[n]`-homogenization and `<_{h[n]}`.
    #[default]
    H,
}

/// The homogenized basis behind an F-flavored basis.
#[derive(Clone, Debug)]
pub struct Lift {
    pub route: Route,
    pub w: WeightVector,
    pub m: ShiftVector,
    /// Degree shifts (route `h` only; zeros for `t0`).
    pub n: ShiftVector,
    /// Basis in the homogenized ring, index-aligned with the dehomogenized one.
    pub basis: GroebnerBasis,
}

impl Lift {
    /// Homogenizes `p` the same way the generators were.
    pub fn homogenize(&self, p: &Operator) -> Result<Operator> {
        match self.route {
            Route::T0 => p.homogenize_f_weight(&self.w, &self.m),
            Route::H => p.homogenize_h(&self.n),
        }
    }
}

fn check_route(ring: &Ring, w: &WeightVector, route: Route) -> Result<()> {
    if ring.extension != Extension::None {
        return Err(DmodError::Precondition("F-Gröbner bases take generators in a plain Weyl algebra".into()));
    }
    w.validate(ring)?;
    if route == Route::T0 {
        let p = ring.pairs();
        if (0..p).any(|i| w.0[i] + w.0[p + i] != 0) {
            return Err(DmodError::InvalidWeight("route t0 needs w_i + w_(n+i) = 0".into()));
        }
    }
    Ok(())
}

/// F[m]-Gröbner basis of the module generated by `gens`, with weight `w`
/// (the V-weight for restriction) and shift `m`.
pub fn f_groebner(gens: &[Operator], w: &WeightVector, m: &ShiftVector, route: Route) -> Result<GroebnerBasis> {
    let first = gens.first().ok_or_else(|| DmodError::Precondition("at least one generator".into()))?;
    let ring = first.ring.clone();
    let rank = first.rank;
    if m.len() != rank {
        return Err(DmodError::Dimension(format!("shift of length {} for rank {rank}", m.len())));
    }
    check_route(&ring, w, route)?;
    let n = ShiftVector::zero(rank);
    let (hring, hord) = lifted_order(&ring, w, m, &n, route)?;
    let mut hgens = Vec::new();
    for g in gens {
        ring.check_same(&g.ring)?;
        if g.is_zero() {
            continue;
        }
        let h = match route {
            Route::T0 => g.homogenize_f_weight(w, m)?,
            Route::H => g.homogenize_h(&n)?,
        };
        hgens.push(Poly::from_op(&h, &hord));
    }
    let hgb = engine::buchberger(&hring, &hord, hgens, &BuchbergerOptions::default());
    let helems: Vec<Operator> = hgb.iter().map(|p| p.to_op(&hring, rank)).collect();
    let lifted = GroebnerBasis {
        ring: hring.clone(),
        rank,
        order: hord,
        elements: helems.clone(),
        reduced: true,
        flavor: if route == Route::H { Flavor::H } else { Flavor::F },
        lifted: None,
    };
    let elements = helems.iter().map(|g| g.dehomogenize()).collect::<Result<Vec<_>>>()?;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        rank,
        order: OrderSpec::f_order(&ring, w, m)?,
        elements,
        reduced: false,
        flavor: Flavor::F,
        lifted: Some(Arc::new(Lift { route, w: w.clone(), m: m.clone(), n, basis: lifted })),
    })
}

/// The homogenized ring and its order for the given route.
pub(crate) fn lifted_order(
    ring: &Ring,
    w: &WeightVector,
    m: &ShiftVector,
    n: &ShiftVector,
    route: Route,
) -> Result<(Ring, OrderSpec)> {
    match route {
        Route::T0 => {
            let hring = extended(ring, Extension::T0);
            let ord = OrderSpec::h_order_t0(&hring, m.len())?;
            Ok((hring, ord))
        }
        Route::H => {
            let hring = extended(ring, Extension::H);
            let ord = OrderSpec::h_deg_order(&hring, w, m, n)?;
            Ok((hring, ord))
        }
    }
}

/// Remainder of `p` modulo an F-flavored basis: `p - r` lies in the module
/// and the F-leading exponent of `r` (if nonzero) lies outside every
/// leading cone of the basis.
pub fn f_normal_form(g: &GroebnerBasis, p: &Operator) -> Result<Operator> {
    let lift = g.lifted.as_ref().ok_or_else(|| DmodError::Precondition("an F-flavored basis".into()))?;
    g.ring.check_same(&p.ring)?;
    if p.is_zero() {
        return Ok(p.clone());
    }
    let hb = &lift.basis;
    let basis: Vec<Poly> = hb.elements.iter().map(|e| Poly::from_op(e, &hb.order)).collect();
    let leads = g.leads();
    let hp = lift.homogenize(p)?;
    let l = hb.ring.lambda().unwrap();
    let fo = &g.order;
    for nu in 0..256u16 {
        let mut shifted = hp.clone();
        shifted.terms = hp
            .terms
            .iter()
            .map(|((c, e), k)| {
                let mut e = e.clone();
                e[l] += nu;
                ((*c, e), k.clone())
            })
            .collect();
        let r = engine::reduce(&hb.ring, &hb.order, Poly::from_op(&shifted, &hb.order), &basis, true, None);
        let rr = r.to_op(&hb.ring, p.rank).dehomogenize()?;
        if rr.is_zero() {
            return Ok(rr);
        }
        let (lm, lc) = super::lead_of(&rr, fo);
        let covered = leads.iter().any(|(gm, gc)| *gc == lc && mono::divides(gm, &lm));
        if !covered {
            return Ok(rr);
        }
    }
    Err(DmodError::Internal("F-division did not settle".into()))
}
