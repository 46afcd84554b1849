//! Gröbner bases of submodules of free modules over the Weyl algebra and its
//! homogenizations.

pub mod engine;
mod fgb;
pub mod poly;
mod presentation;
mod resolution;

use std::sync::Arc;

use crate::coef::Coef;
use crate::error::{DmodError, Result};
use crate::mono;
use crate::operator::Operator;
use crate::order::OrderSpec;
use crate::ring::{Extension, Ring, RingSpec};

pub use engine::{BuchbergerOptions, Quotient};
pub use fgb::{f_groebner, f_normal_form, Lift, Route};
pub use presentation::{
    holonomic_rank, is_zero_module, minimize_presentation, presentation_cohomology, syzygies_of, Matrix,
    ModulePresentation,
};
pub use resolution::{
    adapted_resolution, apply_rows, composite_is_zero, sort_for_schreyer, syzygy_basis, Resolution, SyzygyModule,
};

use poly::Poly;

/// Which homogeneity the basis elements carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    None,
    F,
    H,
}

/// How [`buchberger_with`] handles inputs that are not homogeneous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Homogenize with `h` unless the order already starts with total degree.
    #[default]
    Auto,
    Direct,
    Homogenize,
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub ring: Ring,
    pub rank: usize,
    pub order: OrderSpec,
    pub elements: Vec<Operator>,
    pub reduced: bool,
    pub flavor: Flavor,
    /// For F-flavored bases: the homogenized basis the elements came from.
    pub lifted: Option<Arc<Lift>>,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Operator> {
        self.elements.iter()
    }

    fn polys(&self) -> Vec<Poly> {
        self.elements.iter().map(|g| Poly::from_op(g, &self.order)).collect()
    }

    /// Full normal form of `p`. Needs a well-order.
    pub fn normal_form(&self, p: &Operator) -> Result<Operator> {
        check_well(&self.order)?;
        self.ring.check_same(&p.ring)?;
        let basis = self.polys();
        let r = engine::reduce(&self.ring, &self.order, Poly::from_op(p, &self.order), &basis, true, None);
        Ok(r.to_op(&self.ring, p.rank))
    }

    /// Membership test; F-flavored bases answer through a grevlex basis of
    /// the same module.
    pub fn contains(&self, p: &Operator) -> Result<bool> {
        if self.flavor == Flavor::F {
            let gens: Vec<Operator> = self.elements.iter().filter(|e| !e.is_zero()).cloned().collect();
            if gens.is_empty() {
                return Ok(p.is_zero());
            }
            return buchberger(&gens, &OrderSpec::grevlex(&self.ring, self.rank))?.contains(p);
        }
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Leading (exponent, component) of each element.
    pub fn leads(&self) -> Vec<(mono::Mono, usize)> {
        self.elements.iter().map(|g| lead_of(g, &self.order)).collect()
    }
}

/// Leading (exponent, component) of a nonzero operator.
pub fn lead_of(p: &Operator, ord: &OrderSpec) -> (mono::Mono, usize) {
    let (m, c) = ord.max_of(p.iter().map(|(c, m, _)| (m, c))).expect("lead of zero");
    (m.clone(), c)
}

/// Leading coefficient of a nonzero operator.
pub fn lead_coef(p: &Operator, ord: &OrderSpec) -> Coef {
    let (m, c) = lead_of(p, ord);
    p.terms[&(c as u32, m)].clone()
}

fn check_well(ord: &OrderSpec) -> Result<()> {
    if !ord.is_well_order() {
        return Err(DmodError::InvalidOrder("operation needs a well-order; use the F-order routines".into()));
    }
    Ok(())
}

fn check_inputs(gens: &[Operator]) -> Result<(Ring, usize)> {
    let first = gens.first().ok_or_else(|| DmodError::Precondition("at least one generator".into()))?;
    for g in gens {
        first.ring.check_same(&g.ring)?;
        if g.rank != first.rank {
            return Err(DmodError::Dimension(format!("generator ranks {} and {}", first.rank, g.rank)));
        }
    }
    Ok((first.ring.clone(), first.rank))
}

/// Division with quotients: `p = sum q_j g_j + r` with no term of `r` in a
/// leading cone of `g`.
pub fn divide(p: &Operator, g: &[Operator], ord: &OrderSpec) -> Result<(Vec<Operator>, Operator)> {
    check_well(ord)?;
    for gi in g {
        p.ring.check_same(&gi.ring)?;
        if gi.rank != p.rank {
            return Err(DmodError::Dimension("divisor rank".into()));
        }
    }
    let ring = p.ring.clone();
    let basis: Vec<Poly> = g.iter().map(|x| Poly::from_op(x, ord)).collect();
    if basis.iter().any(Poly::is_zero) {
        return Err(DmodError::Precondition("nonzero divisors".into()));
    }
    let mut qs: Vec<Quotient> = vec![Vec::new(); g.len()];
    let r = engine::reduce(&ring, ord, Poly::from_op(p, ord), &basis, true, Some(&mut qs));
    let quotients = qs.into_iter().map(|q| quotient_op(&ring, q)).collect();
    Ok((quotients, r.to_op(&ring, p.rank)))
}

/// Collects a quotient transcript into a rank-1 operator.
pub fn quotient_op(ring: &Ring, q: Quotient) -> Operator {
    let mut op = Operator::zero(ring, 1);
    for (m, c) in q {
        op.add_term(0, m, c);
    }
    op
}

/// Reduced Gröbner basis of the module generated by `gens` under a well-order.
pub fn buchberger(gens: &[Operator], ord: &OrderSpec) -> Result<GroebnerBasis> {
    buchberger_with(gens, ord, Strategy::Auto)
}

fn is_degree_compatible(ord: &OrderSpec) -> bool {
    match ord.rows.first() {
        None => ord.tie == crate::order::Tie::Grevlex,
        Some(r) => r.homogenizing || r.weights.iter().all(|&w| w == r.weights[0] && w > 0),
    }
}

pub fn buchberger_with(gens: &[Operator], ord: &OrderSpec, strategy: Strategy) -> Result<GroebnerBasis> {
    check_well(ord)?;
    let nonzero: Vec<Operator> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        let (ring, rank) = match gens.first() {
            Some(g) => (g.ring.clone(), g.rank),
            None => return Err(DmodError::Precondition("at least one generator".into())),
        };
        return Ok(GroebnerBasis {
            ring,
            rank,
            order: ord.clone(),
            elements: Vec::new(),
            reduced: true,
            flavor: Flavor::None,
            lifted: None,
        });
    }
    let (ring, rank) = check_inputs(&nonzero)?;
    if ord.nvars != ring.nvars() {
        return Err(DmodError::Dimension(format!("order on {} slots for ring {}", ord.nvars, ring)));
    }
    let homogenize = match strategy {
        Strategy::Direct => false,
        Strategy::Homogenize => true,
        Strategy::Auto => !is_degree_compatible(ord),
    } && ring.extension == Extension::None;
    let elements = if homogenize {
        homogenized_gb(&ring, ord, &nonzero)?
    } else {
        let polys = nonzero.iter().map(|g| Poly::from_op(g, ord)).collect();
        engine::buchberger(&ring, ord, polys, &BuchbergerOptions::default())
    };
    let flavor = if ring.extension == Extension::H { Flavor::H } else { Flavor::None };
    Ok(GroebnerBasis {
        ring: ring.clone(),
        rank,
        order: ord.clone(),
        elements: elements.iter().map(|p| p.to_op(&ring, rank)).collect(),
        reduced: true,
        flavor,
        lifted: None,
    })
}

/// Runs Buchberger on the `h`-homogenized generators under the homogenized
/// order, then dehomogenizes and inter-reduces under `ord`.
fn homogenized_gb(ring: &Ring, ord: &OrderSpec, gens: &[Operator]) -> Result<Vec<Poly>> {
    let hring: Ring = ring.with_extension(Extension::H).into_ring();
    let hord = ord.homogenized(&hring);
    let hgens: Vec<Poly> =
        gens.iter().map(|g| g.homogenize_all().map(|h| Poly::from_op(&h, &hord))).collect::<Result<_>>()?;
    let hgb = engine::buchberger(&hring, &hord, hgens, &BuchbergerOptions { reduce: false });
    let rank = gens[0].rank;
    let mut back: Vec<Poly> = Vec::with_capacity(hgb.len());
    for g in hgb {
        let op = g.to_op(&hring, rank).dehomogenize()?;
        back.push(Poly::from_op(&op, ord));
    }
    Ok(engine::interreduce(ring, ord, back))
}

/// Canonical reduced form of a Gröbner basis.
pub fn reduce_basis(g: &GroebnerBasis) -> Result<GroebnerBasis> {
    if g.reduced {
        return Ok(g.clone());
    }
    check_well(&g.order)?;
    let polys = engine::interreduce(&g.ring, &g.order, g.polys());
    Ok(GroebnerBasis { elements: polys.iter().map(|p| p.to_op(&g.ring, g.rank)).collect(), reduced: true, ..g.clone() })
}

/// Ring of `p` with the given extension, used when lifting operators.
pub(crate) fn extended(ring: &RingSpec, ext: Extension) -> Ring {
    ring.with_extension(ext).into_ring()
}
