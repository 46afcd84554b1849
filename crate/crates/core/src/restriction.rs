//! Cohomology of the restriction of `A_{d+n}^r / N` to `t = 0`, through the
//! window `[k0, k1]` of an adapted resolution tensored with `A_n[dt]`.

use rayon::prelude::*;

use crate::bfunction::{b_function, BPoly};
use crate::error::{DmodError, Result};
use crate::groebner::{
    adapted_resolution, minimize_presentation, presentation_cohomology, Matrix, ModulePresentation, Route,
};
use crate::mono::{self, Mono};
use crate::operator::{Operator, ShiftVector, WeightVector};
use crate::ring::{Extension, Ring, RingSpec};

/// A basis vector `dt^nu e_i` of a truncated level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub nu: Vec<u16>,
    pub i: usize,
}

impl Label {
    fn key(&self) -> (u32, Vec<u16>, usize) {
        let total = self.nu.iter().map(|&x| x as u32).sum();
        (total, self.nu.iter().rev().copied().collect(), self.i)
    }
}

/// All `nu` in `N^d` with `|nu| = k`.
fn compositions(d: usize, k: u32) -> Vec<Vec<u16>> {
    if d == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(d - 1, k - first) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

/// Labels `(nu, i)` with `k0 - m_i <= |nu| <= k1 - m_i`, sorted by
/// `(|nu|, reverse-lex nu, i)`.
pub fn window_labels(d: usize, m: &ShiftVector, k0: i64, k1: i64) -> Vec<Label> {
    let mut out = Vec::new();
    for i in 0..m.len() {
        let lo = (k0 - m.get(i)).max(0);
        let hi = k1 - m.get(i);
        for k in lo..=hi {
            for nu in compositions(d, k as u32) {
                out.push(Label { nu, i });
            }
        }
    }
    out.sort_by_key(Label::key);
    out
}

/// `A_n` for a ring `A_{d+n}`.
pub fn target_ring(ring: &RingSpec) -> Ring {
    RingSpec::new(0, ring.n, Extension::None).with_names(ring.pos_names[ring.d..].to_vec()).into_ring()
}

/// The map induced by `rows` (one per basis vector of `F_j`, each in
/// `F_(j-1)`) on the windows of `A_n[dt]^(r_j) -> A_n[dt]^(r_(j-1))`.
pub fn induced_matrix(
    rows: &[Operator],
    m_prev: &ShiftVector,
    m_cur: &ShiftVector,
    k0: i64,
    k1: i64,
) -> Result<Matrix> {
    if rows.len() != m_cur.len() {
        return Err(DmodError::Dimension(format!("{} rows for shift of length {}", rows.len(), m_cur.len())));
    }
    let Some(first) = rows.first() else {
        return Err(DmodError::Precondition("at least one row".into()));
    };
    let ring = first.ring.clone();
    let (d, n, p) = (ring.d, ring.n, ring.pairs());
    let target = target_ring(&ring);
    let src = window_labels(d, m_cur, k0, k1);
    let tgt = window_labels(d, m_prev, k0, k1);
    let v = WeightVector::v_weight(d, n);
    for (i, r) in rows.iter().enumerate() {
        if r.order_of(&v, m_prev).is_some_and(|o| o > m_cur.get(i)) {
            return Err(DmodError::Precondition(format!("row {i} is not adapted to the shifts")));
        }
    }
    let index: std::collections::HashMap<&Label, usize> = tgt.iter().enumerate().map(|(j, l)| (l, j)).collect();
    let out: Vec<Operator> = src
        .par_iter()
        .map(|lab| {
            let mut dnu = mono::zero_mono(ring.nvars());
            for j in 0..d {
                dnu[ring.dt(j)] = lab.nu[j];
            }
            let img = Operator::monomial(&ring, 1, 0, dnu, crate::coef::Coef::one()).mul(&rows[lab.i]);
            let mut row = Operator::zero(&target, tgt.len());
            for (c, e, k) in img.iter() {
                if e[..d].iter().any(|&x| x > 0) {
                    continue;
                }
                let sigma: Vec<u16> = e[p..p + d].to_vec();
                let Some(&col) = index.get(&Label { nu: sigma, i: c }) else { continue };
                let mut m: Mono = mono::zero_mono(target.nvars());
                for a in 0..n {
                    m[a] = e[d + a];
                    m[n + a] = e[p + d + a];
                }
                row.add_term(col as u32, m, k.clone());
            }
            row
        })
        .collect();
    Ok(Matrix::new(&target, tgt.len(), out))
}

/// The window complex of a restriction.
#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    pub ring: Ring,
    /// `None` when a trusted window was supplied.
    pub b: Option<BPoly>,
    /// `None` when `b` has no integer root (the restriction vanishes).
    pub window: Option<(i64, i64)>,
    /// Shift vectors `m_0, ..., m_l`.
    pub shifts: Vec<ShiftVector>,
    /// Basis labels of each level `0..=l`.
    pub levels: Vec<Vec<Label>>,
    /// `maps[j - 1]` is the matrix of level `j` into level `j - 1`.
    pub maps: Vec<Matrix>,
}

impl TruncatedComplex {
    pub fn rank(&self, j: usize) -> usize {
        self.levels.get(j).map_or(0, Vec::len)
    }

    /// Checks that consecutive maps compose to zero.
    pub fn composite_is_zero(&self) -> bool {
        for j in 1..self.maps.len() {
            let (a, b) = (&self.maps[j], &self.maps[j - 1]);
            for row in &a.rows {
                if !crate::groebner::apply_rows(row, &b.rows, b.cols).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Options for [`restrict`].
#[derive(Clone, Debug, Default)]
pub struct RestrictOptions {
    pub route: Route,
    /// Largest `i` for which `H^(-i)` is wanted; defaults to `d`.
    pub depth: Option<usize>,
    /// Replaces `[k0, k1]`; must contain every integer root of `b`.
    pub window: Option<(i64, i64)>,
    /// Use `window` as given without computing `b`.
    pub trust_window: bool,
}

/// Builds the window complex for degrees `0, -1, ..., -depth`.
pub fn restriction_complex(gens: &[Operator], m: &ShiftVector, opts: &RestrictOptions) -> Result<TruncatedComplex> {
    let first = gens.first().ok_or_else(|| DmodError::Precondition("at least one generator".into()))?;
    let ring = first.ring.clone();
    let d = ring.d;
    let depth = opts.depth.unwrap_or(d).min(d);
    let (b, window) = match opts.window {
        Some((a, c)) if opts.trust_window => {
            if a > c {
                return Err(DmodError::Precondition(format!("empty window [{a}, {c}]")));
            }
            (None, Some((a, c)))
        }
        _ => {
            let bf = b_function(gens, m, opts.route)?;
            if bf.b.is_zero() {
                return Err(DmodError::NotSpecializable);
            }
            let roots = bf.b.integer_roots();
            let window = match (opts.window, roots.first()) {
                (Some((a, c)), _) => {
                    if a > c || roots.iter().any(|&r| r < a || r > c) {
                        return Err(DmodError::Precondition(format!(
                            "window [{a}, {c}] must contain the integer roots {roots:?}"
                        )));
                    }
                    Some((a, c))
                }
                (None, Some(&lo)) => Some((lo, *roots.last().unwrap())),
                (None, None) => None,
            };
            (Some(bf.b), window)
        }
    };
    let mut cx = TruncatedComplex {
        ring: ring.clone(),
        b,
        window,
        shifts: vec![m.clone()],
        levels: Vec::new(),
        maps: Vec::new(),
    };
    let Some((k0, k1)) = window else { return Ok(cx) };
    let res = adapted_resolution(gens, &WeightVector::v_weight(d, ring.n), m, depth + 1, opts.route)?;
    cx.shifts = res.shifts.clone();
    while cx.shifts.len() < depth + 2 {
        cx.shifts.push(ShiftVector::zero(0));
    }
    cx.levels = cx.shifts.iter().map(|s| window_labels(d, s, k0, k1)).collect();
    let target = target_ring(&ring);
    for j in 1..=depth + 1 {
        let rows = res.levels.get(j - 1).cloned().unwrap_or_default();
        let mat = if rows.is_empty() {
            Matrix::new(&target, cx.levels[j - 1].len(), Vec::new())
        } else {
            induced_matrix(&rows, &cx.shifts[j - 1], &cx.shifts[j], k0, k1)?
        };
        cx.maps.push(mat);
    }
    Ok(cx)
}

/// `H^(-i)` of the restriction for `i = 0..=depth`, as minimized
/// presentations over `A_n`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub complex: TruncatedComplex,
    pub cohomology: Vec<ModulePresentation>,
}

impl Restriction {
    /// Dimensions over Q when restricting to a point.
    pub fn dimensions(&self) -> Option<Vec<usize>> {
        self.cohomology.iter().map(ModulePresentation::dimension).collect()
    }
}

pub fn restrict(gens: &[Operator], m: &ShiftVector, opts: &RestrictOptions) -> Result<Restriction> {
    let cx = restriction_complex(gens, m, opts)?;
    let ring = cx.ring.clone();
    let depth = opts.depth.unwrap_or(ring.d).min(ring.d);
    let target = target_ring(&ring);
    if cx.window.is_none() {
        return Ok(Restriction { complex: cx, cohomology: vec![ModulePresentation::zero(&target); depth + 1] });
    }
    let cohomology = (0..=depth)
        .into_par_iter()
        .map(|i| {
            let out = if i == 0 {
                let rank = cx.rank(0);
                Matrix::new(&target, 0, vec![Operator::zero(&target, 0); rank])
            } else {
                cx.maps[i - 1].clone()
            };
            let h = presentation_cohomology(&out, &cx.maps[i])?;
            minimize_presentation(&h)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Restriction { complex: cx, cohomology })
}
