//! Tensor products, Bernstein-Sato polynomials, localization and algebraic
//! local cohomology, each reduced to restriction along a linear subspace.

use crate::bfunction::{b_function, theta_subring_generators, BPoly};
use crate::coef::Coef;
use crate::error::{DmodError, Result};
use crate::groebner::{buchberger, reduce_basis, ModulePresentation, Route};
use crate::operator::{Operator, ShiftVector};
use crate::order::OrderSpec;
use crate::restriction::{restrict, RestrictOptions};
use crate::ring::{Extension, Ring, RingSpec};

fn plain(ring: &RingSpec) -> Result<()> {
    if ring.d != 0 || ring.extension != Extension::None || !ring.params.is_empty() {
        return Err(DmodError::Precondition("modules over a plain A_n (no t variables)".into()));
    }
    Ok(())
}

/// `n` names `prefix1..prefixn` for the first prefix that avoids `taken`.
fn fresh(taken: &[String], n: usize, prefixes: &[&str]) -> Vec<String> {
    for p in prefixes {
        let names: Vec<String> = (1..=n).map(|i| format!("{p}{i}")).collect();
        if names.iter().all(|x| !taken.iter().any(|t| t == x || format!("d{t}") == *x || format!("d{x}") == *t)) {
            return names;
        }
    }
    (1..=n).map(|i| format!("{}{i}", prefixes[0].repeat(2))).collect()
}

fn check_module(gens: &[Operator]) -> Result<(Ring, usize)> {
    let first = gens.first().ok_or_else(|| DmodError::Precondition("at least one generator".into()))?;
    for g in gens {
        first.ring.check_same(&g.ring)?;
        if g.rank != first.rank {
            return Err(DmodError::Dimension("generators of different ranks".into()));
        }
    }
    Ok((first.ring.clone(), first.rank))
}

/// Generators of `N_1 ⊗ A + A ⊗ N_2` in `A_{2n}^(r_1 r_2)`, variables
/// `x` then `y`, with component `(i, j)` at `i * r_2 + j`.
pub fn exterior_tensor(n1: &[Operator], n2: &[Operator]) -> Result<Vec<Operator>> {
    let (r1ring, r1) = check_module(n1)?;
    let (r2ring, r2) = check_module(n2)?;
    r1ring.check_same(&r2ring)?;
    plain(&r1ring)?;
    let n = r1ring.n;
    let mut names = r1ring.pos_names.clone();
    names.extend(fresh(&names, n, &["y", "u", "w"]));
    let ring = RingSpec::new(0, 2 * n, Extension::None).with_names(names).into_ring();
    // x block: slots i and 2n + i; y block: n + i and 3n + i.
    let left: Vec<usize> = (0..n).chain(2 * n..3 * n).collect();
    let right: Vec<usize> = (n..2 * n).chain(3 * n..4 * n).collect();
    let mut out = Vec::new();
    for p in n1 {
        let p = p.remap(&ring, &left);
        for j in 0..r2 {
            let mut v = Operator::zero(&ring, r1 * r2);
            for (i, m, c) in p.iter() {
                v.add_term((i * r2 + j) as u32, m.clone(), c.clone());
            }
            out.push(v);
        }
    }
    for q in n2 {
        let q = q.remap(&ring, &right);
        for i in 0..r1 {
            let mut v = Operator::zero(&ring, r1 * r2);
            for (j, m, c) in q.iter() {
                v.add_term((i * r2 + j) as u32, m.clone(), c.clone());
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// `Tor_k(M_1, M_2)` for `k = 0..=depth` (at most `n`).
pub fn tor(n1: &[Operator], n2: &[Operator], depth: Option<usize>, route: Route) -> Result<Vec<ModulePresentation>> {
    let g3 = exterior_tensor(n1, n2)?;
    let xring = &n1[0].ring;
    let n = xring.n;
    let ext = &g3[0].ring;
    let mut names: Vec<String> = fresh(&xring.pos_names, n, &["t", "s", "r"]);
    names.extend(xring.pos_names.iter().cloned());
    let ring = RingSpec::new(n, n, Extension::None).with_names(names).into_ring();
    // Old (x, y) -> new (t, x): y = x + t, dx_old = dx - dt, dy = dt.
    let v = |s: usize| Operator::var(&ring, s);
    let mut images = Vec::with_capacity(ext.nvars());
    for i in 0..n {
        images.push(v(ring.x(i)));
    }
    for i in 0..n {
        images.push(v(ring.x(i)).add(&v(ring.t(i))));
    }
    for i in 0..n {
        images.push(v(ring.dx(i)).sub(&v(ring.dt(i))));
    }
    for i in 0..n {
        images.push(v(ring.dt(i)));
    }
    let g4: Vec<Operator> = g3.iter().map(|g| g.substitute(&ring, &images)).collect();
    let rank = g4[0].rank;
    let opts = RestrictOptions { route, depth: Some(depth.unwrap_or(n).min(n)), ..Default::default() };
    Ok(restrict(&g4, &ShiftVector::zero(rank), &opts)?.cohomology)
}

/// The ideal of `A_{1+n}` annihilating `delta(t - f)`.
fn graph_ideal(f: &Operator) -> Result<(Ring, Vec<Operator>)> {
    let xring = &f.ring;
    plain(xring)?;
    if f.rank != 1 || f.involves(&(xring.n..2 * xring.n).collect::<Vec<_>>()) {
        return Err(DmodError::Precondition("f must be a polynomial in x".into()));
    }
    if f.is_constant() {
        return Err(DmodError::Precondition("f must be non-constant".into()));
    }
    let n = xring.n;
    let mut names = fresh(&xring.pos_names, 1, &["t", "s", "r"]);
    names.extend(xring.pos_names.iter().cloned());
    let ring = RingSpec::new(1, n, Extension::None).with_names(names).into_ring();
    let map: Vec<usize> = (0..n).map(|i| ring.x(i)).chain((0..n).map(|i| ring.dx(i))).collect();
    let fr = f.remap(&ring, &map);
    let mut gens = vec![Operator::var(&ring, ring.t(0)).sub(&fr)];
    let dt = Operator::var(&ring, ring.dt(0));
    for i in 0..n {
        gens.push(Operator::var(&ring, ring.dx(i)).add(&fr.poly_derivative(ring.x(i)).mul(&dt)));
    }
    Ok((ring, gens))
}

/// `b_f(s)`, the Bernstein-Sato polynomial of `f`.
pub fn bernstein_sato(f: &Operator, route: Route) -> Result<BPoly> {
    let (_, gens) = graph_ideal(f)?;
    let b = b_function(&gens, &ShiftVector::zero(1), route)?.b;
    if b.is_zero() {
        return Err(DmodError::NotSpecializable);
    }
    Ok(b.reflect())
}

/// `A_n[s]` for a ring `A_n`.
pub fn fs_ring(ring: &RingSpec) -> Ring {
    RingSpec::new(0, ring.n, Extension::None)
        .with_names(ring.pos_names.clone())
        .with_params(vec!["s".into()])
        .into_ring()
}

/// Generators of the annihilator of `f^s` in `A_n[s]`, as a reduced
/// Gröbner basis.
pub fn ann_fs(f: &Operator) -> Result<Vec<Operator>> {
    let (_, gens) = graph_ideal(f)?;
    let g2 = theta_subring_generators(&gens)?;
    let target = fs_ring(&f.ring);
    let n = f.ring.n;
    // t dt acts as -s - 1.
    let mut images: Vec<Operator> = (0..2 * n).map(|i| Operator::var(&target, i)).collect();
    images.push(Operator::var(&target, target.param(0)).neg().sub(&Operator::one(&target)));
    let mapped: Vec<Operator> = g2.iter().map(|g| g.substitute(&target, &images)).collect();
    Ok(buchberger(&mapped, &OrderSpec::grevlex(&target, 1))?.elements)
}

/// Whether `p` (in `A_n[s]`) kills `f^s`, using `dx_i f^s = s f_i f^(s - 1)`.
pub fn kills_fs(p: &Operator, f: &Operator) -> Result<bool> {
    let ring = p.ring.clone();
    let n = ring.n;
    if ring.params.len() != 1 || f.ring.n != n {
        return Err(DmodError::Precondition("an operator of A_n[s] and a polynomial of A_n".into()));
    }
    let map: Vec<usize> = (0..2 * n).collect();
    let fr = f.remap(&ring, &map);
    let s = Operator::var(&ring, ring.param(0));
    let max_k = p.iter().map(|(_, e, _)| e[n..2 * n].iter().map(|&x| x as u32).sum::<u32>()).max().unwrap_or(0);
    // dx^beta f^s = g_beta f^(s - |beta|), memoized by beta.
    let mut memo: std::collections::HashMap<Vec<u16>, Operator> = std::collections::HashMap::new();
    fn apply(
        beta: &[u16],
        memo: &mut std::collections::HashMap<Vec<u16>, Operator>,
        fr: &Operator,
        s: &Operator,
        ring: &Ring,
    ) -> Operator {
        if let Some(g) = memo.get(beta) {
            return g.clone();
        }
        let n = beta.len();
        let out = match beta.iter().position(|&b| b > 0) {
            None => Operator::one(ring),
            Some(i) => {
                let mut prev = beta.to_vec();
                prev[i] -= 1;
                let g = apply(&prev, memo, fr, s, ring);
                let k: u32 = prev.iter().map(|&x| x as u32).sum();
                // d_i (g f^(s-k)) = (d_i g f + (s - k) g f_i) f^(s-k-1)
                let sk = s.sub(&Operator::constant(ring, Coef::from_int(k as i64)));
                g.poly_derivative(i).mul(fr).add(&sk.mul(&g).mul(&fr.poly_derivative(i)))
            }
        };
        let _ = n;
        memo.insert(beta.to_vec(), out.clone());
        out
    }
    let mut total = Operator::zero(&ring, 1);
    for (_, e, c) in p.iter() {
        let beta: Vec<u16> = e[n..2 * n].to_vec();
        let k: u32 = beta.iter().map(|&x| x as u32).sum();
        let g = apply(&beta, &mut memo, &fr, &s, &ring);
        let mut front = e.clone();
        for b in front[n..2 * n].iter_mut() {
            *b = 0;
        }
        let mono = Operator::monomial(&ring, 1, 0, front, c.clone());
        total = total.add(&mono.mul(&g).mul(&fr.pow(max_k - k)));
    }
    Ok(total.is_zero())
}

/// `J_f(nu)`: `s` replaced by the integer `nu`.
fn specialize_s(gens: &[Operator], nu: i64, xring: &Ring) -> Vec<Operator> {
    let n = xring.n;
    let mut images: Vec<Operator> = (0..2 * n).map(|i| Operator::var(xring, i)).collect();
    images.push(Operator::constant(xring, Coef::from_int(nu)));
    gens.iter().map(|g| g.substitute(xring, &images)).filter(|g| !g.is_zero()).collect()
}

/// Output of [`localize`].
#[derive(Clone, Debug)]
pub struct Localization {
    pub bs: BPoly,
    pub nu: i64,
    /// A presentation of `O[1/f]`: `A_n / J_f(nu)`.
    pub o_f: Vec<Operator>,
    pub module: ModulePresentation,
}

/// `M[1/f]` as `Tor_0(O[1/f], M)`.
pub fn localize(gens: &[Operator], f: &Operator, route: Route) -> Result<Localization> {
    let (ring, _) = check_module(gens)?;
    ring.check_same(&f.ring)?;
    let bs = bernstein_sato(f, route)?;
    let nu = *bs.integer_roots().first().ok_or_else(|| DmodError::Internal("b_f(s) has no integer root".into()))?;
    let jf = ann_fs(f)?;
    let o_f = specialize_s(&jf, nu, &ring);
    let t = tor(&o_f, gens, Some(0), route)?;
    let module = t.into_iter().next().unwrap();
    Ok(Localization { bs, nu, o_f, module })
}

/// `H^i_[Y](M)` for `i = 0..=d`, with `Y = {f_1 = ... = f_d = 0}`.
pub fn local_cohomology(gens: &[Operator], fs: &[Operator], route: Route) -> Result<Vec<ModulePresentation>> {
    let (xring, r) = check_module(gens)?;
    plain(&xring)?;
    let (d, n) = (fs.len(), xring.n);
    if d == 0 {
        return Err(DmodError::Precondition("at least one polynomial".into()));
    }
    for f in fs {
        xring.check_same(&f.ring)?;
        if f.rank != 1 || f.involves(&(n..2 * n).collect::<Vec<_>>()) {
            return Err(DmodError::Precondition("the f_j must be polynomials in x".into()));
        }
    }
    let xnames = xring.pos_names.clone();
    let tnames = fresh(&xnames, d, &["t", "s", "r"]);
    let mut taken = xnames.clone();
    taken.extend(tnames.iter().cloned());
    let znames = fresh(&taken, n, &["z", "u", "w"]);

    // Ring of (z, [t, x]) with z the restriction variables.
    let mut names = znames.clone();
    names.extend(tnames.iter().cloned());
    names.extend(xnames.iter().cloned());
    let big = RingSpec::new(n, d + n, Extension::None).with_names(names).into_ring();
    let z = |i: usize| Operator::var(&big, big.t(i));
    let dz = |i: usize| Operator::var(&big, big.dt(i));
    let t = |j: usize| Operator::var(&big, big.x(j));
    let dt = |j: usize| Operator::var(&big, big.dt(n + j));
    let x = |i: usize| Operator::var(&big, big.x(d + i));
    let dx = |i: usize| Operator::var(&big, big.dx(d + i));
    // In the new coordinates the old dx_i is dx_i - dz_i, and y_i = x_i + z_i.
    let xmap: Vec<usize> = (0..n).map(|i| big.x(d + i)).chain((0..n).map(|i| big.dx(d + i))).collect();
    let mut g1 = Vec::new();
    for k in 0..r {
        for (j, f) in fs.iter().enumerate() {
            g1.push(t(j).sub(&f.remap(&big, &xmap)).embed(r, k));
        }
        for i in 0..n {
            let mut p = dx(i).sub(&dz(i));
            for (j, f) in fs.iter().enumerate() {
                let fi = f.poly_derivative(i).remap(&big, &xmap);
                p = p.add(&fi.mul(&dt(j)));
            }
            g1.push(p.embed(r, k));
        }
    }
    let mut yimages = Vec::with_capacity(2 * n);
    for i in 0..n {
        yimages.push(x(i).add(&z(i)));
    }
    for i in 0..n {
        yimages.push(dz(i));
    }
    for g in gens {
        g1.push(g.substitute(&big, &yimages));
    }
    let opts = RestrictOptions { route, depth: Some(0), window: Some((0, 0)), trust_window: true };
    let h0 = restrict(&g1, &ShiftVector::zero(r), &opts)?.cohomology.remove(0);
    if h0.rank == 0 {
        return Ok(vec![ModulePresentation::zero(&xring); d + 1]);
    }

    // The result lives in A_{d+n} with t first; the slot layout already matches.
    let mid = RingSpec::new(d, n, Extension::None).with_names(tnames.into_iter().chain(xnames).collect()).into_ring();
    let ident: Vec<usize> = (0..mid.nvars()).collect();
    let mut rels: Vec<Operator> = h0.relations.iter().map(|p| p.remap(&mid, &ident)).collect();
    if rels.is_empty() {
        rels.push(Operator::zero(&mid, h0.rank));
    }
    let opts = RestrictOptions { route, depth: Some(d), ..Default::default() };
    let res = restrict(&rels, &ShiftVector::zero(h0.rank), &opts)?;
    // H^i_[Y] = H^(i - d) of the second restriction.
    let mut out: Vec<ModulePresentation> = res.cohomology.into_iter().rev().collect();
    for p in out.iter_mut() {
        p.ring = xring.clone();
        p.relations = p.relations.iter().map(|q| q.remap(&xring, &(0..xring.nvars()).collect::<Vec<_>>())).collect();
    }
    Ok(out)
}

/// Reduced Gröbner basis of a cyclic presentation under graded reverse
/// lexicographic order, for canonical comparison.
pub fn cyclic_basis(p: &ModulePresentation) -> Result<Option<Vec<Operator>>> {
    if p.rank != 1 {
        return Ok(None);
    }
    if p.relations.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let g = buchberger(&p.relations, &OrderSpec::grevlex(&p.ring, 1))?;
    Ok(Some(reduce_basis(&g)?.elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    fn r1() -> Ring {
        RingSpec::new(0, 1, Extension::None).with_names(vec!["x".into()]).into_ring()
    }

    #[test]
    fn exterior_tensor_generators() {
        let r = r1();
        let g = exterior_tensor(&[parse(&r, "x*dx").unwrap()], &[parse(&r, "x").unwrap()]).unwrap();
        let e = &g[0].ring;
        assert_eq!(g, vec![parse(e, "x*dx").unwrap(), parse(e, "y1").unwrap()]);
    }

    #[test]
    fn bs_small() {
        let r = r1();
        let b = bernstein_sato(&parse(&r, "x").unwrap(), Route::H).unwrap();
        assert_eq!(b, BPoly::from_roots(&[Coef::from_int(-1)]));
        let b = bernstein_sato(&parse(&r, "x^2").unwrap(), Route::H).unwrap();
        assert_eq!(b, BPoly::from_roots(&[Coef::from_int(-1), Coef::from_frac(-1, 2)]));
    }

    #[test]
    fn ann_small() {
        let r = r1();
        let f = parse(&r, "x").unwrap();
        let j = ann_fs(&f).unwrap();
        assert_eq!(j, vec![parse(&fs_ring(&r), "x*dx - s").unwrap()]);
        assert!(kills_fs(&j[0], &f).unwrap());
        let sq = parse(&r, "x^2").unwrap();
        assert!(kills_fs(&parse(&fs_ring(&r), "x*dx - 2*s").unwrap(), &sq).unwrap());
        assert!(!kills_fs(&parse(&fs_ring(&r), "x*dx - s").unwrap(), &sq).unwrap());
    }

    #[test]
    fn localize_o_at_x() {
        let r = r1();
        let l = localize(&[parse(&r, "dx").unwrap()], &parse(&r, "x").unwrap(), Route::H).unwrap();
        assert_eq!(cyclic_basis(&l.module).unwrap().unwrap(), vec![parse(&r, "x*dx + 1").unwrap()]);
    }
}
