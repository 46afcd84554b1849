//! Randomized properties shared by the `properties` and `acceptance` targets.
//! Each property returns `Err` with the failing case instead of panicking.

#![allow(dead_code)]

pub mod oracle;

use std::cmp::Ordering;

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};

use dmod_core::bfunction::{annihilates, b_function, BPoly};
use dmod_core::dfunctors::{ann_fs, bernstein_sato, kills_fs, local_cohomology, localize};
use dmod_core::groebner::{
    adapted_resolution, apply_rows, buchberger, divide, holonomic_rank, is_zero_module, lead_of, syzygy_basis,
    ModulePresentation, Route,
};
use dmod_core::mono::{self, Mono};
use dmod_core::order::{OrderSpec, Position, Tie};
use dmod_core::restriction::{restrict, restriction_complex, RestrictOptions};
use dmod_core::text::{parse, render};
use dmod_core::{Coef, Extension, Operator, Ring, RingSpec, ShiftVector, WeightVector};

pub type Property = fn() -> Result<(), String>;

/// `(module, name, property)` for every property.
pub const ALL: &[(&str, &str, Property)] = &[
    ("core_algebra", "ring_axioms", ring_axioms),
    ("core_algebra", "normal_form_uniqueness", normal_form_uniqueness),
    ("core_algebra", "rho_homomorphism", rho_homomorphism),
    ("core_algebra", "order_additivity", order_additivity),
    ("core_algebra", "homogenize_roundtrip", homogenize_roundtrip),
    ("orders", "order_laws", order_laws),
    ("orders", "well_orders_have_minima", well_orders_have_minima),
    ("orders", "h_order_agrees_with_f_order", h_order_agrees_with_f_order),
    ("orders", "lexp_of_product", lexp_of_product),
    ("groebner", "reduce_to_zero", reduce_to_zero),
    ("groebner", "cone_coverage", cone_coverage),
    ("groebner", "syzygy_completeness", syzygy_completeness),
    ("groebner", "resolution_invariants", resolution_invariants),
    ("groebner", "resolution_length_bound", resolution_length_bound),
    ("bfunction", "b_annihilates_gr0", b_annihilates_gr0),
    ("bfunction", "b_is_minimal", b_is_minimal),
    ("bfunction", "shift_translates_b", shift_translates_b),
    ("restriction", "rank_formula", rank_formula),
    ("restriction", "window_independence", window_independence),
    ("restriction", "euler_characteristic_under_shift", euler_characteristic_under_shift),
    ("restriction", "one_variable_oracles", one_variable_oracles),
    ("dfunctors", "ann_fs_kills_f_s", ann_fs_kills_f_s),
    ("dfunctors", "bs_vanishes_at_minus_one", bs_vanishes_at_minus_one),
    ("dfunctors", "no_f_torsion_in_o", no_f_torsion_in_o),
    ("dfunctors", "localization_is_idempotent", localization_is_idempotent),
    ("cli", "parse_render_roundtrip", parse_render_roundtrip),
];

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, max_shrink_iters: 256, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(cases: u32, s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&s, test).map_err(|e| match e {
        TestError::Fail(why, v) => format!("{why} for {v:?}"),
        TestError::Abort(why) => format!("aborted: {why}"),
    })
}

fn fail(msg: impl Into<String>) -> TestCaseError {
    TestCaseError::fail(msg.into())
}

fn ok_or_fail<T>(r: dmod_core::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| fail(e.to_string()))
}

// ---------------------------------------------------------------- strategies

pub fn coef() -> impl Strategy<Value = Coef> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Coef::from_frac(n, d))
}

pub fn nonzero_coef() -> impl Strategy<Value = Coef> {
    coef().prop_filter("nonzero", |c| !c.is_zero())
}

/// Random elements of `ring^rank` with at most `terms` terms and exponents at
/// most `max_exp` in the first `slots` slots (the rest are zero).
pub fn op_in(ring: Ring, rank: usize, terms: usize, max_exp: u16, slots: usize) -> BoxedStrategy<Operator> {
    let nv = ring.nvars();
    vec((0..rank, vec(0..=max_exp, slots), coef()), 0..=terms)
        .prop_map(move |ts| {
            Operator::from_terms(
                &ring,
                rank,
                ts.into_iter().map(|(c, e, k)| {
                    let mut m = mono::zero_mono(nv);
                    m[..e.len()].copy_from_slice(&e);
                    (c, m, k)
                }),
            )
        })
        .boxed()
}

pub fn op(ring: &Ring, terms: usize, max_exp: u16) -> BoxedStrategy<Operator> {
    op_in(ring.clone(), 1, terms, max_exp, ring.nvars())
}

pub fn nonzero_op(ring: &Ring, terms: usize, max_exp: u16) -> BoxedStrategy<Operator> {
    op(ring, terms, max_exp).prop_filter("nonzero", |p| !p.is_zero()).boxed()
}

/// Polynomials in the `x` variables of `A_n`.
pub fn poly(ring: &Ring, terms: usize, max_exp: u16) -> BoxedStrategy<Operator> {
    op_in(ring.clone(), 1, terms, max_exp, ring.n).boxed()
}

fn exponent(nv: usize, max: u16) -> impl Strategy<Value = Mono> {
    vec(0..=max, nv).prop_map(|v| v.into_iter().collect::<Mono>())
}

pub fn weyl(d: usize, n: usize) -> Ring {
    RingSpec::weyl(d, n)
}

fn hring(d: usize, n: usize) -> Ring {
    RingSpec::new(d, n, Extension::H).into_ring()
}

fn t0ring(d: usize, n: usize) -> Ring {
    RingSpec::new(d, n, Extension::T0).into_ring()
}

fn ops(ring: &Ring, srcs: &[&str]) -> Vec<Operator> {
    srcs.iter().map(|s| parse(ring, s).unwrap()).collect()
}

// ------------------------------------------------------------- core_algebra

pub fn ring_axioms() -> Result<(), String> {
    for ring in [weyl(1, 1), hring(0, 2)] {
        let s = (op(&ring, 3, 2), op(&ring, 3, 2), op(&ring, 3, 2));
        let one = Operator::one(&ring);
        check(1000, s, |(p, q, r)| {
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)), "associativity");
            prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)), "left distributivity");
            prop_assert_eq!(p.add(&q).mul(&r), p.mul(&r).add(&q.mul(&r)), "right distributivity");
            prop_assert_eq!(one.mul(&p), p.clone(), "left unit");
            prop_assert_eq!(p.mul(&one), p.clone(), "right unit");
            Ok(())
        })?;
    }
    Ok(())
}

pub fn normal_form_uniqueness() -> Result<(), String> {
    let ring = weyl(1, 1);
    let s = (op(&ring, 4, 3), op(&ring, 4, 3)).prop_flat_map(|(p, q)| {
        let mut parts = Vec::new();
        for (_, a, ca) in p.iter() {
            for (_, b, cb) in q.iter() {
                let ta = Operator::monomial(&p.ring, 1, 0, a.clone(), ca.clone());
                let tb = Operator::monomial(&q.ring, 1, 0, b.clone(), cb.clone());
                for (_, m, c) in ta.mul(&tb).iter() {
                    parts.push((m.clone(), c.clone()));
                }
            }
        }
        (Just(p), Just(q), Just(parts).prop_shuffle())
    });
    check(500, s, |(p, q, parts)| {
        let rebuilt = Operator::from_terms(&p.ring, 1, parts.into_iter().map(|(m, c)| (0, m, c)));
        prop_assert_eq!(rebuilt, p.mul(&q));
        Ok(())
    })
}

pub fn rho_homomorphism() -> Result<(), String> {
    let ring = weyl(1, 1);
    let z = ShiftVector::zero(1);
    check(500, (op(&ring, 3, 2), op(&ring, 3, 2)), |(p, q)| {
        let (ph, qh) = (ok_or_fail(p.homogenize_h(&z))?, ok_or_fail(q.homogenize_h(&z))?);
        let lhs = ok_or_fail(ph.mul(&qh).dehomogenize())?;
        let rhs = ok_or_fail(ph.dehomogenize())?.mul(&ok_or_fail(qh.dehomogenize())?);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn order_additivity() -> Result<(), String> {
    let ring = weyl(1, 1);
    // Slots t, x, dt, dx; every pair satisfies u + v >= 0.
    let weights = [
        WeightVector::v_weight(1, 1),
        WeightVector(vec![0, 0, 1, 1]),
        WeightVector(vec![1, 1, 1, 1]),
        WeightVector(vec![-1, 2, 1, 0]),
    ];
    let z = ShiftVector::zero(1);
    check(500, (nonzero_op(&ring, 3, 3), nonzero_op(&ring, 3, 3)), |(p, q)| {
        for w in &weights {
            let lhs = p.mul(&q).order_of(w, &z);
            let rhs = p.order_of(w, &z).unwrap() + q.order_of(w, &z).unwrap();
            prop_assert_eq!(lhs, Some(rhs), "weight {:?}", w);
        }
        Ok(())
    })
}

pub fn homogenize_roundtrip() -> Result<(), String> {
    let ring = weyl(1, 1);
    let s = (op_in(ring.clone(), 2, 4, 3, ring.nvars()), vec(-2i64..=2, 2), vec(-2i64..=2, 2));
    check(500, s, |(p, m, n)| {
        let (m, n) = (ShiftVector(m), ShiftVector(n));
        prop_assert_eq!(ok_or_fail(ok_or_fail(p.homogenize_h(&n))?.dehomogenize())?, p.clone(), "h");
        prop_assert_eq!(ok_or_fail(ok_or_fail(p.homogenize_f(&m))?.dehomogenize())?, p.clone(), "F");
        Ok(())
    })
}

// ------------------------------------------------------------------- orders

fn order_zoo() -> Vec<(&'static str, OrderSpec)> {
    let plain = weyl(1, 1);
    let h = hring(1, 1);
    let t0 = t0ring(1, 1);
    let v = WeightVector::v_weight(1, 1);
    let m = ShiftVector(vec![0, 1]);
    let n = ShiftVector(vec![1, 0]);
    let mh = dmod_core::operator::mh_ring(&plain);
    let base = OrderSpec::grevlex(&plain, 2);
    let leads: Vec<(Mono, usize)> = vec![
        ([1u16, 0, 0, 1].into_iter().collect(), 0),
        ([0u16, 2, 1, 0].into_iter().collect(), 1),
        ([0u16, 0, 0, 0].into_iter().collect(), 1),
    ];
    vec![
        ("grevlex", base.clone()),
        ("lex", OrderSpec::lex(&plain, 2)),
        ("F", OrderSpec::f_order(&plain, &v, &m).unwrap()),
        ("H", OrderSpec::h_order_t0(&t0, 2).unwrap()),
        ("h[n]", OrderSpec::h_deg_order(&h, &v, &m, &n).unwrap()),
        ("mh", OrderSpec::mh_order(&mh, 2)),
        ("schreyer", OrderSpec::schreyer(&base, leads)),
        (
            "weighted",
            OrderSpec::weighted(&plain, 2, vec![vec![0, 0, 1, 1], vec![-1, 0, 1, 0]], Position::Top, Tie::Grevlex)
                .unwrap(),
        ),
    ]
}

pub fn order_laws() -> Result<(), String> {
    for (name, ord) in order_zoo() {
        let nv = ord.nvars;
        let rank = ord.rank;
        let key = move || (exponent(nv, 4), 0..rank);
        let s = (key(), key(), key(), exponent(nv, 3));
        check(10_000, s, |((a, i), (b, j), (c, k), g)| {
            let ab = ord.compare((&a, i), (&b, j));
            prop_assert_eq!(ab, ord.compare((&b, j), (&a, i)).reverse(), "{} antisymmetry", name);
            prop_assert_eq!(ab == Ordering::Equal, a == b && i == j, "{} totality", name);
            let bc = ord.compare((&b, j), (&c, k));
            if ab == Ordering::Less && bc == Ordering::Less {
                prop_assert_eq!(ord.compare((&a, i), (&c, k)), Ordering::Less, "{} transitivity", name);
            }
            let (ag, bg) = (mono::add(&a, &g), mono::add(&b, &g));
            prop_assert_eq!(ord.compare((&ag, i), (&bg, j)), ab, "{} translation", name);
            Ok(())
        })?;
    }
    Ok(())
}

pub fn well_orders_have_minima() -> Result<(), String> {
    for (name, ord) in order_zoo() {
        let expect_well = !matches!(name, "F" | "weighted");
        if ord.is_well_order() != expect_well {
            return Err(format!("{name}: is_well_order() = {}", ord.is_well_order()));
        }
        if !expect_well {
            continue;
        }
        let nv = ord.nvars;
        let rank = ord.rank;
        check(1000, vec((exponent(nv, 6), 0..rank), 1..12), |set| {
            let min = set.iter().min_by(|a, b| ord.compare((&a.0, a.1), (&b.0, b.1))).unwrap();
            for e in &set {
                prop_assert_ne!(ord.compare((&e.0, e.1), (&min.0, min.1)), Ordering::Less, "{}", name);
            }
            // Below the minimum only finitely many keys exist; the unit key is one of them.
            let unit = mono::zero_mono(nv);
            let at_unit = set.iter().any(|e| e.0 == unit);
            if at_unit {
                prop_assert!(ord.compare((&min.0, min.1), (&unit, min.1)) != Ordering::Greater || min.0 != unit);
            }
            Ok(())
        })?;
    }
    Ok(())
}

pub fn h_order_agrees_with_f_order() -> Result<(), String> {
    let plain = weyl(1, 1);
    let t0 = t0ring(1, 1);
    let v = WeightVector::v_weight(1, 1);
    let l = t0.lambda().unwrap();
    let s = (exponent(4, 4), 0..2usize, exponent(4, 4), 0..2usize, vec(-2i64..=2, 2), 0u16..4);
    check(10_000, s, |(a, i, b, j, m, la)| {
        let m = ShiftVector(m);
        let f = OrderSpec::f_order(&plain, &v, &m).unwrap();
        let h = OrderSpec::h_order_t0(&t0, 2).unwrap();
        let fa = v.eval(&a) + m.get(i);
        let fb = v.eval(&b) + m.get(j);
        let mut la = la as i64;
        let mut lb = la + fb - fa;
        if lb < 0 {
            la -= lb;
            lb = 0;
        }
        let lift = |e: &Mono, lam: i64| {
            let mut out = e.clone();
            out.insert(l, lam as u16);
            out
        };
        let (ha, hb) = (lift(&a, la), lift(&b, lb));
        prop_assert_eq!(h.compare((&ha, i), (&hb, j)), f.compare((&a, i), (&b, j)));
        Ok(())
    })
}

pub fn lexp_of_product() -> Result<(), String> {
    let plain = weyl(1, 1);
    let h = hring(1, 1);
    let v = WeightVector::v_weight(1, 1);
    let s = (
        nonzero_op(&plain, 3, 2),
        op_in(plain.clone(), 2, 4, 2, plain.nvars()).prop_filter("nonzero", |p| !p.is_zero()),
        vec(-1i64..=1, 2),
        vec(0i64..=2, 2),
    );
    check(500, s, |(q, p, m, n)| {
        let (m, n) = (ShiftVector(m), ShiftVector(n));
        let ord = OrderSpec::h_deg_order(&h, &v, &m, &n).unwrap();
        let qh = ok_or_fail(q.homogenize_h(&ShiftVector::zero(1)))?;
        let ph = ok_or_fail(p.homogenize_h(&n))?;
        let (lp, k) = lead_of(&ph, &ord);
        let (lq, _) = lead_of(&qh.embed(2, k), &ord);
        let (lqp, kk) = lead_of(&qh.mul(&ph), &ord);
        prop_assert_eq!(kk, k);
        prop_assert_eq!(lqp, mono::add(&lq, &lp));
        Ok(())
    })
}

// ----------------------------------------------------------------- groebner

fn small_ideal() -> BoxedStrategy<Vec<Operator>> {
    let (a1, a2) = (weyl(0, 1), weyl(0, 2));
    prop_oneof![vec(nonzero_op(&a1, 3, 2), 1..=3), vec(nonzero_op(&a2, 2, 1), 1..=3)].boxed()
}

pub fn reduce_to_zero() -> Result<(), String> {
    let ring = weyl(0, 1);
    let modules = vec(op_in(ring.clone(), 2, 3, 2, ring.nvars()).prop_filter("nonzero", |p| !p.is_zero()), 1..=3);
    check(48, (small_ideal(), modules), |(ideal, module)| {
        for gens in [ideal, module] {
            let ord = OrderSpec::grevlex(&gens[0].ring, gens[0].rank);
            let g = ok_or_fail(buchberger(&gens, &ord))?;
            for p in &gens {
                prop_assert!(ok_or_fail(g.normal_form(p))?.is_zero(), "{} does not reduce to zero", render(p));
            }
        }
        Ok(())
    })
}

pub fn cone_coverage() -> Result<(), String> {
    check(32, small_ideal(), |gens| {
        let ring = gens[0].ring.clone();
        let ord = OrderSpec::grevlex(&ring, 1);
        let g = ok_or_fail(buchberger(&gens, &ord))?;
        let cones: Vec<(Mono, usize)> = g.elements.iter().map(|e| lead_of(e, &ord)).collect();
        for (m, c) in oracle::span_leads(&gens, 3, &ord) {
            prop_assert!(
                cones.iter().any(|(l, lc)| *lc == c && mono::divides(l, &m)),
                "leading exponent {:?} of an ideal element is outside every cone",
                m
            );
        }
        Ok(())
    })
}

pub fn syzygy_completeness() -> Result<(), String> {
    check(24, small_ideal(), |gens| {
        let ring = gens[0].ring.clone();
        let ord = OrderSpec::grevlex(&ring, 1);
        let g = ok_or_fail(buchberger(&gens, &ord))?;
        if g.len() < 2 {
            return Ok(());
        }
        let z = ShiftVector::zero(1);
        let syz = ok_or_fail(syzygy_basis(&g, None, &z, &z))?;
        for s in &syz.generators {
            prop_assert!(apply_rows(s, &g.elements, 1).is_zero(), "syzygy {} does not vanish", render(s));
        }
        for rel in oracle::relations(&g.elements, 2) {
            let gens: Vec<Operator> = syz.generators.iter().filter(|s| !s.is_zero()).cloned().collect();
            let r = if gens.is_empty() { rel.clone() } else { ok_or_fail(divide(&rel, &gens, &syz.order))?.1 };
            prop_assert!(r.is_zero(), "relation {} is not generated by the syzygies", render(&rel));
        }
        Ok(())
    })
}

fn resolution_inputs() -> Vec<Vec<Operator>> {
    let r10 = weyl(1, 0);
    let r11 = weyl(1, 1);
    let r12 = weyl(1, 2);
    vec![
        ops(&r10, &["dt1"]),
        ops(&r10, &["t1*dt1"]),
        ops(&r10, &["t1^2*dt1 + t1", "dt1^2"]),
        ops(&r11, &["t1 - x1^2", "dx1 + 2*x1*dt1"]),
        ops(&r11, &["t1*dt1 - x1*dx1", "dx1^2 - dt1"]),
        ops(&r12, &["t1 - x1*x2", "dx1 + x2*dt1", "dx2 + x1*dt1"]),
    ]
}

pub fn resolution_invariants() -> Result<(), String> {
    for gens in resolution_inputs() {
        let ring = gens[0].ring.clone();
        let w = WeightVector::v_weight(ring.d, ring.n);
        for (route, m) in [(Route::H, 0), (Route::T0, 0), (Route::H, 1)] {
            let m = ShiftVector(vec![m]);
            let res = adapted_resolution(&gens, &w, &m, ring.d + 2, route).map_err(|e| e.to_string())?;
            if !dmod_core::groebner::composite_is_zero(&res) {
                return Err(format!("composite not zero for {:?}", gens.iter().map(render).collect::<Vec<_>>()));
            }
            for (j, rows) in res.levels.iter().enumerate() {
                for (k, row) in rows.iter().enumerate() {
                    let ord = row.order_of(&w, &res.shifts[j]).unwrap_or(0);
                    if ord != res.shifts[j + 1].get(k) {
                        return Err(format!(
                            "level {} row {k}: recorded shift {} but order {ord}",
                            j + 1,
                            res.shifts[j + 1].get(k)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn resolution_length_bound() -> Result<(), String> {
    for gens in resolution_inputs().into_iter().take(5) {
        let ring = gens[0].ring.clone();
        let len = 2 * ring.pairs() + 2;
        let w = WeightVector::v_weight(ring.d, ring.n);
        let res = adapted_resolution(&gens, &w, &ShiftVector::zero(1), len, Route::H).map_err(|e| e.to_string())?;
        if res.levels.len() >= len && !res.levels[len - 1].is_empty() {
            return Err(format!("map {len} is nonzero for {:?}", gens.iter().map(render).collect::<Vec<_>>()));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- bfunction

fn d1_modules() -> BoxedStrategy<Vec<Operator>> {
    let ring = weyl(1, 0);
    vec(nonzero_op(&ring, 3, 2), 1..=2).boxed()
}

fn d1_fixed() -> Vec<Vec<Operator>> {
    let r10 = weyl(1, 0);
    let r11 = weyl(1, 1);
    vec![
        ops(&r10, &["t1*dt1 - 3"]),
        ops(&r10, &["t1^2*dt1 + 1/2*t1"]),
        ops(&r10, &["(t1*dt1 - 1)*(t1*dt1 + 2/3)"]),
        ops(&r11, &["t1 - x1^2", "dx1 + 2*x1*dt1"]),
        ops(&r11, &["t1 - x1^3", "dx1 + 3*x1^2*dt1"]),
    ]
}

pub fn b_annihilates_gr0() -> Result<(), String> {
    let z = ShiftVector::zero(1);
    for gens in d1_fixed() {
        let bf = b_function(&gens, &z, Route::H).map_err(|e| e.to_string())?;
        if bf.b.is_zero() || !annihilates(&bf.basis, &bf.b).map_err(|e| e.to_string())? {
            return Err(format!("b = {} fails the annihilation check", bf.b));
        }
    }
    check(48, (d1_modules(), -1i64..=1), |(gens, m)| {
        let bf = ok_or_fail(b_function(&gens, &ShiftVector(vec![m]), Route::H))?;
        if !bf.b.is_zero() {
            prop_assert!(ok_or_fail(annihilates(&bf.basis, &bf.b))?, "b = {}", bf.b);
        }
        Ok(())
    })
}

/// Maximal proper monic divisors of `b`.
fn maximal_divisors(b: &BPoly) -> Vec<BPoly> {
    let roots = b.rational_roots();
    let linear =
        BPoly::from_roots(&roots.iter().flat_map(|(r, k)| std::iter::repeat_n(r.clone(), *k)).collect::<Vec<_>>());
    let mut out: Vec<BPoly> = roots
        .iter()
        .map(|(r, _)| {
            let mut rest = Vec::new();
            let mut dropped = false;
            for (s, k) in &roots {
                for _ in 0..*k {
                    if s == r && !dropped {
                        dropped = true;
                    } else {
                        rest.push(s.clone());
                    }
                }
            }
            let other = dmod_core::upoly::divrem(&b.coeffs, &linear.coeffs).0;
            BPoly::from_coeffs(dmod_core::upoly::mul(&BPoly::from_roots(&rest).coeffs, &other))
        })
        .collect();
    if linear.degree() != b.degree() {
        out.push(linear);
    }
    out
}

pub fn b_is_minimal() -> Result<(), String> {
    let z = ShiftVector::zero(1);
    let mut cases: Vec<Vec<Operator>> = d1_fixed();
    let ring = weyl(1, 0);
    let mut rng = runner(1);
    for _ in 0..24 {
        cases.push(d1_modules().new_tree(&mut rng).unwrap().current());
    }
    for gens in cases {
        let bf = b_function(&gens, &z, Route::H).map_err(|e| e.to_string())?;
        if bf.b.is_zero() || gens[0].ring.n > 0 && bf.b.degree() > Some(4) {
            continue;
        }
        for q in maximal_divisors(&bf.b) {
            if annihilates(&bf.basis, &q).map_err(|e| e.to_string())? {
                return Err(format!("proper divisor {q} of b = {} also annihilates", bf.b));
            }
        }
    }
    let _ = ring;
    Ok(())
}

pub fn shift_translates_b() -> Result<(), String> {
    check(32, (d1_modules(), -2i64..=2), |(gens, c)| {
        let b0 = ok_or_fail(b_function(&gens, &ShiftVector(vec![0]), Route::H))?.b;
        let bc = ok_or_fail(b_function(&gens, &ShiftVector(vec![c]), Route::H))?.b;
        prop_assert_eq!(bc, b0.translate(&Coef::from_int(c)));
        Ok(())
    })
}

// -------------------------------------------------------------- restriction

fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

fn restriction_inputs() -> Vec<Vec<Operator>> {
    let r10 = weyl(1, 0);
    let r20 = weyl(2, 0);
    let r11 = weyl(1, 1);
    vec![
        ops(&r10, &["dt1"]),
        ops(&r10, &["t1"]),
        ops(&r10, &["t1*dt1"]),
        ops(&r10, &["(t1*dt1 - 2)*(t1*dt1 + 1)"]),
        ops(&r10, &["t1^2*dt1 - 1"]),
        ops(&r20, &["t1*dt1", "t2*dt2 - 1"]),
        ops(&r20, &["dt1 - dt2", "t1*dt1 + t2*dt2"]),
        ops(&r11, &["t1 - x1^2", "dx1 + 2*x1*dt1"]),
    ]
}

pub fn rank_formula() -> Result<(), String> {
    for gens in restriction_inputs() {
        let m = ShiftVector::zero(1);
        let cx = restriction_complex(&gens, &m, &RestrictOptions::default()).map_err(|e| e.to_string())?;
        let Some((k0, k1)) = cx.window else { continue };
        let d = gens[0].ring.d as i64;
        for (j, s) in cx.shifts.iter().enumerate() {
            let want: usize = (0..s.len())
                .map(|i| {
                    let lo = (k0 - s.get(i)).max(0);
                    (lo..=k1 - s.get(i)).map(|k| binomial(k + d - 1, d - 1)).sum::<usize>()
                })
                .sum();
            if cx.rank(j) != want {
                return Err(format!("level {j}: rank {} but the counting formula gives {want}", cx.rank(j)));
            }
        }
        if !cx.composite_is_zero() {
            return Err("truncated complex does not compose to zero".into());
        }
    }
    Ok(())
}

fn dims(gens: &[Operator], m: &ShiftVector, window: Option<(i64, i64)>) -> Result<Vec<usize>, String> {
    let opts = RestrictOptions { window, ..Default::default() };
    let r = restrict(gens, m, &opts).map_err(|e| e.to_string())?;
    r.dimensions().ok_or_else(|| "not finite-dimensional".to_string())
}

pub fn window_independence() -> Result<(), String> {
    for gens in restriction_inputs().into_iter().filter(|g| g[0].ring.n == 0) {
        let m = ShiftVector::zero(1);
        let cx = restriction_complex(&gens, &m, &RestrictOptions { depth: Some(0), ..Default::default() })
            .map_err(|e| e.to_string())?;
        let Some((k0, k1)) = cx.window else { continue };
        let base = dims(&gens, &m, None)?;
        for (a, b) in [(k0 - 1, k1), (k0, k1 + 1), (k0 - 2, k1 + 2)] {
            let wide = dims(&gens, &m, Some((a, b)))?;
            if wide != base {
                return Err(format!("window [{a}, {b}] gives {wide:?}, default gives {base:?}"));
            }
        }
    }
    Ok(())
}

pub fn euler_characteristic_under_shift() -> Result<(), String> {
    for gens in restriction_inputs().into_iter().filter(|g| g[0].ring.n == 0) {
        let chi = |m: i64| -> Result<i64, String> {
            let d = dims(&gens, &ShiftVector(vec![m]), None)?;
            Ok(d.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum())
        };
        let base = chi(0)?;
        for m in [-1, 1, 2] {
            if chi(m)? != base {
                return Err(format!("Euler characteristic changes under shift {m}"));
            }
        }
    }
    Ok(())
}

pub fn one_variable_oracles() -> Result<(), String> {
    let r = weyl(1, 0);
    let z = ShiftVector::zero(1);
    for (src, want) in [("dt1", vec![1, 0]), ("t1", vec![0, 1]), ("t1*dt1", vec![1, 1])] {
        let got = dims(&ops(&r, &[src]), &z, None)?;
        if got != want {
            return Err(format!("{src}: {got:?}, expected {want:?}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- dfunctors

fn nonconstant_poly(ring: &Ring) -> BoxedStrategy<Operator> {
    poly(ring, 3, 2).prop_filter("non-constant", |f| !f.is_constant()).boxed()
}

pub fn ann_fs_kills_f_s() -> Result<(), String> {
    let r1 = weyl(0, 1);
    let r2 = weyl(0, 2);
    check(24, prop_oneof![nonconstant_poly(&r1), nonconstant_poly(&r2)], |f| {
        let j = ok_or_fail(ann_fs(&f))?;
        prop_assert!(!j.is_empty());
        for p in &j {
            prop_assert!(ok_or_fail(kills_fs(p, &f))?, "{} does not kill f^s", render(p));
        }
        Ok(())
    })
}

pub fn bs_vanishes_at_minus_one() -> Result<(), String> {
    let r1 = weyl(0, 1);
    let r2 = weyl(0, 2);
    check(24, prop_oneof![nonconstant_poly(&r1), nonconstant_poly(&r2)], |f| {
        let b = ok_or_fail(bernstein_sato(&f, Route::H))?;
        prop_assert!(b.eval(&Coef::from_int(-1)).is_zero(), "b_f = {}", b.render("s"));
        Ok(())
    })
}

fn structure_sheaf(ring: &Ring) -> Vec<Operator> {
    (0..ring.n).map(|i| Operator::var(ring, ring.dx(i))).collect()
}

pub fn no_f_torsion_in_o() -> Result<(), String> {
    let r1 = weyl(0, 1);
    let r2 = weyl(0, 2);
    for (ring, f) in [(&r1, "x1"), (&r1, "x1^2 - x1"), (&r2, "x1*x2"), (&r2, "x1^2 + x2")] {
        let h = local_cohomology(&structure_sheaf(ring), &ops(ring, &[f]), Route::H).map_err(|e| e.to_string())?;
        if !is_zero_module(&h[0]).map_err(|e| e.to_string())? {
            return Err(format!("H^0 along {f} is nonzero"));
        }
        if is_zero_module(&h[1]).map_err(|e| e.to_string())? {
            return Err(format!("H^1 along {f} vanishes"));
        }
    }
    Ok(())
}

fn rank_of(p: &ModulePresentation) -> Result<Option<usize>, String> {
    holonomic_rank(p).map_err(|e| e.to_string())
}

pub fn localization_is_idempotent() -> Result<(), String> {
    let r1 = weyl(0, 1);
    let r2 = weyl(0, 2);
    let cases: Vec<(Vec<Operator>, Operator)> = vec![
        (structure_sheaf(&r1), parse(&r1, "x1").unwrap()),
        (ops(&r1, &["x1*dx1 - 1/2"]), parse(&r1, "x1").unwrap()),
        (structure_sheaf(&r2), parse(&r2, "x1*x2").unwrap()),
        (ops(&r2, &["dx1", "x2"]), parse(&r2, "x1").unwrap()),
    ];
    for (m, f) in cases {
        let once = localize(&m, &f, Route::H).map_err(|e| e.to_string())?.module;
        let twice = localize(&once.relations, &f, Route::H).map_err(|e| e.to_string())?.module;
        let (a, b) = (rank_of(&once)?, rank_of(&twice)?);
        if a != b || once.rank != twice.rank {
            return Err(format!("localizing twice at {} changes rank {a:?} -> {b:?}", render(&f)));
        }
    }
    Ok(())
}

// --------------------------------------------------------------------- text

pub fn parse_render_roundtrip() -> Result<(), String> {
    let rings = [weyl(2, 3), hring(1, 1), t0ring(0, 2)];
    for ring in rings {
        let s = op_in(ring.clone(), 3, 6, 5, ring.nvars());
        check(10_000, s, |p| {
            let text = render(&p);
            let back = if p.rank == 1 { parse(&p.ring, &text) } else { dmod_core::text::parse_vector(&p.ring, &text) };
            prop_assert_eq!(ok_or_fail(back)?, p, "{}", text);
            Ok(())
        })?;
    }
    Ok(())
}
