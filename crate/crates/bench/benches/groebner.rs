use criterion::{criterion_group, criterion_main, Criterion};

use dmod_core::bfunction::b_function;
use dmod_core::dfunctors::local_cohomology;
use dmod_core::groebner::{buchberger_with, Route, Strategy};
use dmod_core::order::{OrderSpec, Position, Tie};
use dmod_core::restriction::{restrict, RestrictOptions};
use dmod_core::text::parse;
use dmod_core::{Extension, Operator, Ring, RingSpec, ShiftVector};

fn named(d: usize, n: usize, ext: Extension, names: &[&str]) -> Ring {
    RingSpec::new(d, n, ext).with_names(names.iter().map(|s| s.to_string()).collect()).into_ring()
}

fn ops(ring: &Ring, srcs: &[&str]) -> Vec<Operator> {
    srcs.iter().map(|s| parse(ring, s).unwrap()).collect()
}

fn graph_bfunction(c: &mut Criterion) {
    let r = named(2, 3, Extension::None, &["t1", "t2", "x", "y", "z"]);
    let gens =
        ops(&r, &["t1 - x^3 + y^2", "t2 - y^3 + z^2", "dx + 3*x^2*dt1", "dy - 2*y*dt1 + 3*y^2*dt2", "dz - 2*z*dt2"]);
    let mut g = c.benchmark_group("bfunction");
    g.sample_size(10);
    for (name, route) in [("graph_h", Route::H), ("graph_t0", Route::T0)] {
        g.bench_function(name, |b| b.iter(|| b_function(&gens, &ShiftVector::zero(1), route).unwrap()));
    }
    g.finish();
}

fn determinantal(c: &mut Criterion) {
    let names = ["t1", "t2", "t3", "x1", "x2", "x3", "x4", "x5", "x6"];
    let hr = named(3, 6, Extension::H, &names);
    let gens = ops(
        &hr,
        &[
            "x4*x2 - x5*x1 + t1*h",
            "x4*x3 - x6*x1 + t2*h",
            "x5*x3 - x6*x2 + t3*h",
            "x5*dt1 + x6*dt2 + h*dx1",
            "-x4*dt1 + x6*dt3 + h*dx2",
            "-x4*dt2 - x5*dt3 + h*dx3",
            "-x2*dt1 - x3*dt2 + h*dx4",
            "x1*dt1 - x3*dt3 + h*dx5",
            "x1*dt2 + x2*dt3 + h*dx6",
        ],
    );
    let mut v = vec![0i64; 19];
    let mut tot = vec![0i64; 19];
    for i in 0..3 {
        v[i] = -1;
        v[9 + i] = 1;
    }
    for i in (0..9).chain(12..18) {
        tot[i] = 1;
    }
    let ord = OrderSpec::weighted(&hr, 1, vec![vec![1; 19], v, tot], Position::Pot, Tie::Grevlex).unwrap();
    let mut g = c.benchmark_group("groebner");
    g.sample_size(10);
    g.bench_function("determinantal_h", |b| b.iter(|| buchberger_with(&gens, &ord, Strategy::Direct).unwrap()));
    g.finish();
}

fn hypergeometric_restriction(c: &mut Criterion) {
    let r = named(4, 0, Extension::None, &["x1", "x2", "x3", "x4"]);
    let gens = ops(&r, &["x3*dx3 + x4*dx4", "x1*dx1 + x3*dx3", "x2*dx2 + x4*dx4", "dx1*dx4 - dx2*dx3"]);
    let mut g = c.benchmark_group("restriction");
    g.sample_size(10);
    g.bench_function("hypergeometric_origin", |b| {
        b.iter(|| restrict(&gens, &ShiftVector::zero(1), &RestrictOptions::default()).unwrap())
    });
    g.finish();
}

fn local_cohomology_xz_yz(c: &mut Criterion) {
    let r = named(0, 3, Extension::None, &["x", "y", "z"]);
    let m = ops(&r, &["dx", "dy", "z^3*dz + z"]);
    let f = ops(&r, &["x*z", "y*z"]);
    let mut g = c.benchmark_group("dfunctors");
    g.sample_size(10);
    g.bench_function("local_cohomology", |b| b.iter(|| local_cohomology(&m, &f, Route::H).unwrap()));
    g.finish();
}

criterion_group!(benches, graph_bfunction, determinantal, hypergeometric_restriction, local_cohomology_xz_yz);
criterion_main!(benches);
