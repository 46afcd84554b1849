//! Command dispatch and JSON output.

use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::{json, Value};

use dmod_core::bfunction::{annihilates, b_function, BPoly};
use dmod_core::dfunctors::{ann_fs, bernstein_sato, cyclic_basis, kills_fs, local_cohomology, localize, tor};
use dmod_core::groebner::{
    adapted_resolution, buchberger, composite_is_zero, is_zero_module, ModulePresentation, Route,
};
use dmod_core::order::{OrderSpec, Position, Tie};
use dmod_core::restriction::{restrict, RestrictOptions};
use dmod_core::text::render;
use dmod_core::{Coef, DmodError, Extension, Operator, Result, RingSpec, WeightVector};

use crate::job::{Command, JobFile};

/// Command-line values that replace the job file's options.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub route: Option<Route>,
    pub shift: Option<Vec<i64>>,
    pub depth: Option<usize>,
    pub window: Option<(i64, i64)>,
    pub verify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotSpecializable,
    VerifyFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::NotSpecializable => 2,
            Status::VerifyFailed => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub status: Status,
}

fn coefs(c: &[Coef]) -> Value {
    Value::from(c.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn ops(v: &[Operator]) -> Value {
    Value::from(v.iter().map(render).collect::<Vec<_>>())
}

fn bpoly(b: &BPoly, var: &str) -> Value {
    json!({
        "coefficients": coefs(&b.coeffs),
        "text": b.render(var),
        "roots": b.rational_roots().iter().map(|(r, m)| json!({"root": r.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
    })
}

fn ring_json(r: &RingSpec) -> Value {
    let ext = match r.extension {
        Extension::None => Value::Null,
        Extension::T0 => "t0".into(),
        Extension::H => "h".into(),
    };
    json!({"d": r.d, "n": r.n, "extension": ext, "variables": r.var_names()})
}

fn presentation(p: &ModulePresentation) -> Result<Value> {
    let mut v = json!({
        "rank": p.rank,
        "relations": ops(&p.relations),
        "zero": is_zero_module(p)?,
    });
    if let Some(d) = p.dimension() {
        v["dimension"] = d.into();
    }
    if let Some(g) = cyclic_basis(p)? {
        v["annihilator_gb"] = ops(&g);
    }
    Ok(v)
}

fn plain(job: &JobFile) -> Result<()> {
    if job.ring.extension != Extension::None {
        return Err(DmodError::Precondition(format!("`{}` on a ring without h or t0", job.command)));
    }
    Ok(())
}

fn functor_f(job: &JobFile) -> Result<Vec<Operator>> {
    if !job.options.f.is_empty() {
        return Ok(job.options.f.clone());
    }
    match job.module.as_slice() {
        [g] if g.rank == 1 => Ok(vec![g.clone()]),
        _ => Err(DmodError::Precondition("`f=[...]` or a single rank-1 generator".into())),
    }
}

struct Ctx {
    sizes: BTreeMap<String, Value>,
    checks: BTreeMap<String, bool>,
    verify: bool,
}

impl Ctx {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<bool>) -> Result<()> {
        if self.verify {
            let ok = f()?;
            self.checks.insert(name.into(), ok);
        }
        Ok(())
    }
}

/// Runs a parsed job.
pub fn run(job: &JobFile, ov: &Overrides) -> Result<Outcome> {
    let started = Instant::now();
    let route = ov.route.or(job.options.route).unwrap_or_default();
    let depth = ov.depth.or(job.options.depth);
    let window = ov.window.or(job.options.window);
    let m = match &ov.shift {
        Some(s) => {
            if s.len() != job.rank() {
                return Err(DmodError::Dimension(format!("shift of length {} for rank {}", s.len(), job.rank())));
            }
            dmod_core::ShiftVector(s.clone())
        }
        None => job.shift_or_zero(),
    };
    let mut cx = Ctx { sizes: BTreeMap::new(), checks: BTreeMap::new(), verify: ov.verify };
    let mut status = Status::Ok;
    let gens = &job.module;
    let ring = &job.ring;

    let result = match job.command {
        Command::Gb => {
            let ord = if job.options.weights.is_empty() {
                OrderSpec::grevlex(ring, job.rank())
            } else {
                let tie = job.options.tie.unwrap_or(Tie::Grevlex);
                OrderSpec::weighted(ring, job.rank(), job.options.weights.clone(), Position::Pot, tie)?
            };
            let gb = buchberger(gens, &ord)?;
            cx.sizes.insert("gb".into(), gb.len().into());
            cx.check("generators_reduce_to_zero", || {
                gens.iter().map(|g| gb.contains(g)).collect::<Result<Vec<_>>>().map(|v| v.into_iter().all(|b| b))
            })?;
            json!({"basis": ops(&gb.elements)})
        }
        Command::Resolution => {
            plain(job)?;
            let len = depth.unwrap_or(ring.d + 1);
            let res = adapted_resolution(gens, &WeightVector::v_weight(ring.d, ring.n), &m, len, route)?;
            cx.sizes.insert("betti".into(), res.betti().into());
            cx.check("composite_zero", || Ok(composite_is_zero(&res)))?;
            json!({
                "betti": res.betti(),
                "shifts": res.shifts.iter().map(|s| s.0.clone()).collect::<Vec<_>>(),
                "levels": res.levels.iter().map(|l| ops(l)).collect::<Vec<_>>(),
            })
        }
        Command::Bfunction => {
            plain(job)?;
            let bf = b_function(gens, &m, route)?;
            cx.sizes.insert("f_basis".into(), bf.basis.len().into());
            if bf.b.is_zero() {
                status = Status::NotSpecializable;
            }
            let roots = bf.b.integer_roots();
            let (k0, k1) = bf.b.k0_k1().map_or((Value::Null, Value::Null), |(a, b)| (a.into(), b.into()));
            cx.check("annihilates_gr0", || if bf.b.is_zero() { Ok(true) } else { annihilates(&bf.basis, &bf.b) })?;
            json!({
                "b": coefs(&bf.b.coeffs),
                "text": bf.b.render("theta"),
                "roots": bpoly(&bf.b, "theta")["roots"].clone(),
                "integer_roots": roots,
                "k0": k0,
                "k1": k1,
                "per_component_J_theta": bf.contractions.iter().map(|c| coefs(&c.coeffs)).collect::<Vec<_>>(),
            })
        }
        Command::Restrict => {
            plain(job)?;
            let opts = RestrictOptions { route, depth, window, trust_window: false };
            let r = restrict(gens, &m, &opts)?;
            cx.check("composite_zero", || Ok(r.complex.composite_is_zero()))?;
            cx.sizes.insert(
                "levels".into(),
                (0..r.complex.levels.len()).map(|j| r.complex.rank(j)).collect::<Vec<_>>().into(),
            );
            let degrees = r
                .cohomology
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    presentation(p).map(|mut v| {
                        v["degree"] = (-(i as i64)).into();
                        v
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let mut v = json!({
                "b": r.complex.b.as_ref().map(|b| coefs(&b.coeffs)),
                "window": r.complex.window.map(|(a, b)| vec![a, b]),
                "degrees": degrees,
            });
            if let Some(d) = r.dimensions() {
                v["dims"] = d.into();
            }
            v
        }
        Command::Tensor => {
            plain(job)?;
            if job.options.with.is_empty() {
                return Err(DmodError::Precondition("`with=[[...]]` naming the second module".into()));
            }
            let t = tor(gens, &job.options.with, depth, route)?;
            let tor_json = t.iter().enumerate().map(|(k, p)| {
                presentation(p).map(|mut v| {
                    v["k"] = k.into();
                    v
                })
            });
            json!({"tor": tor_json.collect::<Result<Vec<_>>>()?})
        }
        Command::Localize => {
            plain(job)?;
            let f = match job.options.f.as_slice() {
                [p] => p.clone(),
                _ => return Err(DmodError::Precondition("`f=[...]` with exactly one polynomial".into())),
            };
            let l = localize(gens, &f, route)?;
            cx.check("bs_vanishes_at_minus_one", || Ok(l.bs.eval(&Coef::from_int(-1)).is_zero()))?;
            json!({
                "bs": bpoly(&l.bs, "s"),
                "nu": l.nu,
                "o_f": ops(&l.o_f),
                "module": presentation(&l.module)?,
            })
        }
        Command::Localcohom => {
            plain(job)?;
            if job.options.f.is_empty() {
                return Err(DmodError::Precondition("`f=[...]` defining the support".into()));
            }
            let h = local_cohomology(gens, &job.options.f, route)?;
            let hs = h.iter().enumerate().map(|(i, p)| {
                presentation(p).map(|mut v| {
                    v["i"] = i.into();
                    v
                })
            });
            json!({"cohomology": hs.collect::<Result<Vec<_>>>()?})
        }
        Command::Bsato => {
            plain(job)?;
            let f = functor_f_single(job)?;
            let b = bernstein_sato(&f, route)?;
            cx.check("vanishes_at_minus_one", || Ok(b.eval(&Coef::from_int(-1)).is_zero()))?;
            json!({"b": coefs(&b.coeffs), "text": b.render("s"), "roots": bpoly(&b, "s")["roots"].clone()})
        }
        Command::Annfs => {
            plain(job)?;
            let f = functor_f_single(job)?;
            let j = ann_fs(&f)?;
            cx.sizes.insert("annihilator".into(), j.len().into());
            cx.check("kills_f_s", || {
                j.iter().map(|p| kills_fs(p, &f)).collect::<Result<Vec<_>>>().map(|v| v.into_iter().all(|b| b))
            })?;
            json!({"generators": ops(&j)})
        }
    };

    if cx.checks.values().any(|ok| !ok) {
        status = Status::VerifyFailed;
    }
    let mut doc = json!({
        "command": job.command.name(),
        "ring": ring_json(ring),
        "result": result,
        "timings_ms": {"total": started.elapsed().as_secs_f64() * 1000.0},
        "basis_sizes": cx.sizes,
    });
    if ov.verify {
        doc["verify"] = json!(cx.checks);
    }
    Ok(Outcome { json: doc, status })
}

fn functor_f_single(job: &JobFile) -> Result<Operator> {
    let f = functor_f(job)?;
    match f.as_slice() {
        [p] => Ok(p.clone()),
        _ => Err(DmodError::Precondition("exactly one polynomial f".into())),
    }
}
