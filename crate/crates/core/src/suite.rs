//! Named checks shared by the `verify` subcommands. Each builder returns a
//! list of checks; `run_checks` evaluates them concurrently and reports in
//! list order.

use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{MellinSymbol, ScalarQV};
use crate::error::{Error, Result};
use crate::geometry::{self, norm, pluecker, random as grand, Norm, Place};
use crate::global;
use crate::oracles;
use crate::schwartz::{self, basic_function, fourier, CoefficientFunction};
use crate::weyl::{self, WeylCosetDatum};

type CheckFn = Box<dyn Fn() -> Result<(bool, Value)> + Send + Sync>;

pub struct Check {
    pub name: String,
    run: CheckFn,
}

impl Check {
    pub fn new(name: impl Into<String>, run: impl Fn() -> Result<(bool, Value)> + Send + Sync + 'static) -> Self {
        Check {
            name: name.into(),
            run: Box::new(run),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: f64,
    #[serde(skip)]
    pub exit_code: i32,
}

pub fn run_checks(checks: &[Check]) -> Vec<CheckResult> {
    checks
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let out = (c.run)();
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let (status, detail, error, exit_code) = match out {
                Ok((true, d)) => (Status::Pass, d, None, 0),
                Ok((false, d)) => (Status::Fail, d, None, 4),
                Err(Error::CheckFailed(r)) => (Status::Fail, json!(*r), None, 4),
                Err(e) => (Status::Error, Value::Null, Some(e.to_string()), e.exit_code()),
            };
            CheckResult {
                name: c.name.clone(),
                status,
                detail,
                error,
                elapsed_ms,
                exit_code,
            }
        })
        .collect()
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// The exact symbolic suite at rank `n`.
pub fn local(n: usize, samples: usize, seed: u64) -> Result<Vec<Check>> {
    if !(1..=6).contains(&n) {
        return Err(Error::Domain(format!("n = {n} outside 1..=6")));
    }
    Ok(vec![
        Check::new("a-identity-is-d", move || {
            let a = weyl::a_w(&WeylCosetDatum::identity(n)?)?;
            let d = weyl::d_factor(n);
            let ok = a.same_factors(&d) && a.symbol(n) == d.symbol(n);
            Ok((ok, json!({"a": a.to_string(), "d": d.to_string()})))
        }),
        Check::new("c-identity-is-one", move || {
            let c = weyl::c_w(&WeylCosetDatum::identity(n)?)?;
            Ok((c == MellinSymbol::one(), json!({"c": c.to_string()})))
        }),
        Check::new("a-long-closed-form", move || {
            let a = weyl::a_w(&WeylCosetDatum::long_element(n)?)?;
            let closed = weyl::a_long_closed_form(n);
            let (sa, sc) = (a.symbol(n).to_string(), closed.symbol(n).to_string());
            Ok((sa == sc, json!({"a": a.to_string(), "closedForm": closed.to_string(), "symbol": sa})))
        }),
        Check::new("gk-matches-c-long", move || {
            let gk = weyl::gk_product(n)?;
            let c = weyl::c_w(&WeylCosetDatum::long_element(n)?)?;
            Ok((gk == c, json!({"gk": gk.to_string(), "c": c.to_string()})))
        }),
        Check::new("basic-fixed", move || {
            let b = basic_function(n)?;
            let fb = fourier(&b)?;
            Ok((fb.same_function(&b), json!({"b": b.mellin().to_string(), "fourier": fb.mellin().to_string()})))
        }),
        Check::new("multiplier-involution", move || {
            let m = weyl::fourier_multiplier(n)?;
            let r = m.substitute_reciprocal(&weyl::reflection_constant(n));
            let prod = &m * &r;
            Ok((prod == MellinSymbol::one(), json!({"multiplier": m.to_string()})))
        }),
        Check::new("fourier-involution", move || {
            let mut g = rng(seed, n as u64);
            let mut failures = Vec::new();
            for i in 0..samples {
                let f = schwartz::random::rational_function(n, &mut g);
                if !fourier(&fourier(&f)?)?.same_function(&f) {
                    failures.push(json!({"index": i, "symbol": f.mellin().to_string()}));
                }
            }
            Ok((failures.is_empty(), json!({"samples": samples, "seed": seed, "failures": failures})))
        }),
    ])
}

/// Criterion-style growth and support checks at rank `n <= 4`.
pub fn growth(n: usize) -> Result<Vec<Check>> {
    if !(1..=4).contains(&n) {
        return Err(Error::Domain(format!("n = {n} outside 1..=4")));
    }
    Ok(vec![
        Check::new(format!("fourier-indicator-floor-n{n}"), move || {
            let f = fourier(&CoefficientFunction::indicator(n, 0)?)?;
            let expected = -(1 + (n as i64) / 2);
            let got = f.support_floor();
            Ok((got == Some(expected), json!({"expected": expected, "computed": got})))
        }),
        Check::new(format!("basic-growth-bound-n{n}"), move || {
            let q: f64 = 101.0;
            let c = schwartz::basic_coefficients_direct(n, 40)?;
            let mut worst = f64::NEG_INFINITY;
            for (m, cm) in c.iter().enumerate() {
                let log_c = cm.eval_at_q(q).ln();
                let log_bound = m as f64 * ((n as f64 + 1.0) / 2.0 + 0.5) * q.ln();
                worst = worst.max(log_c - log_bound);
            }
            Ok((worst <= 0.0, json!({"q": q, "upto": 40, "maxLogRatio": worst})))
        }),
    ])
}

fn shell_detail(r: &oracles::ShellSumReport) -> Value {
    serde_json::to_value(r).unwrap_or(Value::Null)
}

pub fn rank_one_point(q: f64, z: Complex64, s: Complex64, shells: u32) -> Vec<Check> {
    vec![Check::new("rank-one-shell-sum", move || {
        let r = oracles::rank_one_intertwining(q, z, s, shells)?;
        Ok((r.agrees(), shell_detail(&r)))
    })]
}

pub fn rank_one_grid() -> Vec<Check> {
    vec![Check::new("rank-one-grid", || {
        let g = oracles::rank_one_grid()?;
        let bad: Vec<Value> = g.iter().filter(|r| !r.agrees()).map(shell_detail).collect();
        let worst = g
            .iter()
            .map(|r| r.error / (r.tail_bound + r.roundoff))
            .fold(0.0, f64::max);
        Ok((bad.is_empty(), json!({"points": g.len(), "maxErrorOverAllowance": worst, "failures": bad})))
    })]
}

pub fn classical(cs: Vec<i64>) -> Vec<Check> {
    cs.into_iter()
        .map(|c| {
            Check::new(format!("classical-pattern-c{c}"), move || {
                let f = fourier(&schwartz::shifted_basic(1, c)?)?;
                let p = oracles::classical_fourier_pattern(c)?;
                Ok((f.same_function(&p), json!({"fourier": f.mellin().to_string(), "pattern": p.mellin().to_string()})))
            })
        })
        .collect()
}

pub const GEOMETRY_PRIMES: [u64; 3] = [2, 3, 5];

/// Exact `p`-adic norm invariance, exact Plücker equivariance, and the
/// Archimedean invariance under `[P,P] x U(n)`.
pub fn geometry_checks(max_n: usize, samples: usize, equivariance: usize, seed: u64) -> Result<Vec<Check>> {
    if !(1..=3).contains(&max_n) {
        return Err(Error::Domain(format!("n = {max_n} outside 1..=3")));
    }
    let mut checks = Vec::new();
    for n in 1..=max_n {
        for p in GEOMETRY_PRIMES {
            checks.push(Check::new(format!("norm-invariance-n{n}-p{p}"), move || {
                let mut g = rng(seed, 100 * n as u64 + p);
                let mut failures = 0usize;
                for _ in 0..samples {
                    let x = grand::group_element(n, p, &mut g);
                    let l = grand::derived_parabolic(n, &mut g);
                    let k = grand::hyperspecial(n, p, &mut g);
                    let y = l.mul(&x)?.mul(&k)?;
                    if norm(&y, Place::Finite(p))? != norm(&x, Place::Finite(p))? {
                        failures += 1;
                    }
                }
                Ok((failures == 0, json!({"samples": samples, "failures": failures})))
            }));
        }
    }
    checks.push(Check::new("pluecker-equivariance", move || {
        let mut g = rng(seed, 1);
        let mut failures = 0usize;
        for i in 0..equivariance {
            let n = 1 + i % max_n;
            let x = grand::group_element(n, GEOMETRY_PRIMES[i % 3], &mut g);
            let (m, det) = grand::levi_element(n, &mut g);
            if pluecker(&m.mul(&x)?) != pluecker(&x).scale(&det.recip()) {
                failures += 1;
            }
        }
        Ok((failures == 0, json!({"samples": equivariance, "failures": failures})))
    }));
    checks.push(Check::new("archimedean-invariance", move || {
        let mut g = rng(seed, 2);
        let mut worst: f64 = 0.0;
        for i in 0..equivariance {
            let n = 1 + i % max_n;
            let x = grand::real_group_element(n, &mut g);
            let l = grand::real_derived_parabolic(n, &mut g);
            let k = grand::real_maximal_compact(n, &mut g);
            let a = geometry::norm_real(&x);
            let b = geometry::norm_real(&(&l * &x * &k));
            worst = worst.max((a - b).abs() / a);
        }
        Ok((worst < 1e-9, json!({"samples": equivariance, "maxRelativeError": worst})))
    }));
    Ok(checks)
}

pub fn global(lambda: f64, radius: f64, tol: f64) -> Vec<Check> {
    vec![Check::new("poisson-summation-n1", move || {
        let r = global::verify_theorem_n1(lambda, radius, tol)?;
        let routes_ok = r.route_gap <= 1e-8;
        Ok((r.passed && routes_ok, json!(r)))
    })]
}

/// `norm` output: `(value, coset index)`, the index only at finite places.
pub fn norm_summary(g: &geometry::SymplecticMatrix, place: Place) -> Result<(String, Option<i64>)> {
    match norm(g, place)? {
        Norm::PAdic(x) => {
            let Place::Finite(p) = place else { unreachable!() };
            Ok((x.to_string(), Some(geometry::coset_index(g, p)?)))
        }
        Norm::Real(x) => Ok((format!("{x}"), None)),
    }
}

/// Canonical strings of `c_floor ..= c_upto`.
pub fn coefficient_strings(f: &CoefficientFunction, upto: i64) -> Result<Vec<(i64, String)>> {
    Ok(f
        .coefficients(upto)?
        .into_iter()
        .map(|(m, c): (i64, ScalarQV)| (m, c.to_string()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_suite_passes_rank_two() {
        let r = run_checks(&local(2, 3, 0).unwrap());
        assert_eq!(r.len(), 7);
        assert!(r.iter().all(|c| c.status == Status::Pass), "{r:?}");
    }

    #[test]
    fn results_keep_list_order() {
        let names: Vec<String> = run_checks(&classical(vec![2, -1, 0])).into_iter().map(|c| c.name).collect();
        assert_eq!(names, ["classical-pattern-c2", "classical-pattern-c-1", "classical-pattern-c0"]);
    }

    #[test]
    fn errors_carry_exit_codes() {
        let r = run_checks(&rank_one_point(1.0, Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), 5));
        assert_eq!(r[0].status, Status::Error);
        assert_eq!(r[0].exit_code, 2);
    }

    #[test]
    fn small_geometry_run() {
        let r = run_checks(&geometry_checks(2, 5, 6, 1).unwrap());
        assert!(r.iter().all(|c| c.status == Status::Pass), "{r:?}");
    }
}
