//! Desk-scale check of Poisson summation on `X = N \ SL_2` over `Q`.
//!
//! Take `Phi = (⊗_p b_p) ⊗ exp(-pi lambda |x|^2)`. Since `X(Q) = Q^2 - 0`
//! and `b_p` is the indicator of `Z_p^2`, the sum over `X(Q)` is a sum over
//! nonzero lattice points. The transform is `(⊗_p F(b_p)) ⊗ lambda^{-1}
//! exp(-pi |x|^2 / lambda)`, the Archimedean factor being the classical
//! self-dual plane transform. The identity checked is
//!
//! ```text
//! sum Phi + Res F(Phi) = sum F(Phi) + Res Phi
//! ```
//!
//! with residues of the Eisenstein series at `s = 1` divided by
//! `Res_{s=1} zeta(s) = 1`. Unfolding gives, for the scaled Gaussian,
//!
//! ```text
//! E(s) = 1/2 * lambda^{-w} * Gamma_R(s+1) * Z(w),   w = (s+1)/2,
//! ```
//!
//! where `Z(w) = sum' (m^2 + n^2)^{-w}`. The residue is computed twice:
//! route A uses the theta-split representation of
//! `Lambda(w) = pi^{-w} Gamma(w) Z(w)`, route B uses `Z = 4 zeta beta` with
//! alternating-series acceleration. Both extrapolate `(s-1) E(s)` to
//! `s = 1` from symmetric samples.

use std::f64::consts::PI;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::geometry::SymplecticMatrix;
use crate::schwartz::{basic_function, evaluate, fourier, CoefficientFunction};

pub const PRIMES: [u64; 3] = [2, 3, 5];
pub const KAPPA_Q: f64 = 1.0;
const STEPS: [f64; 2] = [1e-3, 1e-4];
const THETA_CUTOFF: i64 = 7;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct GlobalCheckReport {
    pub lambda: f64,
    pub radius: f64,
    pub tol: f64,
    pub lattice_points: usize,
    pub sum_phi: f64,
    pub sum_f_phi: f64,
    pub res_phi: f64,
    pub res_f_phi: f64,
    pub res_phi_route_b: f64,
    pub res_f_phi_route_b: f64,
    pub route_gap: f64,
    pub kappa: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub discrepancy: f64,
    pub passed: bool,
    pub elapsed_ms: f64,
}

fn check_domain(lambda: f64, radius: f64) -> Result<()> {
    if !(0.125..=8.0).contains(&lambda) {
        return Err(Error::Domain(format!("lambda = {lambda} outside [1/8, 8]")));
    }
    if !(radius >= 5.0) || !radius.is_finite() {
        return Err(Error::Domain(format!("radius = {radius} must be at least 5")));
    }
    Ok(())
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// An element of `SL_2(Q)` whose bottom row is `(m1, m2) != 0`, so it
/// represents the point `(m1, m2)` of `X(Q)`.
pub fn point_matrix(m1: &BigRational, m2: &BigRational) -> SymplecticMatrix {
    use num_traits::Zero;
    let zero = BigRational::zero();
    let rows = if !m1.is_zero() {
        vec![vec![zero, -m1.recip()], vec![m1.clone(), m2.clone()]]
    } else {
        vec![vec![m2.recip(), zero.clone()], vec![zero, m2.clone()]]
    };
    SymplecticMatrix::new(rows).expect("determinant one")
}

/// Product over `p in PRIMES` of the numeric value of `f` at `(m1, m2)`.
fn finite_part(f: &CoefficientFunction, m1: &BigRational, m2: &BigRational) -> Result<f64> {
    let g = point_matrix(m1, m2);
    PRIMES
        .iter()
        .map(|&p| evaluate(f, &g, p).map(|v| v.eval_at_q(p as f64)))
        .product()
}

/// Non-integral test points `(m1, m2)` with the prime at which they fail.
fn non_integral_points() -> Vec<(BigRational, BigRational, u64)> {
    let r = |n: i64, d: i64| rat(BigInt::from(n), BigInt::from(d));
    vec![
        (r(1, 2), r(3, 1), 2),
        (r(2, 3), r(1, 5), 3),
        (r(0, 1), r(1, 25), 5),
        (r(7, 4), r(0, 1), 2),
        (r(5, 9), r(2, 7), 3),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeSums {
    pub sum_phi: f64,
    pub sum_f_phi: f64,
    pub points: usize,
}

/// Truncated sums of `Phi` and `F(Phi)` over `0 != m in Z^2, |m| <= radius`.
/// Finite-place factors are evaluated, not assumed.
pub fn lattice_sum(lambda: f64, radius: f64) -> Result<LatticeSums> {
    check_domain(lambda, radius)?;
    let b = basic_function(1)?;
    let fb = fourier(&b)?;
    for (m1, m2, p) in non_integral_points() {
        let g = point_matrix(&m1, &m2);
        for f in [&b, &fb] {
            if !evaluate(f, &g, p)?.is_zero() {
                return Err(Error::Invariant(format!(
                    "basic function nonzero at non-integral point ({m1}, {m2}) for p = {p}"
                )));
            }
        }
    }
    let r = radius.floor() as i64;
    let r2 = radius * radius;
    let rows: Vec<Result<(f64, f64, usize)>> = (-r..=r)
        .into_par_iter()
        .map(|m1| {
            let (mut a, mut c, mut count) = (0.0, 0.0, 0);
            for m2 in -r..=r {
                let n2 = (m1 * m1 + m2 * m2) as f64;
                if n2 == 0.0 || n2 > r2 {
                    continue;
                }
                let (x, y) = (
                    rat(BigInt::from(m1), BigInt::from(1)),
                    rat(BigInt::from(m2), BigInt::from(1)),
                );
                let (bf, fbf) = (finite_part(&b, &x, &y)?, finite_part(&fb, &x, &y)?);
                if bf != 1.0 || fbf != 1.0 {
                    return Err(Error::Invariant(format!(
                        "finite part at ({m1}, {m2}) is ({bf}, {fbf}), expected 1"
                    )));
                }
                a += bf * (-PI * lambda * n2).exp();
                c += fbf * (-PI * n2 / lambda).exp() / lambda;
                count += 1;
            }
            Ok((a, c, count))
        })
        .collect();
    let mut out = LatticeSums {
        sum_phi: 0.0,
        sum_f_phi: 0.0,
        points: 0,
    };
    // fixed summation order keeps the result deterministic
    for row in rows {
        let (a, c, k) = row?;
        out.sum_phi += a;
        out.sum_f_phi += c;
        out.points += k;
    }
    Ok(out)
}

/// `Gamma(a, x)` for real `a` and `x > max(a + 1, 0)` by Lentz's method on
/// the Legendre continued fraction (valid for `a <= 0` too).
pub fn upper_incomplete_gamma(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x + a * x.ln()).exp() * h
}

/// `Lambda(w) = pi^{-w} Gamma(w) Z(w)` by splitting the theta integral at 1.
pub fn completed_epstein(w: f64) -> f64 {
    let mut sum = 0.0;
    for m1 in -THETA_CUTOFF..=THETA_CUTOFF {
        for m2 in -THETA_CUTOFF..=THETA_CUTOFF {
            let n2 = m1 * m1 + m2 * m2;
            if n2 == 0 || n2 > THETA_CUTOFF * THETA_CUTOFF {
                continue;
            }
            let x = PI * n2 as f64;
            sum += upper_incomplete_gamma(w, x) * x.powf(-w)
                + upper_incomplete_gamma(1.0 - w, x) * x.powf(w - 1.0);
        }
    }
    1.0 / (w - 1.0) - 1.0 / w + sum
}

/// `sum_{k>=0} (-1)^k a(k)` by the Cohen–Rodriguez Villegas–Zagier scheme.
fn alternating_sum(a: impl Fn(f64) -> f64) -> f64 {
    const N: usize = 40;
    let mut d = (3.0 + 8f64.sqrt()).powi(N as i32);
    d = (d + 1.0 / d) / 2.0;
    let (mut b, mut c, mut s) = (-1.0, -d, 0.0);
    for k in 0..N {
        c = b - c;
        s += c * a(k as f64);
        let kf = k as f64;
        let nf = N as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

/// `zeta(w)` for real `w != 1`, via the Dirichlet eta function.
pub fn zeta(w: f64) -> f64 {
    let eta = alternating_sum(|k| (k + 1.0).powf(-w));
    eta / -((1.0 - w) * 2f64.ln()).exp_m1()
}

/// Dirichlet beta `sum (-1)^k (2k+1)^{-w}`.
pub fn dirichlet_beta(w: f64) -> f64 {
    alternating_sum(|k| (2.0 * k + 1.0).powf(-w))
}

/// `Z(w) = 4 zeta(w) beta(w)`.
pub fn epstein_by_factorisation(w: f64) -> f64 {
    4.0 * zeta(w) * dirichlet_beta(w)
}

/// `Gamma_R(s) = pi^{-s/2} Gamma(s/2)`.
pub fn gamma_r(s: f64) -> f64 {
    PI.powf(-s / 2.0) * gamma(s / 2.0)
}

/// Eisenstein series of the Gaussian `c * exp(-pi * scale * |x|^2)` at `s`.
fn eisenstein_route_a(c: f64, scale: f64, s: f64) -> f64 {
    let w = (s + 1.0) / 2.0;
    c * 0.5 * scale.powf(-w) * completed_epstein(w)
}

fn eisenstein_route_b(c: f64, scale: f64, s: f64) -> f64 {
    let w = (s + 1.0) / 2.0;
    c * 0.5 * scale.powf(-w) * gamma_r(s + 1.0) * epstein_by_factorisation(w)
}

/// Residue at `s = 1` by Richardson extrapolation of the symmetric mean of
/// `(s-1) E(s)` at `s = 1 ± h` over the two step sizes.
fn residue_at_one(e: impl Fn(f64) -> f64) -> f64 {
    let g = |h: f64| 0.5 * (h * e(1.0 + h) + (-h) * e(1.0 - h));
    let (h1, h2) = (STEPS[0], STEPS[1]);
    let (g1, g2) = (g(h1), g(h2));
    (h1 * h1 * g2 - h2 * h2 * g1) / (h1 * h1 - h2 * h2)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Residues {
    pub res_phi: f64,
    pub res_f_phi: f64,
    pub res_phi_route_b: f64,
    pub res_f_phi_route_b: f64,
}

impl Residues {
    pub fn route_gap(&self) -> f64 {
        (self.res_phi - self.res_phi_route_b)
            .abs()
            .max((self.res_f_phi - self.res_f_phi_route_b).abs())
    }
}

/// Residues of `E(Phi)` and `E(F(Phi))` at `s = 1`, divided by `kappa_Q`.
pub fn eisenstein_residue(lambda: f64) -> Result<Residues> {
    check_domain(lambda, 5.0)?;
    let res = Residues {
        res_phi: residue_at_one(|s| eisenstein_route_a(1.0, lambda, s)) / KAPPA_Q,
        res_f_phi: residue_at_one(|s| eisenstein_route_a(1.0 / lambda, 1.0 / lambda, s)) / KAPPA_Q,
        res_phi_route_b: residue_at_one(|s| eisenstein_route_b(1.0, lambda, s)) / KAPPA_Q,
        res_f_phi_route_b: residue_at_one(|s| eisenstein_route_b(1.0 / lambda, 1.0 / lambda, s))
            / KAPPA_Q,
    };
    if res.route_gap() > 1e-6 {
        return Err(Error::OracleDisagreement {
            route_a: res.res_phi,
            route_b: res.res_phi_route_b,
        });
    }
    Ok(res)
}

/// Full four-term identity; fails with the complete report attached.
pub fn verify_theorem_n1(lambda: f64, radius: f64, tol: f64) -> Result<GlobalCheckReport> {
    check_domain(lambda, radius)?;
    if !(tol >= 1e-9) {
        return Err(Error::Domain(format!("tol = {tol} must be at least 1e-9")));
    }
    let start = Instant::now();
    let (sums, res) = rayon::join(|| lattice_sum(lambda, radius), || eisenstein_residue(lambda));
    let (sums, res) = (sums?, res?);
    let lhs = sums.sum_phi + res.res_f_phi;
    let rhs = sums.sum_f_phi + res.res_phi;
    let discrepancy = (lhs - rhs).abs();
    let report = GlobalCheckReport {
        lambda,
        radius,
        tol,
        lattice_points: sums.points,
        sum_phi: sums.sum_phi,
        sum_f_phi: sums.sum_f_phi,
        res_phi: res.res_phi,
        res_f_phi: res.res_f_phi,
        res_phi_route_b: res.res_phi_route_b,
        res_f_phi_route_b: res.res_f_phi_route_b,
        route_gap: res.route_gap(),
        kappa: KAPPA_Q,
        lhs,
        rhs,
        discrepancy,
        passed: discrepancy < tol,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    if report.passed {
        Ok(report)
    } else {
        Err(Error::CheckFailed(Box::new(report)))
    }
}
