//! Checks that never touch the `a_w` formula.
//!
//! Rank-one intertwining integral. For `n = 1` and `w = w_0`, write
//! `F = O ⊔ ⊔_{k>=1} ϖ^{-k} O^×`. For `|x| <= 1` the point `w^{-1} n(x)`
//! lies in `K`, contributing `vol(O) = 1`. For `|x| = q^k` the Iwasawa
//! decomposition of `w^{-1} n(x)` has torus part `diag(x^{-1}, x)`, so
//! the spherical section contributes `chi(x)^{-1} |x|^{-(s+1)}`; with
//! `vol(ϖ^{-k} O^×) = q^k (1 - q^{-1})` the shell is
//! `(1 - q^{-1}) (z q^{-s})^k`.
//!
//! Classical plane Fourier transform. With `psi` unramified and `Z_p^2`
//! of volume one, the transform of `1_{p^c Z_p^2}` is
//! `p^{-2c} 1_{p^{-c} Z_p^2}`; in the coset basis that is `q^{-2c}` times
//! the all-ones sequence starting at `-c`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{MellinSymbol, ScalarQV};
use crate::error::{Error, Result};
use crate::schwartz::CoefficientFunction;
use crate::weyl::{c_w, WeylCosetDatum};

fn complex_pair<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShellSumReport {
    pub q: f64,
    #[serde(serialize_with = "complex_pair")]
    pub z: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub s: Complex64,
    pub shells: u32,
    #[serde(serialize_with = "complex_pair")]
    pub partial: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub closed_form: Complex64,
    pub tail_bound: f64,
    /// Floating-point allowance added on top of the tail bound.
    pub roundoff: f64,
    pub error: f64,
}

impl ShellSumReport {
    pub fn agrees(&self) -> bool {
        self.error <= self.tail_bound + self.roundoff
    }
}

fn long_rank_one() -> &'static MellinSymbol {
    static C: OnceLock<MellinSymbol> = OnceLock::new();
    C.get_or_init(|| {
        let w = WeylCosetDatum::long_element(1).expect("rank one");
        c_w(&w).expect("rank one c_w")
    })
}

pub fn rank_one_intertwining(q: f64, z: Complex64, s: Complex64, shells: u32) -> Result<ShellSumReport> {
    if !(q > 1.0) {
        return Err(Error::Domain(format!("q = {q} must exceed 1")));
    }
    if (z.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("|z| = {} must be 1", z.norm())));
    }
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("Re(s) = {} must be positive", s.re)));
    }
    if shells == 0 {
        return Err(Error::Domain("at least one shell is required".into()));
    }
    let x = z * (-s * q.ln()).exp();
    let w = 1.0 - 1.0 / q;
    let mut partial = Complex64::new(1.0, 0.0);
    let mut abs_sum = 1.0;
    let mut xk = Complex64::new(1.0, 0.0);
    for _ in 0..shells {
        xk *= x;
        partial += w * xk;
        abs_sum += w * xk.norm();
    }
    // U = z q^{-s-(n+1)/2} with n = 1
    let u = x / q;
    let closed_form = long_rank_one().eval(q, u);
    let r = q.powf(-s.re);
    // exact when x is real and positive; roundoff covers the last few ulps
    let tail_bound = w * q.powf(-(shells as f64 + 1.0) * s.re) / (1.0 - r);
    let roundoff = 64.0 * f64::EPSILON * (1.0 + closed_form.norm() + abs_sum);
    Ok(ShellSumReport {
        q,
        z,
        s,
        shells,
        partial,
        closed_form,
        tail_bound,
        roundoff,
        error: (partial - closed_form).norm(),
    })
}

pub const GRID_Q: [f64; 5] = [2.0, 3.0, 5.0, 9.0, 101.0];
pub const GRID_S: [(f64, f64); 6] = [(0.25, 0.0), (0.5, -7.0), (1.0, 0.0), (1.0, 3.0), (2.0, 0.0), (3.5, 0.5)];
pub const GRID_SHELLS: u32 = 40;

pub fn grid_z() -> [Complex64; 4] {
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ]
}

/// The full `5 x 4 x 6` grid, in a fixed order.
pub fn rank_one_grid() -> Result<Vec<ShellSumReport>> {
    let mut points = Vec::new();
    for q in GRID_Q {
        for z in grid_z() {
            for (re, im) in GRID_S {
                points.push((q, z, Complex64::new(re, im)));
            }
        }
    }
    points
        .into_par_iter()
        .map(|(q, z, s)| rank_one_intertwining(q, z, s, GRID_SHELLS))
        .collect()
}

/// `q^{-2c}` times the ones sequence from `-c`, i.e. `q^{-2c} U^{-c} / (1 - U)`.
pub fn classical_fourier_pattern(c: i64) -> Result<CoefficientFunction> {
    if c.abs() > 10 {
        return Err(Error::Domain(format!("|c| = {} exceeds 10", c.abs())));
    }
    let ones = MellinSymbol::one()
        .checked_div(&(&MellinSymbol::one() - &MellinSymbol::u_pow(1)))
        .expect("1 - U is nonzero");
    let sym = (&MellinSymbol::u_pow(-c) * &ones).scale(&ScalarQV::q_pow(-2 * c));
    CoefficientFunction::rational(1, sym)
}

/// `psi(t) = exp(2 pi i {t}_p)` for `t = a * p^e`, `a` an integer.
fn psi(a: i64, e: i64, p: u64) -> Complex64 {
    if e >= 0 {
        return Complex64::new(1.0, 0.0);
    }
    let m = (p as i64).pow((-e) as u32);
    let frac = a.rem_euclid(m) as f64 / m as f64;
    Complex64::from_polar(1.0, 2.0 * PI * frac)
}

/// One-dimensional transform of `1_{p^c Z_p}` at `y = u p^v` (`u` a unit),
/// by summing `psi(x y)` over `p^c Z_p / p^N Z_p` with `N` fine enough for
/// `psi(x y)` to be constant on cosets.
fn line_transform(p: u64, c: i64, u: i64, v: i64) -> Complex64 {
    let n = c.max(-v) + 1;
    let count = (p as i64).pow((n - c) as u32);
    let vol = (p as f64).powi(-(c as i32));
    let sum: Complex64 = (0..count).map(|a| psi(a * u, c + v, p)).sum();
    sum * vol / count as f64
}

/// Brute-force plane transform of `1_{p^c Z_p^2}` at `y = (u1 p^v1, u2 p^v2)`.
pub fn brute_force_plane_transform(p: u64, c: i64, y: [(i64, i64); 2]) -> Complex64 {
    line_transform(p, c, y[0].0, y[0].1) * line_transform(p, c, y[1].0, y[1].1)
}
