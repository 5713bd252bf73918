//! Exact spherical harmonic analysis on the Braverman–Kazhdan space
//! `X = [P,P] \ Sp_2n`: L-factor bookkeeping, the Mellin transform and
//! Fourier transform on the `Sp_2n(Z_p)`-invariant sector, Plücker norms,
//! numeric oracles, and a desk-scale check of Poisson summation for `n = 1`.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod global;
pub mod oracles;
pub mod schwartz;
pub mod suite;
pub mod weyl;

pub use algebra::{MellinSymbol, ScalarQV};
pub use error::{Error, Result};
