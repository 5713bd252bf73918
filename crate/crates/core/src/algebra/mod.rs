//! Exact arithmetic: integer polynomials, the scalar field `Q(v)` with
//! `q = v^2`, and rational Mellin symbols in `U` with Laurent expansion.

mod gcd;
pub mod intpoly;
pub(crate) mod parse;
pub mod scalar;
pub mod symbol;

pub use intpoly::IntPoly;
pub use scalar::ScalarQV;
pub use symbol::{MellinSymbol, UPoly};
