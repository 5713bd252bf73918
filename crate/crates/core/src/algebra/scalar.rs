//! The scalar field Q(v), with the convention q = v^2.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::parse;
use crate::error::{Error, Result};

/// Exact rational function in `v`, where `v^2 = q`.
///
/// Always stored in canonical form: numerator and denominator are coprime
/// in `Z[v]`, the joint content of their coefficients is one, and the
/// denominator has a positive leading coefficient. Canonical form makes
/// structural equality coincide with equality of field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarQV {
    num: IntPoly,
    den: IntPoly,
}

impl ScalarQV {
    pub fn zero() -> Self {
        ScalarQV {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        ScalarQV {
            num: IntPoly::constant(c),
            den: IntPoly::one(),
        }
    }

    pub fn from_ratio(a: i64, b: i64) -> Result<Self> {
        Self::from_polys(
            IntPoly::constant(BigInt::from(a)),
            IntPoly::constant(BigInt::from(b)),
        )
    }

    /// `v^k` for any integer `k`.
    pub fn v_pow(k: i64) -> Self {
        let m = IntPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            ScalarQV {
                num: m,
                den: IntPoly::one(),
            }
        } else {
            ScalarQV {
                num: IntPoly::one(),
                den: m,
            }
        }
    }

    /// `q^k = v^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        Self::v_pow(2 * k)
    }

    /// The generator `v = q^(1/2)`.
    pub fn v() -> Self {
        Self::v_pow(1)
    }

    pub fn q() -> Self {
        Self::v_pow(2)
    }

    pub fn from_polys(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        ScalarQV { num, den }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Numeric value at `q = q0`, i.e. `v = sqrt(q0)`.
    pub fn eval_at_q(&self, q0: f64) -> f64 {
        let v = q0.sqrt();
        self.num.eval_f64(v) / self.den.eval_f64(v)
    }

    pub fn eval_complex_at_q(&self, q0: f64) -> Complex64 {
        Complex64::new(self.eval_at_q(q0), 0.0)
    }

    pub fn parse(s: &str) -> Result<Self> {
        parse::parse_scalar(s)
    }

    /// True when the canonical string is a single signed product with no
    /// `+`/`-` inside, so it can be juxtaposed with `*` safely.
    pub(crate) fn is_single_term_numerator(&self) -> bool {
        self.num.term_count() <= 1
    }
}

impl Default for ScalarQV {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ScalarQV {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl FromStr for ScalarQV {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Add for &ScalarQV {
    type Output = ScalarQV;

    fn add(self, other: &ScalarQV) -> ScalarQV {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return ScalarQV::canonical(self.num.add(&other.num), self.den.clone());
        }
        ScalarQV::canonical(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
}

impl Sub for &ScalarQV {
    type Output = ScalarQV;

    fn sub(self, other: &ScalarQV) -> ScalarQV {
        self + &(-other)
    }
}

impl Mul for &ScalarQV {
    type Output = ScalarQV;

    fn mul(self, other: &ScalarQV) -> ScalarQV {
        if self.is_zero() || other.is_zero() {
            return ScalarQV::zero();
        }
        ScalarQV::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }
}

impl Neg for &ScalarQV {
    type Output = ScalarQV;

    fn neg(self) -> ScalarQV {
        ScalarQV {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarQV {
            type Output = ScalarQV;
            fn $m(self, other: ScalarQV) -> ScalarQV {
                (&self).$m(&other)
            }
        }
        impl $tr<&ScalarQV> for ScalarQV {
            type Output = ScalarQV;
            fn $m(self, other: &ScalarQV) -> ScalarQV {
                (&self).$m(other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ScalarQV {
    type Output = ScalarQV;
    fn neg(self) -> ScalarQV {
        -&self
    }
}

/// Writes `c * v^k` with `v^2` spelled `q` and odd powers carrying `q_half`.
fn write_v_monomial(out: &mut String, coeff: &BigInt, k: usize, first: bool) {
    let neg = coeff.is_negative();
    let mag = coeff.abs();
    if neg {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let mut factors: Vec<String> = Vec::new();
    let (qe, half) = (k / 2, k % 2 == 1);
    match qe {
        0 => {}
        1 => factors.push("q".into()),
        e => factors.push(format!("q^{e}")),
    }
    if half {
        factors.push("q_half".into());
    }
    if !mag.is_one() || factors.is_empty() {
        factors.insert(0, mag.to_string());
    }
    out.push_str(&factors.join("*"));
}

pub(crate) fn int_poly_string(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        write_v_monomial(&mut out, c, k, first);
        first = false;
    }
    out
}

/// A denominator can go unparenthesized after `/` only if it is a single
/// factor: a positive integer, or a bare power of `q` or `q_half`.
fn is_single_factor(p: &IntPoly) -> bool {
    if p.term_count() != 1 {
        return false;
    }
    let k = p.low_order();
    let c = &p.coeffs()[k];
    if k == 0 {
        return c.is_positive();
    }
    c.is_one() && (k % 2 == 0 || k == 1)
}

impl fmt::Display for ScalarQV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = int_poly_string(&self.num);
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let num = if self.num.term_count() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = int_poly_string(&self.den);
        if is_single_factor(&self.den) {
            write!(f, "{num}/{den}")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ScalarQV {
        ScalarQV::parse(x).unwrap()
    }

    #[test]
    fn v_squared_is_q() {
        let v = ScalarQV::v();
        assert_eq!((&v * &v).to_string(), "q");
    }

    #[test]
    fn polynomial_cancellation() {
        let one = ScalarQV::one();
        let v = ScalarQV::v();
        let num = &one - &(&v * &v);
        let den = &one - &v;
        let r = num.checked_div(&den).unwrap();
        assert_eq!(r, &one + &v);
        assert_eq!(r.to_string(), "1+q_half");
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(
            ScalarQV::one().checked_div(&ScalarQV::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(s("(1+q)/(1-q^2)").to_string(), "-1/(-1+q)");
        assert_eq!(s("-1/q^2").to_string(), "-1/q^2");
        assert_eq!(ScalarQV::q_pow(-2).to_string(), "1/q^2");
        assert_eq!(s("1 - 1/q^2").to_string(), "(-1+q^2)/q^2");
        assert_eq!(s("q^3*q_half/2").to_string(), "q^3*q_half/2");
        assert_eq!(s("1/(2*q)").to_string(), "1/(2*q)");
        assert_eq!(s("3/q_half").to_string(), "3/q_half");
    }

    #[test]
    fn denominator_sign_normalised() {
        let x = s("1/(1-q)");
        assert!(x.denominator().leading().unwrap().is_positive());
        assert_eq!(x.to_string(), "-1/(-1+q)");
    }

    #[test]
    fn string_round_trip() {
        for txt in ["1", "0", "-q_half", "(1+q)/(1-q^2)", "(2-q^3*q_half)/(5*q^7)", "7/q"] {
            let x = s(txt);
            assert_eq!(s(&x.to_string()), x, "{txt}");
        }
    }

    #[test]
    fn evaluation() {
        let x = s("(1+q_half)/q");
        let v = 3.0f64.sqrt();
        assert!((x.eval_at_q(3.0) - (1.0 + v) / 3.0).abs() < 1e-15);
    }
}
