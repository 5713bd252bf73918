//! Rational functions in the Mellin variable `U` over `Q(v)`.
//!
//! On the spherical line the Mellin transform of `1_c` is `U^c`, so a
//! spherical function is the same thing as a Laurent series in `U`, and the
//! functions the library handles have rational generating series.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;

use super::gcd;
use super::parse;
use super::scalar::ScalarQV;
use crate::error::{Error, Result};

/// Dense polynomial in `U` with `ScalarQV` coefficients, ascending degree,
/// trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<ScalarQV>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ScalarQV::one())
    }

    pub fn constant(c: ScalarQV) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<ScalarQV>) -> Self {
        while coeffs.last().is_some_and(ScalarQV::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    /// `1 - c U^k` for `k >= 1`.
    pub fn one_minus(c: ScalarQV, k: usize) -> Self {
        let mut coeffs = vec![ScalarQV::zero(); k + 1];
        coeffs[0] = ScalarQV::one();
        coeffs[k] = -&c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[ScalarQV] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ScalarQV {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn low_order(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn shift_down(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![ScalarQV::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..len).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ScalarQV::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &ScalarQV) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division over the field `Q(v)`.
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = d.coeffs[dd].recip().expect("nonzero leading coefficient");
        let mut r = self.clone();
        let mut q = vec![ScalarQV::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = &r.coeffs[rd] * &inv_lead;
            r = r.add(&d.scale(&c).shift_up(rd - dd).neg());
            debug_assert!(r.degree() < Some(rd));
            q[rd - dd] = c;
        }
        (Self::from_coeffs(q), r)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        gcd::upoly_gcd(self, o)
    }

    pub fn eval(&self, q0: f64, u: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * u + c.eval_at_q(q0))
    }
}

/// `U^shift * num(U) / den(U)` in canonical form: `num(0) != 0`,
/// `den(0) = 1`, `gcd(num, den) = 1`. The Laurent floor is then exactly
/// `shift`, and the expansion at `U = 0` always exists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MellinSymbol {
    shift: i64,
    num: UPoly,
    den: UPoly,
}

impl MellinSymbol {
    pub fn zero() -> Self {
        MellinSymbol {
            shift: 0,
            num: UPoly::zero(),
            den: UPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(ScalarQV::one())
    }

    pub fn constant(c: ScalarQV) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MellinSymbol {
            shift: 0,
            num: UPoly::constant(c),
            den: UPoly::one(),
        }
    }

    /// `U^k`.
    pub fn u_pow(k: i64) -> Self {
        MellinSymbol {
            shift: k,
            num: UPoly::one(),
            den: UPoly::one(),
        }
    }

    /// `U^shift * num / den`, reduced to canonical form.
    pub fn from_parts(shift: i64, num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotExpandable);
        }
        Ok(Self::canonical(shift, num, den))
    }

    /// Laurent polynomial with the given coefficients starting at `U^floor`.
    pub fn from_laurent(floor: i64, coeffs: Vec<ScalarQV>) -> Self {
        Self::canonical(floor, UPoly::from_coeffs(coeffs), UPoly::one())
    }

    fn canonical(shift: i64, num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (ln, ld) = (num.low_order(), den.low_order());
        let shift = shift + ln as i64 - ld as i64;
        let (num, den) = (num.shift_down(ln), den.shift_down(ld));
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let inv = den.coeffs[0].recip().expect("den(0) != 0 after U-power removal");
        MellinSymbol {
            shift,
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Lowest exponent of the Laurent expansion; `None` for zero.
    pub fn floor(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(-self.shift, self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.recip()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &ScalarQV) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MellinSymbol {
            shift: self.shift,
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Substitute `U -> c / U`.
    pub fn substitute_reciprocal(&self, c: &ScalarQV) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // P(c/U) = U^{-deg P} * sum_k P_k c^k U^{deg P - k}
        let flip = |p: &UPoly| -> (i64, UPoly) {
            let d = p.degree().unwrap();
            let mut ck = ScalarQV::one();
            let mut out = vec![ScalarQV::zero(); d + 1];
            for (k, pk) in p.coeffs().iter().enumerate() {
                out[d - k] = pk * &ck;
                ck = &ck * c;
            }
            (d as i64, UPoly::from_coeffs(out))
        };
        let (dn, n) = flip(&self.num);
        let (dd, d) = flip(&self.den);
        let cs = c.pow(self.shift).expect("c is nonzero");
        Self::canonical(-self.shift - dn + dd, n.scale(&cs), d)
    }

    /// Coefficients `c_m` for `floor <= m <= upto`.
    pub fn laurent_expand(&self, upto: i64) -> Result<Vec<(i64, ScalarQV)>> {
        let Some(floor) = self.floor() else {
            return Ok(Vec::new());
        };
        if upto < floor {
            return Ok(Vec::new());
        }
        let len = (upto - floor + 1) as usize;
        let mut a: Vec<ScalarQV> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = self.num.coeff(k);
            for (j, dj) in self.den.coeffs().iter().enumerate().skip(1) {
                if j > k {
                    break;
                }
                if !dj.is_zero() && !a[k - j].is_zero() {
                    acc = &acc - &(dj * &a[k - j]);
                }
            }
            a.push(acc);
        }
        if a[0].is_zero() {
            return Err(Error::FloorMismatch {
                structural: floor,
                expanded: floor + 1,
            });
        }
        Ok(a.into_iter()
            .enumerate()
            .map(|(k, c)| (floor + k as i64, c))
            .collect())
    }

    /// Numeric value at `q = q0`, `U = u`.
    pub fn eval(&self, q0: f64, u: Complex64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        u.powi(self.shift as i32) * self.num.eval(q0, u) / self.den.eval(q0, u)
    }

    pub fn parse(s: &str) -> Result<Self> {
        parse::parse_symbol(s)
    }

    /// Parse separate numerator and denominator strings.
    pub fn parse_fraction(num: &str, den: &str) -> Result<Self> {
        Self::parse(num)?.checked_div(&Self::parse(den)?)
    }

    /// Canonical numerator string: the Laurent polynomial `U^shift * num`.
    pub fn numerator_string(&self) -> String {
        laurent_poly_string(self.shift, &self.num)
    }

    /// Canonical denominator string (a polynomial with constant term 1).
    pub fn denominator_string(&self) -> String {
        laurent_poly_string(0, &self.den)
    }
}

fn coefficient_prefix(c: &ScalarQV) -> String {
    let s = c.to_string();
    if c.is_single_term_numerator() || !c.denominator().is_one() {
        s
    } else {
        format!("({s})")
    }
}

fn laurent_poly_string(shift: i64, p: &UPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = shift + k as i64;
        let upow = match e {
            0 => String::new(),
            1 => "U".to_string(),
            e => format!("U^{e}"),
        };
        let term = if upow.is_empty() {
            coefficient_prefix(c)
        } else if c.is_one() {
            upow
        } else if (-c).is_one() {
            format!("-{upow}")
        } else {
            format!("{}*{upow}", coefficient_prefix(c))
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    out
}

fn is_compound(s: &str) -> bool {
    s.char_indices().any(|(i, c)| (c == '+' || c == '-') && i > 0) || s.contains('/')
}

impl fmt::Display for MellinSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator_string();
        if self.den.is_one() {
            return f.write_str(&num);
        }
        let den = self.denominator_string();
        let num = if is_compound(&num) { format!("({num})") } else { num };
        write!(f, "{num}/({den})")
    }
}

impl FromStr for MellinSymbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Add for &MellinSymbol {
    type Output = MellinSymbol;

    fn add(self, o: &MellinSymbol) -> MellinSymbol {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(o.shift);
        let a = self.num.shift_up((self.shift - m) as usize);
        let b = o.num.shift_up((o.shift - m) as usize);
        if self.den == o.den {
            return MellinSymbol::canonical(m, a.add(&b), self.den.clone());
        }
        MellinSymbol::canonical(
            m,
            a.mul(&o.den).add(&b.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
}

impl Sub for &MellinSymbol {
    type Output = MellinSymbol;
    fn sub(self, o: &MellinSymbol) -> MellinSymbol {
        self + &(-o)
    }
}

impl Mul for &MellinSymbol {
    type Output = MellinSymbol;
    fn mul(self, o: &MellinSymbol) -> MellinSymbol {
        if self.is_zero() || o.is_zero() {
            return MellinSymbol::zero();
        }
        // both sides are reduced, so only cross gcds can be nontrivial
        let (a, d) = cancel(&self.num, &o.den);
        let (b, c) = cancel(&o.num, &self.den);
        let (num, den) = (a.mul(&b), c.mul(&d));
        let inv = den.coeffs[0].recip().expect("den(0) != 0");
        MellinSymbol {
            shift: self.shift + o.shift,
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

fn cancel(num: &UPoly, den: &UPoly) -> (UPoly, UPoly) {
    if den.degree() == Some(0) {
        return (num.clone(), den.clone());
    }
    let g = num.gcd(den);
    if g.is_one() {
        (num.clone(), den.clone())
    } else {
        (num.div_rem(&g).0, den.div_rem(&g).0)
    }
}

impl Neg for &MellinSymbol {
    type Output = MellinSymbol;
    fn neg(self) -> MellinSymbol {
        MellinSymbol {
            shift: self.shift,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MellinSymbol {
            type Output = MellinSymbol;
            fn $m(self, o: MellinSymbol) -> MellinSymbol {
                (&self).$m(&o)
            }
        }
        impl $tr<&MellinSymbol> for MellinSymbol {
            type Output = MellinSymbol;
            fn $m(self, o: &MellinSymbol) -> MellinSymbol {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MellinSymbol {
    type Output = MellinSymbol;
    fn neg(self) -> MellinSymbol {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MellinSymbol {
        MellinSymbol::parse(s).unwrap()
    }

    fn sc(s: &str) -> ScalarQV {
        ScalarQV::parse(s).unwrap()
    }

    #[test]
    fn geometric_cancels() {
        let g = m("1/(1-U)");
        let p = m("1-U");
        assert_eq!(&g * &p, MellinSymbol::one());
    }

    #[test]
    fn negative_powers_set_floor() {
        assert_eq!(m("U^-2 + U").floor(), Some(-2));
    }

    #[test]
    fn floor_of_reflected_quotient() {
        let x = m("(1 - q^-2*U^-1)/(1 - q^-1*U)");
        assert_eq!(x.floor(), Some(-1));
    }

    #[test]
    fn geometric_series_expansion() {
        let g = m("1/(1-U)");
        let c = g.laurent_expand(6).unwrap();
        assert_eq!(c.len(), 7);
        assert!(c.iter().all(|(_, v)| v.is_one()));
    }

    #[test]
    fn reflected_unit_expansion() {
        // (1 - q^-2 U^-1)/(1 - U): c_{-1} = -q^-2, c_m = 1 - q^-2 for m >= 0
        let x = m("(1 - q^-2*U^-1)/(1-U)");
        let c = x.laurent_expand(5).unwrap();
        assert_eq!(c[0], (-1, sc("-1/q^2")));
        for (k, v) in &c[1..] {
            assert!(*k >= 0);
            assert_eq!(*v, sc("1-q^-2"));
        }
    }

    #[test]
    fn odd_geometric() {
        let x = m("U^3/(1-q*U^2)");
        let c = x.laurent_expand(8).unwrap();
        let want = [
            (3, "1"),
            (4, "0"),
            (5, "q"),
            (6, "0"),
            (7, "q^2"),
            (8, "0"),
        ];
        assert_eq!(c.len(), want.len());
        for ((k, v), (wk, wv)) in c.iter().zip(want) {
            assert_eq!(*k, wk);
            assert_eq!(*v, sc(wv));
        }
    }

    #[test]
    fn reciprocal_substitution_is_involutive() {
        let c = ScalarQV::q_pow(-3);
        let x = m("(2 + q*U - U^3)/((1-U)*(1-q^2*U^2))*U^-1");
        let y = x.substitute_reciprocal(&c);
        assert_ne!(x, y);
        assert_eq!(y.substitute_reciprocal(&c), x);
    }

    #[test]
    fn canonical_string_round_trip() {
        for s in [
            "1/(1-U)",
            "(1 - q^-2*U^-1)/(1-U)",
            "U^3/(1-q*U^2)",
            "(1+q)/(1-q^2)*U^2 - q_half*U^-4",
            "1/((1-U)*(1-q^2*U^2))",
        ] {
            let x = m(s);
            let printed = x.to_string();
            assert_eq!(m(&printed), x, "{s} -> {printed}");
            let frac = MellinSymbol::parse_fraction(&x.numerator_string(), &x.denominator_string())
                .unwrap();
            assert_eq!(frac, x);
        }
    }

    #[test]
    fn numerator_string_shape() {
        let x = m("(1 - q^-2*U^-1)/(1-U)");
        assert_eq!(x.numerator_string(), "-1/q^2*U^-1+1");
        assert_eq!(x.denominator_string(), "1-U");
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(
            MellinSymbol::one().checked_div(&MellinSymbol::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn numeric_evaluation_matches_series() {
        let x = m("(1 - q^-2*U^-1)/((1-U)*(1-q^2*U^2))");
        let (q0, u) = (7.0, Complex64::new(0.001, 0.002));
        let direct = x.eval(q0, u);
        let series: Complex64 = x
            .laurent_expand(40)
            .unwrap()
            .iter()
            .map(|(k, c)| u.powi(*k as i32) * c.eval_at_q(q0))
            .sum();
        assert!((direct - series).norm() < 1e-12 * direct.norm());
    }
}
