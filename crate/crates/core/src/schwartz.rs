//! Right `Sp_2n(Z_p)`-invariant Schwartz functions on `X(F)`.
//!
//! Such a function is `sum_m c_m 1_m`, where `1_m` is the indicator of the
//! coset with `|g| = q^{-m}`. The Mellin transform sends `1_m` to `U^m`,
//! so a function is stored either as its finitely many coefficients or as a
//! rational symbol in `U` whose Laurent expansion gives the coefficients.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{MellinSymbol, ScalarQV};
use crate::error::{Error, Result};
use crate::geometry::{coset_index, SymplecticMatrix};
use crate::weyl::{self, MAX_RANK};

#[derive(Clone, Debug)]
pub enum Representation {
    /// Coefficients `c_floor, c_{floor+1}, ...`.
    Finite(Vec<ScalarQV>),
    Rational(MellinSymbol),
}

#[derive(Clone, Debug)]
pub struct CoefficientFunction {
    n: usize,
    floor: i64,
    repr: Representation,
}

fn check_rank(n: usize) -> Result<()> {
    if (1..=MAX_RANK).contains(&n) {
        Ok(())
    } else {
        Err(Error::Domain(format!("n = {n} outside 1..={MAX_RANK}")))
    }
}

impl CoefficientFunction {
    /// `sum_k coeffs[k] 1_{floor + k}`.
    pub fn finite(n: usize, floor: i64, coeffs: Vec<ScalarQV>) -> Result<Self> {
        check_rank(n)?;
        Ok(CoefficientFunction {
            n,
            floor,
            repr: Representation::Finite(coeffs),
        })
    }

    pub fn indicator(n: usize, c: i64) -> Result<Self> {
        Self::finite(n, c, vec![ScalarQV::one()])
    }

    pub fn rational(n: usize, symbol: MellinSymbol) -> Result<Self> {
        check_rank(n)?;
        Ok(CoefficientFunction {
            n,
            floor: symbol.floor().unwrap_or(0),
            repr: Representation::Rational(symbol),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Lower bound of the support as stored (exact for rational form).
    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.repr, Representation::Finite(_))
    }

    /// Lowest `m` with `c_m != 0`, `None` for the zero function.
    pub fn support_floor(&self) -> Option<i64> {
        self.mellin().floor()
    }

    pub fn mellin(&self) -> MellinSymbol {
        match &self.repr {
            Representation::Finite(c) => MellinSymbol::from_laurent(self.floor, c.clone()),
            Representation::Rational(s) => s.clone(),
        }
    }

    /// `(m, c_m)` for `floor <= m <= upto`, including zeros.
    pub fn coefficients(&self, upto: i64) -> Result<Vec<(i64, ScalarQV)>> {
        match &self.repr {
            Representation::Finite(c) => Ok((self.floor..=upto)
                .map(|m| {
                    let k = (m - self.floor) as usize;
                    (m, c.get(k).cloned().unwrap_or_default())
                })
                .collect()),
            Representation::Rational(s) => {
                let mut out = s.laurent_expand(upto)?;
                // the stored floor may sit below a zero symbol's empty expansion
                if out.is_empty() && upto >= self.floor {
                    out = (self.floor..=upto).map(|m| (m, ScalarQV::zero())).collect();
                }
                Ok(out)
            }
        }
    }

    pub fn coefficient(&self, m: i64) -> Result<ScalarQV> {
        if m < self.floor {
            return Ok(ScalarQV::zero());
        }
        Ok(self
            .coefficients(m)?
            .into_iter()
            .last()
            .map(|(_, c)| c)
            .unwrap_or_default())
    }

    /// Finite truncation `sum_{m <= upto} c_m 1_m`.
    pub fn truncate(&self, upto: i64) -> Result<Self> {
        let coeffs = self.coefficients(upto)?.into_iter().map(|(_, c)| c).collect();
        Self::finite(self.n, self.floor, coeffs)
    }

    /// Equality as functions on `X(F) / K_0`.
    pub fn same_function(&self, other: &Self) -> bool {
        self.n == other.n && self.mellin() == other.mellin()
    }

    pub fn linear_combination(
        a: &ScalarQV,
        f: &Self,
        b: &ScalarQV,
        g: &Self,
    ) -> Result<Self> {
        if f.n != g.n {
            return Err(Error::DimensionMismatch(format!("ranks {} and {}", f.n, g.n)));
        }
        Self::rational(f.n, &f.mellin().scale(a) + &g.mellin().scale(b))
    }
}

impl PartialEq for CoefficientFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_function(other)
    }
}

pub fn mellin(f: &CoefficientFunction) -> MellinSymbol {
    f.mellin()
}

pub fn inverse_mellin(symbol: &MellinSymbol, n: usize) -> Result<CoefficientFunction> {
    CoefficientFunction::rational(n, symbol.clone())
}

/// The basic function `b`, whose Mellin transform is `d(s, chi)`.
pub fn basic_function(n: usize) -> Result<CoefficientFunction> {
    check_rank(n)?;
    CoefficientFunction::rational(n, weyl::d_factor(n).symbol(n))
}

/// `b` translated so that its support starts at `c`: `U^c d(s, chi)`.
pub fn shifted_basic(n: usize, c: i64) -> Result<CoefficientFunction> {
    check_rank(n)?;
    CoefficientFunction::rational(n, &MellinSymbol::u_pow(c) * &weyl::d_factor(n).symbol(n))
}

/// Coefficients `c_0..=c_upto` of `b` by direct summation over
/// `a + 2(b_1 + ... + b_h) = m` of `q^{2 b_1 + 4 b_2 + ... + 2h b_h}`.
pub fn basic_coefficients_direct(n: usize, upto: i64) -> Result<Vec<ScalarQV>> {
    check_rank(n)?;
    if upto < 0 {
        return Err(Error::Domain("upto must be nonnegative".into()));
    }
    let h = n / 2;
    let mut out = vec![ScalarQV::zero(); upto as usize + 1];
    fn go(r: usize, h: usize, used: i64, weight: i64, upto: i64, out: &mut [ScalarQV]) {
        if r > h {
            // a ranges over 0..=upto-used
            let w = ScalarQV::q_pow(weight);
            for m in used..=upto {
                out[m as usize] = &out[m as usize] + &w;
            }
            return;
        }
        let mut b = 0;
        while used + 2 * b <= upto {
            go(r + 1, h, used + 2 * b, weight + 2 * r as i64 * b, upto, out);
            b += 1;
        }
    }
    go(1, h, 0, 0, upto, &mut out);
    Ok(out)
}

/// Finite truncation of `b` built by direct summation.
pub fn basic_truncation(n: usize, upto: i64) -> Result<CoefficientFunction> {
    CoefficientFunction::finite(n, 0, basic_coefficients_direct(n, upto)?)
}

fn multiplier(n: usize) -> Result<&'static MellinSymbol> {
    static CACHE: [OnceLock<MellinSymbol>; MAX_RANK + 1] = [const { OnceLock::new() }; MAX_RANK + 1];
    check_rank(n)?;
    if let Some(m) = CACHE[n].get() {
        return Ok(m);
    }
    let m = weyl::fourier_multiplier(n)?;
    Ok(CACHE[n].get_or_init(|| m))
}

/// `F(f)(U) = f(q^{-(n+1)} / U) * multiplier(U)`.
pub fn fourier(f: &CoefficientFunction) -> Result<CoefficientFunction> {
    let m = multiplier(f.n)?;
    let reflected = f.mellin().substitute_reciprocal(&weyl::reflection_constant(f.n));
    CoefficientFunction::rational(f.n, &reflected * m)
}

/// Value of `f` at `g`: the coefficient of the coset containing `g`.
pub fn evaluate(f: &CoefficientFunction, g: &SymplecticMatrix, p: u64) -> Result<ScalarQV> {
    if g.n() != f.n {
        return Err(Error::DimensionMismatch(format!(
            "function on Sp_{} evaluated at a {}x{} matrix",
            2 * f.n,
            2 * g.n(),
            2 * g.n()
        )));
    }
    f.coefficient(coset_index(g, p)?)
}

/// On-disk JSON shape.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionFile {
    n: usize,
    kind: String,
    floor: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    coeffs: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    num: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    den: Option<String>,
}

fn field_parse<T>(field: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { position, message } => Error::Parse {
            position,
            message: format!("in field `{field}`: {message}"),
        },
        Error::DivisionByZero => Error::schema(field, "expression divides by zero"),
        other => other,
    })
}

impl CoefficientFunction {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: FunctionFile = serde_json::from_str(text)?;
        check_rank(file.n).map_err(|_| Error::schema("n", format!("rank {} outside 1..={MAX_RANK}", file.n)))?;
        match file.kind.as_str() {
            "finite" => {
                if file.num.is_some() || file.den.is_some() {
                    return Err(Error::schema("kind", "finite functions take `coeffs` only"));
                }
                let raw = file.coeffs.ok_or_else(|| Error::schema("coeffs", "missing"))?;
                let coeffs = raw
                    .iter()
                    .enumerate()
                    .map(|(i, s)| field_parse(&format!("coeffs[{i}]"), ScalarQV::parse(s)))
                    .collect::<Result<Vec<_>>>()?;
                Self::finite(file.n, file.floor, coeffs)
            }
            "rational" => {
                if file.coeffs.is_some() {
                    return Err(Error::schema("kind", "rational functions take `num` and `den`"));
                }
                let num = file.num.ok_or_else(|| Error::schema("num", "missing"))?;
                let den = file.den.ok_or_else(|| Error::schema("den", "missing"))?;
                let num = field_parse("num", MellinSymbol::parse(&num))?;
                let den = field_parse("den", MellinSymbol::parse(&den))?;
                let symbol = field_parse("den", num.checked_div(&den))?;
                let f = Self::rational(file.n, symbol)?;
                if !f.mellin().is_zero() && f.floor != file.floor {
                    return Err(Error::schema(
                        "floor",
                        format!("declared {} but the symbol starts at U^{}", file.floor, f.floor),
                    ));
                }
                Ok(CoefficientFunction { floor: file.floor, ..f })
            }
            other => Err(Error::schema("kind", format!("unknown kind `{other}`"))),
        }
    }

    /// Pretty JSON with a trailing newline; canonical strings throughout.
    pub fn to_json(&self) -> String {
        let file = match &self.repr {
            Representation::Finite(c) => FunctionFile {
                n: self.n,
                kind: "finite".into(),
                floor: self.floor,
                coeffs: Some(c.iter().map(|x| x.to_string()).collect()),
                num: None,
                den: None,
            },
            Representation::Rational(s) => FunctionFile {
                n: self.n,
                kind: "rational".into(),
                floor: self.floor,
                coeffs: None,
                num: Some(s.numerator_string()),
                den: Some(s.denominator_string()),
            },
        };
        let mut out = serde_json::to_string_pretty(&file).expect("plain data serialises");
        out.push('\n');
        out
    }
}

/// Random rational functions for property checks: `U^shift * P(U) / Q(U)`
/// with `P` of degree at most 3 and `Q` a product of up to two binomials
/// `1 - eps v^j U^k`.
pub mod random {
    use rand::Rng;

    use super::*;
    use crate::algebra::UPoly;

    fn scalar<R: Rng>(rng: &mut R) -> ScalarQV {
        let a = ScalarQV::from_int(rng.gen_range(-5..=5));
        let b = &ScalarQV::from_int(rng.gen_range(-3..=3)) * &ScalarQV::v_pow(rng.gen_range(-4..=4));
        let s = &a + &b;
        if rng.gen_bool(0.25) {
            let d = &ScalarQV::one() + &ScalarQV::v_pow(rng.gen_range(1..=3));
            s.checked_div(&d).expect("1 + v^j is nonzero")
        } else {
            s
        }
    }

    pub fn rational_function<R: Rng>(n: usize, rng: &mut R) -> CoefficientFunction {
        loop {
            let deg = rng.gen_range(0..=3);
            let num = UPoly::from_coeffs((0..=deg).map(|_| scalar(rng)).collect());
            if num.is_zero() {
                continue;
            }
            let mut den = UPoly::one();
            for _ in 0..rng.gen_range(0..=2) {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                let c = &ScalarQV::from_int(sign) * &ScalarQV::v_pow(rng.gen_range(-6..=6));
                den = den.mul(&UPoly::one_minus(c, rng.gen_range(1..=2)));
            }
            let shift = rng.gen_range(-3..=3);
            let sym = MellinSymbol::from_parts(shift, num, den).expect("nonzero denominator");
            return CoefficientFunction::rational(n, sym).expect("rank in range");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn sc(s: &str) -> ScalarQV {
        ScalarQV::parse(s).unwrap()
    }

    #[test]
    fn mellin_of_indicators() {
        assert_eq!(CoefficientFunction::indicator(1, 0).unwrap().mellin(), MellinSymbol::one());
        assert_eq!(
            CoefficientFunction::indicator(3, -4).unwrap().mellin(),
            MellinSymbol::u_pow(-4)
        );
        assert_eq!(
            basic_function(1).unwrap().mellin(),
            MellinSymbol::parse("1/(1-U)").unwrap()
        );
    }

    #[test]
    fn inverse_mellin_examples() {
        let ones = inverse_mellin(&MellinSymbol::parse("1/(1-U)").unwrap(), 1).unwrap();
        assert_eq!(ones.floor(), 0);
        assert!(ones.coefficients(10).unwrap().iter().all(|(_, c)| c.is_one()));
        let spike = inverse_mellin(&MellinSymbol::u_pow(-2), 1).unwrap();
        let c = spike.coefficients(3).unwrap();
        assert_eq!(c[0], (-2, ScalarQV::one()));
        assert!(c[1..].iter().all(|(_, x)| x.is_zero()));
    }

    #[test]
    fn basic_rank_two_coefficients() {
        let want = ["1", "1", "1+q^2", "1+q^2", "1+q^2+q^4"];
        let direct = basic_coefficients_direct(2, 4).unwrap();
        let series = basic_function(2).unwrap().coefficients(4).unwrap();
        for (m, w) in want.iter().enumerate() {
            assert_eq!(direct[m], sc(w));
            assert_eq!(series[m].1, sc(w));
        }
    }

    #[test]
    fn direct_summation_matches_symbol() {
        for n in 1..=6 {
            let direct = basic_truncation(n, 20).unwrap();
            let series = basic_function(n).unwrap().truncate(20).unwrap();
            assert!(direct.same_function(&series), "n = {n}");
        }
    }

    #[test]
    fn basic_is_fourier_fixed() {
        for n in 1..=4 {
            let b = basic_function(n).unwrap();
            assert!(fourier(&b).unwrap().same_function(&b), "n = {n}");
        }
    }

    #[test]
    fn fourier_of_unit_coset_rank_one() {
        let f = fourier(&CoefficientFunction::indicator(1, 0).unwrap()).unwrap();
        let c = f.coefficients(4).unwrap();
        assert_eq!(c[0], (-1, sc("-1/q^2")));
        for (_, x) in &c[1..] {
            assert_eq!(*x, sc("1-1/q^2"));
        }
    }

    #[test]
    fn fourier_of_unit_coset_floor() {
        // every chibar^2 factor in d(-s, chibar) contributes U^{-2}
        for n in 1..=4 {
            let f = fourier(&CoefficientFunction::indicator(n, 0).unwrap()).unwrap();
            assert_eq!(f.support_floor(), Some(-(1 + 2 * (n as i64 / 2))), "n = {n}");
        }
    }

    #[test]
    fn fourier_is_involutive_on_finite_data() {
        for n in 1..=3 {
            let f = CoefficientFunction::finite(n, -1, vec![sc("2"), sc("0"), sc("q_half-1/q")]).unwrap();
            assert!(fourier(&fourier(&f).unwrap()).unwrap().same_function(&f));
        }
    }

    #[test]
    fn fourier_is_involutive_on_random_rational_data() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            for _ in 0..5 {
                let f = random::rational_function(n, &mut rng);
                assert!(fourier(&fourier(&f).unwrap()).unwrap().same_function(&f));
            }
        }
    }

    #[test]
    fn evaluation_reads_coset_index() {
        let b = basic_function(1).unwrap();
        let p = BigRational::from_integer(BigInt::from(7));
        assert!(evaluate(&b, &SymplecticMatrix::identity(1), 7).unwrap().is_one());
        let g = SymplecticMatrix::siegel_torus(1, &p, -1).unwrap();
        assert!(evaluate(&b, &g, 7).unwrap().is_zero());
        let spike = CoefficientFunction::indicator(2, 2).unwrap();
        let t = SymplecticMatrix::siegel_torus(2, &p, 2).unwrap();
        assert!(evaluate(&spike, &t, 7).unwrap().is_one());
        let t1 = SymplecticMatrix::siegel_torus(2, &p, 1).unwrap();
        assert!(evaluate(&spike, &t1, 7).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for f in [
            CoefficientFunction::finite(1, 0, vec![sc("1"), sc("1")]).unwrap(),
            CoefficientFunction::finite(2, -3, vec![sc("(1+q)/(1-q^2)"), sc("0"), sc("q_half")]).unwrap(),
            basic_function(3).unwrap(),
            fourier(&CoefficientFunction::indicator(2, 0).unwrap()).unwrap(),
        ] {
            let text = f.to_json();
            let back = CoefficientFunction::from_json(&text).unwrap();
            assert_eq!(back.to_json(), text);
            assert!(back.same_function(&f));
        }
    }

    #[test]
    fn json_examples() {
        let f = CoefficientFunction::from_json(r#"{"n":1,"kind":"finite","floor":0,"coeffs":["1","1"]}"#).unwrap();
        let want = CoefficientFunction::finite(1, 0, vec![ScalarQV::one(), ScalarQV::one()]).unwrap();
        assert!(f.same_function(&want));
        let b = CoefficientFunction::from_json(
            r#"{"n":2,"kind":"rational","floor":0,"num":"1","den":"(1-U)*(1-q^2*U^2)"}"#,
        )
        .unwrap();
        assert!(b.same_function(&basic_function(2).unwrap()));
    }

    #[test]
    fn json_errors() {
        let bad = r#"{"n":1,"kind":"finite","floor":0,"coeffs":["1+/q"]}"#;
        match CoefficientFunction::from_json(bad) {
            Err(Error::Parse { message, .. }) => assert!(message.contains("coeffs[0]")),
            other => panic!("{other:?}"),
        }
        let wrong_floor = r#"{"n":1,"kind":"rational","floor":2,"num":"1","den":"1-U"}"#;
        assert!(matches!(CoefficientFunction::from_json(wrong_floor), Err(Error::Schema { .. })));
        let unknown = r#"{"n":1,"kind":"finite","floor":0,"coeffs":[],"extra":1}"#;
        assert!(matches!(CoefficientFunction::from_json(unknown), Err(Error::Json(_))));
        let kind = r#"{"n":1,"kind":"weird","floor":0}"#;
        assert!(matches!(CoefficientFunction::from_json(kind), Err(Error::Schema { .. })));
    }
}
