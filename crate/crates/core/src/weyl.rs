//! Minimal-length coset representatives of `W(Sp_2n) / W(GL_n)`, the
//! intertwining constants `a_w`, `d`, `c_w` as formal products of local
//! L-factors, and their images as Mellin symbols.
//!
//! With `z = chi(w) q^{-s}` and `U = z q^{-(n+1)/2} = z v^{-(n+1)}`, an
//! unramified L-factor becomes a geometric factor in `U`:
//!
//! ```text
//! L(e*s + a, chi^e)  |->  1 / (1 - U^e * v^(e(n+1) - 2a))     e in {1, 2}
//! L(e*s + a, chibar^|e|) |-> same formula with e in {-1, -2}
//! ```
//!
//! In particular `L(s + (n+1)/2, chi) |-> 1/(1 - U)` and
//! `L(-s + (n+1)/2, chibar) |-> 1/(1 - q^{-(n+1)} U^{-1})`. The substitution
//! `(chi, s) -> (chibar, -s)` is `U -> q^{-(n+1)} / U`, which flips the sign
//! of `e` in every atom.

use std::fmt;

use num_traits::One;

use crate::algebra::{IntPoly, MellinSymbol, ScalarQV, UPoly};
use crate::error::{Error, Result};

pub const MAX_RANK: usize = 8;

/// A coset `w_I` in `Omega_n`, identified by `I ⊆ {1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylCosetDatum {
    n: usize,
    subset: Vec<usize>,
}

impl WeylCosetDatum {
    pub fn new(n: usize, subset: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("rank must be positive".into()));
        }
        if subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!(
                "coset subset {subset:?} must be strictly increasing"
            )));
        }
        if subset.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::Domain(format!(
                "coset subset {subset:?} must lie in 1..={n}"
            )));
        }
        Ok(WeylCosetDatum { n, subset })
    }

    /// The identity coset `I = ∅`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// The long element `w_0 = w_{1..n}`.
    pub fn long_element(n: usize) -> Result<Self> {
        Self::new(n, (1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn k(&self) -> usize {
        self.subset.len()
    }

    /// `J = {1..n} \ I`, increasing.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|j| !self.subset.contains(j)).collect()
    }
}

impl fmt::Display for WeylCosetDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.subset.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `2^n` coset representatives, ordered by the binary encoding of `I`.
pub fn enumerate_cosets(n: usize) -> Result<Vec<WeylCosetDatum>> {
    if !(1..=MAX_RANK).contains(&n) {
        return Err(Error::Domain(format!("n = {n} outside 1..={MAX_RANK}")));
    }
    (0u32..(1 << n))
        .map(|mask| {
            let subset = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            WeylCosetDatum::new(n, subset)
        })
        .collect()
}

/// The index function `mu_w(r)` feeding the second product of `a_w`.
pub fn mu(w: &WeylCosetDatum, r: usize) -> Result<usize> {
    let (n, k) = (w.n, w.k());
    if r == 0 || r > n / 2 {
        return Err(Error::Domain(format!("r = {r} outside 1..={}", n / 2)));
    }
    if r > n - k {
        return Ok(r + 1);
    }
    let j = w.complement();
    let jr = j[r - 1];
    (n - k + 1..=n)
        .find(|&m| w.subset[n - m] < jr)
        .ok_or_else(|| Error::EmptyMinSet {
            n,
            coset: w.subset.clone(),
            r,
        })
}

/// Every `(I, r)` for which `a_w` evaluates `mu_w(r)`.
pub fn mu_consumption(n: usize) -> Result<Vec<(WeylCosetDatum, usize)>> {
    let mut out = Vec::new();
    for w in enumerate_cosets(n)? {
        for r in 1..=w.k().min(n / 2) {
            if w.subset[r - 1] < 2 * r {
                out.push((w.clone(), r));
            }
        }
    }
    Ok(out)
}

/// `L(e*s + a, chi^|e|)` (conjugate character when `e < 0`), with the
/// half-integral shift `a` stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LFactorAtom {
    s_coeff: i8,
    twice_shift: i32,
}

impl LFactorAtom {
    pub fn new(s_coeff: i8, twice_shift: i32) -> Result<Self> {
        if !matches!(s_coeff, -2 | -1 | 1 | 2) {
            return Err(Error::Domain(format!(
                "L-factor s-coefficient {s_coeff} not in {{-2,-1,1,2}}"
            )));
        }
        Ok(LFactorAtom {
            s_coeff,
            twice_shift,
        })
    }

    fn of(s_coeff: i8, twice_shift: i64) -> Self {
        Self::new(s_coeff, twice_shift as i32).expect("valid atom")
    }

    pub fn s_coeff(&self) -> i8 {
        self.s_coeff
    }

    pub fn twice_shift(&self) -> i32 {
        self.twice_shift
    }

    /// `(chi, s) -> (chibar, -s)`.
    pub fn reflect(&self) -> Self {
        LFactorAtom {
            s_coeff: -self.s_coeff,
            twice_shift: self.twice_shift,
        }
    }

    /// The `v`-exponent `w` in `1/(1 - U^e v^w)`.
    pub fn v_exponent(&self, n: usize) -> i64 {
        self.s_coeff as i64 * (n as i64 + 1) - self.twice_shift as i64
    }

    /// `1 - U^e v^w`, i.e. the reciprocal of the atom.
    pub fn inverse_symbol(&self, n: usize) -> MellinSymbol {
        let c = ScalarQV::v_pow(self.v_exponent(n));
        &MellinSymbol::one() - &MellinSymbol::u_pow(self.s_coeff as i64).scale(&c)
    }

    pub fn symbol(&self, n: usize) -> MellinSymbol {
        self.inverse_symbol(n)
            .recip()
            .expect("1 - c U^e is never zero")
    }

    /// Contribution of the atom to the Laurent floor.
    fn floor_contribution(&self) -> i64 {
        if self.s_coeff < 0 {
            -(self.s_coeff as i64)
        } else {
            0
        }
    }
}

impl fmt::Display for LFactorAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.s_coeff {
            1 => "s",
            2 => "2s",
            -1 => "-s",
            _ => "-2s",
        };
        let a = self.twice_shift;
        let shift = if a == 0 {
            String::new()
        } else if a % 2 == 0 {
            format!("{:+}", a / 2)
        } else {
            format!("{:+}/2", a)
        };
        let chi = match self.s_coeff {
            1 => "chi",
            2 => "chi^2",
            -1 => "chibar",
            _ => "chibar^2",
        };
        write!(f, "L({s}{shift},{chi})")
    }
}

/// A formal product of L-factor atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LFactorProduct {
    atoms: Vec<LFactorAtom>,
}

impl LFactorProduct {
    pub fn new(atoms: Vec<LFactorAtom>) -> Self {
        LFactorProduct { atoms }
    }

    pub fn atoms(&self) -> &[LFactorAtom] {
        &self.atoms
    }

    pub fn reflect(&self) -> Self {
        LFactorProduct::new(self.atoms.iter().map(LFactorAtom::reflect).collect())
    }

    pub fn symbol(&self, n: usize) -> MellinSymbol {
        assemble(n, &self.atoms, &[])
    }

    /// Equality as multisets.
    pub fn same_factors(&self, other: &Self) -> bool {
        let mut a = self.atoms.clone();
        let mut b = other.atoms.clone();
        a.sort();
        b.sort();
        a == b
    }
}

impl fmt::Display for LFactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Quotient of two formal products.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LFactorRatio {
    pub num: LFactorProduct,
    pub den: LFactorProduct,
}

impl LFactorRatio {
    pub fn new(num: LFactorProduct, den: LFactorProduct) -> Self {
        LFactorRatio { num, den }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut num = self.num.atoms.clone();
        num.extend_from_slice(&other.num.atoms);
        let mut den = self.den.atoms.clone();
        den.extend_from_slice(&other.den.atoms);
        LFactorRatio::new(LFactorProduct::new(num), LFactorProduct::new(den))
    }

    pub fn reflect(&self) -> Self {
        LFactorRatio::new(self.num.reflect(), self.den.reflect())
    }

    /// Laurent floor read off the atoms: each `U^{-|e|}`-type factor in the
    /// numerator raises it by `|e|`, in the denominator lowers it by `|e|`.
    pub fn structural_floor(&self) -> i64 {
        self.num.atoms.iter().map(LFactorAtom::floor_contribution).sum::<i64>()
            - self
                .den
                .atoms
                .iter()
                .map(LFactorAtom::floor_contribution)
                .sum::<i64>()
    }

    /// The Mellin symbol, with the structural floor cross-checked.
    pub fn symbol(&self, n: usize) -> Result<MellinSymbol> {
        let acc = assemble(n, &self.num.atoms, &self.den.atoms);
        let structural = self.structural_floor();
        match acc.floor() {
            Some(f) if f == structural => Ok(acc),
            Some(f) => Err(Error::FloorMismatch {
                structural,
                expanded: f,
            }),
            None => Err(Error::Invariant("L-factor ratio reduced to zero".into())),
        }
    }
}

impl fmt::Display for LFactorRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.atoms.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

/// `1 - c U^e` with `e >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Binomial {
    c: ScalarQV,
    e: usize,
}

impl Binomial {
    /// Irreducible factors over `Q(v)`: `1 - v^{2k} U^2` splits as
    /// `(1 - v^k U)(1 + v^k U)`; every other binomial here is irreducible.
    fn push_split(self, out: &mut Vec<Binomial>) {
        if self.e == 2 {
            if let Some(k) = even_v_power(&self.c) {
                let a = ScalarQV::v_pow(k);
                out.push(Binomial { c: -&a, e: 1 });
                out.push(Binomial { c: a, e: 1 });
                return;
            }
        }
        out.push(self);
    }

    fn poly(&self) -> UPoly {
        UPoly::one_minus(self.c.clone(), self.e)
    }
}

/// `k` with `c = v^{2k}`, if `c` is such a power.
fn even_v_power(c: &ScalarQV) -> Option<i64> {
    let (num, den) = (c.numerator(), c.denominator());
    let unit_monomial =
        |p: &IntPoly| p.term_count() == 1 && p.coeffs()[p.low_order()].is_one();
    if !unit_monomial(num) || !unit_monomial(den) {
        return None;
    }
    let d = num.low_order() as i64 - den.low_order() as i64;
    (d % 2 == 0).then_some(d / 2)
}

/// Builds `prod L(num) / prod L(den)` in one pass. Each atom is
/// `U^shift * scalar / (1 - c U^e)`; identical irreducible factors are
/// cancelled before multiplying out, so the final reduction is cheap.
fn assemble(n: usize, num: &[LFactorAtom], den: &[LFactorAtom]) -> MellinSymbol {
    let mut shift = 0i64;
    let mut scalar = ScalarQV::one();
    let mut below = Vec::new();
    let mut above = Vec::new();
    let mut place = |a: &LFactorAtom, inverted: bool| {
        let c = ScalarQV::v_pow(a.v_exponent(n));
        let m = a.s_coeff.unsigned_abs() as usize;
        let (s, k, b) = if a.s_coeff > 0 {
            (0, ScalarQV::one(), Binomial { c, e: m })
        } else {
            // 1/(1 - c U^{-m}) = -c^{-1} U^m / (1 - c^{-1} U^m)
            let ci = c.recip().expect("monomial");
            (m as i64, -&ci, Binomial { c: ci, e: m })
        };
        if inverted {
            shift -= s;
            scalar = scalar.checked_div(&k).expect("nonzero");
            b.push_split(&mut above);
        } else {
            shift += s;
            scalar = &scalar * &k;
            b.push_split(&mut below);
        }
    };
    for a in num {
        place(a, false);
    }
    for a in den {
        place(a, true);
    }
    let mut i = 0;
    while i < below.len() {
        if let Some(j) = above.iter().position(|b| *b == below[i]) {
            above.swap_remove(j);
            below.swap_remove(i);
        } else {
            i += 1;
        }
    }
    let product = |fs: &[Binomial]| fs.iter().fold(UPoly::one(), |acc, b| acc.mul(&b.poly()));
    MellinSymbol::from_parts(shift, product(&above).scale(&scalar), product(&below))
        .expect("product of binomials is nonzero")
}

fn check_rank(n: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::Domain(format!("n = {n} outside 1..={max}")))
    }
}

/// `d(s, chi) = L(s + (n+1)/2, chi) * prod_{r=1}^{n/2} L(2s + n + 1 - 2r, chi^2)`.
pub fn d_factor(n: usize) -> LFactorProduct {
    let n_ = n as i64;
    let mut atoms = vec![LFactorAtom::of(1, n_ + 1)];
    for r in 1..=n_ / 2 {
        atoms.push(LFactorAtom::of(2, 2 * (n_ + 1 - 2 * r)));
    }
    LFactorProduct::new(atoms)
}

/// `a_w(s, chi)`.
pub fn a_w(w: &WeylCosetDatum) -> Result<LFactorProduct> {
    let n = w.n as i64;
    let k = w.k() as i64;
    let h = n / 2;
    let mut atoms = vec![LFactorAtom::of(1, n + 1 - 2 * k)];
    for r in 1..=k.min(h) {
        let ir = w.subset[(r - 1) as usize] as i64;
        if ir >= 2 * r {
            atoms.push(LFactorAtom::of(2, 2 * (ir - 2 * r + 1)));
        }
    }
    for r in 1..=k.min(h) {
        let ir = w.subset[(r - 1) as usize] as i64;
        if ir < 2 * r {
            let m = mu(w, r as usize)? as i64;
            atoms.push(LFactorAtom::of(2, 2 * (-n + r + m - 1)));
        }
    }
    for r in (k + 1)..=h {
        atoms.push(LFactorAtom::of(2, 2 * (n + 1 - 2 * r)));
    }
    Ok(LFactorProduct::new(atoms))
}

/// Closed form of `a_{w_0}`: `L(s + (1-n)/2, chi) * prod L(2s - n + 2r, chi^2)`.
pub fn a_long_closed_form(n: usize) -> LFactorProduct {
    let n_ = n as i64;
    let mut atoms = vec![LFactorAtom::of(1, 1 - n_)];
    for r in 1..=n_ / 2 {
        atoms.push(LFactorAtom::of(2, 2 * (2 * r - n_)));
    }
    LFactorProduct::new(atoms)
}

/// `c_w = a_w / d` as a formal ratio.
pub fn c_w_ratio(w: &WeylCosetDatum) -> Result<LFactorRatio> {
    Ok(LFactorRatio::new(a_w(w)?, d_factor(w.n)))
}

/// `c_w(s, chi)`, the eigenvalue of `M_w` on the spherical vector.
pub fn c_w(w: &WeylCosetDatum) -> Result<MellinSymbol> {
    c_w_ratio(w)?.symbol(w.n)
}

/// Unramified gamma factor `gamma(e*s + a, chi^e) = L(1 - e*s - a, chibar^e) / L(e*s + a, chi^e)`.
fn gamma_atom(s_coeff: i8, twice_shift: i64) -> LFactorRatio {
    LFactorRatio::new(
        LFactorProduct::new(vec![LFactorAtom::of(-s_coeff, 2 - twice_shift)]),
        LFactorProduct::new(vec![LFactorAtom::of(s_coeff, twice_shift)]),
    )
}

/// The normalising factor `gamma(s-(n-1)/2, chi) * prod_r gamma(2s-n+2r, chi^2)`.
pub fn gamma_normalizer(n: usize) -> LFactorRatio {
    let n_ = n as i64;
    let mut g = gamma_atom(1, 1 - n_);
    for r in 1..=n_ / 2 {
        g = g.mul(&gamma_atom(2, 2 * (2 * r - n_)));
    }
    g
}

/// Spherical eigenvalue of the normalised long intertwiner on `I(chi_s)`.
pub fn normalized_long_intertwiner(n: usize) -> Result<MellinSymbol> {
    let w0 = WeylCosetDatum::long_element(n)?;
    Ok(&gamma_normalizer(n).symbol(n)? * &c_w(&w0)?)
}

/// `U -> q^{-(n+1)} / U`, the image of `(chi, s) -> (chibar, -s)`.
pub fn reflection_constant(n: usize) -> ScalarQV {
    ScalarQV::q_pow(-(n as i64 + 1))
}

/// `d(s, chi) / d(-s, chibar)` as a formal ratio.
pub fn fourier_multiplier_ratio(n: usize) -> LFactorRatio {
    let d = d_factor(n);
    LFactorRatio::new(d.clone(), d.reflect())
}

/// Multiplier implementing the Fourier transform on spherical symbols:
/// `F(f)(U) = f(q^{-(n+1)}/U) * multiplier(U)`. It is computed as the
/// normalised intertwiner evaluated at `(chibar, -s)`.
pub fn fourier_multiplier(n: usize) -> Result<MellinSymbol> {
    check_rank(n, MAX_RANK)?;
    Ok(normalized_long_intertwiner(n)?.substitute_reciprocal(&reflection_constant(n)))
}

/// Product over positive roots moved by `w_0` of rank-one factors
/// `L(<lambda, a>) / L(<lambda, a> + 1)`; independent route to `c_{w_0}`.
pub fn gk_ratio(n: usize) -> Result<LFactorRatio> {
    check_rank(n, 6)?;
    let n_ = n as i64;
    let mut num = Vec::new();
    let mut den = Vec::new();
    for i in 1..=n_ {
        num.push(LFactorAtom::of(1, n_ + 1 - 2 * i));
        den.push(LFactorAtom::of(1, n_ + 3 - 2 * i));
    }
    for i in 1..=n_ {
        for j in (i + 1)..=n_ {
            num.push(LFactorAtom::of(2, 2 * (n_ + 1 - i - j)));
            den.push(LFactorAtom::of(2, 2 * (n_ + 2 - i - j)));
        }
    }
    Ok(LFactorRatio::new(
        LFactorProduct::new(num),
        LFactorProduct::new(den),
    ))
}

pub fn gk_product(n: usize) -> Result<MellinSymbol> {
    gk_ratio(n)?.symbol(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coset(n: usize, s: &[usize]) -> WeylCosetDatum {
        WeylCosetDatum::new(n, s.to_vec()).unwrap()
    }

    #[test]
    fn coset_counts() {
        assert_eq!(enumerate_cosets(1).unwrap().len(), 2);
        assert_eq!(enumerate_cosets(2).unwrap().len(), 4);
        assert_eq!(enumerate_cosets(3).unwrap().len(), 8);
        let n1: Vec<Vec<usize>> = enumerate_cosets(1)
            .unwrap()
            .iter()
            .map(|w| w.subset().to_vec())
            .collect();
        assert_eq!(n1, vec![vec![], vec![1]]);
        assert!(enumerate_cosets(0).is_err());
        assert!(enumerate_cosets(9).is_err());
    }

    #[test]
    fn invalid_subsets() {
        assert!(WeylCosetDatum::new(2, vec![2, 1]).is_err());
        assert!(WeylCosetDatum::new(2, vec![3]).is_err());
        assert!(WeylCosetDatum::new(2, vec![0]).is_err());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&coset(4, &[1, 2, 3, 4]), 1).unwrap(), 2);
        assert_eq!(mu(&coset(2, &[1]), 1).unwrap(), 2);
        assert!(matches!(
            mu(&coset(2, &[2]), 1),
            Err(Error::EmptyMinSet { n: 2, r: 1, .. })
        ));
    }

    #[test]
    fn mu_defined_wherever_consumed() {
        for n in 1..=MAX_RANK {
            for (w, r) in mu_consumption(n).unwrap() {
                assert!(mu(&w, r).is_ok(), "n={n} I={w} r={r}");
            }
        }
    }

    #[test]
    fn atom_display() {
        assert_eq!(LFactorAtom::new(1, 1).unwrap().to_string(), "L(s+1/2,chi)");
        assert_eq!(LFactorAtom::new(2, 0).unwrap().to_string(), "L(2s,chi^2)");
        assert_eq!(LFactorAtom::new(-1, 4).unwrap().to_string(), "L(-s+2,chibar)");
        assert_eq!(LFactorAtom::new(-2, -3).unwrap().to_string(), "L(-2s-3/2,chibar^2)");
        assert!(LFactorAtom::new(3, 0).is_err());
    }

    #[test]
    fn a_w_rank_two_middle_coset() {
        let a = a_w(&coset(2, &[1])).unwrap();
        assert_eq!(a.to_string(), "L(s+1/2,chi) * L(2s,chi^2)");
    }

    #[test]
    fn a_w_special_cases() {
        for n in 1..=6 {
            let e = WeylCosetDatum::identity(n).unwrap();
            assert!(a_w(&e).unwrap().same_factors(&d_factor(n)));
            assert_eq!(c_w(&e).unwrap(), MellinSymbol::one());
            let w0 = WeylCosetDatum::long_element(n).unwrap();
            assert!(a_w(&w0).unwrap().same_factors(&a_long_closed_form(n)));
        }
    }

    #[test]
    fn d_maps_to_geometric_product() {
        // d(2) = L(s+3/2,chi) L(2s+1,chi^2) -> 1/((1-U)(1-q^2 U^2))
        let want = MellinSymbol::parse("1/((1-U)*(1-q^2*U^2))").unwrap();
        assert_eq!(d_factor(2).symbol(2), want);
        assert_eq!(d_factor(1).symbol(1), MellinSymbol::parse("1/(1-U)").unwrap());
    }

    #[test]
    fn rank_one_long_coset() {
        let c = c_w(&coset(1, &[1])).unwrap();
        assert_eq!(c, MellinSymbol::parse("(1-U)/(1-q*U)").unwrap());
    }

    #[test]
    fn rank_two_long_coset() {
        let c = c_w(&coset(2, &[1, 2])).unwrap();
        // L(s-1/2)L(2s) / (L(s+3/2) L(2s+1)) with U-images
        let want = MellinSymbol::parse("(1-U)*(1-q^2*U^2)/((1-q^2*U)*(1-q^3*U^2))").unwrap();
        assert_eq!(c, want);
    }

    #[test]
    fn gk_matches_long_c() {
        for n in 1..=6 {
            let w0 = WeylCosetDatum::long_element(n).unwrap();
            assert_eq!(gk_product(n).unwrap(), c_w(&w0).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn multiplier_rank_one() {
        let m = fourier_multiplier(1).unwrap();
        assert_eq!(m, MellinSymbol::parse("(1 - q^-2*U^-1)/(1-U)").unwrap());
    }

    #[test]
    fn multiplier_two_routes_agree() {
        for n in 1..=6 {
            let via_gamma = fourier_multiplier(n).unwrap();
            let direct = fourier_multiplier_ratio(n).symbol(n).unwrap();
            assert_eq!(via_gamma, direct, "n = {n}");
        }
    }

    #[test]
    fn multiplier_floor_counts_u_inverse_degree() {
        // each chibar^2 factor of d(-s, chibar) contributes U^{-2}
        for n in 1..=6 {
            let f = fourier_multiplier(n).unwrap().floor().unwrap();
            assert_eq!(f, -(1 + 2 * (n as i64 / 2)), "n = {n}");
        }
    }

    #[test]
    fn multiplier_is_involutive() {
        for n in 1..=6 {
            let m = fourier_multiplier(n).unwrap();
            let r = m.substitute_reciprocal(&reflection_constant(n));
            assert_eq!(&m * &r, MellinSymbol::one(), "n = {n}");
        }
    }

    #[test]
    fn c_w_has_no_negative_powers() {
        for n in 1..=5 {
            for w in enumerate_cosets(n).unwrap() {
                let c = c_w(&w).unwrap();
                assert!(c.floor().unwrap() >= -(1 + (n as i64) / 2), "n={n} I={w}");
            }
        }
    }
}
