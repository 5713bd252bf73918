//! Exact symplectic matrices, the Plücker map to `wedge^n F^{2n}`, local
//! norms and the coset index `c` parametrising `X(F) / Sp_2n(Z_p)`.
//!
//! Conventions (frozen): `J = [[0, I], [-I, 0]]`, a matrix `g` is symplectic
//! iff `g J g^t = J`. The Plücker vector of `g` is the wedge of the rows of
//! the bottom `n x 2n` block, written in the basis `e_a1 ^ ... ^ e_an` with
//! `a1 < ... < an`, subsets listed lexicographically. Its `a`-coordinate is
//! therefore the minor of the bottom block on columns `a`.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Norm {
    /// Exactly `p^{-k}`.
    PAdic(Rational),
    Real(f64),
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact determinant by fraction-field Gaussian elimination.
pub fn det(rows: &[Vec<Rational>]) -> Rational {
    // scale each row to integers, then fraction-free elimination
    let mut scale = BigInt::one();
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let (v, l) = integer_row(r);
            scale *= l;
            v
        })
        .collect();
    Rational::new(bareiss(ints), scale)
}

fn integer_row(r: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let v = r.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (v, l)
}

fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let k = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..k {
        let Some(piv) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            a.swap(piv, col);
            sign = -sign;
        }
        for r in col + 1..k {
            for c in col + 1..k {
                let t = &a[r][c] * &a[col][col] - &a[r][col] * &a[col][c];
                a[r][c] = t / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[col][col].clone();
    }
    sign * prev
}

fn inverse(rows: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let k = rows.len();
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for c in 0..2 * k {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * k {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[k..].to_vec()).collect())
}

fn transpose(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let k = rows.len();
    (0..k).map(|j| (0..k).map(|i| rows[i][j].clone()).collect()).collect()
}

/// A `2n x 2n` rational matrix satisfying `g J g^t = J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticMatrix {
    n: usize,
    rows: Vec<Vec<Rational>>,
}

impl SymplecticMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 || m % 2 == 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected an even, positive number of rows, got {m}"
            )));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a {m} x {m} matrix",
                bad.len()
            )));
        }
        let g = SymplecticMatrix { n: m / 2, rows };
        if !g.is_symplectic() {
            return Err(Error::NotSymplectic("g J g^t != J".into()));
        }
        Ok(g)
    }

    fn from_blocks(a: &[Vec<Rational>], b: &[Vec<Rational>], c: &[Vec<Rational>], d: &[Vec<Rational>]) -> Self {
        let n = a.len();
        let mut rows = Vec::with_capacity(2 * n);
        for i in 0..n {
            rows.push(a[i].iter().chain(b[i].iter()).cloned().collect());
        }
        for i in 0..n {
            rows.push(c[i].iter().chain(d[i].iter()).cloned().collect());
        }
        SymplecticMatrix { n, rows }
    }

    pub fn identity(n: usize) -> Self {
        let i = identity_block(n);
        let z = zero_block(n);
        Self::from_blocks(&i, &z, &z, &i)
    }

    /// `J = [[0, I], [-I, 0]]`.
    pub fn j(n: usize) -> Self {
        let i = identity_block(n);
        let mi: Vec<Vec<Rational>> = i.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let z = zero_block(n);
        Self::from_blocks(&z, &i, &mi, &z)
    }

    /// `[[I, Z], [0, I]]` with `Z = Z^t`.
    pub fn unipotent(z: &[Vec<Rational>]) -> Result<Self> {
        let n = check_square(z)?;
        if !is_symmetric(z) {
            return Err(Error::NotSymplectic("unipotent block Z is not symmetric".into()));
        }
        Ok(Self::from_blocks(&identity_block(n), z, &zero_block(n), &identity_block(n)))
    }

    /// `[[I, 0], [Z, I]]` with `Z = Z^t`.
    pub fn lower_unipotent(z: &[Vec<Rational>]) -> Result<Self> {
        let n = check_square(z)?;
        if !is_symmetric(z) {
            return Err(Error::NotSymplectic("unipotent block Z is not symmetric".into()));
        }
        Ok(Self::from_blocks(&identity_block(n), &zero_block(n), z, &identity_block(n)))
    }

    /// `diag(A, A^{-t})`.
    pub fn levi(a: &[Vec<Rational>]) -> Result<Self> {
        let n = check_square(a)?;
        let inv = inverse(a).ok_or(Error::SingularLevi)?;
        Ok(Self::from_blocks(a, &zero_block(n), &zero_block(n), &transpose(&inv)))
    }

    /// The cocharacter `c(x) = diag(x^{-c}, I_{n-1}, x^c, I_{n-1})`.
    pub fn siegel_torus(n: usize, x: &Rational, c: i64) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::Domain("torus parameter must be nonzero".into()));
        }
        if n == 0 {
            return Err(Error::Domain("rank must be positive".into()));
        }
        let mut a = identity_block(n);
        a[0][0] = rat_pow(x, -c);
        Self::levi(&a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(format!(
                "Sp_{} times Sp_{}",
                2 * self.n,
                2 * o.n
            )));
        }
        Ok(SymplecticMatrix {
            n: self.n,
            rows: matmul(&self.rows, &o.rows),
        })
    }

    /// `g^{-1} = -J g^t J`.
    pub fn inverse(&self) -> Self {
        let j = Self::j(self.n);
        let t = matmul(&matmul(&j.rows, &transpose(&self.rows)), &j.rows);
        SymplecticMatrix {
            n: self.n,
            rows: t.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn is_symplectic(&self) -> bool {
        let j = Self::j(self.n);
        matmul(&matmul(&self.rows, &j.rows), &transpose(&self.rows)) == j.rows
    }

    /// Bottom `n x 2n` block.
    pub fn bottom(&self) -> &[Vec<Rational>] {
        &self.rows[self.n..]
    }

    pub fn to_real(&self) -> DMatrix<f64> {
        let m = 2 * self.n;
        DMatrix::from_fn(m, m, |i, j| self.rows[i][j].to_f64().unwrap_or(f64::NAN))
    }
}

fn identity_block(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

fn zero_block(n: usize) -> Vec<Vec<Rational>> {
    vec![vec![Rational::zero(); n]; n]
}

fn check_square(a: &[Vec<Rational>]) -> Result<usize> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("block must be a nonempty square matrix".into()));
    }
    Ok(n)
}

fn is_symmetric(z: &[Vec<Rational>]) -> bool {
    (0..z.len()).all(|i| (0..i).all(|j| z[i][j] == z[j][i]))
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    // clear denominators once per matrix so the inner loop is pure BigInt
    fn clear(m: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
        let l = m.iter().flatten().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let v = m
            .iter()
            .map(|r| r.iter().map(|x| x.numer() * (&l / x.denom())).collect())
            .collect();
        (v, l)
    }
    let ((ai, la), (bi, lb)) = (clear(a), clear(b));
    let den = la * lb;
    let (m, k, n) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![Rational::zero(); n]; m];
    for i in 0..m {
        for j in 0..n {
            let mut acc = BigInt::zero();
            for l in 0..k {
                if !ai[i][l].is_zero() && !bi[l][j].is_zero() {
                    acc += &ai[i][l] * &bi[l][j];
                }
            }
            if !acc.is_zero() {
                out[i][j] = Rational::new(acc, den.clone());
            }
        }
    }
    out
}

fn rat_pow(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

/// All `n`-subsets of `0..2n`, lexicographic.
pub fn wedge_basis(n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 2 * n, n, &mut Vec::new(), &mut out);
    out
}

/// Coordinates of `Pl(g)` in the lexicographic wedge basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVector {
    n: usize,
    coords: Vec<Rational>,
}

impl WedgeVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WedgeVector {
            n: self.n,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Minimum `p`-adic valuation over nonzero coordinates.
    pub fn min_valuation(&self, p: u64) -> Option<i64> {
        self.coords
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| valuation(x, p))
            .min()
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.coords
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

pub fn pluecker(g: &SymplecticMatrix) -> WedgeVector {
    let bottom = g.bottom();
    let coords = wedge_basis(g.n)
        .iter()
        .map(|cols| {
            let minor: Vec<Vec<Rational>> = bottom
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect();
            det(&minor)
        })
        .collect();
    WedgeVector { n: g.n, coords }
}

/// `p`-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> i64 {
    fn v(mut m: BigInt, p: &BigInt) -> i64 {
        let mut k = 0;
        loop {
            let (q, r) = m.div_rem(p);
            if !r.is_zero() {
                return k;
            }
            m = q;
            k += 1;
        }
    }
    let p = BigInt::from(p);
    v(x.numer().abs(), &p) - v(x.denom().abs(), &p)
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not prime")))
    }
}

/// The `c` with `|g|_p = p^{-c}`.
pub fn coset_index(g: &SymplecticMatrix, p: u64) -> Result<i64> {
    check_prime(p)?;
    pluecker(g)
        .min_valuation(p)
        .ok_or_else(|| Error::Invariant("Plücker vector of a symplectic matrix vanished".into()))
}

pub fn norm(g: &SymplecticMatrix, place: Place) -> Result<Norm> {
    match place {
        Place::Finite(p) => {
            let c = coset_index(g, p)?;
            Ok(Norm::PAdic(rat_pow(&rat(p as i64), -c)))
        }
        Place::Infinite => Ok(Norm::Real(pluecker(g).euclidean_norm())),
    }
}

/// Plücker coordinates of a real `2n x 2n` matrix, same ordering.
pub fn pluecker_real(g: &DMatrix<f64>) -> Vec<f64> {
    let n = g.nrows() / 2;
    wedge_basis(n)
        .iter()
        .map(|cols| DMatrix::from_fn(n, n, |i, j| g[(n + i, cols[j])]).determinant())
        .collect()
}

pub fn norm_real(g: &DMatrix<f64>) -> f64 {
    pluecker_real(g).iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Random generators for property checks. Numerators and denominators are
/// bounded by `BOUND`; elements of `Sp_2n(Z_p)` have `p`-free denominators.
pub mod random {
    use super::*;
    use nalgebra::Complex;

    pub const BOUND: i64 = 1_000_000;

    pub fn rational<R: Rng>(rng: &mut R) -> Rational {
        let num = rng.gen_range(-BOUND..=BOUND);
        let den = rng.gen_range(1..=BOUND);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    /// A `p`-adic integer in `Q`.
    pub fn p_integral<R: Rng>(rng: &mut R, p: u64) -> Rational {
        let num = rng.gen_range(-BOUND..=BOUND);
        let den = loop {
            let d = rng.gen_range(1..=BOUND);
            if d % p as i64 != 0 {
                break d;
            }
        };
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn p_unit<R: Rng>(rng: &mut R, p: u64) -> Rational {
        loop {
            let x = p_integral(rng, p);
            if !x.is_zero() && valuation(&x, p) == 0 {
                return x;
            }
        }
    }

    fn symmetric<R: Rng>(n: usize, rng: &mut R, mut f: impl FnMut(&mut R) -> Rational) -> Vec<Vec<Rational>> {
        let mut z = zero_block(n);
        for i in 0..n {
            for j in 0..=i {
                let x = f(rng);
                z[i][j] = x.clone();
                z[j][i] = x;
            }
        }
        z
    }

    /// `L * D * U'` with unitriangular `L`, `U'`; `det = prod diag`.
    fn ldu<R: Rng>(
        n: usize,
        rng: &mut R,
        mut off: impl FnMut(&mut R) -> Rational,
        diag: Vec<Rational>,
    ) -> Vec<Vec<Rational>> {
        let mut l = identity_block(n);
        let mut u = identity_block(n);
        for i in 0..n {
            for j in 0..i {
                l[i][j] = off(rng);
                u[j][i] = off(rng);
            }
        }
        let mut d = zero_block(n);
        for (i, x) in diag.into_iter().enumerate() {
            d[i][i] = x;
        }
        matmul(&matmul(&l, &d), &u)
    }

    /// Random element of `[P, P]`: unipotent radical times `Levi(SL_n(Q))`.
    pub fn derived_parabolic<R: Rng>(n: usize, rng: &mut R) -> SymplecticMatrix {
        let mut diag = vec![Rational::one(); n];
        if n >= 2 {
            let mut x = rational(rng);
            while x.is_zero() {
                x = rational(rng);
            }
            diag[1] = x.recip();
            diag[0] = x;
        }
        let a = ldu(n, rng, rational, diag);
        let u = SymplecticMatrix::unipotent(&symmetric(n, rng, rational)).expect("symmetric");
        let m = SymplecticMatrix::levi(&a).expect("det 1");
        u.mul(&m).expect("same rank")
    }

    /// Random `Levi(A)` with `A` in `GL_n(Q)`, returned with `det A`.
    pub fn levi_element<R: Rng>(n: usize, rng: &mut R) -> (SymplecticMatrix, Rational) {
        let diag: Vec<Rational> = (0..n)
            .map(|_| loop {
                let x = rational(rng);
                if !x.is_zero() {
                    break x;
                }
            })
            .collect();
        let d = diag.iter().fold(Rational::one(), |acc, x| acc * x);
        let a = ldu(n, rng, rational, diag);
        (SymplecticMatrix::levi(&a).expect("nonzero diagonal"), d)
    }

    /// Random element of `Sp_2n(Z_p)` as a word in integral unipotents,
    /// `Levi(GL_n(Z_p))` and `J`.
    pub fn hyperspecial<R: Rng>(n: usize, p: u64, rng: &mut R) -> SymplecticMatrix {
        let up = SymplecticMatrix::unipotent(&symmetric(n, rng, |r| p_integral(r, p))).unwrap();
        let lo = SymplecticMatrix::lower_unipotent(&symmetric(n, rng, |r| p_integral(r, p))).unwrap();
        let diag = (0..n).map(|_| p_unit(rng, p)).collect();
        let m = SymplecticMatrix::levi(&ldu(n, rng, |r| p_integral(r, p), diag)).unwrap();
        let mut g = up.mul(&m).unwrap().mul(&lo).unwrap();
        if rng.gen_bool(0.5) {
            g = g.mul(&SymplecticMatrix::j(n)).unwrap();
        }
        g
    }

    /// A generic group element: a word in unipotents, Levi elements of
    /// `GL_n(Q)`, torus powers `c(p)^c` and `J`.
    pub fn group_element<R: Rng>(n: usize, p: u64, rng: &mut R) -> SymplecticMatrix {
        let small = |r: &mut R| {
            Rational::new(BigInt::from(r.gen_range(-50..=50)), BigInt::from(r.gen_range(1..=50)))
        };
        let mut g = SymplecticMatrix::identity(n);
        for _ in 0..2 {
            let up = SymplecticMatrix::unipotent(&symmetric(n, rng, small)).unwrap();
            let lo = SymplecticMatrix::lower_unipotent(&symmetric(n, rng, small)).unwrap();
            let diag = (0..n)
                .map(|_| loop {
                    let x = small(rng);
                    if !x.is_zero() {
                        break x;
                    }
                })
                .collect();
            let m = SymplecticMatrix::levi(&ldu(n, rng, small, diag)).unwrap();
            let c = rng.gen_range(-3..=3);
            let t = SymplecticMatrix::siegel_torus(n, &rat(p as i64), c).unwrap();
            g = g.mul(&up).unwrap().mul(&t).unwrap().mul(&m).unwrap().mul(&lo).unwrap();
            if rng.gen_bool(0.5) {
                g = g.mul(&SymplecticMatrix::j(n)).unwrap();
            }
        }
        g
    }

    fn complex_gaussian_qr<R: Rng>(n: usize, rng: &mut R) -> DMatrix<Complex<f64>> {
        let m = DMatrix::from_fn(n, n, |_, _| {
            Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        m.qr().q()
    }

    /// `[[A, B], [-B, A]]` with `A + iB` unitary: the maximal compact
    /// `U(n) = Sp_2n(R) ∩ O(2n)`.
    pub fn real_maximal_compact<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
        let u = complex_gaussian_qr(n, rng);
        DMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let (bi, bj) = (i / n, j / n);
            let z = u[(i % n, j % n)];
            match (bi, bj) {
                (0, 0) | (1, 1) => z.re,
                (0, 1) => z.im,
                _ => -z.im,
            }
        })
    }

    /// Real element of `[P, P]`: a unipotent with entries in `[-2, 2]`
    /// times `Levi(A)`, `A` a rotation scaled along two axes by `t, 1/t`.
    pub fn real_derived_parabolic<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
        let mut z = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-2.0..2.0));
        z = &z + z.transpose();
        let mut u = DMatrix::identity(2 * n, 2 * n);
        u.view_mut((0, n), (n, n)).copy_from(&z);
        let mut m = real_levi_rotation(n, rng);
        if n >= 2 {
            let t: f64 = rng.gen_range(0.25..4.0);
            let mut a = DMatrix::<f64>::identity(n, n);
            a[(0, 0)] = t;
            a[(1, 1)] = 1.0 / t;
            let ainv_t = DMatrix::from_diagonal(&a.diagonal().map(|x| 1.0 / x));
            let mut s = DMatrix::zeros(2 * n, 2 * n);
            s.view_mut((0, 0), (n, n)).copy_from(&a);
            s.view_mut((n, n), (n, n)).copy_from(&ainv_t);
            m = s * m;
        }
        u * m
    }

    /// Moderately conditioned real element of `Sp_2n(R)`: a word in
    /// `real_derived_parabolic`, `J` and a diagonal torus element.
    pub fn real_group_element<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
        let j = SymplecticMatrix::j(n).to_real();
        let mut t = DMatrix::identity(2 * n, 2 * n);
        for i in 0..n {
            let x: f64 = rng.gen_range(0.25..4.0);
            t[(i, i)] = x;
            t[(n + i, n + i)] = 1.0 / x;
        }
        real_derived_parabolic(n, rng) * &j * t * real_derived_parabolic(n, rng) * j
    }

    /// `Levi(O)` with `O` in `SO(n)`; lies in both `[P,P]` and `U(n)`.
    pub fn real_levi_rotation<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
        let m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        let mut o = m.qr().q();
        if o.determinant() < 0.0 {
            for i in 0..n {
                o[(i, 0)] = -o[(i, 0)];
            }
        }
        let mut g = DMatrix::zeros(2 * n, 2 * n);
        g.view_mut((0, 0), (n, n)).copy_from(&o);
        g.view_mut((n, n), (n, n)).copy_from(&o);
        g
    }
}
