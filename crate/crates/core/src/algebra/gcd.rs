//! Gcd of polynomials in `U` over `Q(v)`.
//!
//! Euclid directly over the fraction field blows up coefficient sizes, so
//! the work is done in `Z[v][U]`: a cheap modular test first (specialise
//! `v` to a residue mod a 61-bit prime; a unit gcd there proves a unit gcd
//! over `Q(v)` when leading coefficients survive), then a primitive
//! pseudo-remainder sequence with contents taken in `Z[v]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::intpoly::IntPoly;
use super::scalar::ScalarQV;
use super::symbol::UPoly;

const P: u64 = (1 << 61) - 1;
const T: u64 = 1_234_567_890_123;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, P - 2)
}

fn bigint_mod(c: &BigInt) -> u64 {
    let p = BigInt::from(P);
    c.mod_floor(&p).to_u64().expect("reduced below P")
}

fn intpoly_at_t(p: &IntPoly) -> u64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(0, |acc, c| (mulmod(acc, T) + bigint_mod(c)) % P)
}

fn scalar_at_t(c: &ScalarQV) -> Option<u64> {
    let d = intpoly_at_t(c.denominator());
    (d != 0).then(|| mulmod(intpoly_at_t(c.numerator()), invmod(d)))
}

fn reduce(p: &UPoly) -> Option<Vec<u64>> {
    let out: Vec<u64> = p.coeffs().iter().map(scalar_at_t).collect::<Option<_>>()?;
    // a vanishing leading coefficient would make the test unsound
    (*out.last()? != 0).then_some(out)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn modp_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = invmod(*b.last().unwrap());
        while a.len() >= b.len() {
            let c = mulmod(*a.last().unwrap(), inv);
            let off = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[off + i] = (a[off + i] + P - mulmod(c, *bi)) % P;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Certifies `gcd(a, b) = 1`; `false` means inconclusive.
fn certainly_coprime(a: &UPoly, b: &UPoly) -> bool {
    match (reduce(a), reduce(b)) {
        (Some(x), Some(y)) => modp_gcd_degree(x, y) == 0,
        _ => false,
    }
}

type ZPoly = Vec<IntPoly>;

fn to_zpoly(a: &UPoly) -> ZPoly {
    let mut l = IntPoly::one();
    for c in a.coeffs() {
        let d = c.denominator();
        let g = l.gcd(d);
        l = l.mul(&d.div_exact(&g).expect("primitive gcd divides"));
    }
    a.coeffs()
        .iter()
        .map(|c| {
            c.numerator()
                .mul(&l.div_exact(c.denominator()).expect("denominator divides lcm"))
        })
        .collect()
}

fn ztrim(a: &mut ZPoly) {
    while a.last().is_some_and(IntPoly::is_zero) {
        a.pop();
    }
}

fn primitive_part(a: &ZPoly) -> ZPoly {
    let g = a
        .iter()
        .filter(|c| !c.is_zero())
        .fold(IntPoly::zero(), |g, c| g.gcd(c));
    let mut out: ZPoly = if g.is_one() || g.is_zero() {
        a.clone()
    } else {
        a.iter()
            .map(|c| c.div_exact(&g).expect("content divides"))
            .collect()
    };
    let ic = out.iter().fold(BigInt::zero(), |acc, c| acc.gcd(&c.content()));
    if !ic.is_zero() && !ic.is_one() {
        out = out.iter().map(|c| c.div_scalar_exact(&ic)).collect();
    }
    out
}

fn pseudo_rem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let rl = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lc);
        }
        for (i, bi) in b.iter().enumerate() {
            r[dr - db + i] = r[dr - db + i].sub(&bi.mul(&rl));
        }
        ztrim(&mut r);
    }
    r
}

/// Gcd over `Q(v)`, normalised monic.
pub(super) fn upoly_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.degree() == Some(0) || b.degree() == Some(0) || certainly_coprime(a, b) {
        return UPoly::one();
    }
    let (mut x, mut y) = (primitive_part(&to_zpoly(a)), primitive_part(&to_zpoly(b)));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return UPoly::one();
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive_part(&r) };
    }
    let g = UPoly::from_coeffs(
        x.into_iter()
            .map(|c| ScalarQV::from_polys(c, IntPoly::one()).expect("nonzero denominator"))
            .collect(),
    );
    monic(&g)
}

fn monic(a: &UPoly) -> UPoly {
    match a.degree() {
        None => UPoly::zero(),
        Some(d) => {
            let lead = &a.coeffs()[d];
            if lead.is_one() {
                a.clone()
            } else {
                a.scale(&lead.recip().expect("nonzero leading coefficient"))
            }
        }
    }
}
