//! Helpers around arbitrary-precision rationals.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational, if it is the square of a rational.
pub fn rat_sqrt_exact(q: &Rational) -> Option<Rational> {
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

/// Splits a nonzero rational `q` as `sign * core * f^2` with `core` a squarefree
/// positive integer and returns `(signed core, f)`.
///
/// Factoring is by trial division, so this is only meant for the small entries
/// that show up in Hilbert symbols.
pub fn squarefree_part(q: &Rational) -> (BigInt, Rational) {
    debug_assert!(!q.is_zero());
    // q = n/d = n*d / d^2
    let m = q.numer() * q.denom();
    let sign = m.sign();
    let mut rest = m.abs();
    let mut core = BigInt::one();
    let mut root = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1u64 << 24);
    while &p * &p <= rest && p < limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            root *= num_traits::pow(p.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                core *= &p;
            }
        }
        p += 1u32;
    }
    // whatever is left is either prime or has only huge factors; keep it in the core
    if let Some(r) = int_sqrt_exact(&rest) {
        root *= r;
    } else {
        core *= rest;
    }
    let core = if sign == Sign::Minus { -core } else { core };
    (core, Rational::new(root, q.denom().clone()))
}

/// `floor(q * 2^bits) / 2^bits`.
pub fn round_down(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let n = (q.numer() * &scale).div_floor(q.denom());
    Rational::new(n, scale)
}

/// `ceil(q * 2^bits) / 2^bits`.
pub fn round_up(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let n = (q.numer() * &scale).div_ceil(q.denom());
    Rational::new(n, scale)
}

/// Lower and upper dyadic bounds on `sqrt(q)` with denominator `2^bits`.
pub fn sqrt_bounds(q: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!q.is_negative(), "sqrt of negative rational");
    let scale = BigInt::one() << bits;
    // floor(sqrt(q) * 2^bits) = isqrt(floor(q * 4^bits))
    let scaled = (q.numer() << (2 * bits)).div_floor(q.denom());
    let lo = scaled.sqrt();
    let exact = &lo * &lo == scaled && (q.numer() << (2 * bits)).is_multiple_of(q.denom());
    let hi = if exact { lo.clone() } else { &lo + 1u32 };
    (Rational::new(lo, scale.clone()), Rational::new(hi, scale))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Canonical text form: `n` or `n/m`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}
