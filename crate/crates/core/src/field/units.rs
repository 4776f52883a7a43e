//! Fundamental units of real quadratic rings of integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::quad::{QuadElem, QuadField};
use super::rational::Rational;
use crate::error::{Error, Result};

const MAX_RADICAND: u64 = 1000;
const MAX_TERMS: usize = 10_000;

/// The fundamental unit `> 1` of the maximal order of `Q(sqrt d)`, `d <= 1000`.
///
/// Expands `alpha = sqrt d` (or `(1 + sqrt d)/2` when `d = 1 mod 4`) as a
/// continued fraction. A unit `p - q alpha'` larger than one has a tiny
/// conjugate `p - q alpha`, which forces `p/q` to be a convergent, so the
/// first convergent of unit norm gives the fundamental unit.
pub fn fundamental_unit(field: QuadField) -> Result<QuadElem> {
    let d = field.radicand();
    if d > MAX_RADICAND {
        return Err(Error::UnsupportedRadicand(d));
    }
    let one_mod_four = d % 4 == 1;
    let db = BigInt::from(d);
    let s = db.sqrt();
    let (mut big_p, mut big_q) = if one_mod_four {
        (BigInt::one(), BigInt::from(2))
    } else {
        (BigInt::zero(), BigInt::one())
    };
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    for _ in 0..MAX_TERMS {
        let a = (&big_p + &s) / &big_q;
        (p_prev, p) = (p.clone(), &a * &p + &p_prev);
        (q_prev, q) = (q.clone(), &a * &q + &q_prev);
        let norm = if one_mod_four {
            // N(p - q w) = p^2 - pq + q^2 (1 - d)/4
            &p * &p - &p * &q + &q * &q * (BigInt::one() - &db) / 4
        } else {
            &p * &p - &db * &q * &q
        };
        if norm.abs().is_one() {
            let unit = if one_mod_four {
                // p - q (1 - sqrt d)/2
                QuadElem::new(
                    field,
                    Rational::new(&p * 2 - &q, BigInt::from(2)),
                    Rational::new(q.clone(), BigInt::from(2)),
                )
            } else {
                QuadElem::new(field, Rational::from_integer(p), Rational::from_integer(q))
            };
            debug_assert!(unit.norm().abs().is_one());
            return Ok(unit);
        }
        big_p = &a * &big_q - &big_p;
        big_q = (&db - &big_p * &big_p) / &big_q;
    }
    Err(Error::UnsupportedRadicand(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::ratio;

    /// Smallest `(x, y)` with `y >= 1` and `x^2 - d y^2 = +-k`, by brute force.
    fn brute(d: i64, k: i64) -> (i64, i64) {
        for y in 1.. {
            for x in 1..=(((d * y * y + k) as f64).sqrt() as i64 + 1) {
                let n = x * x - d * y * y;
                if n == k || n == -k {
                    return (x, y);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn small_fields() {
        let f = QuadField::new(3).unwrap();
        assert_eq!(fundamental_unit(f).unwrap(), QuadElem::from_ints(f, 2, 1));
        let f = QuadField::new(2).unwrap();
        assert_eq!(fundamental_unit(f).unwrap(), QuadElem::from_ints(f, 1, 1));
        let f = QuadField::new(5).unwrap();
        assert_eq!(fundamental_unit(f).unwrap(), QuadElem::new(f, ratio(1, 2), ratio(1, 2)));
    }

    #[test]
    fn agrees_with_pell_search() {
        for d in 2..60i64 {
            let Ok(f) = QuadField::new(d as u64) else {
                continue;
            };
            let u = fundamental_unit(f).unwrap();
            let (x, y) = if d % 4 == 1 {
                // units (x + y sqrt d)/2 with x^2 - d y^2 = +-4
                let (x, y) = brute(d, 4);
                (ratio(x, 2), ratio(y, 2))
            } else {
                let (x, y) = brute(d, 1);
                (ratio(x, 1), ratio(y, 1))
            };
            assert_eq!(u, QuadElem::new(f, x, y), "d = {d}");
        }
    }

    #[test]
    fn large_radicands() {
        let f = QuadField::new(991).unwrap();
        let u = fundamental_unit(f).unwrap();
        assert!(u.is_integral() && u.norm().abs().is_one());
        assert!(fundamental_unit(QuadField::new(1003).unwrap()).is_err());
    }
}
