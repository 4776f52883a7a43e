//! Certified real enclosures with exact rational endpoints.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use super::rational::{round_down, round_up, sqrt_bounds, to_f64, Rational};

/// Closed interval with exact rational endpoints, used internally while
/// evaluating an embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        Self { lo: q.clone(), hi: q }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn scale(&self, q: &Rational) -> Interval {
        if q.is_negative() {
            Interval::new(&self.hi * q, &self.lo * q)
        } else {
            Interval::new(&self.lo * q, &self.hi * q)
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    /// Enclosure of `sqrt` over a non-negative interval.
    pub fn sqrt(x: &Interval, bits: u32) -> Interval {
        let lo = if x.lo.is_positive() {
            sqrt_bounds(&x.lo, bits).0
        } else {
            Rational::zero()
        };
        let hi = sqrt_bounds(&x.hi, bits).1;
        Interval::new(lo, hi)
    }

    /// Sign of every point of the interval, if it is determined.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / Rational::from_integer(2.into())))
    }

    /// Midpoint as `f64` when the interval is narrow relative to its magnitude
    /// (or is the single point zero).
    pub fn relative_midpoint(&self, rel: f64) -> Option<f64> {
        if self.lo.is_zero() && self.hi.is_zero() {
            return Some(0.0);
        }
        self.sign()?;
        let mid = self.midpoint_f64();
        let w = to_f64(&self.width());
        (w <= rel * mid.abs()).then_some(mid)
    }

    /// Outward rounding to dyadic endpoints with denominator `2^bits`.
    pub fn to_enclosure(&self, bits: u32) -> RealEnclosure {
        RealEnclosure {
            lo: round_down(&self.lo, bits),
            hi: round_up(&self.hi, bits),
        }
    }
}

/// A certified enclosure `[lo, hi]` of a real number; endpoints are dyadic
/// rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct RealEnclosure {
    lo: Rational,
    hi: Rational,
}

impl RealEnclosure {
    pub fn point(q: Rational) -> Self {
        Self { lo: q.clone(), hi: q }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }

    pub fn width(&self) -> f64 {
        to_f64(&(&self.hi - &self.lo))
    }

    pub fn midpoint(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / Rational::from_integer(2.into())))
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_f64(&self, v: f64) -> bool {
        match Rational::from_float(v) {
            Some(q) => self.contains(&q),
            None => false,
        }
    }

    pub fn is_subset_of(&self, other: &RealEnclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Intersection of two enclosures of the same number.
    pub fn intersect(&self, other: &RealEnclosure) -> RealEnclosure {
        let lo = if self.lo > other.lo {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi < other.hi {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        assert!(lo <= hi, "enclosures of the same number must overlap");
        RealEnclosure { lo, hi }
    }
}

impl fmt::Display for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo_f64(), self.hi_f64())
    }
}
