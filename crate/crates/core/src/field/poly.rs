//! Univariate polynomials: monic integer polynomials and the rational
//! polynomial arithmetic needed to reach them.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Product of two coefficient lists (ascending order) over any ring.
pub(crate) fn poly_mul<T>(a: &[T], b: &[T], zero: &T) -> Vec<T>
where
    T: Clone + Add<Output = T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x * y;
        }
    }
    out
}

/// Dense polynomial over `Q`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RatPoly(pub Vec<Rational>);

impl RatPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        if c.is_empty() {
            c.push(Rational::zero());
        }
        RatPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_zero()
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn lead(&self) -> &Rational {
        self.0.last().unwrap()
    }

    pub fn monic(&self) -> RatPoly {
        let l = self.lead().clone();
        RatPoly::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        if self.0.len() == 1 {
            return RatPoly::new(vec![Rational::zero()]);
        }
        RatPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn div_rem(&self, other: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!other.is_zero());
        let mut rem = self.0.clone();
        let dq = other.degree();
        if self.degree() < dq {
            return (RatPoly::new(vec![Rational::zero()]), self.clone());
        }
        let mut quot = vec![Rational::zero(); self.degree() - dq + 1];
        let lead = other.lead();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dq] / lead;
            if !c.is_zero() {
                for (j, o) in other.0.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &c * o;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dq.max(1));
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> RatPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn to_int_poly(&self) -> Result<IntPolynomial> {
        if !self.is_integral() {
            return Err(Error::NonIntegral(format!("{self}")));
        }
        IntPolynomial::new(self.0.iter().map(|c| c.to_integer()).collect())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().rev().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Monic polynomial with integer coefficients.
///
/// Coefficients are stored in ascending order of degree; the serialized form
/// (and [`IntPolynomial::coeffs_descending`]) lists them from the leading term
/// down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_descending<T: Into<BigInt> + Clone>(c: &[T]) -> Result<Self> {
        let mut v: Vec<BigInt> = c.iter().cloned().map(Into::into).collect();
        // drop leading zeros so `[0, 1, -2]` means x - 2
        let first = v.iter().position(|x| !x.is_zero()).unwrap_or(v.len());
        v.drain(..first);
        v.reverse();
        Self::new(v)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeffs_descending(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Coefficients read the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        IntPolynomial {
            coeffs: poly_mul(&self.coeffs, &other.coeffs, &BigInt::zero()),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub(crate) fn to_rat_poly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    /// Horner evaluation at a complex point together with a bound on the
    /// rounding error (coefficient conversion included).
    pub(crate) fn eval_complex(&self, z: Complex64) -> (Complex64, f64) {
        let c = self.coeffs_f64();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mag = 0.0f64;
        let r = z.norm();
        for a in c.iter().rev() {
            acc = acc * z + *a;
            mag = mag * r + a.abs();
        }
        let n = c.len() as f64;
        (acc, 8.0 * (n + 1.0) * f64::EPSILON * mag)
    }

    pub(crate) fn eval_derivative_complex(&self, z: Complex64) -> Complex64 {
        let c = self.coeffs_f64();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, a) in c.iter().enumerate().skip(1).rev() {
            acc = acc * z + *a * i as f64;
        }
        acc
    }

    /// Yun squarefree decomposition: `self = prod f_i^i`, returned as
    /// `(f_i, i)` pairs with every `f_i` monic, integral and of positive degree.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPolynomial, usize)> {
        let p = self.to_rat_poly();
        let mut out = Vec::new();
        let mut a = p.gcd(&p.derivative());
        let mut b = p.div_rem(&a).0;
        let mut c = p.derivative().div_rem(&a).0;
        let mut d = c_minus_bprime(&c, &b);
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree() > 0 {
                // monic rational factors of a monic integer polynomial are integral
                out.push((g.to_int_poly().expect("Gauss lemma"), i));
            }
            if b.degree() == 0 {
                break;
            }
            b = b.div_rem(&g).0;
            c = d.div_rem(&g).0;
            d = c_minus_bprime(&c, &b);
            i += 1;
            if b.degree() == 0 {
                break;
            }
        }
        let _ = &mut a;
        out
    }
}

fn c_minus_bprime(c: &RatPoly, b: &RatPoly) -> RatPoly {
    let bp = b.derivative();
    let n = c.0.len().max(bp.0.len());
    let get = |p: &RatPoly, i: usize| p.0.get(i).cloned().unwrap_or_else(Rational::zero);
    RatPoly::new((0..n).map(|i| get(c, i) - get(&bp, i)).collect())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in self.coeffs.iter().rev() {
            let n: serde_json::Number = c.to_string().parse().map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&n)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        let coeffs = nums
            .iter()
            .map(|n| n.to_string().parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        IntPolynomial::from_descending(&coeffs).map_err(serde::de::Error::custom)
    }
}
