//! Exact arithmetic in real quadratic fields `Q(sqrt d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::enclosure::{Interval, RealEnclosure};
use super::rational::{format_rational, is_squarefree, parse_rational, rat, rat_sqrt_exact, Rational};
use crate::error::{Error, Result};

/// A real quadratic field `Q(sqrt d)` with `d` squarefree and `d >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct QuadField {
    d: u64,
}

impl QuadField {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::InvalidRadicand(d));
        }
        Ok(Self { d })
    }

    pub fn radicand(self) -> u64 {
        self.d
    }

    pub fn sqrt_d(self) -> QuadElem {
        QuadElem::new(self, Rational::zero(), Rational::one())
    }

    pub fn zero(self) -> QuadElem {
        QuadElem::from_rational(self, Rational::zero())
    }

    pub fn one(self) -> QuadElem {
        QuadElem::from_rational(self, Rational::one())
    }

    pub fn int(self, n: i64) -> QuadElem {
        QuadElem::from_rational(self, rat(n))
    }
}

impl TryFrom<u64> for QuadField {
    type Error = Error;
    fn try_from(d: u64) -> Result<Self> {
        QuadField::new(d)
    }
}

impl From<QuadField> for u64 {
    fn from(f: QuadField) -> u64 {
        f.d
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt {})", self.d)
    }
}

/// One of the two real embeddings of a real quadratic field.
///
/// `Identity` sends `sqrt d` to the positive square root, `Conjugate` to the
/// negative one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseEmbedding {
    Identity,
    Conjugate,
}

impl BaseEmbedding {
    pub const ALL: [BaseEmbedding; 2] = [BaseEmbedding::Identity, BaseEmbedding::Conjugate];

    pub fn index(self) -> usize {
        match self {
            BaseEmbedding::Identity => 0,
            BaseEmbedding::Conjugate => 1,
        }
    }
}

/// The element `a + b sqrt d` of a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    field: QuadField,
    a: Rational,
    b: Rational,
}

impl QuadElem {
    pub fn new(field: QuadField, a: Rational, b: Rational) -> Self {
        Self { field, a, b }
    }

    pub fn from_rational(field: QuadField, a: Rational) -> Self {
        Self::new(field, a, Rational::zero())
    }

    pub fn from_ints(field: QuadField, a: i64, b: i64) -> Self {
        Self::new(field, rat(a), rat(b))
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn d(&self) -> Rational {
        rat(self.field.d as i64)
    }

    /// Galois conjugate `a - b sqrt d`.
    pub fn conj(&self) -> Self {
        Self::new(self.field, self.a.clone(), -&self.b)
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * self.d()
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    /// Algebraic integer test: trace and norm both in `Z`.
    pub fn is_integral(&self) -> bool {
        self.trace().is_integer() && self.norm().is_integer()
    }

    /// Common field of two operands. A rational element lives in every field.
    fn join(&self, other: &Self) -> Result<QuadField> {
        if self.field == other.field || other.is_rational() {
            Ok(self.field)
        } else if self.is_rational() {
            Ok(other.field)
        } else {
            Err(Error::FieldMismatch {
                left: self.field.d,
                right: other.field.d,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let f = self.join(other)?;
        Ok(Self::new(f, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let f = self.join(other)?;
        Ok(Self::new(f, &self.a - &other.a, &self.b - &other.b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let f = self.join(other)?;
        let d = rat(f.d as i64);
        Ok(Self::new(
            f,
            &self.a * &other.a + &self.b * &other.b * d,
            &self.a * &other.b + &self.b * &other.a,
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(self.field, &self.a / &n, -&self.b / &n))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.field, &self.a * q, &self.b * q)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Integer power; negative exponents require a nonzero element.
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = sq.square();
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn at(&self, emb: BaseEmbedding) -> Self {
        match emb {
            BaseEmbedding::Identity => self.clone(),
            BaseEmbedding::Conjugate => self.conj(),
        }
    }

    /// Exact sign of the image under the identity embedding.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a^2 with d b^2
        match (&self.a * &self.a).cmp(&(&self.b * &self.b * self.d())) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn signum_at(&self, emb: BaseEmbedding) -> Ordering {
        self.at(emb).signum()
    }

    pub fn is_totally_positive(&self) -> bool {
        self.signum() == Ordering::Greater && self.conj().signum() == Ordering::Greater
    }

    /// Square root inside the field, when one exists. The root returned is the
    /// one that is non-negative under the identity embedding.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let f = self.field;
        if self.b.is_zero() {
            if let Some(r) = rat_sqrt_exact(&self.a) {
                return Some(Self::from_rational(f, r));
            }
            let r = rat_sqrt_exact(&(&self.a / self.d()))?;
            return Some(Self::new(f, Rational::zero(), r));
        }
        // (x + y sqrt d)^2 = x^2 + d y^2 + 2xy sqrt d, and x^2 - d y^2 = +-sqrt(N)
        let n = rat_sqrt_exact(&self.norm())?;
        let two = rat(2);
        for s in [&n, &-&n] {
            let x2 = (&self.a + s) / &two;
            if let Some(x) = rat_sqrt_exact(&x2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let cand = Self::new(f, x, y);
                if cand.square() == *self {
                    return Some(if cand.signum() == Ordering::Less { -cand } else { cand });
                }
            }
        }
        None
    }

    /// Certified enclosure of the image under `emb` with dyadic endpoints at
    /// `bits` bits of precision for `sqrt d`.
    pub fn interval(&self, emb: BaseEmbedding, bits: u32) -> Interval {
        let b = match emb {
            BaseEmbedding::Identity => self.b.clone(),
            BaseEmbedding::Conjugate => -&self.b,
        };
        if b.is_zero() {
            return Interval::point(self.a.clone());
        }
        let root = Interval::sqrt(&Interval::point(self.d()), bits);
        Interval::point(self.a.clone()).add(&root.scale(&b))
    }

    /// Enclosure of the real image of width below `tol`.
    pub fn embed(&self, emb: BaseEmbedding, tol: f64) -> RealEnclosure {
        let mut bits = 64;
        loop {
            let iv = self.interval(emb, bits);
            let enc = iv.to_enclosure(bits + 8);
            if enc.width() < tol {
                return enc;
            }
            bits *= 2;
        }
    }

    /// Double-precision value under `emb`, accurate to the last bit or so even
    /// when `a` and `b sqrt d` nearly cancel.
    pub fn to_f64_at(&self, emb: BaseEmbedding) -> f64 {
        let mut bits = 64;
        loop {
            let iv = self.interval(emb, bits);
            if let Some(v) = iv.relative_midpoint(1e-17) {
                return v;
            }
            bits *= 2;
            if bits > 1 << 16 {
                return iv.midpoint_f64();
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_at(BaseEmbedding::Identity)
    }

    /// Parses the canonical form (`a + b * sqrt(d)`, `a - b * sqrt(d)`) or, given a
    /// field for context, a bare rational.
    pub fn parse_in(field: Option<QuadField>, s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a quadratic field element: {s:?}"));
        let Some(pos) = compact.rfind("sqrt(") else {
            let f = field.ok_or_else(|| Error::Parse(format!("{s:?} has no sqrt part and no field was given")))?;
            return Ok(Self::from_rational(f, parse_rational(&compact)?));
        };
        if !compact.ends_with(')') {
            return Err(bad());
        }
        let d: u64 = compact[pos + 5..compact.len() - 1].parse().map_err(|_| bad())?;
        let f = QuadField::new(d)?;
        if let Some(ctx) = field {
            if ctx != f {
                return Err(Error::FieldMismatch { left: ctx.d, right: d });
            }
        }
        let head = compact[..pos].strip_suffix('*').unwrap_or(&compact[..pos]);
        // split "A+B" / "A-B" at the first sign that follows a digit
        let bytes = head.as_bytes();
        let split = (1..bytes.len()).find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit());
        let (a, b) = match split {
            Some(i) => {
                let a = parse_rational(&head[..i])?;
                let b_str = &head[i + 1..];
                let b = if b_str.is_empty() {
                    Rational::one()
                } else {
                    parse_rational(b_str)?
                };
                (a, if bytes[i] == b'-' { -b } else { b })
            }
            None => {
                let b = match head {
                    "" | "+" => Rational::one(),
                    "-" => -Rational::one(),
                    _ => parse_rational(head)?,
                };
                (Rational::zero(), b)
            }
        };
        Ok(Self::new(f, a, b))
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, b) = if self.b.is_negative() {
            ("-", -&self.b)
        } else {
            ("+", self.b.clone())
        };
        write!(
            f,
            "{} {} {} * sqrt({})",
            format_rational(&self.a),
            op,
            format_rational(&b),
            self.field.d
        )
    }
}

impl FromStr for QuadElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        QuadElem::parse_in(None, s)
    }
}

impl Serialize for QuadElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// Operator sugar. These panic on a field mismatch; use the `try_*` methods when
// operands come from untrusted input.
macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: &QuadElem) -> QuadElem {
                self.$try(rhs).expect("quadratic field mismatch")
            }
        }
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, rhs: QuadElem) -> QuadElem {
                (&self).$try(&rhs).expect("quadratic field mismatch")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::new(self.field, -self.a, -self.b)
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::new(self.field, -&self.a, -&self.b)
    }
}

/// Integer `n` as a rational element.
pub fn int_in(field: QuadField, n: &BigInt) -> QuadElem {
    QuadElem::from_rational(field, Rational::from_integer(n.clone()))
}
