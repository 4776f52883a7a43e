//! Quadratic extensions `K(sqrt s)` of a real quadratic field `K`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::enclosure::{Interval, RealEnclosure};
use super::poly::IntPolynomial;
use super::quad::{BaseEmbedding, QuadElem, QuadField};
use super::radical::RadicalExt;
use crate::error::{Error, Result};

/// One of the four real embeddings of `K(sqrt s)`: a base embedding of `K`
/// together with the sign taken for `sqrt s`.
///
/// The index is `2 * base + sign`, so index 0 is the identity on `K` with the
/// positive square root. The family construction uses index 0, the embedding
/// in which the chosen unit is larger than one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TowerEmbedding {
    pub base: BaseEmbedding,
    pub negative_root: bool,
}

impl TowerEmbedding {
    pub const IDENTITY: TowerEmbedding = TowerEmbedding {
        base: BaseEmbedding::Identity,
        negative_root: false,
    };

    pub const ALL: [TowerEmbedding; 4] = [
        TowerEmbedding {
            base: BaseEmbedding::Identity,
            negative_root: false,
        },
        TowerEmbedding {
            base: BaseEmbedding::Identity,
            negative_root: true,
        },
        TowerEmbedding {
            base: BaseEmbedding::Conjugate,
            negative_root: false,
        },
        TowerEmbedding {
            base: BaseEmbedding::Conjugate,
            negative_root: true,
        },
    ];

    pub fn index(self) -> usize {
        2 * self.base.index() + usize::from(self.negative_root)
    }

    pub fn from_index(i: usize) -> Result<Self> {
        Self::ALL
            .get(i)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("embedding index {i} not in 0..4")))
    }
}

/// The element `u + v sqrt s` with `u, v, s` in a real quadratic field and `s`
/// totally positive.
///
/// Constructors normalize: when `v = 0` or `s` is a square in the base field
/// the element is folded into `u` and the radicand becomes 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerElem {
    base: QuadField,
    s: QuadElem,
    u: QuadElem,
    v: QuadElem,
}

/// Moves a rational element into `field`; irrational elements must already be there.
pub(crate) fn retag(x: &QuadElem, field: QuadField) -> Result<QuadElem> {
    if x.field() == field {
        Ok(x.clone())
    } else if x.is_rational() {
        Ok(QuadElem::from_rational(field, x.rational_part().clone()))
    } else {
        Err(Error::FieldMismatch {
            left: field.radicand(),
            right: x.field().radicand(),
        })
    }
}

impl TowerElem {
    pub fn new(u: QuadElem, v: QuadElem, s: QuadElem) -> Result<Self> {
        let base = [&s, &u, &v]
            .iter()
            .find(|x| !x.is_rational())
            .map_or(s.field(), |x| x.field());
        let (u, v, s) = (retag(&u, base)?, retag(&v, base)?, retag(&s, base)?);
        if v.is_zero() {
            return Ok(Self::from_base(u));
        }
        if !s.is_totally_positive() {
            return Err(Error::NotTotallyPositive(s.to_string()));
        }
        if let Some(r) = s.sqrt_exact() {
            return Ok(Self::from_base(&u + &(&v * &r)));
        }
        Ok(Self { base, s, u, v })
    }

    pub fn from_base(u: QuadElem) -> Self {
        let base = u.field();
        Self {
            base,
            s: base.one(),
            u,
            v: base.zero(),
        }
    }

    /// `sqrt s` itself.
    pub fn sqrt_of(s: QuadElem) -> Result<Self> {
        let f = s.field();
        Self::new(f.zero(), f.one(), s)
    }

    pub fn base(&self) -> QuadField {
        self.base
    }

    pub fn radicand(&self) -> &QuadElem {
        &self.s
    }

    pub fn u(&self) -> &QuadElem {
        &self.u
    }

    pub fn v(&self) -> &QuadElem {
        &self.v
    }

    /// The element as a base-field element, when it lies in the base field.
    pub fn as_base(&self) -> Option<&QuadElem> {
        self.v.is_zero().then_some(&self.u)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Rewrites `other` over this element's radicand, when the two radicands
    /// differ by a square of the base field.
    fn align(&self, other: &Self) -> Result<(QuadElem, QuadElem, QuadElem, QuadElem, QuadElem)> {
        let base = if self.v.is_zero() && !other.v.is_zero() {
            other
        } else {
            self
        };
        let s = base.s.clone();
        let f = base.base;
        let fit = |x: &TowerElem| -> Result<(QuadElem, QuadElem)> {
            let (u, v) = (retag(&x.u, f)?, retag(&x.v, f)?);
            if v.is_zero() || x.s == s {
                return Ok((u, v));
            }
            // sqrt(t) = c sqrt(s) with c = sqrt(t / s) when that lies in K
            let c = x.s.try_div(&s)?.sqrt_exact().ok_or_else(|| {
                Error::OutsideTower(format!("sqrt({}) and sqrt({}) generate different extensions", x.s, s))
            })?;
            Ok((u, &v * &c))
        };
        let (a, b) = fit(self)?;
        let (c, d) = fit(other)?;
        Ok((a, b, c, d, s))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b, c, d, s) = self.align(other)?;
        Self::new(&a + &c, &b + &d, s)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let (a, b, c, d, s) = self.align(other)?;
        Self::new(&a - &c, &b - &d, s)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b, c, d, s) = self.align(other)?;
        // (a + b r)(c + d r) = ac + bd s + (ad + bc) r
        let u = &(&a * &c) + &(&(&b * &d) * &s);
        let v = &(&a * &d) + &(&b * &c);
        Self::new(u, v, s)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// `(u - v sqrt s) / (u^2 - v^2 s)`.
    pub fn inv(&self) -> Result<Self> {
        let n = self.relative_norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ni = n.inv()?;
        Self::new(&self.u * &ni, -&(&self.v * &ni), self.s.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::from_base(self.base.one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            base = base.try_mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Norm down to the base field, `u^2 - v^2 s`.
    pub fn relative_norm(&self) -> QuadElem {
        &(&self.u * &self.u) - &(&(&self.v * &self.v) * &self.s)
    }

    /// `u - v sqrt s`.
    pub fn tower_conj(&self) -> Self {
        Self {
            v: -&self.v,
            ..self.clone()
        }
    }

    /// Galois conjugation of the coefficients (and the radicand).
    pub fn base_conj(&self) -> Self {
        Self {
            base: self.base,
            s: self.s.conj(),
            u: self.u.conj(),
            v: self.v.conj(),
        }
    }

    /// Certified interval for the image under `emb`, with `bits` bits of
    /// working precision.
    pub fn interval(&self, emb: TowerEmbedding, bits: u32) -> Interval {
        let u = self.u.interval(emb.base, bits);
        if self.v.is_zero() {
            return u;
        }
        let v = self.v.interval(emb.base, bits);
        let s = self.s.interval(emb.base, bits);
        let r = Interval::sqrt(&s, bits);
        let r = if emb.negative_root { r.neg() } else { r };
        u.add(&v.mul(&r))
    }

    /// Enclosure of the image under `emb` of width below `tol`.
    pub fn embed_real(&self, emb: TowerEmbedding, tol: f64) -> RealEnclosure {
        assert!(tol > 0.0, "tolerance must be positive");
        let mut bits = 64;
        loop {
            let enc = self.interval(emb, bits).to_enclosure(bits + 8);
            if enc.width() < tol {
                return enc;
            }
            bits *= 2;
        }
    }

    /// One refinement round: the result is contained in `prev` and at most
    /// half as wide.
    pub fn refine(&self, emb: TowerEmbedding, prev: &RealEnclosure) -> RealEnclosure {
        let w = prev.width();
        if w == 0.0 {
            return prev.clone();
        }
        self.embed_real(emb, w / 2.0).intersect(prev)
    }

    /// Double-precision image under `emb`, correct to about one ulp.
    pub fn to_f64_at(&self, emb: TowerEmbedding) -> f64 {
        let mut bits = 64;
        loop {
            let iv = self.interval(emb, bits);
            if let Some(v) = iv.relative_midpoint(1e-17) {
                return v;
            }
            if bits > 1 << 16 {
                return iv.midpoint_f64();
            }
            bits *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_at(TowerEmbedding::IDENTITY)
    }

    /// Minimal polynomial over `Q`, which must have integer coefficients.
    pub fn min_poly(&self) -> Result<IntPolynomial> {
        let ext = RadicalExt::new(self.base, std::slice::from_ref(&self.s))?;
        ext.lift(self)?.min_poly()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.min_poly().is_ok()
    }

    /// Parses `(u) + (v) * sqrt(s)`, or a bare base-field element. `field`
    /// supplies the base field when no component mentions a square root of it.
    pub fn parse_in(field: Option<QuadField>, text: &str) -> Result<Self> {
        let c: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a tower element: {text:?}"));
        if !c.starts_with('(') {
            return Ok(Self::from_base(QuadElem::parse_in(field, &c)?));
        }
        let close = matching_paren(&c, 0).ok_or_else(bad)?;
        let u_str = &c[1..close];
        let rest = &c[close + 1..];
        if rest.is_empty() {
            return Ok(Self::from_base(QuadElem::parse_in(field, u_str)?));
        }
        let negative = match rest.as_bytes()[0] {
            b'+' => false,
            b'-' => true,
            _ => return Err(bad()),
        };
        let rest = &rest[1..];
        if !rest.starts_with('(') {
            return Err(bad());
        }
        let vc = matching_paren(rest, 0).ok_or_else(bad)?;
        let v_str = &rest[1..vc];
        let tail = rest[vc + 1..].strip_prefix("*sqrt(").ok_or_else(bad)?;
        let s_str = tail.strip_suffix(')').ok_or_else(bad)?;
        let field = match field {
            Some(f) => Some(f),
            None => [u_str, v_str, s_str]
                .iter()
                .find(|p| p.contains("sqrt("))
                .map(|p| QuadElem::parse_in(None, p).map(|x| x.field()))
                .transpose()?,
        };
        let u = QuadElem::parse_in(field, u_str)?;
        let v = QuadElem::parse_in(field, v_str)?;
        let s = QuadElem::parse_in(field, s_str)?;
        Self::new(u, if negative { -v } else { v }, s)
    }
}

fn matching_paren(s: &str, open: usize) -> Option<usize> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices().skip(open) {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "({}) + ({}) * sqrt({})", self.u, self.v, self.s)
        }
    }
}

impl FromStr for TowerElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in(None, s)
    }
}

impl Serialize for TowerElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TowerElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<QuadElem> for TowerElem {
    fn from(x: QuadElem) -> Self {
        Self::from_base(x)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&TowerElem> for &TowerElem {
            type Output = TowerElem;
            fn $m(self, rhs: &TowerElem) -> TowerElem {
                self.$try(rhs).expect("incompatible tower elements")
            }
        }
        impl $tr<TowerElem> for TowerElem {
            type Output = TowerElem;
            fn $m(self, rhs: TowerElem) -> TowerElem {
                (&self).$try(&rhs).expect("incompatible tower elements")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        TowerElem {
            base: self.base,
            s: self.s.clone(),
            u: -&self.u,
            v: -&self.v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::ratio;

    fn k3() -> QuadField {
        QuadField::new(3).unwrap()
    }

    fn eps() -> QuadElem {
        QuadElem::from_ints(k3(), 2, 1)
    }

    #[test]
    fn normalization_folds_squares() {
        let f = k3();
        let x = TowerElem::new(f.int(1), f.int(2), QuadElem::from_ints(f, 7, 4)).unwrap();
        // sqrt(7 + 4 sqrt 3) = 2 + sqrt 3
        assert_eq!(x.as_base(), Some(&QuadElem::from_ints(f, 5, 2)));
        assert!(TowerElem::new(f.int(0), f.int(1), QuadElem::from_ints(f, 1, 1)).is_err());
    }

    #[test]
    fn inverse_and_tower_conjugate() {
        let f = k3();
        let e = eps();
        let p = &f.int(4) + &(&e * &e);
        let lambda = TowerElem::new(e.scale(&ratio(1, 2)), f.int(1).scale(&ratio(1, 2)), p).unwrap();
        let li = lambda.inv().unwrap();
        // lambda is a unit of relative norm -1, so its inverse is minus the conjugate
        assert_eq!(li, -&lambda.tower_conj());
        let one = &lambda * &li;
        assert_eq!(one.as_base(), Some(&f.one()));
    }

    #[test]
    fn radicands_differing_by_squares_combine() {
        let f = k3();
        let a = TowerElem::sqrt_of(f.int(2)).unwrap();
        let b = TowerElem::sqrt_of(f.int(8)).unwrap();
        let sum = &a + &b;
        assert_eq!(sum, TowerElem::new(f.zero(), f.int(3), f.int(2)).unwrap());
        let c = TowerElem::sqrt_of(f.int(5)).unwrap();
        assert!(matches!(a.try_mul(&c), Err(Error::OutsideTower(_))));
    }

    #[test]
    fn four_embeddings() {
        let f = k3();
        let x = TowerElem::new(f.int(1), f.int(1), QuadElem::from_ints(f, 2, 1)).unwrap();
        let s = 2.0 + 3f64.sqrt();
        let sc = 2.0 - 3f64.sqrt();
        let want = [1.0 + s.sqrt(), 1.0 - s.sqrt(), 1.0 + sc.sqrt(), 1.0 - sc.sqrt()];
        for emb in TowerEmbedding::ALL {
            let got = x.to_f64_at(emb);
            assert!((got - want[emb.index()]).abs() < 1e-14);
            assert_eq!(TowerEmbedding::from_index(emb.index()).unwrap(), emb);
        }
    }

    #[test]
    fn refinement_halves_width() {
        let x = TowerElem::sqrt_of(QuadElem::from_ints(k3(), 5, 2)).unwrap();
        let mut enc = x.embed_real(TowerEmbedding::IDENTITY, 1e-3);
        for _ in 0..20 {
            let next = x.refine(TowerEmbedding::IDENTITY, &enc);
            assert!(next.is_subset_of(&enc));
            assert!(next.width() <= enc.width() / 2.0);
            enc = next;
        }
    }

    #[test]
    fn text_round_trip() {
        let f = k3();
        let e = eps();
        let x = TowerElem::new(
            e.scale(&ratio(1, 2)),
            f.int(-1).scale(&ratio(1, 2)),
            &f.int(4) + &(&e * &e),
        )
        .unwrap();
        let s = x.to_string();
        assert_eq!(s, "(1 + 1/2 * sqrt(3)) + (-1/2 + 0 * sqrt(3)) * sqrt(11 + 4 * sqrt(3))");
        assert_eq!(s.parse::<TowerElem>().unwrap(), x);
        let y = TowerElem::parse_in(Some(f), "(0) - (1) * sqrt(2)").unwrap();
        assert_eq!(y, TowerElem::new(f.zero(), f.int(-1), f.int(2)).unwrap());
        assert!("(1) + (2) sqrt(3)".parse::<TowerElem>().is_err());
    }
}
