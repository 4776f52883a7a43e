//! Multi-quadratic extensions `K(sqrt r_1, ..., sqrt r_m)`.
//!
//! Trace data for a two-generator group may put different traces under
//! different radicals; products of such traces live in the compositum. An
//! element is stored by its coefficients on the basis `prod_{i in S} sqrt r_i`,
//! one per subset `S` (a bit mask).

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::poly::{poly_mul, IntPolynomial, RatPoly};
use super::quad::{QuadElem, QuadField};
use super::rational::Rational;
use super::tower::{retag, TowerElem};
use crate::error::{Error, Result};

/// The radicand basis of a multi-quadratic extension. The radicands are
/// totally positive and independent modulo squares of `K`.
#[derive(Debug, PartialEq, Eq)]
pub struct RadicalExt {
    base: QuadField,
    radicands: Vec<QuadElem>,
}

impl RadicalExt {
    /// Builds the compositum of `K(sqrt s)` over all given `s`, dropping radicands
    /// that are already products of earlier ones up to squares.
    pub fn new(base: QuadField, radicands: &[QuadElem]) -> Result<Arc<Self>> {
        let mut ext = RadicalExt {
            base,
            radicands: Vec::new(),
        };
        for s in radicands {
            let s = retag(s, base)?;
            if !s.is_totally_positive() {
                return Err(Error::NotTotallyPositive(s.to_string()));
            }
            if ext.express(&s)?.is_none() {
                ext.radicands.push(s);
            }
        }
        Ok(Arc::new(ext))
    }

    pub fn base(&self) -> QuadField {
        self.base
    }

    pub fn radicands(&self) -> &[QuadElem] {
        &self.radicands
    }

    fn dim(&self) -> usize {
        1 << self.radicands.len()
    }

    fn mask_product(&self, mask: usize) -> QuadElem {
        let mut p = self.base.one();
        for (i, r) in self.radicands.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p = &p * r;
            }
        }
        p
    }

    /// Writes `sqrt s` as `c * prod_{i in S} sqrt r_i` when possible. The sign of
    /// `c` makes both sides positive under the identity embedding with all
    /// square roots positive.
    fn express(&self, s: &QuadElem) -> Result<Option<(QuadElem, usize)>> {
        for mask in 0..self.dim() {
            let r = self.mask_product(mask);
            if let Some(c) = s.try_mul(&r)?.sqrt_exact() {
                // s r = c^2, so sqrt s = (c / r) sqrt r
                return Ok(Some((c.try_div(&r)?, mask)));
            }
        }
        Ok(None)
    }

    fn element(self: &Arc<Self>, coeffs: Vec<QuadElem>) -> RadicalElem {
        RadicalElem {
            ext: Arc::clone(self),
            coeffs,
        }
    }

    pub fn from_base(self: &Arc<Self>, x: &QuadElem) -> Result<RadicalElem> {
        let mut coeffs = vec![self.base.zero(); self.dim()];
        coeffs[0] = retag(x, self.base)?;
        Ok(self.element(coeffs))
    }

    pub fn one(self: &Arc<Self>) -> RadicalElem {
        self.from_base(&self.base.one()).expect("same field")
    }

    /// Image of a tower element. Its radicand must lie in the extension.
    pub fn lift(self: &Arc<Self>, t: &TowerElem) -> Result<RadicalElem> {
        let mut x = self.from_base(t.u())?;
        if t.v().is_zero() {
            return Ok(x);
        }
        let (c, mask) = self
            .express(t.radicand())?
            .ok_or_else(|| Error::OutsideTower(format!("sqrt({}) is not in the extension", t.radicand())))?;
        let v = retag(t.v(), self.base)?;
        x.coeffs[mask] = &x.coeffs[mask] + &(&v * &c);
        Ok(x)
    }
}

/// Element of a [`RadicalExt`].
#[derive(Clone, Debug)]
pub struct RadicalElem {
    ext: Arc<RadicalExt>,
    coeffs: Vec<QuadElem>,
}

impl PartialEq for RadicalElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ext, &other.ext) || self.ext == other.ext) && self.coeffs == other.coeffs
    }
}

impl RadicalElem {
    pub fn ext(&self) -> &Arc<RadicalExt> {
        &self.ext
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QuadElem::is_zero)
    }

    pub fn as_base(&self) -> Option<&QuadElem> {
        self.coeffs[1..]
            .iter()
            .all(QuadElem::is_zero)
            .then_some(&self.coeffs[0])
    }

    fn check(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ext, &other.ext) || self.ext == other.ext,
            "elements of different radical extensions"
        );
    }

    /// Negates the coefficients that involve `sqrt r_i`.
    fn flip(&self, i: usize) -> RadicalElem {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| if m >> i & 1 == 1 { -c } else { c.clone() })
            .collect();
        self.ext.element(coeffs)
    }

    fn map_base(&self, f: impl Fn(&QuadElem) -> QuadElem) -> RadicalElem {
        self.ext.element(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, k: &QuadElem) -> RadicalElem {
        self.map_base(|c| c * k)
    }

    pub fn inv(&self) -> Result<RadicalElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // multiply by conjugates one radical at a time until the product lies in K
        let mut num = self.ext.one();
        let mut den = self.clone();
        for i in 0..self.ext.radicands.len() {
            let f = den.flip(i);
            num = &num * &f;
            den = &den * &f;
        }
        let d = den.as_base().expect("norm lies in the base field").inv()?;
        Ok(num.scale(&d))
    }

    pub fn try_div(&self, other: &Self) -> Result<RadicalElem> {
        Ok(self * &other.inv()?)
    }

    /// The element as a tower element `u + v sqrt s`, when at most one basis
    /// radical carries a nonzero coefficient.
    pub fn to_tower(&self) -> Option<TowerElem> {
        let support: Vec<usize> = (1..self.coeffs.len()).filter(|&m| !self.coeffs[m].is_zero()).collect();
        match support.as_slice() {
            [] => Some(TowerElem::from_base(self.coeffs[0].clone())),
            [m] => TowerElem::new(
                self.coeffs[0].clone(),
                self.coeffs[*m].clone(),
                self.ext.mask_product(*m),
            )
            .ok(),
            _ => None,
        }
    }

    /// Characteristic polynomial over `Q` of multiplication by this element, of
    /// degree `2^(m+1)`.
    fn char_poly(&self) -> RatPoly {
        let zero = self.ext.from_base(&self.ext.base.zero()).expect("same field");
        let mut p = vec![-self, self.ext.one()];
        for i in 0..self.ext.radicands.len() {
            let q: Vec<RadicalElem> = p.iter().map(|c| c.flip(i)).collect();
            p = poly_mul(&p, &q, &zero);
        }
        let k: Vec<QuadElem> = p
            .iter()
            .map(|c| c.as_base().expect("symmetric in every radical").clone())
            .collect();
        let kc: Vec<QuadElem> = k.iter().map(QuadElem::conj).collect();
        let q = poly_mul(&k, &kc, &self.ext.base.zero());
        RatPoly::new(
            q.iter()
                .map(|c| {
                    debug_assert!(c.is_rational());
                    c.rational_part().clone()
                })
                .collect(),
        )
    }

    /// Minimal polynomial over `Q`; fails with [`Error::NonIntegral`] unless the
    /// element is an algebraic integer.
    pub fn min_poly(&self) -> Result<IntPolynomial> {
        let p = self.char_poly();
        if !p.is_integral() {
            return Err(Error::NonIntegral(format!("characteristic polynomial {p}")));
        }
        p.squarefree_part().to_int_poly()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.char_poly().is_integral()
    }

    /// Double-precision value with every square root positive, on the identity
    /// embedding of the base field.
    pub fn to_f64(&self) -> f64 {
        let roots: Vec<f64> = self.ext.radicands.iter().map(|r| r.to_f64().sqrt()).collect();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| {
                let mut t = c.to_f64();
                for (i, r) in roots.iter().enumerate() {
                    if m >> i & 1 == 1 {
                        t *= r;
                    }
                }
                t
            })
            .sum()
    }
}

impl Add for &RadicalElem {
    type Output = RadicalElem;
    fn add(self, rhs: &RadicalElem) -> RadicalElem {
        self.check(rhs);
        self.ext
            .element(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Add for RadicalElem {
    type Output = RadicalElem;
    fn add(self, rhs: RadicalElem) -> RadicalElem {
        &self + &rhs
    }
}

impl Sub for &RadicalElem {
    type Output = RadicalElem;
    fn sub(self, rhs: &RadicalElem) -> RadicalElem {
        self.check(rhs);
        self.ext
            .element(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RadicalElem {
    type Output = RadicalElem;
    fn neg(self) -> RadicalElem {
        self.map_base(|c| -c)
    }
}

impl Mul for &RadicalElem {
    type Output = RadicalElem;
    fn mul(self, rhs: &RadicalElem) -> RadicalElem {
        self.check(rhs);
        let ext = &self.ext;
        let mut out = vec![ext.base.zero(); ext.dim()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                // e_i e_j = (prod of shared radicands) e_{i xor j}
                let t = &(a * b) * &ext.mask_product(i & j);
                out[i ^ j] = &out[i ^ j] + &t;
            }
        }
        ext.element(out)
    }
}

/// Rational constant as an element of the extension.
pub(crate) fn rational_in(ext: &Arc<RadicalExt>, q: Rational) -> RadicalElem {
    ext.from_base(&QuadElem::from_rational(ext.base(), q))
        .expect("same field")
}
