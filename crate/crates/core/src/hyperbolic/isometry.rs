use std::f64::consts::PI;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::point::HPoint;
use crate::error::{Error, Result};

/// A real 2x2 matrix of determinant one, acting on the upper half-plane by
/// `z -> (az + b)/(cz + d)`. Matrices that differ by sign give the same map.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isometry2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Isometry2 {
    pub const IDENTITY: Isometry2 = Isometry2 {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let g = Self { a, b, c, d };
        let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs()).max(1.0);
        if (g.det() - 1.0).abs() > 1e-12 * scale * scale {
            return Err(Error::InvalidArgument(format!("determinant {} is not 1", g.det())));
        }
        Ok(g)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::IDENTITY, |acc, _| acc * *self)
    }

    /// `h g h^-1`.
    pub fn conjugate_by(&self, h: &Isometry2) -> Self {
        *h * *self * h.inverse()
    }

    pub fn commutator(&self, other: &Isometry2) -> Self {
        *self * *other * self.inverse() * other.inverse()
    }

    pub fn act(&self, p: HPoint) -> HPoint {
        let (x, y) = (p.x, p.y);
        let den = (self.c * x + self.d).powi(2) + (self.c * y).powi(2);
        let re = (self.a * x + self.b) * (self.c * x + self.d) + self.a * self.c * y * y;
        HPoint {
            x: re / den,
            y: y / den,
        }
    }

    /// Translation along `x + iy` positions: `z -> y z + x`.
    pub fn affine(p: HPoint) -> Self {
        let s = p.y.sqrt();
        Self {
            a: s,
            b: p.x / s,
            c: 0.0,
            d: 1.0 / s,
        }
    }

    /// Rotation by `theta` (counterclockwise) about `p`.
    pub fn elliptic(p: HPoint, theta: f64) -> Self {
        let (sn, cs) = (theta / 2.0).sin_cos();
        let k = Self {
            a: cs,
            b: sn,
            c: -sn,
            d: cs,
        };
        k.conjugate_by(&Self::affine(p))
    }

    pub fn half_turn(p: HPoint) -> Self {
        Self::elliptic(p, PI)
    }

    /// `diag(e^(l/2), e^(-l/2))`: translation by `l` along the imaginary axis.
    pub fn hyperbolic(l: f64) -> Self {
        Self {
            a: (l / 2.0).exp(),
            b: 0.0,
            c: 0.0,
            d: (-l / 2.0).exp(),
        }
    }

    /// Translation length `2 arccosh(|tr|/2)`, zero for elliptic and parabolic maps.
    pub fn translation_length(&self) -> f64 {
        let t = self.trace().abs();
        if t > 2.0 {
            2.0 * (t / 2.0).acosh()
        } else {
            0.0
        }
    }

    /// Frobenius norm of the matrix.
    pub fn norm(&self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    /// Entrywise distance to `other` as Mobius maps (up to the sign of the matrix).
    pub fn mobius_distance(&self, other: &Isometry2) -> f64 {
        let e = |s: f64| {
            (self.a - s * other.a)
                .abs()
                .max((self.b - s * other.b).abs())
                .max((self.c - s * other.c).abs())
                .max((self.d - s * other.d).abs())
        };
        e(1.0).min(e(-1.0))
    }
}

impl Mul for Isometry2 {
    type Output = Isometry2;
    fn mul(self, o: Isometry2) -> Isometry2 {
        Isometry2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}
