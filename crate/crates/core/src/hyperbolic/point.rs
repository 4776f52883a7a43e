use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `x + iy` of the upper half-plane, `y > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

/// A tangent vector, in components with respect to the orthonormal frame
/// `(y d/dx, y d/dy)` at its base point.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Tangent {
    pub x: f64,
    pub y: f64,
}

impl std::ops::Add for Tangent {
    type Output = Tangent;

    fn add(self, o: Tangent) -> Tangent {
        Tangent {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }
}

impl Tangent {
    pub const ZERO: Tangent = Tangent { x: 0.0, y: 0.0 };

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn scale(self, k: f64) -> Tangent {
        Tangent {
            x: k * self.x,
            y: k * self.y,
        }
    }

    pub fn dot(self, o: Tangent) -> f64 {
        self.x * o.x + self.y * o.y
    }
}

impl HPoint {
    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && y > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "({x}, {y}) is not in the upper half-plane"
            )));
        }
        Ok(Self { x, y })
    }

    /// Hyperbolic distance for the metric `|dz| / y`.
    pub fn dist(self, q: HPoint) -> f64 {
        let e = (self.x - q.x).hypot(self.y - q.y);
        2.0 * (e / (2.0 * (self.y * q.y).sqrt())).asinh()
    }

    /// The tangent vector at `self` pointing along the geodesic to `q`, with
    /// length `dist(self, q)`.
    pub fn log(self, q: HPoint) -> Tangent {
        let dx = q.x - self.x;
        // Euclidean direction of the geodesic circle (or vertical line) at self
        let dir = Tangent {
            x: 2.0 * self.y * dx,
            y: dx * dx + q.y * q.y - self.y * self.y,
        };
        let n = dir.norm();
        if n == 0.0 {
            return Tangent::ZERO;
        }
        dir.scale(self.dist(q) / n)
    }

    /// Endpoint of the geodesic of initial velocity `v` after unit time.
    pub fn exp(self, v: Tangent) -> HPoint {
        let t = v.norm();
        if t == 0.0 {
            return self;
        }
        let (ux, uy) = (v.x / t, v.y / t);
        // geodesic from i: (ux sinh t + i) / (cosh t - uy sinh t)
        let (one_minus, one_plus) = if uy > 0.0 {
            (ux * ux / (1.0 + uy), 1.0 + uy)
        } else {
            (1.0 - uy, ux * ux / (1.0 - uy))
        };
        let den = 0.5 * (t.exp() * one_minus + (-t).exp() * one_plus);
        let zx = ux * t.sinh() / den;
        let zy = 1.0 / den;
        HPoint {
            x: self.x + self.y * zx,
            y: self.y * zy,
        }
    }

    /// Point at parameter `s` in `[0, 1]` along the geodesic to `q`.
    pub fn geodesic_point(self, q: HPoint, s: f64) -> HPoint {
        self.exp(self.log(q).scale(s))
    }
}

/// A point of the product `H^r` with the sup metric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductPoint {
    pub factors: Vec<HPoint>,
}

impl ProductPoint {
    pub fn new(factors: Vec<HPoint>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("product point needs at least one factor".into()));
        }
        Ok(Self { factors })
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Maximum of the factor distances.
    pub fn dist(&self, other: &ProductPoint) -> f64 {
        assert_eq!(self.rank(), other.rank(), "product points of different rank");
        self.factors
            .iter()
            .zip(&other.factors)
            .map(|(p, q)| p.dist(*q))
            .fold(0.0, f64::max)
    }
}
