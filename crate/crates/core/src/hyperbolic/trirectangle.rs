//! Trirectangles (Lambert quadrilaterals) and the group generated by the
//! half-turns at three of their vertices.
//!
//! Placement used throughout:
//!
//! ```text
//!        P = i e^(x/2)  --------  Q        (acute angle phi at Q)
//!          |                      |
//!        x |                      |
//!          |                      |
//!        O = i e^(-x/2)  --------  R = e^(-x/2) (tanh y + i sech y)
//!                       y
//! ```
//!
//! `O`, `P` and `R` carry the right angles. `OP` runs up the imaginary axis
//! with `i` at its midpoint, which keeps matrix entries near `e^(x/2)` rather
//! than `e^x`. `OR` and `PQ` lie on circles about `0`, and `RQ` along the
//! geodesic through `R` orthogonal to `OR`. The diagonal
//! `z = d(P, R)` satisfies `cosh z = cosh x cosh y`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::isometry::Isometry2;
use super::point::HPoint;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trirectangle {
    pub x: f64,
    pub phi: f64,
    pub y: f64,
    pub z: f64,
}

impl Trirectangle {
    /// Residuals of `sinh x sinh y = cos phi` and `cosh x cosh y = cosh z`.
    pub fn residuals(&self) -> (f64, f64) {
        (
            self.x.sinh() * self.y.sinh() - self.phi.cos(),
            self.x.cosh() * self.y.cosh() - self.z.cosh(),
        )
    }
}

/// Solves for the remaining side `y` and the diagonal `z` given the side `x`
/// opposite the acute angle and the angle `phi` itself.
pub fn solve_trirectangle(x: f64, phi: f64) -> Result<Trirectangle> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::InvalidArgument(format!("side x = {x} must be positive")));
    }
    if !(phi > 0.0 && phi < FRAC_PI_2) || phi.cos() <= 0.0 {
        return Err(Error::InvalidArgument(format!("angle {phi} not in (0, pi/2)")));
    }
    let y = (phi.cos() / x.sinh()).asinh();
    let z = (x.cosh() * y.cosh()).acosh();
    Ok(Trirectangle { x, phi, y, z })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertices {
    pub o: HPoint,
    pub p: HPoint,
    pub q: HPoint,
    pub r: HPoint,
}

/// Vertices of the trirectangle in the placement drawn above.
pub fn place(t: &Trirectangle) -> Vertices {
    // built with O = i, then scaled by e^(-x/2)
    let (lo, hi) = ((-t.x / 2.0).exp(), (t.x / 2.0).exp());
    let (th, sech) = (t.y.tanh(), 1.0 / t.y.cosh());
    // Q lies on |z| = e^(x/2) with real part e^(x/2) cosh(x) tanh(y)
    let c = t.x.cosh() * th;
    let (qx, qy) = (hi * c, hi * ((1.0 - c) * (1.0 + c)).sqrt());
    Vertices {
        o: HPoint { x: 0.0, y: lo },
        p: HPoint { x: 0.0, y: hi },
        q: HPoint { x: qx, y: qy },
        r: HPoint {
            x: th * lo,
            y: sech * lo,
        },
    }
}

/// Half-turns `X, Y, Z` about `P, O, R`, the rotation `W` about `Q` with
/// `XYZW = 1`, and `A = XY`, `B = ZX`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupRealization {
    pub tri: Trirectangle,
    pub vertices: Vertices,
    pub x: Isometry2,
    pub y: Isometry2,
    pub z: Isometry2,
    pub w: Isometry2,
    pub a: Isometry2,
    pub b: Isometry2,
}

/// Deviations, as Mobius maps, from the relations the realization must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationResiduals {
    /// `XYZW = 1`
    pub xyzw: f64,
    /// `[A, B] = W^-2`
    pub commutator: f64,
    /// `X = W^-1 BA`
    pub x_from_w: f64,
}

impl RelationResiduals {
    pub fn max(&self) -> f64 {
        self.xyzw.max(self.commutator).max(self.x_from_w)
    }
}

const RELATION_TOL: f64 = 1e-11;

impl GroupRealization {
    pub fn residuals(&self) -> RelationResiduals {
        let (x, y, z, w, a, b) = (self.x, self.y, self.z, self.w, self.a, self.b);
        let wi = w.inverse();
        RelationResiduals {
            xyzw: (x * y * z * w).mobius_distance(&Isometry2::IDENTITY),
            commutator: a.commutator(&b).mobius_distance(&(wi * wi)),
            x_from_w: (wi * b * a).mobius_distance(&x),
        }
    }

    /// Residuals divided by the product of the norms of the factors in each
    /// relation, i.e. the backward error of evaluating it in floating point.
    /// Absolute residuals grow like `e^(2x)` through `A` and `B`.
    pub fn relative_residuals(&self) -> RelationResiduals {
        let r = self.residuals();
        let (x, y, z, w, a, b) = (
            self.x.norm(),
            self.y.norm(),
            self.z.norm(),
            self.w.norm(),
            self.a.norm(),
            self.b.norm(),
        );
        RelationResiduals {
            xyzw: r.xyzw / (x * y * z * w),
            commutator: r.commutator / (a * a * b * b).max(w * w),
            x_from_w: r.x_from_w / (w * b * a).max(x),
        }
    }

    /// The same realization conjugated by `g` (moved by `g` in the plane).
    pub fn conjugate_by(&self, g: &Isometry2) -> Self {
        let v = &self.vertices;
        Self {
            tri: self.tri,
            vertices: Vertices {
                o: g.act(v.o),
                p: g.act(v.p),
                q: g.act(v.q),
                r: g.act(v.r),
            },
            x: self.x.conjugate_by(g),
            y: self.y.conjugate_by(g),
            z: self.z.conjugate_by(g),
            w: self.w.conjugate_by(g),
            a: self.a.conjugate_by(g),
            b: self.b.conjugate_by(g),
        }
    }
}

/// Builds the generators and checks the defining relations to a relative
/// residual of `1e-11`.
pub fn realize_group(t: &Trirectangle) -> Result<GroupRealization> {
    let v = place(t);
    let x = Isometry2::half_turn(v.p);
    let y = Isometry2::half_turn(v.o);
    let z = Isometry2::half_turn(v.r);
    let xyz = x * y * z;
    // the rotation direction at Q depends on orientation; take the one closing the loop
    let w = [2.0 * t.phi, -2.0 * t.phi]
        .into_iter()
        .map(|th| Isometry2::elliptic(v.q, th))
        .min_by(|u, w| {
            let du = (xyz * *u).mobius_distance(&Isometry2::IDENTITY);
            let dw = (xyz * *w).mobius_distance(&Isometry2::IDENTITY);
            du.total_cmp(&dw)
        })
        .expect("two candidates");
    let g = GroupRealization {
        tri: *t,
        vertices: v,
        x,
        y,
        z,
        w,
        a: x * y,
        b: z * x,
    };
    let r = g.relative_residuals();
    if r.max() > RELATION_TOL {
        return Err(Error::Verification(format!("trirectangle group relations fail: {r:?}")));
    }
    Ok(g)
}
