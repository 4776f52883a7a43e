//! Riemannian center of mass in the hyperbolic plane.
//!
//! For a weighted point set `Z`, `P_Z(x) = 1/2 sum w_i d(x, p_i)^2` is strictly
//! convex and its unique critical point is the center of mass. The gradient
//! is `-sum w_i log_x(p_i)`.

use serde::{Deserialize, Serialize};

use super::point::{HPoint, ProductPoint, Tangent};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassDistribution {
    points: Vec<HPoint>,
    weights: Vec<f64>,
}

impl MassDistribution {
    /// Normalizes `weights` to sum to one; all must be positive.
    pub fn new(points: Vec<HPoint>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("empty mass distribution".into()));
        }
        if points.len() != weights.len() {
            return Err(Error::InvalidArgument(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidArgument(format!("weight {w} is not positive")));
        }
        let total: f64 = weights.iter().sum();
        let weights = weights.iter().map(|w| w / total).collect();
        Ok(Self { points, weights })
    }

    pub fn uniform(points: Vec<HPoint>) -> Result<Self> {
        let w = vec![1.0; points.len()];
        Self::new(points, w)
    }

    pub fn points(&self) -> &[HPoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn iter(&self) -> impl Iterator<Item = (HPoint, f64)> + '_ {
        self.points.iter().copied().zip(self.weights.iter().copied())
    }

    /// `P_Z(x)`.
    pub fn energy(&self, x: HPoint) -> f64 {
        0.5 * self.iter().map(|(p, w)| w * x.dist(p).powi(2)).sum::<f64>()
    }

    /// Gradient of `P_Z` at `x`; it vanishes exactly at the center of mass.
    pub fn gradient(&self, x: HPoint) -> Tangent {
        self.iter().fold(Tangent::ZERO, |acc, (p, w)| acc + x.log(p).scale(-w))
    }
}

/// Result of a center-of-mass computation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KarcherResult {
    pub mean: HPoint,
    pub gradient_norm: f64,
    pub iterations: usize,
}

/// Gradient of `P_Z` at `x`.
pub fn karcher_gradient(m: &MassDistribution, x: HPoint) -> Tangent {
    m.gradient(x)
}

/// Center of mass to gradient norm below `tol`.
///
/// Each step moves along `-grad P_Z` with length scaled by the inverse of
/// `sum w_i t_i coth t_i` (`t_i = d(x, p_i)`), an upper bound for the Hessian
/// of `P_Z`. This is the plain Karcher step for clustered data and stays
/// contracting when points are far apart.
pub fn karcher_mean_detailed(m: &MassDistribution, tol: f64) -> Result<KarcherResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let mut x = m
        .points()
        .iter()
        .copied()
        .min_by(|a, b| m.energy(*a).total_cmp(&m.energy(*b)))
        .expect("nonempty");
    let mut g = m.gradient(x);
    for it in 0..MAX_ITERATIONS {
        let gn = g.norm();
        if gn < tol {
            return Ok(KarcherResult {
                mean: x,
                gradient_norm: gn,
                iterations: it,
            });
        }
        let h: f64 = m
            .iter()
            .map(|(p, w)| {
                let t = x.dist(p);
                w * if t < 1e-8 { 1.0 } else { t / t.tanh() }
            })
            .sum();
        x = x.exp(g.scale(-1.0 / h));
        g = m.gradient(x);
    }
    Err(Error::IterationCap {
        iterations: MAX_ITERATIONS,
        gradient_norm: g.norm(),
    })
}

pub fn karcher_mean(m: &MassDistribution, tol: f64) -> Result<HPoint> {
    karcher_mean_detailed(m, tol).map(|r| r.mean)
}

/// Averages a family of maps sampled at common source points: each source
/// `z` is sent to the uniform center of mass of its images `F_1(z), ..., F_n(z)`.
pub fn average_maps(samples: &[(HPoint, Vec<HPoint>)], tol: f64) -> Result<Vec<(HPoint, HPoint)>> {
    let n = samples.first().map_or(0, |s| s.1.len());
    samples
        .iter()
        .map(|(z, images)| {
            if images.len() != n || n == 0 {
                return Err(Error::InvalidArgument(
                    "every sample needs the same nonzero number of images".into(),
                ));
            }
            let mean = karcher_mean(&MassDistribution::uniform(images.clone())?, tol)?;
            Ok((*z, mean))
        })
        .collect()
}

/// Center of mass in `H^r`, taken factor by factor.
pub fn product_karcher_mean(points: &[ProductPoint], weights: &[f64], tol: f64) -> Result<ProductPoint> {
    let r = points
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty mass distribution".into()))?
        .rank();
    if points.iter().any(|p| p.rank() != r) {
        return Err(Error::InvalidArgument("product points of different rank".into()));
    }
    let factors = (0..r)
        .map(|k| {
            let m = MassDistribution::new(points.iter().map(|p| p.factors[k]).collect(), weights.to_vec())?;
            karcher_mean(&m, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    ProductPoint::new(factors)
}
