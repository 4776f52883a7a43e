//! Stretch, degree, systole and torsion bounds as explicit formulas.
//!
//! The Margulis constant `eps_r` and the Dobrowolski constant `U` have no known
//! sharp values; both are caller-supplied parameters.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{mahler_measure, IntPolynomial};

/// Largest eigenvalue `lambda > 1` of a hyperbolic element at the identity
/// embedding, with the house of `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub lambda: f64,
    pub house: f64,
    /// `ln lambda`, which callers may supply more accurately than `lambda.ln()`
    /// when `lambda` is close to 1.
    pub log_lambda: f64,
}

impl SpectrumEntry {
    pub fn new(lambda: f64, house: f64) -> Result<Self> {
        Self::with_log(lambda, lambda.ln(), house)
    }

    pub fn with_log(lambda: f64, log_lambda: f64, house: f64) -> Result<Self> {
        if !(lambda > 1.0 && log_lambda > 0.0) {
            return Err(Error::InvalidArgument(format!("eigenvalue {lambda} must exceed 1")));
        }
        if house.is_nan() || house < lambda {
            return Err(Error::InvalidArgument(format!(
                "house {house} is below the eigenvalue {lambda}"
            )));
        }
        Ok(Self {
            lambda,
            house,
            log_lambda,
        })
    }
}

/// `max log(house) / log(lambda)`, a lower bound for the stretch.
pub fn spectral_stretch_lb(spectrum: &[SpectrumEntry]) -> Result<f64> {
    if spectrum.is_empty() {
        return Err(Error::InvalidArgument("empty spectrum".into()));
    }
    let mut best = f64::NEG_INFINITY;
    for e in spectrum {
        if !(e.lambda > 1.0 && e.log_lambda > 0.0) {
            return Err(Error::InvalidArgument(format!("eigenvalue {} must exceed 1", e.lambda)));
        }
        best = best.max(e.house.ln() / e.log_lambda);
    }
    Ok(best)
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidArgument(format!("{name} = {v} must be positive")))
    }
}

/// `arccosh(mu / 2 pi + 1)`, the radius bound from the coarea.
pub fn yamada_radius(mu: f64) -> Result<f64> {
    Ok((positive("mu", mu)? / (2.0 * PI) + 1.0).acosh())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsInput {
    /// Coarea.
    pub mu: f64,
    /// Arithmetic dimension.
    pub r: u32,
    /// Stretch bound, at least 1.
    pub stretch: f64,
    /// Margulis constant `eps_r`, needed for the cocompact degree bound.
    pub margulis_eps: Option<f64>,
    /// Dobrowolski constant `U`, needed for the systole bound.
    pub dobrowolski_u: Option<f64>,
}

impl BoundsInput {
    pub fn validate(&self) -> Result<()> {
        positive("mu", self.mu)?;
        if self.r == 0 {
            return Err(Error::InvalidArgument("arithmetic dimension must be at least 1".into()));
        }
        if !(self.stretch.is_finite() && self.stretch >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "stretch bound {} must be at least 1",
                self.stretch
            )));
        }
        if let Some(e) = self.margulis_eps {
            positive("eps_r", e)?;
        }
        if let Some(u) = self.dobrowolski_u {
            positive("U", u)?;
        }
        Ok(())
    }
}

/// Upper bound for the degree of the trace field.
///
/// Cocompact: `2 L R / eps_r` with `R` the Yamada radius. Otherwise
/// `log mu + r - log(pi/3)`.
pub fn degree_bound(input: &BoundsInput, cocompact: bool) -> Result<f64> {
    input.validate()?;
    if cocompact {
        let eps = input
            .margulis_eps
            .ok_or_else(|| Error::InvalidArgument("cocompact degree bound needs eps_r".into()))?;
        Ok(2.0 * input.stretch * yamada_radius(input.mu)? / eps)
    } else {
        Ok((input.mu / (PI / 3.0)).ln() + f64::from(input.r))
    }
}

/// `(U / (r L)) (log log D / log D)^3` for trace-field degree `D >= 4`.
pub fn systole_lower_bound(input: &BoundsInput, d: u64) -> Result<f64> {
    input.validate()?;
    if d < 4 {
        return Err(Error::InvalidArgument(format!("degree D = {d} must be at least 4")));
    }
    let u = input
        .dobrowolski_u
        .ok_or_else(|| Error::InvalidArgument("systole bound needs U".into()))?;
    let ld = (d as f64).ln();
    Ok(u / (f64::from(input.r) * input.stretch) * (ld.ln() / ld).powi(3))
}

/// `log M(p) / (r L)` for the minimal polynomial `p` of some `lambda^2`; a
/// lower bound for the translation length `2 log lambda`.
pub fn systole_bound_pipeline(p: &IntPolynomial, r: u32, stretch: f64) -> Result<f64> {
    if r == 0 {
        return Err(Error::InvalidArgument("arithmetic dimension must be at least 1".into()));
    }
    if !(stretch.is_finite() && stretch >= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "stretch bound {stretch} must be at least 1"
        )));
    }
    Ok(mahler_measure(p, 1e-10)?.ln() / (f64::from(r) * stretch))
}

const MAX_TOTIENT_CUTOFF: u64 = 1 << 32;

/// Totients of `0..=n` by sieve.
pub fn totients(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi
}

/// Scan limit `T` past which `phi(t) > 2 C' log t` for every `t`.
///
/// Uses `phi(t) >= sqrt(t/2)` for all `t >= 1`. `sqrt(t/2) - 2 C' log t` is
/// increasing once `t > 32 C'^2`, so the first `T` beyond that point where it is
/// positive bounds every solution.
pub fn totient_cutoff(cprime: f64) -> Result<u64> {
    positive("C'", cprime)?;
    let c = 2.0 * cprime;
    let mut t = (32.0 * cprime * cprime).ceil().max(2.0) as u64;
    while ((t as f64) / 2.0).sqrt() <= c * (t as f64).ln() {
        t += 1 + t / 64;
        if t > MAX_TOTIENT_CUTOFF {
            return Err(Error::InvalidArgument(format!("C' = {cprime} needs too large a scan")));
        }
    }
    Ok(t)
}

/// Every `t >= 2` with `phi(t) <= 2 C' log t`, ascending.
pub fn elliptic_order_bound(cprime: f64) -> Result<Vec<u64>> {
    let cutoff = totient_cutoff(cprime)?;
    let phi = totients(cutoff as usize);
    Ok((2..=cutoff)
        .filter(|&t| phi[t as usize] as f64 <= 2.0 * cprime * (t as f64).ln())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yamada_inverts() {
        let mu = 2.0 * PI * (1f64.cosh() - 1.0);
        assert!((yamada_radius(mu).unwrap() - 1.0).abs() < 1e-15);
        assert!((yamada_radius(PI / 3.0).unwrap() - 0.569_618_100_036_692_6).abs() < 1e-15);
        assert!(yamada_radius(0.0).is_err());
    }

    #[test]
    fn degree_bounds() {
        let mut b = BoundsInput {
            mu: PI / 3.0,
            r: 2,
            stretch: 1.0,
            margulis_eps: None,
            dobrowolski_u: None,
        };
        assert_eq!(degree_bound(&b, false).unwrap(), 2.0);
        assert!(degree_bound(&b, true).is_err());
        b.mu = 2.0 * PI * (1f64.cosh() - 1.0);
        b.margulis_eps = Some(1.0);
        assert!((degree_bound(&b, true).unwrap() - 2.0).abs() < 1e-14);
        b.stretch = 0.5;
        assert!(degree_bound(&b, true).is_err());
    }

    #[test]
    fn systole_values() {
        let b = BoundsInput {
            mu: 1.0,
            r: 2,
            stretch: 1.0,
            margulis_eps: None,
            dobrowolski_u: Some(1.0),
        };
        let v = systole_lower_bound(&b, 4).unwrap();
        assert!((v - 0.006_540_167_019_696_668).abs() < 1e-16);
        assert!(systole_lower_bound(&b, 3).is_err());
        let lin = IntPolynomial::from_descending(&[1i64, -2]).unwrap();
        assert!((systole_bound_pipeline(&lin, 1, 1.0).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn spectrum() {
        let e2 = 2f64.exp();
        assert!((spectral_stretch_lb(&[SpectrumEntry::new(e2, e2).unwrap()]).unwrap() - 1.0).abs() < 1e-15);
        assert!(SpectrumEntry::new(1.0, 2.0).is_err());
        assert!(SpectrumEntry::new(2.0, 1.5).is_err());
        assert!(spectral_stretch_lb(&[]).is_err());
        let two = [
            SpectrumEntry::new(2.0, 4.0).unwrap(),
            SpectrumEntry::new(2.0, 8.0).unwrap(),
        ];
        assert!((spectral_stretch_lb(&two).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn totient_list() {
        let l = elliptic_order_bound(1.0).unwrap();
        assert!(l.starts_with(&[2, 3, 4, 6]));
        assert!(!l.contains(&5));
        assert_eq!(totients(12)[1..], [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        assert!(elliptic_order_bound(1e-3).unwrap().is_empty());
        assert!(elliptic_order_bound(0.0).is_err());
    }
}
