//! House and Mahler measure of monic integer polynomials.
//!
//! Roots of each squarefree factor start from companion-matrix eigenvalues,
//! are polished by Newton's method, and then get inclusion radii from the
//! Weierstrass (Braess-Hadeler) bound: for monic `f` of degree `n` and distinct
//! approximations `z_i`, every root lies in some disk
//! `|z - z_i| <= n |f(z_i)| / prod_{j != i} |z_i - z_j|`, and a connected
//! component of the union made of `m` disks holds exactly `m` roots. Clusters
//! of roots closer than double precision can resolve (the pair `tau, 1/tau`
//! near `1` for large family members) then share one component, which costs
//! nothing for the house or the Mahler measure as long as the component stays
//! narrow.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// A root approximation with a certified radius.
#[derive(Clone, Copy, Debug)]
pub struct RootDisk {
    pub center: Complex64,
    pub radius: f64,
}

impl RootDisk {
    pub fn modulus_bounds(&self) -> (f64, f64) {
        let m = self.center.norm();
        ((m - self.radius).max(0.0), m + self.radius)
    }
}

/// Certified value together with the bounds it was derived from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Certified {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

fn companion_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let c = p.coeffs_f64();
    let n = p.degree();
    if n == 1 {
        return vec![Complex64::new(-c[0], 0.0)];
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i];
    }
    match Schur::try_new(m, f64::EPSILON, 10_000) {
        Some(s) => s.complex_eigenvalues().iter().copied().collect(),
        None => circle_starts(&c),
    }
}

/// Points spread on a circle of the Cauchy root radius, a standard fallback
/// start for simultaneous iteration.
fn circle_starts(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    (0..n)
        .map(|k| Complex64::from_polar(radius, (2.0 * std::f64::consts::PI * k as f64 + 0.4) / n as f64))
        .collect()
}

/// Aberth-Ehrlich refinement of all roots at once; unlike independent Newton
/// steps it keeps close roots from collapsing onto one another.
fn aberth_polish(p: &IntPolynomial, mut z: Vec<Complex64>) -> Vec<Complex64> {
    let n = z.len();
    for _ in 0..200 {
        let mut moved = false;
        for i in 0..n {
            let (f, _) = p.eval_complex(z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let df = p.eval_derivative_complex(z[i]);
            let w = f / df;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() > 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z
}

/// Inclusion disks for the roots of a squarefree monic polynomial.
pub fn root_disks(p: &IntPolynomial) -> Result<Vec<RootDisk>> {
    let n = p.degree();
    let mut start = companion_roots(p);
    // separate coincident starting points, which Aberth steps cannot split
    for i in 0..n {
        for j in 0..i {
            if start[i] == start[j] {
                let r = start[i].norm().max(1.0) * 1e-8 * (i as f64 + 1.0);
                start[i] += Complex64::new(r, r);
            }
        }
    }
    let z = aberth_polish(p, start);
    if z.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
        return Err(Error::RootIsolation(format!("non-finite root estimate for {p}")));
    }
    let mut disks = Vec::with_capacity(n);
    for i in 0..n {
        let (f, err) = p.eval_complex(z[i]);
        let mut denom = 1.0;
        for j in 0..n {
            if j != i {
                denom *= (z[i] - z[j]).norm();
            }
        }
        if denom == 0.0 {
            return Err(Error::RootIsolation(format!("coincident root estimates for {p}")));
        }
        // inflate slightly to cover rounding in the radius computation itself
        let radius = n as f64 * (f.norm() + err) / denom * (1.0 + 1e-10);
        if !radius.is_finite() {
            return Err(Error::RootIsolation(format!("unbounded inclusion radius for {p}")));
        }
        disks.push(RootDisk { center: z[i], radius });
    }
    Ok(disks)
}

/// Connected components of the union of the disks; each holds as many roots
/// as it has disks.
pub fn disk_components(disks: &[RootDisk]) -> Vec<Vec<RootDisk>> {
    let n = disks.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (disks[i].center - disks[j].center).norm() <= disks[i].radius + disks[j].radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<RootDisk>)> = Vec::new();
    for (i, &d) in disks.iter().enumerate() {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(d),
            None => groups.push((r, vec![d])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Bounds on the modulus of every root in a component.
fn component_modulus(c: &[RootDisk]) -> (f64, f64) {
    c.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), d| {
        let (l, h) = d.modulus_bounds();
        (lo.min(l), hi.max(h))
    })
}

fn squarefree_components(p: &IntPolynomial) -> Result<Vec<(Vec<Vec<RootDisk>>, usize)>> {
    p.squarefree_decomposition()
        .into_iter()
        .map(|(f, m)| Ok((disk_components(&root_disks(&f)?), m)))
        .collect()
}

/// Maximum modulus of the roots, with certified bounds.
pub fn house_bounds(p: &IntPolynomial) -> Result<Certified> {
    let mut best = Certified {
        value: 0.0,
        lower: 0.0,
        upper: 0.0,
    };
    for (components, _) in squarefree_components(p)? {
        for c in components {
            let (lo, hi) = component_modulus(&c);
            best.value = c.iter().map(|d| d.center.norm()).fold(best.value, f64::max);
            best.lower = best.lower.max(lo);
            best.upper = best.upper.max(hi);
        }
    }
    Ok(best)
}

/// The house of `p`, the largest absolute value of a root, to within `tol`.
pub fn house(p: &IntPolynomial, tol: f64) -> Result<f64> {
    let c = house_bounds(p)?;
    if c.upper - c.lower > tol {
        return Err(Error::RootIsolation(format!(
            "house of {p} only determined to within {:e}",
            c.upper - c.lower
        )));
    }
    Ok(c.value)
}

/// Mahler measure `prod max(1, |root|)` with certified bounds.
pub fn mahler_bounds(p: &IntPolynomial) -> Result<Certified> {
    let mut c = Certified {
        value: 1.0,
        lower: 1.0,
        upper: 1.0,
    };
    for (components, mult) in squarefree_components(p)? {
        for comp in components {
            let (lo, hi) = component_modulus(&comp);
            let e = (mult * comp.len()) as i32;
            c.value *= comp
                .iter()
                .map(|d| d.center.norm().max(1.0).powi(mult as i32))
                .product::<f64>();
            c.lower *= lo.max(1.0).powi(e);
            c.upper *= hi.max(1.0).powi(e);
        }
    }
    Ok(c)
}

/// Mahler measure of `p` to within relative tolerance `tol`.
pub fn mahler_measure(p: &IntPolynomial, tol: f64) -> Result<f64> {
    let c = mahler_bounds(p)?;
    if c.upper - c.lower > tol * c.value {
        return Err(Error::RootIsolation(format!(
            "Mahler measure of {p} only determined to relative width {:e}",
            (c.upper - c.lower) / c.value
        )));
    }
    Ok(c.value)
}
