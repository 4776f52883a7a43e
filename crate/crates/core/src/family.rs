//! The family of groups `Gamma_n` over `K = Q(sqrt 3)`.
//!
//! With `eps = (2 + sqrt 3)^n`, `P = 4 + eps^2` and `Q = 1 + eps^-2`:
//!
//! * `lambda = (eps + sqrt P)/2`, so `tr A = lambda + 1/lambda = sqrt P`;
//! * `eta = 1/eps + sqrt Q`, so `tr AB = eta + 1/eta = 2 sqrt Q`;
//! * `tr B = sqrt P sqrt Q`, and `tr[A,B] = 1`;
//! * `tau = eta^2`, whose conjugates are `tau, 1/tau, omega, 1/omega`.
//!
//! Each group is generated by half-turns at three vertices of the trirectangle
//! with acute angle `pi/3` and side `x = arcsinh(eps/2)`, together with the
//! order-three rotation at the fourth vertex.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::poly::poly_mul;
use crate::field::rational::{rat, ratio, to_f64, Rational};
use crate::field::{fundamental_unit, house_bounds, IntPolynomial, QuadElem, QuadField, TowerElem};
use crate::hyperbolic::{realize_group, solve_trirectangle, Isometry2};
use crate::trace::{
    invariant_quaternion_symbol, invariant_trace_field, real_place_splitting, square_class_reduce,
    verify_split_witness, HilbertSymbol, Slot, SquareHint, SymbolField, TraceData,
};

pub const MAX_N: u32 = 30;
const OMEGA_REL_TOL: f64 = 1e-10;

/// The base field `Q(sqrt 3)`.
pub fn base_field() -> QuadField {
    QuadField::new(3).expect("3 is squarefree")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: QuadElem,
    pub y: QuadElem,
}

/// One row of the family table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub n: u32,
    pub epsilon: QuadElem,
    pub lambda: TowerElem,
    pub eta: TowerElem,
    pub tau: TowerElem,
    #[serde(rename = "trA")]
    pub tr_a: TowerElem,
    #[serde(rename = "trB")]
    pub tr_b: TowerElem,
    #[serde(rename = "trAB")]
    pub tr_ab: TowerElem,
    #[serde(rename = "trComm")]
    pub tr_comm: QuadElem,
    pub trace_field: SymbolField,
    pub tau_min_poly: IntPolynomial,
    pub tau_value: f64,
    pub log_tau: f64,
    pub omega: f64,
    pub stretch_lb: f64,
    pub coarea: f64,
    pub symbol: HilbertSymbol,
    pub reduced_symbol: HilbertSymbol,
    pub arithmetic_dimension: usize,
    pub witness: Witness,
    pub witness_ok: bool,
}

/// `2 pi (2g - 2 + cusps + sum (1 - 1/m_i))`.
pub fn coarea_from_signature(genus: u32, orders: &[u32], cusps: u32) -> Result<f64> {
    if let Some(m) = orders.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidArgument(format!("elliptic order {m} must be at least 2")));
    }
    let chi = rat(2 * i64::from(genus) - 2 + i64::from(cusps))
        + orders
            .iter()
            .map(|&m| ratio(i64::from(m) - 1, i64::from(m)))
            .sum::<Rational>();
    if chi <= rat(0) {
        return Err(Error::InvalidArgument("signature is not hyperbolic".into()));
    }
    Ok(2.0 * PI * to_f64(&chi))
}

fn verify(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(what.to_string()))
    }
}

/// The exact traces of `Gamma_n`.
pub fn gamma_traces(n: u32) -> Result<(QuadElem, TraceData)> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::InvalidArgument(format!("n = {n} not in 1..={MAX_N}")));
    }
    let k = base_field();
    let eps = fundamental_unit(k)?.pow(n as i32)?;
    let e2 = eps.square();
    let p = &k.int(4) + &e2;
    let q = &k.one() + &e2.inv()?;
    let tr_a = TowerElem::sqrt_of(p.clone())?;
    let tr_b = TowerElem::sqrt_of(&p * &q)?;
    // tr AB from the triple product trA trB trAB = 2PQ, dividing in the compositum
    let ext = crate::field::RadicalExt::new(k, &[p.clone(), q.clone()])?;
    let triple = ext.from_base(&(&k.int(2) * &(&p * &q)))?;
    let ab = ext.lift(&tr_a)?;
    let bb = ext.lift(&tr_b)?;
    let tr_ab = triple
        .try_div(&(&ab * &bb))?
        .to_tower()
        .ok_or_else(|| Error::Verification("tr AB is not in a single quadratic extension".into()))?;
    Ok((eps, TraceData::from_traces(k, tr_a, tr_b, tr_ab)?))
}

/// Trace file for `Gamma_n`, with the square-class hints and the split witness.
pub fn gamma_trace_file(n: u32) -> Result<crate::trace::TraceFile> {
    let (eps, traces) = gamma_traces(n)?;
    let k = base_field();
    let p = &k.int(4) + &eps.square();
    let w = k.sqrt_d().scale(&ratio(1, 3));
    let input = crate::trace::TraceInput {
        data: traces,
        hints: vec![
            SquareHint::new(Slot::First, eps.clone()),
            SquareHint::new(Slot::Second, p),
            SquareHint::new(Slot::Second, eps.inv()?),
        ],
        witness: Some((w.clone(), w)),
    };
    Ok(crate::trace::TraceFile::from_input(&input))
}

/// Builds and verifies the record for `Gamma_n`, `1 <= n <= 30`.
pub fn build_gamma(n: u32) -> Result<FamilyRecord> {
    let k = base_field();
    let (eps, traces) = gamma_traces(n)?;
    let half = ratio(1, 2);
    let e2 = eps.square();
    let ei = eps.inv()?;
    let p = &k.int(4) + &e2;
    let q = &k.one() + &ei.square();

    let lambda = TowerElem::new(eps.scale(&half), k.one().scale(&half), p.clone())?;
    let eta = TowerElem::new(ei.clone(), k.one(), q.clone())?;
    let tau = eta.pow(2)?;

    verify(
        &lambda + &lambda.inv()? == *traces.tr_a(),
        "lambda + 1/lambda = sqrt(4 + eps^2)",
    )?;
    verify(&eta + &eta.inv()? == *traces.tr_ab(), "eta + 1/eta = tr AB")?;
    verify(traces.tr_comm().is_one(), "tr[A,B] = 1")?;

    let tf = invariant_trace_field(&traces)?;
    verify(
        tf.field == SymbolField::Quadratic(k),
        "invariant trace field is Q(sqrt 3)",
    )?;

    let symbol = invariant_quaternion_symbol(&traces)?;
    verify(*symbol.a() == &e2 * &p, "first symbol entry is eps^2 (4 + eps^2)")?;
    let hints = [
        SquareHint::new(Slot::First, eps.clone()),
        SquareHint::new(Slot::Second, p.clone()),
        SquareHint::new(Slot::Second, ei.clone()),
    ];
    let reduced = square_class_reduce(&symbol, &hints)?;
    let expected = HilbertSymbol::new(k, p.clone(), -&(&k.one() + &e2))?;
    verify(reduced == expected, "reduced symbol is (4 + eps^2, -(1 + eps^2))")?;
    let adim = real_place_splitting(&reduced).arithmetic_dimension;

    let w = k.sqrt_d().scale(&ratio(1, 3));
    let witness_ok = verify_split_witness(&reduced, &w, &w);

    let tau_min_poly = tau.min_poly()?;
    // (x^2 - s1 x + 1)(x^2 - s2 x + 1) with s1 = 2 + 4/eps^2, s2 = 2 + 4 eps^2
    let s1 = &k.int(2) + &(&k.int(4) * &ei.square());
    let s2 = &k.int(2) + &(&k.int(4) * &e2);
    let quad = |s: &QuadElem| vec![k.one(), -s, k.one()];
    let expanded = poly_mul(&quad(&s1), &quad(&s2), &k.zero());
    let expanded: Vec<_> = expanded.iter().map(|c| c.rational_part().to_integer()).collect();
    verify(
        tau_min_poly.coeffs() == expanded.as_slice() && tau_min_poly.is_palindromic(),
        "tau minimal polynomial is (x^2 - s1 x + 1)(x^2 - s2 x + 1)",
    )?;

    let h = house_bounds(&tau_min_poly)?;
    let omega_closed = TowerElem::new(&k.one() + &(&k.int(2) * &e2), &k.int(2) * &eps, &k.one() + &e2)?.to_f64();
    verify(
        h.upper - h.lower <= 1e-12 * h.value && (h.value - omega_closed).abs() <= OMEGA_REL_TOL * omega_closed,
        "house of tau agrees with 1 + 2 eps^2 + 2 eps sqrt(1 + eps^2)",
    )?;
    let omega = h.value;

    let tau_value = tau.to_f64();
    let log_tau = (&tau - &TowerElem::from_base(k.one())).to_f64().ln_1p();
    let stretch_lb = omega.ln() / log_tau;

    Ok(FamilyRecord {
        n,
        epsilon: eps,
        lambda,
        eta,
        tau,
        tr_a: traces.tr_a().clone(),
        tr_b: traces.tr_b().clone(),
        tr_ab: traces.tr_ab().clone(),
        tr_comm: traces.tr_comm().clone(),
        trace_field: tf.field,
        tau_min_poly,
        tau_value,
        log_tau,
        omega,
        stretch_lb,
        coarea: coarea_from_signature(0, &[2, 2, 2, 3], 0)?,
        symbol,
        reduced_symbol: reduced,
        arithmetic_dimension: adim,
        witness: Witness { x: w.clone(), y: w },
        witness_ok,
    })
}

/// Records for `n = 1..=n_max`, checked to have strictly increasing stretch bounds.
pub fn family_table(n_max: u32) -> Result<Vec<FamilyRecord>> {
    if !(1..=MAX_N).contains(&n_max) {
        return Err(Error::InvalidArgument(format!("n_max = {n_max} not in 1..={MAX_N}")));
    }
    let rows = (1..=n_max).map(build_gamma).collect::<Result<Vec<_>>>()?;
    for w in rows.windows(2) {
        verify(
            w[1].stretch_lb > w[0].stretch_lb,
            &format!("stretch bound not increasing at n = {}", w[1].n),
        )?;
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceTable {
    pub records: Vec<FamilyRecord>,
    /// `stretch_lb(n_max) / stretch_lb(1)`.
    pub growth_ratio: f64,
}

pub fn stretch_divergence_table(n_max: u32) -> Result<DivergenceTable> {
    let records = family_table(n_max)?;
    let growth_ratio = records.last().unwrap().stretch_lb / records[0].stretch_lb;
    Ok(DivergenceTable { records, growth_ratio })
}

/// Numeric traces and displacements of the realized group against the exact values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crosscheck {
    pub n: u32,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Absolute residuals of `XYZW = 1`, `W^3 = 1`, `[A,B] = W` and `X = W^2 BA`.
    pub xyzw: f64,
    pub w_cubed: f64,
    pub commutator_is_w: f64,
    pub x_is_w_sq_ba: f64,
    /// The same residuals relative to the norms of the factors.
    pub relative: [f64; 4],
    pub tr_a: (f64, f64),
    pub tr_b: (f64, f64),
    pub tr_ab: (f64, f64),
    pub sinh_y_eps: (f64, f64),
    pub eta: (f64, f64),
    /// Translation lengths of `A`, `BA`, `B`.
    pub displacements: [f64; 3],
    /// `2x`, `2y`, `2z`, the expected translation lengths of `A`, `BA`, `B`.
    pub sides: [f64; 3],
    pub max_residual: f64,
}

const CROSSCHECK_TOL: f64 = 1e-8;

fn rel(pair: (f64, f64)) -> f64 {
    (pair.0 - pair.1).abs() / (1.0 + pair.1.abs())
}

/// Realizes `Gamma_n` as a group of isometries (`n <= 8`) and compares it with
/// the exact data. Relative residuals must stay below `1e-8`.
pub fn realize_and_crosscheck(n: u32) -> Result<Crosscheck> {
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "n = {n} not in 1..=8 for the numeric realization"
        )));
    }
    let rec = build_gamma(n)?;
    let eps = rec.epsilon.to_f64();
    let tri = solve_trirectangle((eps / 2.0).asinh(), PI / 3.0)?;
    let g = realize_group(&tri)?;
    let r = g.residuals();
    let rr = g.relative_residuals();
    let id = Isometry2::IDENTITY;
    let ba = g.b * g.a;
    let displacements = [
        g.a.translation_length(),
        ba.translation_length(),
        g.b.translation_length(),
    ];
    let sides = [2.0 * tri.x, 2.0 * tri.y, 2.0 * tri.z];
    let mut c = Crosscheck {
        n,
        x: tri.x,
        y: tri.y,
        z: tri.z,
        xyzw: r.xyzw,
        w_cubed: g.w.pow(3).mobius_distance(&id),
        commutator_is_w: g.a.commutator(&g.b).mobius_distance(&g.w),
        x_is_w_sq_ba: (g.w * g.w * ba).mobius_distance(&g.x),
        relative: [
            rr.xyzw,
            g.w.pow(3).mobius_distance(&id) / g.w.norm().powi(3),
            rr.commutator,
            rr.x_from_w,
        ],
        tr_a: (g.a.trace().abs(), rec.tr_a.to_f64()),
        tr_b: (g.b.trace().abs(), rec.tr_b.to_f64()),
        tr_ab: ((g.a * g.b).trace().abs(), rec.tr_ab.to_f64()),
        sinh_y_eps: (tri.y.sinh(), 1.0 / eps),
        eta: (tri.y.exp(), rec.eta.to_f64()),
        displacements,
        sides,
        max_residual: 0.0,
    };
    c.max_residual = c
        .relative
        .into_iter()
        .chain([rel(c.tr_a), rel(c.tr_b), rel(c.tr_ab), rel(c.sinh_y_eps), rel(c.eta)])
        .chain((0..3).map(|i| rel((c.displacements[i], c.sides[i]))))
        .fold(0.0, f64::max);
    if c.max_residual >= CROSSCHECK_TOL {
        return Err(Error::Verification(format!(
            "geometric cross-check failed for n = {n}: {c:?}"
        )));
    }
    Ok(c)
}
