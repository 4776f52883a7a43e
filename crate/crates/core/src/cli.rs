//! Command-line front end. Every command returns a [`Report`] (or CSV text for
//! `family --format csv`); `main` only prints and maps errors to exit codes.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{degree_bound, elliptic_order_bound, systole_lower_bound, yamada_radius, BoundsInput};
use crate::error::{Error, Result};
use crate::family::{stretch_divergence_table, FamilyRecord};
use crate::hyperbolic::io::parse_points;
use crate::hyperbolic::karcher::DEFAULT_TOL;
use crate::hyperbolic::{karcher_mean_detailed, realize_group, solve_trirectangle};
use crate::trace::{
    global_splitting, invariant_quaternion_symbol, invariant_trace_field, real_place_splitting, semi_arithmetic_check,
    square_class_reduce, TraceFile,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "semiarith",
    version,
    about = "Invariants and bounds for semi-arithmetic Fuchsian groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of the groups Gamma_n over Q(sqrt 3).
    Family {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Trace field, quaternion algebra, ramification and integrality for a trace file.
    Invariants {
        file: PathBuf,
        /// Check traces of all reduced words up to this length (1: A, B, AB only,
        /// which already decides integrality of the whole trace ring).
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Riemannian center of mass of a weighted point set in the upper half-plane.
    Karcher {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Degree, radius, systole and torsion bounds.
    Bounds(BoundsArgs),
    /// Trirectangle with acute angle `angle` opposite the side `x`.
    Trirectangle {
        #[arg(long)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        angle: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Default, Args, Serialize)]
pub struct BoundsArgs {
    /// Coarea.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Arithmetic dimension.
    #[arg(long)]
    pub r: Option<u32>,
    /// Stretch bound L.
    #[arg(long = "stretch", alias = "L")]
    pub stretch: Option<f64>,
    /// Margulis constant eps_r (cocompact degree bound).
    #[arg(long)]
    pub epsr: Option<f64>,
    /// Use the non-cocompact degree bound.
    #[arg(long)]
    pub noncocompact: bool,
    /// Dobrowolski constant U (systole bound).
    #[arg(long = "dobrowolski-u", alias = "U")]
    pub dobrowolski_u: Option<f64>,
    /// Trace-field degree D (systole bound).
    #[arg(long = "degree", alias = "D")]
    pub degree: Option<u64>,
    /// Constant C' of the elliptic-order bound.
    #[arg(long)]
    pub elliptic_cprime: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub inputs: Value,
    pub results: Value,
}

impl Report {
    fn new(command: &str, inputs: Value, results: Value) -> Self {
        Self {
            command: command.into(),
            version: VERSION.into(),
            inputs,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

/// Shortest round-trip decimal.
pub fn fmt_float(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}

pub fn family_csv(records: &[FamilyRecord]) -> String {
    let mut out = String::from("n,epsilon,trA,trB,tau,omega,stretch_lb,coarea,adim,witness\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.epsilon,
            r.tr_a,
            r.tr_b,
            r.tau,
            fmt_float(r.omega),
            fmt_float(r.stretch_lb),
            fmt_float(r.coarea),
            r.arithmetic_dimension,
            r.witness_ok
        ));
    }
    out
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Runs one command and returns the text to print.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Family { n_max, format } => {
            let table = stretch_divergence_table(*n_max)?;
            Ok(match format {
                Format::Csv => family_csv(&table.records),
                Format::Json => Report::new(
                    "family",
                    json!({ "n_max": n_max }),
                    json!({ "records": table.records, "growth_ratio": table.growth_ratio }),
                )
                .to_json(),
            })
        }
        Command::Invariants { file, depth } => Ok(invariants(&read(file)?, *depth, file)?.to_json()),
        Command::Karcher { file, tol } => {
            let m = parse_points(&read(file)?)?;
            let r = karcher_mean_detailed(&m, *tol)?;
            Ok(Report::new(
                "karcher",
                json!({ "file": file, "points": m.points().len(), "tol": tol }),
                json!({ "mean": { "x": r.mean.x, "y": r.mean.y },
                        "gradient_norm": r.gradient_norm, "iterations": r.iterations }),
            )
            .to_json())
        }
        Command::Bounds(b) => Ok(bounds(b)?.to_json()),
        Command::Trirectangle { x, angle } => {
            let t = solve_trirectangle(*x, *angle)?;
            let (r1, r2) = t.residuals();
            let g = realize_group(&t)?;
            Ok(Report::new(
                "trirectangle",
                json!({ "x": x, "angle": angle }),
                json!({ "x": t.x, "phi": t.phi, "y": t.y, "z": t.z,
                        "residuals": [r1, r2], "vertices": g.vertices,
                        "relation_residuals": g.residuals() }),
            )
            .to_json())
        }
    }
}

pub fn invariants(text: &str, depth: usize, source: &PathBuf) -> Result<Report> {
    let input = TraceFile::from_json(text)?.parse()?;
    let t = &input.data;
    let field = invariant_trace_field(t)?;
    let symbol = invariant_quaternion_symbol(t)?;
    let reduced = square_class_reduce(&symbol, &input.hints)?;
    let places = real_place_splitting(&reduced);
    let witness = input.witness.as_ref().map(|(x, y)| (x, y));
    let semi = semi_arithmetic_check(t, depth)?;
    Ok(Report::new(
        "invariants",
        json!({ "file": source, "depth": depth }),
        json!({
            "trace_field": field,
            "tr_comm": t.tr_comm(),
            "symbol": symbol,
            "reduced_symbol": reduced,
            "splitting": places,
            "arithmetic_dimension": places.arithmetic_dimension,
            "global_splitting": global_splitting(&reduced, witness),
            "semi_arithmetic": semi,
        }),
    ))
}

pub fn bounds(b: &BoundsArgs) -> Result<Report> {
    let mut results = serde_json::Map::new();
    let missing = |what: &str| Error::InvalidArgument(format!("missing --{what}"));
    if let Some(mu) = b.mu {
        results.insert("yamada_radius".into(), to_value(&yamada_radius(mu)?));
        let input = BoundsInput {
            mu,
            r: b.r.ok_or_else(|| missing("r"))?,
            stretch: if b.noncocompact {
                b.stretch.unwrap_or(1.0)
            } else {
                b.stretch.ok_or_else(|| missing("stretch"))?
            },
            margulis_eps: b.epsr,
            dobrowolski_u: b.dobrowolski_u,
        };
        if !b.noncocompact && b.epsr.is_none() {
            return Err(missing("epsr (or pass --noncocompact)"));
        }
        results.insert("degree_bound".into(), to_value(&degree_bound(&input, !b.noncocompact)?));
        if b.dobrowolski_u.is_some() || b.degree.is_some() {
            let d = b.degree.ok_or_else(|| missing("degree"))?;
            if b.dobrowolski_u.is_none() {
                return Err(missing("dobrowolski-u"));
            }
            results.insert("systole_lower_bound".into(), to_value(&systole_lower_bound(&input, d)?));
        }
    } else if b.dobrowolski_u.is_some() || b.degree.is_some() {
        let input = BoundsInput {
            mu: 1.0,
            r: b.r.ok_or_else(|| missing("r"))?,
            stretch: b.stretch.ok_or_else(|| missing("stretch"))?,
            margulis_eps: None,
            dobrowolski_u: Some(b.dobrowolski_u.ok_or_else(|| missing("dobrowolski-u"))?),
        };
        let d = b.degree.ok_or_else(|| missing("degree"))?;
        results.insert("systole_lower_bound".into(), to_value(&systole_lower_bound(&input, d)?));
    }
    if let Some(c) = b.elliptic_cprime {
        results.insert("elliptic_orders".into(), to_value(&elliptic_order_bound(c)?));
    }
    if results.is_empty() {
        return Err(Error::InvalidArgument(
            "no bound requested: pass --mu, --dobrowolski-u/--degree or --elliptic-cprime".into(),
        ));
    }
    Ok(Report::new("bounds", to_value(b), Value::Object(results)))
}
