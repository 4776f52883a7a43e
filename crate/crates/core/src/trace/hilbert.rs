//! Quaternion algebras `(a, b | k)` over `Q` or a real quadratic field, given
//! by their Hilbert symbols, and their behaviour at the real places.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::trace_data::TraceData;
use crate::error::{Error, Result};
use crate::field::rational::{format_rational, parse_rational, squarefree_part};
use crate::field::tower::retag;
use crate::field::{BaseEmbedding, QuadElem, QuadField, Rational};

/// The field a symbol is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolField {
    Rationals,
    Quadratic(QuadField),
}

impl SymbolField {
    /// Real places, named by the embedding of the quadratic field they come from.
    pub fn places(self) -> &'static [BaseEmbedding] {
        match self {
            SymbolField::Rationals => &[BaseEmbedding::Identity],
            SymbolField::Quadratic(_) => &BaseEmbedding::ALL,
        }
    }

    pub fn degree(self) -> usize {
        self.places().len()
    }
}

impl fmt::Display for SymbolField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolField::Rationals => write!(f, "Q"),
            SymbolField::Quadratic(k) => write!(f, "{k}"),
        }
    }
}

impl std::str::FromStr for SymbolField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "Q" {
            return Ok(SymbolField::Rationals);
        }
        let d = t
            .strip_prefix("Q(sqrt")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("not a field name: {s:?}")))?;
        Ok(SymbolField::Quadratic(QuadField::new(d)?))
    }
}

// Rational entries are stored in a fixed quadratic field so that equal symbols
// compare equal.
fn rational_carrier() -> QuadField {
    QuadField::new(2).expect("2 is squarefree")
}

/// The symbol `(a, b)` with nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertSymbol {
    a: QuadElem,
    b: QuadElem,
    base: SymbolField,
}

impl HilbertSymbol {
    pub fn new(field: QuadField, a: QuadElem, b: QuadElem) -> Result<Self> {
        Self::build(SymbolField::Quadratic(field), a, b)
    }

    pub fn over_rationals(a: Rational, b: Rational) -> Result<Self> {
        let k = rational_carrier();
        Self::build(
            SymbolField::Rationals,
            QuadElem::from_rational(k, a),
            QuadElem::from_rational(k, b),
        )
    }

    fn build(base: SymbolField, a: QuadElem, b: QuadElem) -> Result<Self> {
        let (a, b) = match base {
            SymbolField::Quadratic(k) => (retag(&a, k)?, retag(&b, k)?),
            SymbolField::Rationals => {
                if !(a.is_rational() && b.is_rational()) {
                    return Err(Error::InvalidArgument("symbol over Q needs rational entries".into()));
                }
                let k = rational_carrier();
                (retag(&a, k)?, retag(&b, k)?)
            }
        };
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidArgument("Hilbert symbol entries must be nonzero".into()));
        }
        Ok(Self { a, b, base })
    }

    pub fn a(&self) -> &QuadElem {
        &self.a
    }

    pub fn b(&self) -> &QuadElem {
        &self.b
    }

    pub fn base(&self) -> SymbolField {
        self.base
    }

    fn format_entry(&self, x: &QuadElem) -> String {
        match self.base {
            SymbolField::Rationals => format_rational(x.rational_part()),
            SymbolField::Quadratic(_) => x.to_string(),
        }
    }

    /// Entry-wise Galois conjugate.
    pub fn conj(&self) -> Self {
        Self {
            a: self.a.conj(),
            b: self.b.conj(),
            base: self.base,
        }
    }
}

impl fmt::Display for HilbertSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {} | {})",
            self.format_entry(&self.a),
            self.format_entry(&self.b),
            self.base
        )
    }
}

#[derive(Serialize, Deserialize)]
struct SymbolRepr {
    a: String,
    b: String,
    field: String,
}

impl Serialize for HilbertSymbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymbolRepr {
            a: self.format_entry(&self.a),
            b: self.format_entry(&self.b),
            field: self.base.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HilbertSymbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SymbolRepr::deserialize(d)?;
        let base: SymbolField = r.field.parse().map_err(D::Error::custom)?;
        let out = match base {
            SymbolField::Rationals => {
                let a = parse_rational(&r.a).map_err(D::Error::custom)?;
                let b = parse_rational(&r.b).map_err(D::Error::custom)?;
                HilbertSymbol::over_rationals(a, b)
            }
            SymbolField::Quadratic(k) => {
                let a = QuadElem::parse_in(Some(k), &r.a).map_err(D::Error::custom)?;
                let b = QuadElem::parse_in(Some(k), &r.b).map_err(D::Error::custom)?;
                HilbertSymbol::new(k, a, b)
            }
        };
        out.map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    First,
    Second,
}

/// A known element whose square divides one entry of a symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareHint {
    pub slot: Slot,
    pub factor: QuadElem,
}

impl SquareHint {
    pub fn new(slot: Slot, factor: QuadElem) -> Self {
        Self { slot, factor }
    }
}

/// Removes square factors from the entries, giving an isomorphic algebra.
///
/// Each hint divides its entry by `factor^2`, in order. Afterwards any entry
/// that is rational is replaced by its squarefree part. Squares of irrational
/// elements are only removed when hinted.
pub fn square_class_reduce(s: &HilbertSymbol, hints: &[SquareHint]) -> Result<HilbertSymbol> {
    let mut a = s.a.clone();
    let mut b = s.b.clone();
    for h in hints {
        let f2 = retag(&h.factor, s.a.field())?.square();
        if f2.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match h.slot {
            Slot::First => a = a.try_div(&f2)?,
            Slot::Second => b = b.try_div(&f2)?,
        }
    }
    let strip = |x: QuadElem| -> QuadElem {
        if x.is_rational() {
            let (core, _) = squarefree_part(x.rational_part());
            QuadElem::from_rational(x.field(), Rational::from_integer(core))
        } else {
            x
        }
    };
    HilbertSymbol::build(s.base, strip(a), strip(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Split,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlaceVerdict {
    pub embedding: BaseEmbedding,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlaceSplitReport {
    pub places: Vec<PlaceVerdict>,
    pub arithmetic_dimension: usize,
}

/// Splitting at each real place: the algebra is ramified at a place exactly
/// when both entries are negative there. Signs are decided exactly.
pub fn real_place_splitting(s: &HilbertSymbol) -> PlaceSplitReport {
    let places: Vec<PlaceVerdict> = s
        .base
        .places()
        .iter()
        .map(|&emb| {
            let neg = |x: &QuadElem| x.signum_at(emb) == Ordering::Less;
            let verdict = if neg(&s.a) && neg(&s.b) {
                Verdict::Ramified
            } else {
                Verdict::Split
            };
            PlaceVerdict {
                embedding: emb,
                verdict,
            }
        })
        .collect();
    let arithmetic_dimension = places.iter().filter(|p| p.verdict == Verdict::Split).count();
    PlaceSplitReport {
        places,
        arithmetic_dimension,
    }
}

/// Checks `a x^2 + b y^2 = 1` exactly. A solution shows the algebra is split
/// (isomorphic to the 2x2 matrix algebra over the base field).
pub fn verify_split_witness(s: &HilbertSymbol, x: &QuadElem, y: &QuadElem) -> bool {
    let k = s.a.field();
    let (Ok(x), Ok(y)) = (retag(x, k), retag(y, k)) else {
        return false;
    };
    let lhs = &(&s.a * &x.square()) + &(&s.b * &y.square());
    lhs.is_one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalSplitting {
    /// Certified by an explicit solution of `a x^2 + b y^2 = 1`.
    Split,
    /// No certificate; this is not a claim of ramification.
    Unknown,
}

pub fn global_splitting(s: &HilbertSymbol, witness: Option<(&QuadElem, &QuadElem)>) -> GlobalSplitting {
    match witness {
        Some((x, y)) if verify_split_witness(s, x, y) => GlobalSplitting::Split,
        _ => GlobalSplitting::Unknown,
    }
}

/// The invariant trace field `Q(trA^2, trB^2, trA trB trAB)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceFieldReport {
    pub field: SymbolField,
    /// Name of a generator that is irrational, when the field is quadratic.
    pub certificate: Option<String>,
    pub tr_a_sq: QuadElem,
    pub tr_b_sq: QuadElem,
    pub triple: QuadElem,
}

impl Serialize for SymbolField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SymbolField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn invariant_trace_field(t: &TraceData) -> Result<TraceFieldReport> {
    let (a, b, ab) = t.lifted()?;
    let in_base = |x: crate::field::RadicalElem, name: &str| {
        x.as_base()
            .cloned()
            .ok_or_else(|| Error::OutsideTower(format!("{name} does not lie in {}", t.field())))
    };
    let tr_a_sq = in_base(&a * &a, "trA^2")?;
    let tr_b_sq = in_base(&b * &b, "trB^2")?;
    let triple = in_base(&(&a * &b) * &ab, "trA trB trAB")?;
    let certificate = [("trA^2", &tr_a_sq), ("trB^2", &tr_b_sq), ("trA trB trAB", &triple)]
        .iter()
        .find(|(_, x)| !x.is_rational())
        .map(|(n, _)| n.to_string());
    let field = if certificate.is_some() {
        SymbolField::Quadratic(t.field())
    } else {
        SymbolField::Rationals
    };
    Ok(TraceFieldReport {
        field,
        certificate,
        tr_a_sq,
        tr_b_sq,
        triple,
    })
}

/// `(trA^2 (trA^2 - 4), trA^2 trB^2 (tr[A,B] - 2))` over the invariant trace field.
pub fn invariant_quaternion_symbol(t: &TraceData) -> Result<HilbertSymbol> {
    let tf = invariant_trace_field(t)?;
    let k = t.field();
    let four = k.int(4);
    let two = k.int(2);
    if tf.tr_a_sq == four {
        return Err(Error::DegenerateTraces("trA^2 = 4, A is not hyperbolic".into()));
    }
    if *t.tr_comm() == two {
        return Err(Error::DegenerateTraces("tr[A,B] = 2, the group is reducible".into()));
    }
    let a = &tf.tr_a_sq * &(&tf.tr_a_sq - &four);
    let b = &(&tf.tr_a_sq * &tf.tr_b_sq) * &(t.tr_comm() - &two);
    match tf.field {
        SymbolField::Rationals => {
            if !b.is_rational() {
                return Err(Error::OutsideTower("commutator trace is irrational over Q".into()));
            }
            HilbertSymbol::over_rationals(a.rational_part().clone(), b.rational_part().clone())
        }
        SymbolField::Quadratic(k) => HilbertSymbol::new(k, a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::{rat, ratio};

    fn k(d: u64) -> QuadField {
        QuadField::new(d).unwrap()
    }

    #[test]
    fn hamilton_quaternions() {
        let s = HilbertSymbol::over_rationals(rat(-1), rat(-1)).unwrap();
        let r = real_place_splitting(&s);
        assert_eq!(r.arithmetic_dimension, 0);
        assert_eq!(r.places[0].verdict, Verdict::Ramified);
    }

    #[test]
    fn square_first_entry_splits_everywhere() {
        let f = k(2);
        let s = HilbertSymbol::new(f, f.int(1), f.int(-1)).unwrap();
        assert_eq!(real_place_splitting(&s).arithmetic_dimension, 2);
        assert!(verify_split_witness(&s, &f.int(1), &f.zero()));
    }

    #[test]
    fn ramified_at_one_place() {
        // sqrt 2 - 1 is positive at the identity and negative at the conjugate
        let f = k(2);
        let a = QuadElem::from_ints(f, -1, 1);
        let b = f.int(-1);
        let r = real_place_splitting(&HilbertSymbol::new(f, a, b).unwrap());
        assert_eq!(r.arithmetic_dimension, 1);
        assert_eq!(r.places[0].verdict, Verdict::Split);
        assert_eq!(r.places[1].verdict, Verdict::Ramified);
    }

    #[test]
    fn rational_squares_are_stripped() {
        let s = HilbertSymbol::over_rationals(rat(4), rat(9)).unwrap();
        let r = square_class_reduce(&s, &[]).unwrap();
        assert_eq!(r, HilbertSymbol::over_rationals(rat(1), rat(1)).unwrap());
        let s = HilbertSymbol::over_rationals(ratio(-12, 25), rat(18)).unwrap();
        let r = square_class_reduce(&s, &[]).unwrap();
        assert_eq!(r, HilbertSymbol::over_rationals(rat(-3), rat(2)).unwrap());
    }

    #[test]
    fn hinted_squares_are_stripped() {
        let f = k(3);
        let x = QuadElem::from_ints(f, 1, 1);
        let y = QuadElem::from_ints(f, 5, 2);
        let s = HilbertSymbol::new(f, &f.int(-3) * &x.square(), y.clone()).unwrap();
        let once = square_class_reduce(&s, &[SquareHint::new(Slot::First, x.clone())]).unwrap();
        assert_eq!(once, HilbertSymbol::new(f, f.int(-3), y.clone()).unwrap());
        let twice = square_class_reduce(
            &s,
            &[
                SquareHint::new(Slot::First, x),
                SquareHint::new(Slot::First, f.sqrt_d()),
            ],
        )
        .unwrap();
        assert_eq!(twice, HilbertSymbol::new(f, f.int(-1), y).unwrap());
    }

    #[test]
    fn entries_must_be_nonzero() {
        let f = k(3);
        assert!(HilbertSymbol::new(f, f.zero(), f.one()).is_err());
        let s = HilbertSymbol::new(f, f.one(), f.one()).unwrap();
        assert!(square_class_reduce(&s, &[SquareHint::new(Slot::Second, f.zero())]).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let f = k(3);
        for s in [
            HilbertSymbol::new(f, QuadElem::from_ints(f, 11, 4), QuadElem::from_ints(f, -8, -4)).unwrap(),
            HilbertSymbol::over_rationals(rat(-1), ratio(3, 2)).unwrap(),
        ] {
            let j = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<HilbertSymbol>(&j).unwrap(), s, "{j}");
        }
        assert_eq!(
            HilbertSymbol::over_rationals(rat(-1), rat(-1)).unwrap().to_string(),
            "(-1, -1 | Q)"
        );
    }
}
