use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::hilbert::SquareHint;
use crate::error::{Error, Result};
use crate::field::rational::rat;
use crate::field::tower::retag;
use crate::field::{QuadElem, QuadField, RadicalElem, RadicalExt, TowerElem};

/// Exact traces of a two-generator group `<A, B>`: `tr A`, `tr B`, `tr AB` and
/// the commutator trace, which must obey the Fricke identity
/// `tr[A,B] = trA^2 + trB^2 + trAB^2 - trA trB trAB - 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceData {
    field: QuadField,
    tr_a: TowerElem,
    tr_b: TowerElem,
    tr_ab: TowerElem,
    tr_comm: QuadElem,
    ext: Arc<RadicalExt>,
}

impl TraceData {
    pub fn new(
        field: QuadField,
        tr_a: TowerElem,
        tr_b: TowerElem,
        tr_ab: TowerElem,
        tr_comm: QuadElem,
    ) -> Result<Self> {
        let data = Self::unchecked(field, tr_a, tr_b, tr_ab)?;
        let expected = data.fricke_commutator()?;
        let given = retag(&tr_comm, field)?;
        if expected != given {
            return Err(Error::FrickeMismatch {
                expected: expected.to_string(),
                given: given.to_string(),
            });
        }
        Ok(Self { tr_comm: given, ..data })
    }

    /// Trace data whose commutator trace is computed from the Fricke identity.
    pub fn from_traces(field: QuadField, tr_a: TowerElem, tr_b: TowerElem, tr_ab: TowerElem) -> Result<Self> {
        let data = Self::unchecked(field, tr_a, tr_b, tr_ab)?;
        let tr_comm = data.fricke_commutator()?;
        Ok(Self { tr_comm, ..data })
    }

    fn unchecked(field: QuadField, tr_a: TowerElem, tr_b: TowerElem, tr_ab: TowerElem) -> Result<Self> {
        let into = |t: TowerElem| -> Result<TowerElem> {
            TowerElem::new(retag(t.u(), field)?, retag(t.v(), field)?, retag(t.radicand(), field)?)
        };
        let (tr_a, tr_b, tr_ab) = (into(tr_a)?, into(tr_b)?, into(tr_ab)?);
        let radicands: Vec<QuadElem> = [&tr_a, &tr_b, &tr_ab]
            .iter()
            .filter(|t| !t.v().is_zero())
            .map(|t| t.radicand().clone())
            .collect();
        let ext = RadicalExt::new(field, &radicands)?;
        Ok(Self {
            field,
            tr_a,
            tr_b,
            tr_ab,
            tr_comm: field.zero(),
            ext,
        })
    }

    fn fricke_commutator(&self) -> Result<QuadElem> {
        let (a, b, ab) = self.lifted()?;
        let c = &(&(&(&a * &a) + &(&b * &b)) + &(&ab * &ab)) - &(&(&a * &b) * &ab);
        let c = &c - &self.ext.from_base(&QuadElem::from_rational(self.field, rat(2)))?;
        c.as_base()
            .cloned()
            .ok_or_else(|| Error::OutsideTower("commutator trace does not lie in the base field".into()))
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn tr_a(&self) -> &TowerElem {
        &self.tr_a
    }

    pub fn tr_b(&self) -> &TowerElem {
        &self.tr_b
    }

    pub fn tr_ab(&self) -> &TowerElem {
        &self.tr_ab
    }

    pub fn tr_comm(&self) -> &QuadElem {
        &self.tr_comm
    }

    /// The compositum of the radicals appearing in the three traces.
    pub fn ext(&self) -> &Arc<RadicalExt> {
        &self.ext
    }

    /// `(tr A, tr B, tr AB)` inside [`TraceData::ext`].
    pub fn lifted(&self) -> Result<(RadicalElem, RadicalElem, RadicalElem)> {
        Ok((
            self.ext.lift(&self.tr_a)?,
            self.ext.lift(&self.tr_b)?,
            self.ext.lift(&self.tr_ab)?,
        ))
    }

    /// Galois conjugation applied to every trace at once.
    pub fn base_conj(&self) -> Result<Self> {
        Self::new(
            self.field,
            self.tr_a.base_conj(),
            self.tr_b.base_conj(),
            self.tr_ab.base_conj(),
            self.tr_comm.conj(),
        )
    }
}

/// On-disk form of trace data. Field elements are exact strings, e.g.
/// `"(0) + (1) * sqrt(11 + 4 * sqrt(3))"` for a tower element or
/// `"2 + 1 * sqrt(3)"` for a base-field element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    /// Radicand `d` of the base field `Q(sqrt d)`.
    pub field: u64,
    #[serde(rename = "trA")]
    pub tr_a: String,
    #[serde(rename = "trB")]
    pub tr_b: String,
    #[serde(rename = "trAB")]
    pub tr_ab: String,
    #[serde(rename = "trComm")]
    pub tr_comm: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub square_hints: Vec<HintFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HintFile {
    /// `"first"` or `"second"` symbol entry.
    pub slot: super::hilbert::Slot,
    pub factor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub x: String,
    pub y: String,
}

/// A parsed trace file.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceInput {
    pub data: TraceData,
    pub hints: Vec<SquareHint>,
    pub witness: Option<(QuadElem, QuadElem)>,
}

impl TraceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn parse(&self) -> Result<TraceInput> {
        let f = QuadField::new(self.field)?;
        let tower = |s: &str| TowerElem::parse_in(Some(f), s);
        let quad = |s: &str| QuadElem::parse_in(Some(f), s);
        let data = TraceData::new(
            f,
            tower(&self.tr_a)?,
            tower(&self.tr_b)?,
            tower(&self.tr_ab)?,
            quad(&self.tr_comm)?,
        )?;
        let hints = self
            .square_hints
            .iter()
            .map(|h| {
                Ok(SquareHint {
                    slot: h.slot,
                    factor: quad(&h.factor)?,
                })
            })
            .collect::<Result<_>>()?;
        let witness = match &self.witness {
            Some(w) => Some((quad(&w.x)?, quad(&w.y)?)),
            None => None,
        };
        Ok(TraceInput { data, hints, witness })
    }

    pub fn from_input(input: &TraceInput) -> Self {
        let d = &input.data;
        TraceFile {
            field: d.field.radicand(),
            tr_a: d.tr_a.to_string(),
            tr_b: d.tr_b.to_string(),
            tr_ab: d.tr_ab.to_string(),
            tr_comm: d.tr_comm.to_string(),
            square_hints: input
                .hints
                .iter()
                .map(|h| HintFile {
                    slot: h.slot,
                    factor: h.factor.to_string(),
                })
                .collect(),
            witness: input.witness.as_ref().map(|(x, y)| WitnessFile {
                x: x.to_string(),
                y: y.to_string(),
            }),
        }
    }
}
