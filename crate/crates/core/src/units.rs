//! Length units measured in aṅgulas.
//!
//! The default table ships embedded; alternative tables load from JSON of the
//! form `[{"name": "...", "ratio_to_angula": "p/q", "attested_in": [...]}]`.
//! Units are looked up by their diacritic name or an ASCII spelling
//! (`purusha`, `purusa`, `angula`, ...).

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::rational::{format_ratio, parse_ratio};
use crate::scalar::{Comparison, ConstructibleScalar, Rational};
use crate::texts::Text;

const DEFAULT_TABLE: &str = include_str!("../data/units.json");

/// Approximate metric size of one aṅgula. Display only.
pub const ANGULA_APPROX_CM: &str = "1.9";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UnitError {
    #[error("unknown unit `{0}`")]
    UnknownUnit(String),
    #[error("invalid unit table: {0}")]
    InvalidTable(String),
    #[error("lengths cannot be negative")]
    NegativeLength,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthUnit {
    pub name: String,
    pub ratio_to_angula: Rational,
    pub attested_in: Vec<Text>,
}

impl LengthUnit {
    pub fn is_attested_in(&self, text: Text) -> bool {
        self.attested_in.contains(&text)
    }

    fn matches(&self, query: &str) -> bool {
        let query = query.trim();
        self.name == query
            || ascii_fold(&self.name, "sh").eq_ignore_ascii_case(query)
            || ascii_fold(&self.name, "s").eq_ignore_ascii_case(query)
    }
}

fn ascii_fold(name: &str, sibilant: &str) -> String {
    let mut out = String::new();
    for c in name.chars() {
        match c {
            'ā' => out.push('a'),
            'ī' => out.push('i'),
            'ū' => out.push('u'),
            'ṅ' | 'ṇ' | 'ñ' => out.push('n'),
            'ṭ' => out.push('t'),
            'ḍ' => out.push('d'),
            'ṣ' | 'ś' => out.push_str(sibilant),
            other => out.push(other),
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct UnitRecord {
    name: String,
    ratio_to_angula: String,
    #[serde(default)]
    attested_in: Vec<Text>,
}

#[derive(Clone, Debug)]
pub struct UnitTable {
    units: Vec<LengthUnit>,
}

impl Default for UnitTable {
    fn default() -> Self {
        UnitTable::from_json(DEFAULT_TABLE).expect("embedded unit table is valid")
    }
}

impl UnitTable {
    pub fn from_json(text: &str) -> Result<Self, UnitError> {
        let records: Vec<UnitRecord> =
            serde_json::from_str(text).map_err(|e| UnitError::InvalidTable(e.to_string()))?;
        let mut units = Vec::with_capacity(records.len());
        for r in records {
            let ratio = parse_ratio(&r.ratio_to_angula).ok_or_else(|| {
                UnitError::InvalidTable(format!("bad ratio `{}` for {}", r.ratio_to_angula, r.name))
            })?;
            if !ratio.is_positive() {
                return Err(UnitError::InvalidTable(format!(
                    "ratio for {} must be positive",
                    r.name
                )));
            }
            units.push(LengthUnit {
                name: r.name,
                ratio_to_angula: ratio,
                attested_in: r.attested_in,
            });
        }
        let base = units
            .iter()
            .find(|u| u.matches("angula"))
            .ok_or_else(|| UnitError::InvalidTable("table lacks the aṅgula".into()))?;
        if !base.ratio_to_angula.is_one() {
            return Err(UnitError::InvalidTable("aṅgula must have ratio 1".into()));
        }
        Ok(UnitTable { units })
    }

    pub fn to_json(&self) -> String {
        let records: Vec<UnitRecord> = self
            .units
            .iter()
            .map(|u| UnitRecord {
                name: u.name.clone(),
                ratio_to_angula: format_ratio(&u.ratio_to_angula),
                attested_in: u.attested_in.clone(),
            })
            .collect();
        serde_json::to_string_pretty(&records).expect("unit records serialize")
    }

    pub fn units(&self) -> &[LengthUnit] {
        &self.units
    }

    pub fn lookup(&self, name: &str) -> Result<&LengthUnit, UnitError> {
        self.units
            .iter()
            .find(|u| u.matches(name))
            .ok_or_else(|| UnitError::UnknownUnit(name.to_string()))
    }

    pub fn attested_in(&self, text: Text) -> Vec<&LengthUnit> {
        self.units
            .iter()
            .filter(|u| u.is_attested_in(text))
            .collect()
    }

    /// Converts a quantity into `target`, looked up in this table.
    pub fn convert(&self, q: &LengthQuantity, target: &str) -> Result<LengthQuantity, UnitError> {
        let target = self.lookup(target)?;
        unit_convert(q, target)
    }
}

#[derive(Clone, Debug)]
pub struct LengthQuantity {
    magnitude: ConstructibleScalar,
    unit: LengthUnit,
}

impl LengthQuantity {
    pub fn new(magnitude: ConstructibleScalar, unit: LengthUnit) -> Result<Self, UnitError> {
        if magnitude.sign(crate::scalar::DEFAULT_MAX_PRECISION) == Comparison::Less {
            return Err(UnitError::NegativeLength);
        }
        Ok(LengthQuantity { magnitude, unit })
    }

    pub fn magnitude(&self) -> &ConstructibleScalar {
        &self.magnitude
    }

    pub fn unit(&self) -> &LengthUnit {
        &self.unit
    }

    /// The same length expressed in aṅgulas.
    pub fn in_angula(&self) -> ConstructibleScalar {
        &self.magnitude * &ConstructibleScalar::from_rational(self.unit.ratio_to_angula.clone())
    }
}

impl fmt::Display for LengthQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.magnitude, self.unit.name)
    }
}

/// Exact rescaling by the ratio of the two unit sizes.
pub fn unit_convert(q: &LengthQuantity, target: &LengthUnit) -> Result<LengthQuantity, UnitError> {
    let factor = &q.unit.ratio_to_angula / &target.ratio_to_angula;
    LengthQuantity::new(
        &q.magnitude * &ConstructibleScalar::from_rational(factor),
        target.clone(),
    )
}
