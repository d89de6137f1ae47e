//! Accuracy audit of the approximations: implied π, relative errors, digit
//! agreement, and the comparison table.

pub mod table;

pub use table::{emit_error_table, parse_csv_table, ReportFormat, TableRow};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{fine_ratio, PythagoreanTriple};
use crate::scalar::interval::certify;
use crate::scalar::rational::{floor_div, integer, pow10, rational, Rational};
use crate::scalar::{ConstructibleScalar as Cs, Interval};
use crate::texts::Text;

/// Extra digits carried internally beyond the requested precision.
const GUARD_DIGITS: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("`{0}` is not a geometric construction")]
    NotGeometric(String),
    #[error("`{0}` has no formula to evaluate")]
    NoFormula(String),
    #[error("candidate must be positive")]
    NonpositiveCandidate,
    #[error("no records to tabulate")]
    EmptyRecords,
    #[error("unsupported format `{0}` (expected text, json or csv)")]
    UnsupportedFormat(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReferenceKind {
    Pi,
    Sqrt2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// `exact_value` is the radius of the circle per unit side of the square.
    SquareToCircle,
    /// `exact_value` is the side of the square per unit diameter.
    CircleToSquare,
    /// `exact_value` approximates the reference constant itself.
    Scalar,
}

#[derive(Clone, Debug)]
pub struct ApproximationRecord {
    pub key: String,
    pub name: String,
    /// `None` for rules named in the manuals without a recoverable formula.
    pub exact_value: Option<Cs>,
    pub reference_kind: ReferenceKind,
    pub direction: Direction,
    pub attested_in: Vec<Text>,
}

impl ApproximationRecord {
    pub fn new(
        key: &str,
        name: &str,
        exact_value: Option<Cs>,
        reference_kind: ReferenceKind,
        direction: Direction,
        attested_in: &[Text],
    ) -> Self {
        ApproximationRecord {
            key: key.to_string(),
            name: name.to_string(),
            exact_value,
            reference_kind,
            direction,
            attested_in: attested_in.to_vec(),
        }
    }

    pub fn is_geometric(&self) -> bool {
        self.direction != Direction::Scalar
    }

    fn value(&self) -> Result<&Cs, AnalysisError> {
        self.exact_value
            .as_ref()
            .ok_or_else(|| AnalysisError::NoFormula(self.name.clone()))
    }
}

impl fmt::Display for ApproximationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact_value {
            Some(v) => write!(f, "{}: {}", self.name, v),
            None => write!(f, "{}: no formula", self.name),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ErrorReport {
    pub record: ApproximationRecord,
    /// Enclosure of π or √2.
    pub reference_interval: Interval,
    /// Constructed minus true, over true.
    pub relative_error: Interval,
    /// Candidate minus √2, for scalar records.
    pub absolute_error: Option<Interval>,
    pub implied_pi: Option<Interval>,
    /// Area of the constructed figure: the circle on a unit square, or the
    /// square on a unit-radius circle.
    pub constructed_area: Option<Interval>,
    /// Leading decimal places shared with the reference (truncated).
    pub agreement_digits: u32,
}

/// Enclosure of π from Machin's formula `16·atan(1/5) − 4·atan(1/239)`.
pub fn reference_pi(precision: u32) -> Interval {
    certify(precision, |bits| {
        let (a, ea) = atan_inverse(5, bits);
        let (b, eb) = atan_inverse(239, bits);
        let mid = a * 16 - b * 4;
        let err = ea * 16 + eb * 4;
        Some((&mid - &err, &mid + &err))
    })
}

/// Fixed-point `atan(1/x)·2^bits` with a bound on its error in units.
fn atan_inverse(x: u64, bits: u64) -> (BigInt, BigInt) {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << bits) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    // two truncations per term plus the alternating tail
    (sum, BigInt::from(2 * k + 2))
}

pub fn reference_sqrt2(precision: u32) -> Interval {
    Cs::integer(2)
        .checked_sqrt()
        .expect("2 is positive")
        .evaluate(precision)
}

fn pi_for(precision: u32) -> Interval {
    reference_pi(precision + GUARD_DIGITS)
}

fn require_geometric(record: &ApproximationRecord) -> Result<&Cs, AnalysisError> {
    if !record.is_geometric() {
        return Err(AnalysisError::NotGeometric(record.name.clone()));
    }
    record.value()
}

/// π implied by treating the rule as exact: `1/ρ²` or `4σ²`.
pub fn implied_pi(record: &ApproximationRecord, precision: u32) -> Result<Interval, AnalysisError> {
    let v = require_geometric(record)?;
    let implied = implied_pi_exact(record.direction, v);
    Ok(implied.evaluate(precision))
}

fn implied_pi_exact(direction: Direction, v: &Cs) -> Cs {
    let sq = v.square();
    match direction {
        Direction::SquareToCircle => Cs::integer(1).checked_div(&sq).expect("positive ratio"),
        _ => &sq * &Cs::integer(4),
    }
}

/// Relative area error of the constructed figure against the figure it is
/// meant to equal, with the implied π alongside.
pub fn area_error(
    record: &ApproximationRecord,
    precision: u32,
) -> Result<ErrorReport, AnalysisError> {
    let v = require_geometric(record)?;
    let work = precision + GUARD_DIGITS;
    let pi = pi_for(precision);
    let sq = v.square().evaluate(work);
    let implied = implied_pi_exact(record.direction, v);
    let implied_iv = implied.evaluate(work);
    let (area, relative) = match record.direction {
        Direction::SquareToCircle => {
            // circle of radius ρ against the unit square
            let area = pi.mul(&sq);
            (area.clone(), area.sub(&Interval::point(integer(1), work)))
        }
        _ => {
            // square of side 2σ against the unit-radius circle
            let area = sq.scale(&integer(4));
            let ratio = area.div(&pi).expect("π is positive");
            (area, ratio.sub(&Interval::point(integer(1), work)))
        }
    };
    Ok(ErrorReport {
        record: record.clone(),
        agreement_digits: agreement_digits(&implied_iv, &pi, precision),
        reference_interval: pi,
        relative_error: relative,
        absolute_error: None,
        implied_pi: Some(implied_iv),
        constructed_area: Some(area),
    })
}

/// How closely `candidate` approximates √2.
pub fn compare_sqrt2(candidate: &Cs, precision: u32) -> Result<ErrorReport, AnalysisError> {
    let record = ApproximationRecord::new(
        "candidate",
        "candidate",
        Some(candidate.clone()),
        ReferenceKind::Sqrt2,
        Direction::Scalar,
        &[],
    );
    sqrt2_report(&record, precision)
}

fn sqrt2_report(
    record: &ApproximationRecord,
    precision: u32,
) -> Result<ErrorReport, AnalysisError> {
    let candidate = record.value()?;
    if candidate.sign(crate::scalar::DEFAULT_MAX_PRECISION) != crate::scalar::Comparison::Greater {
        return Err(AnalysisError::NonpositiveCandidate);
    }
    let work = precision + GUARD_DIGITS;
    let root = Cs::integer(2).checked_sqrt().expect("2 is positive");
    let diff = candidate - &root;
    let absolute = diff.evaluate(work);
    let relative = diff
        .checked_div(&root)
        .expect("√2 is nonzero")
        .evaluate(work);
    let value = candidate.evaluate(work);
    let reference = root.evaluate(work);
    Ok(ErrorReport {
        record: record.clone(),
        agreement_digits: agreement_digits(&value, &reference, precision),
        reference_interval: reference,
        relative_error: relative,
        absolute_error: Some(absolute),
        implied_pi: None,
        constructed_area: None,
    })
}

/// Error report for any record with a formula.
pub fn report(record: &ApproximationRecord, precision: u32) -> Result<ErrorReport, AnalysisError> {
    match record.reference_kind {
        ReferenceKind::Pi => area_error(record, precision),
        ReferenceKind::Sqrt2 => sqrt2_report(record, precision),
    }
}

/// Number of decimal places on which the truncated renderings of the two
/// values agree, counted only while both enclosures certify the digit.
pub fn agreement_digits(a: &Interval, b: &Interval, max_places: u32) -> u32 {
    let digit = |iv: &Interval, k: i64| -> Option<BigInt> {
        let scale = pow10(k);
        let lo = iv.lower() * &scale;
        let hi = iv.upper() * &scale;
        let lo = floor_div(lo.numer(), lo.denom());
        let hi = floor_div(hi.numer(), hi.denom());
        (lo == hi).then_some(lo)
    };
    if a.lower().is_negative() != b.lower().is_negative() {
        return 0;
    }
    match (digit(a, 0), digit(b, 0)) {
        (Some(x), Some(y)) if x == y => {}
        _ => return 0,
    }
    let mut places = 0;
    while places < max_places {
        let k = places as i64 + 1;
        match (digit(a, k), digit(b, k)) {
            (Some(x), Some(y)) if x == y => places += 1,
            _ => break,
        }
    }
    places
}

/// The six rules of the manuals.
pub fn builtin_catalog() -> Vec<ApproximationRecord> {
    use Text::{Apastamba, Baudhayana, Katyayana, Maitrayaniya, Manava};
    let circling: Cs = "(2 + sqrt(2))/6".parse().expect("valid literal");
    vec![
        ApproximationRecord::new(
            "circling",
            "Circling the square",
            Some(circling),
            ReferenceKind::Pi,
            Direction::SquareToCircle,
            &[Baudhayana, Katyayana],
        ),
        ApproximationRecord::new(
            "maitrayaniya-circling",
            "Maitrāyaṇīya 9/16 rule",
            Some(Cs::ratio(9, 16)),
            ReferenceKind::Pi,
            Direction::SquareToCircle,
            &[Maitrayaniya],
        ),
        ApproximationRecord::new(
            "manava-circling",
            "Mānava circling",
            None,
            ReferenceKind::Pi,
            Direction::SquareToCircle,
            &[Manava],
        ),
        ApproximationRecord::new(
            "fine-squaring",
            "Fine squaring",
            Some(Cs::from_rational(fine_ratio())),
            ReferenceKind::Pi,
            Direction::CircleToSquare,
            &[Baudhayana],
        ),
        ApproximationRecord::new(
            "coarse-squaring",
            "Coarse squaring",
            Some(Cs::ratio(13, 15)),
            ReferenceKind::Pi,
            Direction::CircleToSquare,
            &[Baudhayana, Apastamba, Katyayana],
        ),
        ApproximationRecord::new(
            "savisesha",
            "Saviśeṣa √2",
            Some(Cs::from_rational(rational(577, 408))),
            ReferenceKind::Sqrt2,
            Direction::Scalar,
            &[Baudhayana, Apastamba, Katyayana],
        ),
    ]
}

/// The catalog plus the Babylonian sexagesimal value of √2 for comparison.
pub fn comparison_records() -> Vec<ApproximationRecord> {
    let mut records = builtin_catalog();
    records.push(babylonian_sqrt2());
    records
}

pub fn babylonian_sqrt2() -> ApproximationRecord {
    ApproximationRecord::new(
        "babylonian-sqrt2",
        "Babylonian √2",
        Some(Cs::from_rational(Rational::new(
            14142129.into(),
            10_000_000.into(),
        ))),
        ReferenceKind::Sqrt2,
        Direction::Scalar,
        &[],
    )
}

/// All primitive triples with hypotenuse at most `limit`, by Euclid's
/// parametrization, ordered by `(c, a)` with `a < b`.
pub fn generate_triples(limit: u64) -> Vec<PythagoreanTriple> {
    let mut out = Vec::new();
    let mut m: u64 = 2;
    while m * m < limit {
        for n in 1..m {
            if (m - n).is_multiple_of(2) || num_integer::gcd(m, n) != 1 {
                continue;
            }
            let c = m * m + n * n;
            if c > limit {
                continue;
            }
            let (p, q) = (m * m - n * n, 2 * m * n);
            out.push(PythagoreanTriple::new(p.min(q), p.max(q), c).expect("Euclid's formula"));
        }
        m += 1;
    }
    out.sort_by_key(|t| (t.c, t.a));
    out
}
