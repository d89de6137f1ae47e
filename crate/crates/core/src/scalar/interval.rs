//! Certified enclosures with exact rational endpoints.
//!
//! Enclosures are produced by fixed-point evaluation with outward rounding at
//! a working precision that doubles until the requested width is reached.
//! Every attempt along the way is intersected into the result and the final
//! bounds are widened outward onto a decimal grid, so an enclosure at a higher
//! precision is always contained in one at a lower precision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{
    ceil_div, floor_div, floor_log10, format_scaled, parse_decimal, pow10, round_half_away, to_f64,
    Rational,
};

const START_BITS: u64 = 64;
const MAX_BITS: u64 = 1 << 17;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lower: Rational,
    upper: Rational,
    precision: u32,
}

impl Interval {
    /// # Panics
    /// Panics when `lower > upper`.
    pub fn new(lower: Rational, upper: Rational, precision: u32) -> Self {
        assert!(lower <= upper, "interval bounds out of order");
        Interval {
            lower,
            upper,
            precision,
        }
    }

    pub fn point(value: Rational, precision: u32) -> Self {
        Interval::new(value.clone(), value, precision)
    }

    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lower + &self.upper) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lower <= value && value <= &self.upper
    }

    /// Whether the decimal literal lies inside the enclosure.
    pub fn contains_decimal(&self, literal: &str) -> bool {
        parse_decimal(literal).is_some_and(|v| self.contains(&v))
    }

    /// Whether every value in the enclosure rounds (half away from zero) to
    /// the given decimal at its number of places.
    pub fn rounds_to(&self, literal: &str) -> bool {
        let Some(d) = parse_decimal(literal) else {
            return false;
        };
        let places = literal
            .split_once('.')
            .map(|(_, frac)| frac.len() as i64)
            .unwrap_or(0);
        let half = pow10(-places) / Rational::from_integer(2.into());
        if d.is_negative() {
            self.lower > &d - &half && self.upper <= &d + &half
        } else {
            self.lower >= &d - &half && self.upper < &d + &half
        }
    }

    /// Whether every value in the enclosure starts with the given decimal
    /// digits, i.e. lies in `[d, d + ulp)` (mirrored for negative `d`).
    pub fn certifies_prefix(&self, literal: &str) -> bool {
        let Some(d) = parse_decimal(literal) else {
            return false;
        };
        let places = literal
            .split_once('.')
            .map(|(_, frac)| frac.len() as i64)
            .unwrap_or(0);
        let ulp = pow10(-places);
        if literal.trim().starts_with('-') {
            self.lower > &d - &ulp && self.upper <= d
        } else {
            self.lower >= d && self.upper < &d + &ulp
        }
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    /// Certain sign: `Some(Less)` when entirely negative, `Some(Equal)` only
    /// for the degenerate `[0, 0]`.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lower.is_positive() {
            Some(Ordering::Greater)
        } else if self.upper.is_negative() {
            Some(Ordering::Less)
        } else if self.lower.is_zero() && self.upper.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certain ordering between two enclosures when they are disjoint.
    pub fn compare(&self, other: &Interval) -> Option<Ordering> {
        if self.upper < other.lower {
            Some(Ordering::Less)
        } else if self.lower > other.upper {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(
            &self.lower + &other.lower,
            &self.upper + &other.upper,
            self.precision.min(other.precision),
        )
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(
            &self.lower - &other.upper,
            &self.upper - &other.lower,
            self.precision.min(other.precision),
        )
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lower * &other.lower,
            &self.lower * &other.upper,
            &self.upper * &other.lower,
            &self.upper * &other.upper,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi, self.precision.min(other.precision))
    }

    /// `None` when the divisor enclosure contains zero.
    pub fn div(&self, other: &Interval) -> Option<Interval> {
        if other.sign().is_none_or(|s| s == Ordering::Equal) {
            return None;
        }
        let recip = Interval::new(other.upper.recip(), other.lower.recip(), other.precision);
        Some(self.mul(&recip))
    }

    pub fn scale(&self, q: &Rational) -> Interval {
        self.mul(&Interval::point(q.clone(), self.precision))
    }

    /// Approximate midpoint, for display geometry only.
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// Decimal places that the enclosure width certifies.
    fn certified_places(&self) -> i64 {
        let width = self.width();
        if width.is_zero() {
            return i64::MAX;
        }
        // largest p with width <= 10^-p
        -floor_log10(&width)
            - if width == pow10(floor_log10(&width)) {
                0
            } else {
                1
            }
    }

    /// Round-to-nearest rendering of the midpoint with at most `significant`
    /// digits, never printing digits finer than the enclosure width.
    pub fn to_decimal(&self, significant: u32) -> String {
        let mid = self.midpoint();
        if mid.is_zero() {
            if self.width().is_zero() {
                return "0".to_string();
            }
            return self.to_fixed(significant.saturating_sub(1));
        }
        let exponent = floor_log10(&mid);
        let wanted = significant.max(1) as i64 - 1 - exponent;
        render_places(&mid, wanted.min(self.certified_places()))
    }

    /// Fixed number of decimal places, limited by the enclosure width.
    pub fn to_fixed(&self, places: u32) -> String {
        render_places(
            &self.midpoint(),
            (places as i64).min(self.certified_places()),
        )
    }

    /// Scientific rendering such as `2.1239e-6`.
    pub fn to_scientific(&self, significant: u32) -> String {
        let mid = self.midpoint();
        if mid.is_zero() {
            return "0".to_string();
        }
        let significant = significant.max(1) as i64;
        let certified = self.certified_places();
        let mut exponent = floor_log10(&mid);
        let places = (significant - 1)
            .min(certified.saturating_add(exponent))
            .max(0);
        let mut mantissa = round_half_away(&(&mid * pow10(places - exponent)));
        if mantissa.abs() >= BigInt::from(10).pow((places + 1) as u32) {
            exponent += 1;
            mantissa = round_half_away(&(&mid * pow10(places - exponent)));
        }
        format!("{}e{}", format_scaled(&mantissa, places), exponent)
    }
}

fn render_places(value: &Rational, places: i64) -> String {
    let scaled = round_half_away(&(value * pow10(places)));
    format_scaled(&scaled, places)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.precision.max(1) + 2;
        write!(
            f,
            "[{}, {}]",
            Interval::point(self.lower.clone(), 0).to_decimal(digits),
            Interval::point(self.upper.clone(), 0).to_decimal(digits)
        )
    }
}

/// Fixed-point enclosure: integers `(lo, hi)` meaning `[lo, hi] · 2^-bits`.
pub(crate) type Fixed = (BigInt, BigInt);

/// Drives a fixed-point evaluator at doubling working precision until the
/// enclosure width meets `precision` significant digits, then snaps it
/// outward to a decimal grid.
pub(crate) fn certify(precision: u32, mut eval: impl FnMut(u64) -> Option<Fixed>) -> Interval {
    let precision = precision.max(1);
    let mut acc: Option<(Rational, Rational)> = None;
    let mut bits = START_BITS;
    loop {
        if let Some((lo, hi)) = eval(bits) {
            let scale = Rational::from_integer(BigInt::one() << bits);
            let lo = Rational::new(lo, BigInt::one()) / &scale;
            let hi = Rational::new(hi, BigInt::one()) / &scale;
            acc = Some(match acc {
                None => (lo, hi),
                Some((a, b)) => (a.max(lo), b.min(hi)),
            });
        }
        if let Some((lo, hi)) = &acc {
            let grid = grid_step(lo, hi, precision);
            if hi - lo <= grid * Rational::from_integer(BigInt::from(8)) || bits >= MAX_BITS {
                return snap(lo, hi, precision);
            }
        } else if bits >= MAX_BITS {
            panic!("expression could not be enclosed at any working precision");
        }
        bits *= 2;
    }
}

fn grid_step(lo: &Rational, hi: &Rational, precision: u32) -> Rational {
    let magnitude = if lo.is_positive() {
        lo.clone()
    } else if hi.is_negative() {
        -hi.clone()
    } else {
        Rational::zero()
    };
    let exponent = if magnitude >= Rational::one() {
        floor_log10(&magnitude)
    } else {
        0
    };
    pow10(exponent - precision as i64)
}

fn snap(lo: &Rational, hi: &Rational, precision: u32) -> Interval {
    let grid = grid_step(lo, hi, precision);
    let down = lo / &grid;
    let up = hi / &grid;
    let lower = Rational::from_integer(floor_div(down.numer(), down.denom())) * &grid;
    let upper = Rational::from_integer(ceil_div(up.numer(), up.denom())) * &grid;
    Interval::new(lower, upper, precision)
}

/// Fixed-point enclosure of an exact rational.
pub(crate) fn fixed_rational(q: &BigRational, bits: u64) -> Fixed {
    let scaled = q.numer() << bits;
    (floor_div(&scaled, q.denom()), ceil_div(&scaled, q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rational;

    fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval {
        Interval::new(rational(lo.0, lo.1), rational(hi.0, hi.1), 10)
    }

    #[test]
    fn arithmetic_encloses() {
        let a = iv((1, 1), (2, 1));
        let b = iv((-3, 1), (1, 1));
        assert_eq!(a.mul(&b), iv((-6, 1), (2, 1)));
        assert!(a.div(&b).is_none());
        assert_eq!(b.div(&a).unwrap(), iv((-3, 1), (1, 1)));
    }

    #[test]
    fn decimal_rendering_respects_width() {
        let v = Interval::point(rational(577, 408), 10);
        assert_eq!(v.to_decimal(8), "1.4142157");
        let wide = iv((14, 10), (15, 10));
        assert_eq!(wide.to_decimal(8), "1.5");
        let tight = iv((1414213, 1_000_000), (1414214, 1_000_000));
        assert_eq!(tight.to_decimal(10), "1.414214");
    }

    #[test]
    fn scientific_rendering() {
        let v = Interval::point(rational(21239, 10_000_000_000), 10);
        assert_eq!(v.to_scientific(5), "2.1239e-6");
        let n = Interval::point(rational(-99999, 100_000), 10);
        assert_eq!(n.to_scientific(3), "-1.00e0");
    }

    #[test]
    fn prefix_certification() {
        let v = iv((10172524, 10_000_000), (10172525, 10_000_000));
        assert!(!v.certifies_prefix("1.0172524"));
        let v = iv((101725243, 100_000_000), (101725244, 100_000_000));
        assert!(v.certifies_prefix("1.0172524"));
        assert!(!v.certifies_prefix("1.0172525"));
    }

    #[test]
    fn certify_nests() {
        let third = rational(1, 3);
        let coarse = certify(5, |b| Some(fixed_rational(&third, b)));
        let fine = certify(10, |b| Some(fixed_rational(&third, b)));
        assert!(fine.is_subset_of(&coarse));
        assert!(coarse.contains(&third));
        assert!(fine.width() <= pow10(-9));
    }
}
