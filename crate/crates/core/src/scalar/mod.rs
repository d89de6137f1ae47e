//! Exact constructible-number arithmetic.
//!
//! A [`ConstructibleScalar`] is an immutable expression DAG over rationals with
//! `+ − × ÷ √` nodes. Each node also carries a canonical normal form when one
//! can be derived, which is what makes symbolic equality possible; otherwise
//! comparisons fall back to certified interval refinement.

mod canon;
mod field;
pub mod interval;
mod parse;
pub mod rational;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use canon::Canon;
pub use field::Scalar;
pub use interval::Interval;
use interval::{certify, fixed_rational, Fixed};
pub use rational::Rational;

/// Precision (significant digits) used by comparisons unless told otherwise.
pub const DEFAULT_MAX_PRECISION: u32 = 100;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("sign of radicand could not be certified")]
    UncertifiedRadicand,
    #[error("cannot parse expression: {0}")]
    Parse(String),
}

/// Outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Undecided,
}

impl Comparison {
    pub fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }

    pub fn ordering(self) -> Option<Ordering> {
        match self {
            Comparison::Less => Some(Ordering::Less),
            Comparison::Equal => Some(Ordering::Equal),
            Comparison::Greater => Some(Ordering::Greater),
            Comparison::Undecided => None,
        }
    }
}

#[derive(Debug)]
enum Expr {
    Rational(Rational),
    Add(ConstructibleScalar, ConstructibleScalar),
    Sub(ConstructibleScalar, ConstructibleScalar),
    Mul(ConstructibleScalar, ConstructibleScalar),
    Div(ConstructibleScalar, ConstructibleScalar),
    Sqrt(ConstructibleScalar),
}

#[derive(Debug)]
struct Node {
    expr: Expr,
    canon: Option<Canon>,
}

/// Exact real number built from rationals by field operations and square
/// roots. Cheap to clone; subexpressions are shared.
#[derive(Clone)]
pub struct ConstructibleScalar(Arc<Node>);

impl ConstructibleScalar {
    pub fn from_rational(q: Rational) -> Self {
        ConstructibleScalar(Arc::new(Node {
            canon: Some(Canon::from_rational(q.clone())),
            expr: Expr::Rational(q),
        }))
    }

    pub fn integer(n: i64) -> Self {
        Self::from_rational(rational::integer(n))
    }

    /// `num / den`.
    ///
    /// # Panics
    /// Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(rational::rational(num, den))
    }

    fn from_parts(expr: Expr, canon: Option<Canon>) -> Self {
        if let Some(q) = canon.as_ref().and_then(Canon::as_rational) {
            return Self::from_rational(q);
        }
        ConstructibleScalar(Arc::new(Node { expr, canon }))
    }

    /// The exact rational value, when the scalar is known to be rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match &self.0.expr {
            Expr::Rational(q) => Some(q.clone()),
            _ => None,
        }
    }

    /// Whether the value is symbolically zero.
    pub fn is_symbolic_zero(&self) -> bool {
        self.0.canon.as_ref().is_some_and(Canon::is_zero)
    }

    fn canon_binary(&self, other: &Self, f: impl Fn(&Canon, &Canon) -> Canon) -> Option<Canon> {
        match (&self.0.canon, &other.0.canon) {
            (Some(a), Some(b)) => Some(f(a, b)),
            _ => None,
        }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let canon = self.canon_binary(other, Canon::add);
        Self::from_parts(Expr::Add(self.clone(), other.clone()), canon)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        let canon = self.canon_binary(other, Canon::sub);
        Self::from_parts(Expr::Sub(self.clone(), other.clone()), canon)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let canon = self.canon_binary(other, Canon::mul);
        Self::from_parts(Expr::Mul(self.clone(), other.clone()), canon)
    }

    pub fn neg_ref(&self) -> Self {
        Self::zero().sub_ref(self)
    }

    pub fn square(&self) -> Self {
        self.mul_ref(self)
    }

    /// Exact quotient. Fails when the divisor is symbolically zero or its
    /// enclosure still contains zero at the default comparison precision.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self, ScalarError> {
        if divisor.is_symbolic_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if divisor.as_rational().is_none()
            && divisor.sign(DEFAULT_MAX_PRECISION) == Comparison::Undecided
        {
            return Err(ScalarError::DivisionByZero);
        }
        let canon = match (&self.0.canon, &divisor.0.canon) {
            (Some(a), Some(b)) => b.inverse().map(|inv| a.mul(&inv)),
            _ => None,
        };
        Ok(Self::from_parts(
            Expr::Div(self.clone(), divisor.clone()),
            canon,
        ))
    }

    /// Principal square root. Perfect squares of rationals collapse to
    /// rationals.
    pub fn checked_sqrt(&self) -> Result<Self, ScalarError> {
        if let Some(q) = self.as_rational() {
            if q.is_negative() {
                return Err(ScalarError::NegativeRadicand);
            }
            if let Some(root) = rational::rational_sqrt(&q) {
                return Ok(Self::from_rational(root));
            }
        } else if !self.is_symbolic_zero() {
            match self.sign(DEFAULT_MAX_PRECISION) {
                Comparison::Less => return Err(ScalarError::NegativeRadicand),
                Comparison::Undecided => return Err(ScalarError::UncertifiedRadicand),
                _ => {}
            }
        }
        let canon = self.0.canon.as_ref().map(Canon::sqrt);
        Ok(Self::from_parts(Expr::Sqrt(self.clone()), canon))
    }

    /// Certified enclosure with width at most `10^(1−precision)·max(1, |v|)`.
    pub fn evaluate(&self, precision: u32) -> Interval {
        if let Some(q) = self.as_rational() {
            if q.is_zero() {
                return Interval::point(q, precision.max(1));
            }
        }
        certify(precision, |bits| {
            let mut memo = HashMap::new();
            eval_fixed(self, bits, &mut memo)
        })
    }

    /// Sign of the value: `Equal` only on symbolic proof of zero.
    pub fn sign(&self, max_precision: u32) -> Comparison {
        if self.is_symbolic_zero() {
            return Comparison::Equal;
        }
        let mut precision = 8u32.min(max_precision.max(1));
        loop {
            match self.evaluate(precision).sign() {
                Some(Ordering::Greater) => return Comparison::Greater,
                Some(Ordering::Less) => return Comparison::Less,
                _ => {}
            }
            if precision >= max_precision {
                return Comparison::Undecided;
            }
            precision = (precision * 2).min(max_precision);
        }
    }

    /// Certified comparison: `Equal` requires a symbolic proof, `Less` and
    /// `Greater` require disjoint enclosures at some precision up to
    /// `max_precision` digits.
    pub fn compare_with(&self, other: &Self, max_precision: u32) -> Comparison {
        if let (Some(a), Some(b)) = (&self.0.canon, &other.0.canon) {
            if a == b {
                return Comparison::Equal;
            }
        }
        self.sub_ref(other).sign(max_precision)
    }

    pub fn compare(&self, other: &Self) -> Comparison {
        self.compare_with(other, DEFAULT_MAX_PRECISION)
    }

    /// Shorthand for `compare(other) == Equal`.
    pub fn certainly_equal(&self, other: &Self) -> bool {
        self.compare(other) == Comparison::Equal
    }

    /// Absolute value, using a certified sign.
    pub fn abs(&self) -> Self {
        if self.sign(DEFAULT_MAX_PRECISION) == Comparison::Less {
            self.neg_ref()
        } else {
            self.clone()
        }
    }

    /// Rounded decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        self.evaluate(digits.max(1) + 2).to_decimal(digits)
    }

    /// Expression string built from the raw DAG rather than the normal form.
    pub fn dag_string(&self) -> String {
        let mut out = String::new();
        write_dag(self, &mut out, 0);
        out
    }
}

fn eval_fixed(
    x: &ConstructibleScalar,
    bits: u64,
    memo: &mut HashMap<*const Node, Option<Fixed>>,
) -> Option<Fixed> {
    let key = Arc::as_ptr(&x.0);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let one = BigInt::one() << bits;
    let result = match &x.0.expr {
        Expr::Rational(q) => Some(fixed_rational(q, bits)),
        Expr::Add(a, b) => {
            let (al, ah) = eval_fixed(a, bits, memo)?;
            let (bl, bh) = eval_fixed(b, bits, memo)?;
            Some((al + bl, ah + bh))
        }
        Expr::Sub(a, b) => {
            let (al, ah) = eval_fixed(a, bits, memo)?;
            let (bl, bh) = eval_fixed(b, bits, memo)?;
            Some((al - bh, ah - bl))
        }
        Expr::Mul(a, b) => {
            let (al, ah) = eval_fixed(a, bits, memo)?;
            let (bl, bh) = eval_fixed(b, bits, memo)?;
            let products = [&al * &bl, &al * &bh, &ah * &bl, &ah * &bh];
            let lo = products.iter().min().unwrap();
            let hi = products.iter().max().unwrap();
            Some((rational::floor_div(lo, &one), rational::ceil_div(hi, &one)))
        }
        Expr::Div(a, b) => {
            let (al, ah) = eval_fixed(a, bits, memo)?;
            let (bl, bh) = eval_fixed(b, bits, memo)?;
            if !bl.is_positive() && !bh.is_negative() {
                None
            } else {
                let mut lo: Option<BigInt> = None;
                let mut hi: Option<BigInt> = None;
                for n in [&al, &ah] {
                    for d in [&bl, &bh] {
                        let scaled = n << bits;
                        let f = rational::floor_div(&scaled, d);
                        let c = rational::ceil_div(&scaled, d);
                        lo = Some(lo.map_or(f.clone(), |v| v.min(f)));
                        hi = Some(hi.map_or(c.clone(), |v| v.max(c)));
                    }
                }
                Some((lo.unwrap(), hi.unwrap()))
            }
        }
        Expr::Sqrt(a) => {
            let (al, ah) = eval_fixed(a, bits, memo)?;
            if ah.is_negative() {
                None
            } else {
                let al = if al.is_negative() { BigInt::zero() } else { al };
                let lo = (al << bits).sqrt();
                let scaled = ah << bits;
                let mut hi = scaled.sqrt();
                if &hi * &hi < scaled {
                    hi += 1;
                }
                Some((lo, hi))
            }
        }
    };
    memo.insert(key, result.clone());
    result
}

fn write_dag(x: &ConstructibleScalar, out: &mut String, parent: u8) {
    // precedence: 1 additive, 2 multiplicative, 3 atom
    let (prec, text) = match &x.0.expr {
        Expr::Rational(q) => {
            if q.is_negative() || !q.denom().is_one() {
                (2, rational::format_ratio(q))
            } else {
                (3, rational::format_ratio(q))
            }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let mut s = String::new();
            write_dag(a, &mut s, 1);
            s.push_str(if matches!(x.0.expr, Expr::Add(..)) {
                " + "
            } else {
                " - "
            });
            write_dag(b, &mut s, 2);
            (1, s)
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            let mut s = String::new();
            write_dag(a, &mut s, 2);
            s.push_str(if matches!(x.0.expr, Expr::Mul(..)) {
                "*"
            } else {
                "/"
            });
            write_dag(b, &mut s, 3);
            (2, s)
        }
        Expr::Sqrt(a) => {
            let mut s = String::from("sqrt(");
            write_dag(a, &mut s, 0);
            s.push(')');
            (3, s)
        }
    };
    if prec < parent {
        out.push('(');
        out.push_str(&text);
        out.push(')');
    } else {
        out.push_str(&text);
    }
}

impl fmt::Display for ConstructibleScalar {
    /// Exact expression string that parses back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.canon {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.dag_string()),
        }
    }
}

impl fmt::Debug for ConstructibleScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConstructibleScalar({self})")
    }
}

impl FromStr for ConstructibleScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_expression(s)
    }
}

impl From<Rational> for ConstructibleScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for ConstructibleScalar {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl Zero for ConstructibleScalar {
    fn zero() -> Self {
        Self::integer(0)
    }

    fn is_zero(&self) -> bool {
        self.is_symbolic_zero()
    }
}

impl One for ConstructibleScalar {
    fn one() -> Self {
        Self::integer(1)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait for ConstructibleScalar {
            type Output = ConstructibleScalar;
            fn $method(self, rhs: ConstructibleScalar) -> ConstructibleScalar {
                self.$inner(&rhs)
            }
        }
        impl<'a> $trait<&'a ConstructibleScalar> for &'a ConstructibleScalar {
            type Output = ConstructibleScalar;
            fn $method(self, rhs: &'a ConstructibleScalar) -> ConstructibleScalar {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for ConstructibleScalar {
    type Output = ConstructibleScalar;
    fn neg(self) -> ConstructibleScalar {
        self.neg_ref()
    }
}

impl Neg for &ConstructibleScalar {
    type Output = ConstructibleScalar;
    fn neg(self) -> ConstructibleScalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> ConstructibleScalar {
        text.parse().unwrap()
    }

    #[test]
    fn rational_field_ops() {
        assert_eq!(
            s("1/3 + 1/12").as_rational(),
            Some(rational::rational(5, 12))
        );
        let series = s("1 + 1/3 + 1/12 - 1/408");
        assert_eq!(series.as_rational(), Some(rational::rational(577, 408)));
        assert_eq!(
            ConstructibleScalar::integer(1)
                .checked_div(&ConstructibleScalar::integer(0))
                .unwrap_err(),
            ScalarError::DivisionByZero
        );
    }

    #[test]
    fn sqrt_recognizes_squares() {
        assert_eq!(s("sqrt(4)").as_rational(), Some(rational::integer(2)));
        assert_eq!(
            s("sqrt(9/16)").as_rational(),
            Some(rational::rational(3, 4))
        );
        assert_eq!(
            ConstructibleScalar::integer(-1).checked_sqrt().unwrap_err(),
            ScalarError::NegativeRadicand
        );
        assert!("sqrt(1 - sqrt(2))".parse::<ConstructibleScalar>().is_err());
    }

    #[test]
    fn evaluate_zero_is_exact() {
        let z = ConstructibleScalar::zero().evaluate(30);
        assert!(z.lower().is_zero() && z.upper().is_zero());
    }

    #[test]
    fn comparisons() {
        let r2 = s("sqrt(2)");
        assert_eq!(r2.mul_ref(&r2).compare(&s("2")), Comparison::Equal);
        assert_eq!(s("577/408").compare(&r2), Comparison::Greater);
        let near = s("13/15 + 1").sub_ref(&s("1"));
        assert_eq!(near.compare(&s("13/15")), Comparison::Equal);
    }

    #[test]
    fn undecided_below_precision() {
        let tiny = ConstructibleScalar::from_rational(rational::pow10(-120));
        let a = s("13/15");
        let b = a.add_ref(&tiny);
        assert_eq!(a.compare_with(&b, 100), Comparison::Undecided);
        assert_eq!(a.compare_with(&b, 130), Comparison::Less);
    }

    #[test]
    fn dag_string_keeps_structure() {
        let x = s("sqrt(2)").add_ref(&s("sqrt(3)"));
        assert_eq!(x.dag_string(), "sqrt(2) + sqrt(3)");
        assert_eq!(x.to_string(), "sqrt(2) + sqrt(3)");
    }
}
