//! Helpers over arbitrary-precision rationals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used throughout the engine.
pub type Rational = BigRational;

/// Trial division bound used when extracting square factors.
const TRIAL_LIMIT: u64 = 1 << 20;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optionally signed). Rejects zero denominators.
pub fn parse_ratio(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats as `p` or `p/q`.
pub fn format_ratio(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Splits `n` into `(s, k)` with `n = s² · k` and `k` free of small square
/// factors. Leftover cofactors above the trial bound are kept whole unless
/// they are themselves perfect squares.
pub fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p: u64 = 2;
    while p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut count = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            count += 1;
        }
        if count > 0 {
            square *= bp.pow(count / 2);
            if count % 2 == 1 {
                free *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        let root = rest.sqrt();
        if &root * &root == rest {
            square *= root;
        } else {
            free *= rest;
        }
    }
    (square, free)
}

/// Prime factors of a square-free integer, ascending. Cofactors beyond the
/// trial bound are reported as a single factor.
pub fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut p: u64 = 2;
    while p < TRIAL_LIMIT && rest > BigUint::one() {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        if (&rest % &bp).is_zero() {
            out.push(bp.clone());
            while (&rest % &bp).is_zero() {
                rest /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        out.push(rest);
    }
    out
}

/// Exact square root when `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn floor_div(n: &BigInt, d: &BigInt) -> BigInt {
    n.div_floor(d)
}

pub fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    -((-n).div_floor(d))
}

/// `floor(log10(|q|))` for nonzero `q`.
pub fn floor_log10(q: &Rational) -> i64 {
    debug_assert!(!q.is_zero());
    let q = q.abs();
    let digits = |n: &BigInt| n.to_string().trim_start_matches('-').len() as i64;
    let mut e = digits(q.numer()) - digits(q.denom());
    // 10^e <= q < 10^(e+1)
    loop {
        if pow10(e) > q {
            e -= 1;
        } else if pow10(e + 1) <= q {
            e += 1;
        } else {
            return e;
        }
    }
}

/// Exact `10^e` for any integer exponent.
pub fn pow10(e: i64) -> Rational {
    let base = BigInt::from(10u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

/// Rounds to the nearest integer, ties away from zero.
pub fn round_half_away(q: &Rational) -> BigInt {
    let twice = q * integer(2);
    let floor = floor_div(twice.numer(), twice.denom());
    // floor(2q) odd means q sits at or above a half boundary
    if q.is_negative() {
        -round_half_away(&-q)
    } else {
        let base = floor.div_floor(&BigInt::from(2));
        if floor.is_odd() {
            base + 1
        } else {
            base
        }
    }
}

/// Formats the integer `m` scaled by `10^-places` as a fixed decimal.
pub fn format_scaled(m: &BigInt, places: i64) -> String {
    let negative = m.is_negative();
    let digits = m.abs().to_string();
    let body = if places <= 0 {
        let mut s = digits;
        if s != "0" {
            s.push_str(&"0".repeat(places.unsigned_abs() as usize));
        }
        s
    } else {
        let places = places as usize;
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Parses a plain decimal literal such as `-1.0172524` into an exact rational.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{}{}", if int.is_empty() { "0" } else { int }, frac)
        .parse()
        .ok()?;
    let value = Rational::from_integer(digits) * pow10(-(frac.len() as i64));
    Some(if negative { -value } else { value })
}

/// Lossy conversion for display-only purposes (figure coordinates).
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_free_extraction() {
        let (s, k) = square_free_split(&BigUint::from(72u32));
        assert_eq!((s, k), (BigUint::from(6u32), BigUint::from(2u32)));
        let (s, k) = square_free_split(&BigUint::from(1u32));
        assert_eq!((s, k), (BigUint::one(), BigUint::one()));
        let (s, k) = square_free_split(&BigUint::from(255u32));
        assert_eq!((s, k), (BigUint::one(), BigUint::from(255u32)));
    }

    #[test]
    fn log10_boundaries() {
        assert_eq!(floor_log10(&integer(1)), 0);
        assert_eq!(floor_log10(&integer(10)), 1);
        assert_eq!(floor_log10(&integer(9)), 0);
        assert_eq!(floor_log10(&rational(1, 10)), -1);
        assert_eq!(floor_log10(&rational(99, 1000)), -2);
        assert_eq!(floor_log10(&rational(-577, 408)), 0);
    }

    #[test]
    fn rounding_and_formatting() {
        assert_eq!(round_half_away(&rational(5, 2)), BigInt::from(3));
        assert_eq!(round_half_away(&rational(-5, 2)), BigInt::from(-3));
        assert_eq!(round_half_away(&rational(7, 3)), BigInt::from(2));
        assert_eq!(format_scaled(&BigInt::from(14142157), 7), "1.4142157");
        assert_eq!(format_scaled(&BigInt::from(-5), 3), "-0.005");
        assert_eq!(format_scaled(&BigInt::from(12), -2), "1200");
    }

    #[test]
    fn decimal_and_ratio_parsing() {
        assert_eq!(
            parse_decimal("1.4142129"),
            Some(rational(14142129, 10_000_000))
        );
        assert_eq!(parse_decimal("-0.5"), Some(rational(-1, 2)));
        assert_eq!(parse_decimal("abc"), None);
        assert_eq!(parse_ratio("2/15"), Some(rational(2, 15)));
        assert_eq!(parse_ratio("1/0"), None);
    }

    #[test]
    fn perfect_square_rationals() {
        assert_eq!(rational_sqrt(&rational(9, 16)), Some(rational(3, 4)));
        assert_eq!(rational_sqrt(&rational(2, 1)), None);
        assert_eq!(rational_sqrt(&rational(-4, 1)), None);
    }
}
