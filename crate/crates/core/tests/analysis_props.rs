use std::collections::BTreeSet;

use proptest::prelude::*;

use sulva_core::analysis::{
    area_error, builtin_catalog, generate_triples, implied_pi, reference_pi, reference_sqrt2,
    ApproximationRecord, Direction, ReferenceKind,
};
use sulva_core::scalar::rational::{integer, rational};
use sulva_core::{ConstructibleScalar as Cs, Interval};

/// π to 60 places, from published tables.
const PI_60: &str = "3.141592653589793238462643383279502884197169399375105820974944";

fn brute_force_triples(limit: u64) -> BTreeSet<(u64, u64, u64)> {
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut out = BTreeSet::new();
    for a in 1..=limit {
        for b in a + 1..=limit {
            let c2 = a * a + b * b;
            let c = (c2 as f64).sqrt().round() as u64;
            if c * c == c2 && c <= limit && gcd(a, b) == 1 {
                out.insert((a, b, c));
            }
        }
    }
    out
}

fn within(iv: &Interval, other: &Interval, tolerance: &sulva_core::Rational) -> bool {
    let d = iv.sub(other);
    d.lower() >= &-tolerance.clone() && d.upper() <= tolerance
}

#[test]
fn pi_enclosures_nest_and_match_tables() {
    let mut previous: Option<Interval> = None;
    for p in [5u32, 10, 20, 40, 55] {
        let iv = reference_pi(p);
        // the literal is inside coarse enclosures and a certified prefix of fine ones
        if p < 14 {
            assert!(iv.contains_decimal("3.14159265358979"));
        } else {
            assert!(iv.certifies_prefix("3.14159265358979"));
        }
        assert!(
            iv.certifies_prefix(&PI_60[..(p as usize).min(50)]),
            "p = {p}: {iv}"
        );
        if let Some(prev) = previous {
            assert!(iv.is_subset_of(&prev));
        }
        previous = Some(iv);
    }
    assert!(reference_sqrt2(30).certifies_prefix("1.414213562373095048801688724"));
}

#[test]
fn implied_pi_and_relative_error_agree() {
    for p in [8u32, 20, 50] {
        let tolerance = rational(1, 10).pow(p as i32 - 2);
        let pi = reference_pi(p + 10);
        for record in builtin_catalog()
            .iter()
            .filter(|r| r.is_geometric() && r.exact_value.is_some())
        {
            let rep = area_error(record, p).unwrap();
            let implied = implied_pi(record, p + 10).unwrap();
            let one = Interval::point(integer(1), p + 10);
            let expected = match record.direction {
                // circle on the unit square: π·ρ² − 1 = π/implied − 1
                Direction::SquareToCircle => pi.div(&implied).unwrap().sub(&one),
                // square on the unit-radius circle: 4σ²/π − 1 = implied/π − 1
                _ => implied.div(&pi).unwrap().sub(&one),
            };
            assert!(
                within(&rep.relative_error, &expected, &tolerance),
                "{} at {p}",
                record.key
            );
            let width = rep.relative_error.width();
            assert!(
                width < rational(1, 10).pow(p as i32),
                "{} too wide",
                record.key
            );
        }
    }
}

#[test]
fn placeholder_rule_has_no_numbers() {
    let manava = builtin_catalog()
        .into_iter()
        .find(|r| r.key == "manava-circling")
        .unwrap();
    assert!(manava.exact_value.is_none());
    assert!(area_error(&manava, 10).is_err());
    let scalar = ApproximationRecord::new(
        "x",
        "x",
        Some(Cs::integer(1)),
        ReferenceKind::Sqrt2,
        Direction::Scalar,
        &[],
    );
    assert!(implied_pi(&scalar, 10).is_err());
}

#[test]
fn triples_up_to_one_hundred() {
    let generated: BTreeSet<_> = generate_triples(100)
        .iter()
        .map(|t| (t.a, t.b, t.c))
        .collect();
    assert_eq!(generated, brute_force_triples(100));
    assert_eq!(generated.len(), 16);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn triples_match_brute_force(limit in 0u64..160) {
        let generated = generate_triples(limit);
        let set: BTreeSet<_> = generated.iter().map(|t| (t.a, t.b, t.c)).collect();
        prop_assert_eq!(set.len(), generated.len());
        prop_assert_eq!(set, brute_force_triples(limit));
        for t in &generated {
            prop_assert!(t.is_valid() && t.is_primitive() && t.a < t.b);
        }
    }
}
