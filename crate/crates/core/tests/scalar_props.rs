use num_traits::{One, Zero};
use proptest::prelude::*;

use sulva_core::scalar::rational::rational;
use sulva_core::texts::Text;
use sulva_core::units::UnitTable;
use sulva_core::{Comparison, ConstructibleScalar as Cs};

fn small_rational() -> impl Strategy<Value = Cs> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Cs::ratio(n, d))
}

/// Rationals and rational multiples of square roots of small integers.
fn surd_term() -> impl Strategy<Value = Cs> {
    prop_oneof![
        small_rational(),
        (small_rational(), 2i64..=30)
            .prop_map(|(q, n)| &q * &Cs::integer(n).checked_sqrt().unwrap()),
    ]
}

/// Arbitrary expressions: sums, products, quotients and nested roots.
fn expression() -> impl Strategy<Value = Cs> {
    surd_term().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a + &b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a - &b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a * &b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| {
                // shift the divisor away from zero
                let d = &(&b * &b) + &Cs::one();
                a.checked_div(&d).unwrap()
            }),
            inner.prop_map(|a| (&(&a * &a) + &Cs::ratio(1, 3)).checked_sqrt().unwrap()),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in surd_term(), b in surd_term(), c in surd_term()) {
        prop_assert_eq!((&(&a + &b) + &c).compare(&(&a + &(&b + &c))), Comparison::Equal);
        prop_assert_eq!((&a * &(&b + &c)).compare(&(&(&a * &b) + &(&a * &c))), Comparison::Equal);
        prop_assert_eq!((&a * &b).compare(&(&b * &a)), Comparison::Equal);
        prop_assert_eq!((&a - &a).compare(&Cs::zero()), Comparison::Equal);
        if a.compare(&Cs::zero()) != Comparison::Equal {
            prop_assert_eq!(a.checked_div(&a).unwrap().compare(&Cs::one()), Comparison::Equal);
        }
    }

    #[test]
    fn square_of_root(x in prop_oneof![
        (0i64..500, 1i64..40).prop_map(|(n, d)| Cs::ratio(n, d)),
        surd_term().prop_map(|t| &(&t * &t) + &Cs::integer(2)),
    ]) {
        let r = x.checked_sqrt().unwrap();
        prop_assert_eq!((&(&r * &r) - &x).compare(&Cs::zero()), Comparison::Equal);
    }

    #[test]
    fn parse_display_round_trip(a in surd_term()) {
        let back: Cs = a.to_string().parse().unwrap();
        prop_assert_eq!(back.compare(&a), Comparison::Equal);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn intervals_nest(e in expression(), p in 4u32..30) {
        let loose = e.evaluate(p);
        let tight = e.evaluate(2 * p);
        prop_assert!(loose.lower() <= loose.upper());
        prop_assert!(tight.is_subset_of(&loose), "{} not within {}", tight, loose);
    }
}

#[test]
fn interval_encloses_known_decimals() {
    // digits of √2 and √3 from tables, not from the library
    let sqrt2 = Cs::integer(2).checked_sqrt().unwrap();
    let sqrt3 = Cs::integer(3).checked_sqrt().unwrap();
    assert!(sqrt2
        .evaluate(40)
        .certifies_prefix("1.41421356237309504880168872420"));
    assert!(sqrt3
        .evaluate(40)
        .certifies_prefix("1.73205080756887729352744634150"));
    let e = (&sqrt2 + &sqrt3).checked_div(&Cs::integer(7)).unwrap();
    assert!(e.evaluate(20).certifies_prefix("0.449466338563138906"));
}

#[test]
fn undecided_is_reported_not_guessed() {
    let a = Cs::integer(2).checked_sqrt().unwrap();
    let b = &a + &Cs::ratio(1, 10);
    assert_eq!(a.compare_with(&b, 5), Comparison::Less);
    assert_eq!(a.compare(&a.clone()), Comparison::Equal);
}

#[test]
fn unit_table_properties() {
    let table = UnitTable::default();
    let ratio = |name: &str| table.lookup(name).unwrap().ratio_to_angula.clone();
    assert_eq!(ratio("puruṣa") / ratio("vitasti"), rational(10, 1));
    for unit in table.attested_in(Text::Katyayana) {
        assert!(unit.name != "tila" && unit.name != "aṇu", "{}", unit.name);
    }
    for unit in table.units() {
        assert!(unit.ratio_to_angula > rational(0, 1));
    }
    let reloaded = UnitTable::from_json(&table.to_json()).unwrap();
    assert_eq!(reloaded.units(), table.units());
}
