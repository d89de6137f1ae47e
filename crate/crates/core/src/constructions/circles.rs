//! Circling the square, squaring the circle, and the √2 rule.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{require_positive, Constructed, ConstructionError};
use crate::geometry::trace::TraceBuilder;
use crate::scalar::rational::{integer, rational, Rational};
use crate::scalar::ConstructibleScalar as Cs;

/// Side of the square over the diameter of the circle for the coarse rule.
pub const COARSE_RATIO: (i64, i64) = (13, 15);
/// Radius of the circle over the side of the square for the 9/16 rule.
pub const MAITRAYANIYA_RATIO: (i64, i64) = (9, 16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CircleSquaringMethod {
    FineBaudhayana,
    CoarseRatio,
    MaitrayaniyaRadius,
}

impl CircleSquaringMethod {
    pub const ALL: [CircleSquaringMethod; 3] = [
        CircleSquaringMethod::FineBaudhayana,
        CircleSquaringMethod::CoarseRatio,
        CircleSquaringMethod::MaitrayaniyaRadius,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CircleSquaringMethod::FineBaudhayana => "fine",
            CircleSquaringMethod::CoarseRatio => "coarse",
            CircleSquaringMethod::MaitrayaniyaRadius => "maitrayaniya",
        }
    }
}

impl fmt::Display for CircleSquaringMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CircleSquaringMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CircleSquaringMethod::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown method `{s}` (expected fine, coarse or maitrayaniya)"))
    }
}

/// `7/8 + 1/(8·29) − 1/(8·29·6) + 1/(8·29·6·8)`, summed exactly.
pub fn fine_ratio() -> Rational {
    let d1 = integer(8);
    let d2 = &d1 * integer(29);
    let d3 = &d2 * integer(6);
    let d4 = &d3 * integer(8);
    rational(7, 8) + d2.recip() - d3.recip() + d4.recip()
}

/// The terms `1 + 1/3 + 1/(3·4) − 1/(3·4·34)`.
pub fn savisesha_terms() -> [Rational; 4] {
    [
        integer(1),
        rational(1, 3),
        rational(1, 12),
        rational(-1, 408),
    ]
}

/// The saviśeṣa value of the dvikaraṇī, exactly `577/408`.
pub fn sqrt2_savisesha() -> Cs {
    let sum = savisesha_terms()
        .into_iter()
        .fold(Rational::zero(), |acc, t| acc + t);
    Cs::from_rational(sum)
}

/// Radius of the circle drawn on a square of side `side`: half the diagonal
/// swung onto the midriff, keeping a third of the part that juts out.
pub fn circle_from_square(side: &Cs) -> Result<Constructed, ConstructionError> {
    require_positive(side, "side")?;
    let h = side * &Cs::ratio(1, 2);
    let mut t = TraceBuilder::new();
    let center = t.peg_at(Cs::zero(), Cs::zero())?;
    let sw = t.peg_at(-h.clone(), -h.clone())?;
    let se = t.peg_at(h.clone(), -h.clone())?;
    let ne = t.peg_at(h.clone(), h.clone())?;
    let nw = t.peg_at(-h.clone(), h.clone())?;
    for (a, b) in [(&sw, &se), (&se, &ne), (&ne, &nw), (&nw, &sw)] {
        t.cord(a, b)?;
    }
    let west = t.peg_at(-h.clone(), Cs::zero())?;
    let mid = t.peg_at(h, Cs::zero())?;
    let midriff = t.cord(&west, &mid)?;
    let half_diag = t.cord(&center, &ne)?;
    let swing = t.circle_through(&center, &ne)?;
    let drop = t
        .intersect(&swing, &midriff)?
        .pop()
        .ok_or(ConstructionError::Undecided("diagonal drop"))?;
    let jut = t.cord(&mid, &drop)?;
    let third = &t.segment(&jut)?.length()? * &Cs::ratio(1, 3);
    let r = t.mark(&mid, &drop, &third)?;
    let radius = t.cord(&center, &r)?;
    let circle = t.circle_through(&center, &r)?;
    t.label("center", &center)?;
    t.label("half_diagonal", &half_diag)?;
    t.label("diagonal_drop", &drop)?;
    t.label("radius", &radius)?;
    t.label("circle", &circle)?;
    let value = t.segment(&radius)?.length()?;
    Ok(Constructed {
        value,
        trace: t.finish(),
    })
}

/// Side of the square taken for a circle of the given diameter.
pub fn square_from_circle(
    diameter: &Cs,
    method: CircleSquaringMethod,
) -> Result<Cs, ConstructionError> {
    require_positive(diameter, "diameter")?;
    let ratio = match method {
        CircleSquaringMethod::FineBaudhayana => fine_ratio(),
        CircleSquaringMethod::CoarseRatio => rational(COARSE_RATIO.0, COARSE_RATIO.1),
        CircleSquaringMethod::MaitrayaniyaRadius => return Err(ConstructionError::MethodMismatch),
    };
    Ok(diameter * &Cs::from_rational(ratio))
}

/// Radius of the circle for a square of side `side` under the 9/16 rule.
pub fn maitrayaniya_radius(side: &Cs) -> Result<Cs, ConstructionError> {
    require_positive(side, "side")?;
    Ok(side * &Cs::ratio(MAITRAYANIYA_RATIO.0, MAITRAYANIYA_RATIO.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::trace::replay;
    use crate::scalar::Comparison;

    fn s(text: &str) -> Cs {
        text.parse().unwrap()
    }

    #[test]
    fn fine_ratio_sums_exactly() {
        assert_eq!(fine_ratio(), rational(9785, 11136));
    }

    #[test]
    fn savisesha_value() {
        let v = sqrt2_savisesha();
        assert_eq!(v.as_rational(), Some(rational(577, 408)));
        assert!(v.evaluate(8).rounds_to("1.4142157"));
        assert_eq!(v.compare(&s("sqrt(2)")), Comparison::Greater);
    }

    #[test]
    fn circling_radius() {
        let r = circle_from_square(&s("1")).unwrap();
        assert_eq!(r.value.compare(&s("(2 + sqrt(2))/6")), Comparison::Equal);
        let two = circle_from_square(&s("2")).unwrap();
        assert_eq!(two.value.compare(&s("(2 + sqrt(2))/3")), Comparison::Equal);
        replay(&r.trace).unwrap();
    }

    #[test]
    fn squaring_sides() {
        let fine = square_from_circle(&s("2"), CircleSquaringMethod::FineBaudhayana).unwrap();
        assert_eq!(fine.as_rational(), Some(rational(9785, 5568)));
        let coarse = square_from_circle(&s("2"), CircleSquaringMethod::CoarseRatio).unwrap();
        assert_eq!(coarse.square().as_rational(), Some(rational(676, 225)));
        let one = square_from_circle(&s("1"), CircleSquaringMethod::CoarseRatio).unwrap();
        assert_eq!(one.as_rational(), Some(rational(13, 15)));
        assert_eq!(
            square_from_circle(&s("1"), CircleSquaringMethod::MaitrayaniyaRadius).unwrap_err(),
            ConstructionError::MethodMismatch
        );
    }
}
