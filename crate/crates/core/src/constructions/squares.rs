//! Combining, differencing and transforming squares.

use num_traits::{One, Signed, Zero};

use super::{require_positive, Constructed, ConstructionError};
use crate::geometry::trace::{ConstructionTrace, TraceBuilder};
use crate::geometry::Point;
use crate::scalar::rational::{integer, rational, Rational};
use crate::scalar::{Comparison, ConstructibleScalar as Cs, DEFAULT_MAX_PRECISION};

type Ids = (String, String, String, String);

/// Pegs a rectangle with corner at the origin, `a` along east and `b` north,
/// turning the far corner with two arcs. Returns `(o, east, far, north)`.
fn peg_rectangle(t: &mut TraceBuilder, a: &Cs, b: &Cs) -> Result<Ids, ConstructionError> {
    let o = t.peg(&Point::origin())?;
    let e = t.peg_at(Cs::one(), Cs::zero())?;
    let n = t.peg_at(Cs::zero(), Cs::one())?;
    let along = t.mark(&o, &e, a)?;
    let up = t.mark(&o, &n, b)?;
    let c1 = t.circle(&along, b)?;
    let c2 = t.circle(&up, a)?;
    let hits = t.intersect(&c1, &c2)?;
    let far = opposite_corner(t, &hits, &along, &up, &o)?;
    t.cord(&o, &along)?;
    t.cord(&along, &far)?;
    t.cord(&far, &up)?;
    t.cord(&up, &o)?;
    Ok((o, along, far, up))
}

/// Of the two arc meetings, the one across the diagonal `p → q` from `o`.
pub(super) fn opposite_corner(
    t: &TraceBuilder,
    hits: &[String],
    p: &str,
    q: &str,
    o: &str,
) -> Result<String, ConstructionError> {
    let (p, q, o) = (t.point(p)?, t.point(q)?, t.point(o)?);
    let diag = q.sub(p);
    let side_of_o = diag.cross(&o.sub(p)).sign(DEFAULT_MAX_PRECISION);
    for id in hits {
        let side = diag.cross(&t.point(id)?.sub(p)).sign(DEFAULT_MAX_PRECISION);
        let opposite = matches!(
            (side, side_of_o),
            (Comparison::Greater, Comparison::Less) | (Comparison::Less, Comparison::Greater)
        );
        if opposite {
            return Ok(id.clone());
        }
    }
    Err(ConstructionError::Undecided("rectangle corner"))
}

/// Diagonal of the `a × b` rectangle; returns the diagonal cord id.
fn sum_steps(t: &mut TraceBuilder, a: &Cs, b: &Cs) -> Result<String, ConstructionError> {
    let (o, _, far, _) = peg_rectangle(t, a, b)?;
    Ok(t.cord(&o, &far)?)
}

/// Side `b` marked on the base, arc of radius `a` from the origin cutting the
/// upright at its end; returns the upright cord id.
fn difference_steps(t: &mut TraceBuilder, a: &Cs, b: &Cs) -> Result<String, ConstructionError> {
    let o = t.peg(&Point::origin())?;
    let e = t.peg_at(Cs::one(), Cs::zero())?;
    let foot = t.mark(&o, &e, b)?;
    t.cord(&o, &foot)?;
    let top = t.peg_at(b.clone(), Cs::one())?;
    let upright = t.cord(&foot, &top)?;
    let arc = t.circle(&o, a)?;
    let hits = t.intersect(&arc, &upright)?;
    let cut = hits.last().ok_or(ConstructionError::NotLarger)?.clone();
    t.cord(&o, &cut)?;
    Ok(t.cord(&foot, &cut)?)
}

fn side_of(t: &TraceBuilder, cord: &str) -> Result<Cs, ConstructionError> {
    Ok(t.segment(cord)?.length()?)
}

/// Side of the square equal to the sum of squares on `a` and `b`: the
/// diagonal of the `a × b` rectangle.
pub fn sum_of_squares_side(a: &Cs, b: &Cs) -> Result<Constructed, ConstructionError> {
    require_positive(a, "a")?;
    require_positive(b, "b")?;
    let mut t = TraceBuilder::new();
    let diag = sum_steps(&mut t, a, b)?;
    t.label("side", &diag)?;
    let value = side_of(&t, &diag)?;
    Ok(Constructed {
        value,
        trace: t.finish(),
    })
}

/// Side of the square equal to the difference of squares on `a > b`.
pub fn difference_of_squares_side(a: &Cs, b: &Cs) -> Result<Constructed, ConstructionError> {
    require_positive(b, "b")?;
    match a.compare(b) {
        Comparison::Greater => {}
        Comparison::Undecided => return Err(ConstructionError::Undecided("a > b")),
        _ => return Err(ConstructionError::NotLarger),
    }
    let mut t = TraceBuilder::new();
    let side = difference_steps(&mut t, a, b)?;
    t.label("side", &side)?;
    let value = side_of(&t, &side)?;
    Ok(Constructed {
        value,
        trace: t.finish(),
    })
}

/// Squares a rectangle by moving half its excess over to the top, leaving a
/// square on `(l+w)/2` less one on `(l−w)/2`, then differencing.
/// The two sides may come in either order.
pub fn rectangle_to_square(length: &Cs, width: &Cs) -> Result<Constructed, ConstructionError> {
    require_positive(length, "length")?;
    require_positive(width, "width")?;
    let mut t = TraceBuilder::new();
    let value = match length.compare(width) {
        Comparison::Equal => {
            let (o, along, _, _) = peg_rectangle(&mut t, length, length)?;
            let side = t.cord(&o, &along)?;
            t.label("side", &side)?;
            side_of(&t, &side)?
        }
        Comparison::Greater => {
            let side = rectangle_steps(&mut t, length, width)?;
            t.label("side", &side)?;
            side_of(&t, &side)?
        }
        Comparison::Less => {
            let side = rectangle_steps(&mut t, width, length)?;
            t.label("side", &side)?;
            side_of(&t, &side)?
        }
        Comparison::Undecided => return Err(ConstructionError::Undecided("length against width")),
    };
    Ok(Constructed {
        value,
        trace: t.finish(),
    })
}

fn rectangle_steps(
    t: &mut TraceBuilder,
    length: &Cs,
    width: &Cs,
) -> Result<String, ConstructionError> {
    let half = Cs::ratio(1, 2);
    let big = &(length + width) * &half;
    let small = &(length - width) * &half;
    let (o, _, _, _) = peg_rectangle(t, length, width)?;
    // the cut line and the gnomon's outer square
    let cut_lo = t.peg_at(big.clone(), Cs::zero())?;
    let cut_hi = t.peg_at(big.clone(), width.clone())?;
    t.cord(&cut_lo, &cut_hi)?;
    let corner = t.peg_at(big.clone(), big.clone())?;
    let top = t.peg_at(Cs::zero(), big.clone())?;
    t.cord(&cut_hi, &corner)?;
    t.cord(&corner, &top)?;
    t.cord(&top, &o)?;
    // the missing square on the excess
    let inner = t.peg_at(width.clone(), width.clone())?;
    let inner_e = t.peg_at(big.clone(), width.clone())?;
    let inner_n = t.peg_at(width.clone(), big.clone())?;
    t.cord(&inner, &inner_e)?;
    t.cord(&inner, &inner_n)?;
    difference_steps(t, &big, &small)
}

#[derive(Clone, Debug)]
pub struct Altitude {
    pub altitude: Cs,
    pub base: Rational,
    pub equal_side: Rational,
    pub trace: ConstructionTrace,
}

/// `√n` as the altitude of the isosceles triangle with base `n − 1` and
/// equal sides `(n + 1)/2`.
pub fn sqrt_n_altitude(n: &Rational) -> Result<Altitude, ConstructionError> {
    if !n.is_positive() {
        return Err(ConstructionError::NonpositiveInput("n"));
    }
    if n < &integer(1) {
        return Err(ConstructionError::NotRealizable);
    }
    let base = n - integer(1);
    let equal_side = (n + integer(1)) / integer(2);
    let half = Cs::from_rational(&base / integer(2));
    let side = Cs::from_rational(equal_side.clone());

    let mut t = TraceBuilder::new();
    let foot = t.peg(&Point::origin())?;
    let apex = if base.is_zero() {
        // the triangle closes up on its axis
        let up = t.peg_at(Cs::zero(), Cs::one())?;
        t.mark(&foot, &up, &side)?
    } else {
        let l = t.peg_at(-half.clone(), Cs::zero())?;
        let r = t.peg_at(half, Cs::zero())?;
        let b = t.cord(&l, &r)?;
        t.label("base", &b)?;
        let cl = t.circle(&l, &side)?;
        let cr = t.circle(&r, &side)?;
        let apex = t
            .intersect(&cl, &cr)?
            .pop()
            .ok_or(ConstructionError::Undecided("triangle apex"))?;
        let left_side = t.cord(&l, &apex)?;
        let right_side = t.cord(&r, &apex)?;
        t.label("left_side", &left_side)?;
        t.label("right_side", &right_side)?;
        apex
    };
    let alt = t.cord(&foot, &apex)?;
    t.label("foot", &foot)?;
    t.label("apex", &apex)?;
    t.label("altitude", &alt)?;
    let altitude = side_of(&t, &alt)?;
    Ok(Altitude {
        altitude,
        base,
        equal_side,
        trace: t.finish(),
    })
}

/// Scale factor enlarging a figure of area `area_from` to `area_to`: the
/// unit combined with a square of the excess `area_to/area_from − 1`.
pub fn augment_unit(
    area_from: &Rational,
    area_to: &Rational,
) -> Result<Constructed, ConstructionError> {
    if !area_from.is_positive() {
        return Err(ConstructionError::NonpositiveInput("starting area"));
    }
    if area_to <= area_from {
        return Err(ConstructionError::NotAugmentation);
    }
    let excess = Cs::from_rational(area_to / area_from - integer(1)).checked_sqrt()?;
    sum_of_squares_side(&Cs::one(), &excess)
}

#[derive(Clone, Debug)]
pub struct Dronaciti {
    pub small_side: Cs,
    pub large_side: Cs,
    pub trace: ConstructionTrace,
}

/// Splits a square into squares of one tenth and nine tenths of its area by
/// squaring the two strips.
pub fn dronaciti_partition(side: &Cs) -> Result<Dronaciti, ConstructionError> {
    require_positive(side, "side")?;
    let tenth = side * &Cs::ratio(1, 10);
    let nine_tenths = side * &Cs::ratio(9, 10);
    let mut t = TraceBuilder::new();
    let small = rectangle_steps(&mut t, side, &tenth)?;
    let large = rectangle_steps(&mut t, side, &nine_tenths)?;
    t.label("small_side", &small)?;
    t.label("large_side", &large)?;
    Ok(Dronaciti {
        small_side: side_of(&t, &small)?,
        large_side: side_of(&t, &large)?,
        trace: t.finish(),
    })
}

pub fn default_fractions() -> Vec<Rational> {
    vec![rational(1, 2), rational(1, 3), rational(1, 4)]
}

/// Exact `(side, area)` pairs for the sides `1..=max_n` and then each fraction.
pub fn square_area_table(
    max_n: u64,
    fractions: &[Rational],
) -> Result<Vec<(Rational, Rational)>, ConstructionError> {
    if max_n == 0 {
        return Err(ConstructionError::NonpositiveInput("max_n"));
    }
    if fractions.iter().any(|f| !f.is_positive()) {
        return Err(ConstructionError::NonpositiveInput("fraction"));
    }
    let sides = (1..=max_n)
        .map(|n| Rational::from_integer(n.into()))
        .chain(fractions.iter().cloned());
    Ok(sides.map(|s| (s.clone(), &s * &s)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremCheck {
    Holds,
    Undecided,
}

/// Builds the rectangle and checks diagonal² = length² + width².
pub fn diagonal_rectangle_theorem_check(length: &Cs, width: &Cs) -> TheoremCheck {
    let check = || -> Result<bool, ConstructionError> {
        require_positive(length, "length")?;
        require_positive(width, "width")?;
        let mut t = TraceBuilder::new();
        let diag = sum_steps(&mut t, length, width)?;
        let d2 = t.segment(&diag)?.length_sq();
        let sides = &(length * length) + &(width * width);
        Ok(d2.compare(&sides) == Comparison::Equal)
    };
    match check() {
        Ok(true) => TheoremCheck::Holds,
        _ => TheoremCheck::Undecided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::trace::replay;

    fn s(text: &str) -> Cs {
        text.parse().unwrap()
    }

    fn assert_value(c: &Cs, want: &str) {
        assert_eq!(
            c.compare(&s(want)),
            Comparison::Equal,
            "got {c}, want {want}"
        );
    }

    #[test]
    fn sums_and_differences() {
        assert_value(&sum_of_squares_side(&s("3"), &s("4")).unwrap().value, "5");
        assert_value(
            &sum_of_squares_side(&s("1"), &s("1")).unwrap().value,
            "sqrt(2)",
        );
        assert_value(
            &sum_of_squares_side(&s("1"), &s("sqrt(2/15)"))
                .unwrap()
                .value,
            "sqrt(17/15)",
        );
        assert_value(
            &difference_of_squares_side(&s("13"), &s("12"))
                .unwrap()
                .value,
            "5",
        );
        assert_value(
            &difference_of_squares_side(&s("sqrt(2)"), &s("1"))
                .unwrap()
                .value,
            "1",
        );
        assert_eq!(
            difference_of_squares_side(&s("1"), &s("1")).unwrap_err(),
            ConstructionError::NotLarger
        );
    }

    #[test]
    fn rectangles() {
        assert_value(&rectangle_to_square(&s("2"), &s("1/2")).unwrap().value, "1");
        assert_value(&rectangle_to_square(&s("4"), &s("1")).unwrap().value, "2");
        let same = rectangle_to_square(&s("sqrt(3)"), &s("sqrt(3)")).unwrap();
        assert_value(&same.value, "sqrt(3)");
        replay(&same.trace).unwrap();
    }

    #[test]
    fn altitudes() {
        assert_value(&sqrt_n_altitude(&integer(2)).unwrap().altitude, "sqrt(2)");
        let four = sqrt_n_altitude(&integer(4)).unwrap();
        assert_eq!(four.altitude.as_rational(), Some(integer(2)));
        assert_value(&sqrt_n_altitude(&integer(1)).unwrap().altitude, "1");
        let seven = sqrt_n_altitude(&integer(7)).unwrap();
        assert!(seven.altitude.evaluate(12).rounds_to("2.6457513"));
        assert_eq!(seven.base, integer(6));
        assert_eq!(seven.equal_side, integer(4));
        assert_eq!(
            sqrt_n_altitude(&rational(1, 2)).unwrap_err(),
            ConstructionError::NotRealizable
        );
    }

    #[test]
    fn augmentation() {
        let r = augment_unit(&rational(15, 2), &rational(17, 2)).unwrap();
        assert_value(&r.value.square(), "17/15");
        assert_value(
            &augment_unit(&integer(1), &integer(2)).unwrap().value,
            "sqrt(2)",
        );
        assert_eq!(
            augment_unit(&integer(2), &integer(1)).unwrap_err(),
            ConstructionError::NotAugmentation
        );
    }

    #[test]
    fn dronaciti() {
        let d = dronaciti_partition(&s("1")).unwrap();
        assert_value(&d.small_side, "sqrt(1/10)");
        assert_value(&d.large_side, "sqrt(9/10)");
        let d = dronaciti_partition(&s("sqrt(10)")).unwrap();
        assert_value(&d.small_side, "1");
        assert_value(&d.large_side, "3");
        replay(&d.trace).unwrap();
    }

    #[test]
    fn area_table() {
        let rows = square_area_table(4, &default_fractions()).unwrap();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[1], (integer(2), integer(4)));
        assert_eq!(rows[3], (integer(4), integer(16)));
        assert_eq!(rows[5], (rational(1, 3), rational(1, 9)));
    }

    #[test]
    fn diagonal_theorem() {
        for (l, w) in [("3", "4"), ("1", "1"), ("sqrt(3)", "sqrt(5)")] {
            assert_eq!(
                diagonal_rectangle_theorem_check(&s(l), &s(w)),
                TheoremCheck::Holds
            );
        }
    }
}
