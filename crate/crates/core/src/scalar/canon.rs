//! Canonical normal form for surd expressions.
//!
//! A value is a finite sum of rational multiples of radical monomials. A
//! monomial is `√k · √u₁ · … · √uₙ` where `k` is a square-free integer and
//! each `uᵢ` is itself a canonical value that is not rational (a nested
//! radicand). With only integer radicands the representation is unique, so
//! equality of normal forms decides equality of values. Nested radicands are
//! treated as formal symbols with `(√u)² = u`; every identity derived that way
//! holds for the real values, so a zero normal form always proves zero.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{format_ratio, prime_factors, rational_sqrt, square_free_split};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Monomial {
    root: BigUint,
    nested: Vec<Arc<Canon>>,
}

impl Monomial {
    fn unit() -> Self {
        Monomial {
            root: BigUint::one(),
            nested: Vec::new(),
        }
    }

    fn is_unit(&self) -> bool {
        self.root.is_one() && self.nested.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Canon {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Canon {
    pub(crate) fn zero() -> Self {
        Canon::default()
    }

    pub(crate) fn from_rational(q: BigRational) -> Self {
        Canon::term(q, Monomial::unit())
    }

    fn term(coeff: BigRational, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Canon { terms }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn depth(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.nested.iter())
            .map(|u| u.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, monomial: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(monomial).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub(crate) fn add(&self, other: &Canon) -> Canon {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub(crate) fn neg(&self) -> Canon {
        Canon {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub(crate) fn sub(&self, other: &Canon) -> Canon {
        self.add(&other.neg())
    }

    fn scale(&self, q: &BigRational) -> Canon {
        if q.is_zero() {
            return Canon::zero();
        }
        Canon {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub(crate) fn mul(&self, other: &Canon) -> Canon {
        let mut out = Canon::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let product = mul_monomials(m1, m2).scale(&(c1 * c2));
                for (m, c) in product.terms {
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    /// Multiplicative inverse by repeated conjugation. `None` when the formal
    /// ring has a zero divisor along the way (only possible with nested
    /// radicands) or when the value is zero.
    pub(crate) fn inverse(&self) -> Option<Canon> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Canon::from_rational(q.recip()));
        }
        let conj = self.conjugate();
        let norm = self.mul(&conj);
        let inv_norm = norm.inverse()?;
        Some(conj.mul(&inv_norm))
    }

    /// Conjugate with respect to one radical chosen so that `self * conj`
    /// no longer contains it.
    fn conjugate(&self) -> Canon {
        let deepest = self
            .terms
            .keys()
            .flat_map(|m| m.nested.iter())
            .max_by(|a, b| a.depth().cmp(&b.depth()).then_with(|| a.cmp(b)))
            .cloned();
        let mut conj = Canon::zero();
        if let Some(atom) = deepest {
            for (m, c) in &self.terms {
                let flip = m.nested.contains(&atom);
                conj.add_term(m.clone(), if flip { -c } else { c.clone() });
            }
            return conj;
        }
        let prime = self
            .terms
            .keys()
            .flat_map(|m| prime_factors(&m.root))
            .max()
            .expect("irrational value has a radical");
        for (m, c) in &self.terms {
            let flip = (&m.root % &prime).is_zero();
            conj.add_term(m.clone(), if flip { -c } else { c.clone() });
        }
        conj
    }

    /// Principal square root of a value known to be nonnegative.
    pub(crate) fn sqrt(&self) -> Canon {
        if self.is_zero() {
            return Canon::zero();
        }
        if let Some(q) = self.as_rational() {
            return sqrt_rational(&q);
        }
        if let Some(denested) = self.denest() {
            return denested;
        }
        // pull out the rational content so the nested radicand is normalized
        let lead = self.terms.values().next().unwrap().abs();
        let unit = self.scale(&lead.recip());
        let atom = Canon::term(
            BigRational::one(),
            Monomial {
                root: BigUint::one(),
                nested: vec![Arc::new(unit)],
            },
        );
        sqrt_rational(&lead).mul(&atom)
    }

    /// `√(a + b√k) = √x ± √y` when `a² − b²k` is a rational square.
    fn denest(&self) -> Option<Canon> {
        if self.terms.len() != 2 {
            return None;
        }
        let mut it = self.terms.iter();
        let (m0, a) = it.next()?;
        let (m1, b) = it.next()?;
        if !m0.is_unit() || !m1.nested.is_empty() || !a.is_positive() {
            return None;
        }
        let k = BigRational::from_integer(BigInt::from(m1.root.clone()));
        let disc = a * a - b * b * k;
        let t = rational_sqrt(&disc)?;
        let two = BigRational::from_integer(BigInt::from(2));
        let x = (a + &t) / &two;
        let y = (a - &t) / &two;
        if x.is_negative() || y.is_negative() {
            return None;
        }
        let sy = sqrt_rational(&y);
        Some(if b.is_negative() {
            sqrt_rational(&x).sub(&sy)
        } else {
            sqrt_rational(&x).add(&sy)
        })
    }
}

fn sqrt_rational(q: &BigRational) -> Canon {
    debug_assert!(!q.is_negative());
    // √(n/d) = √(n·d) / d
    let nd = (q.numer() * q.denom()).to_biguint().unwrap_or_default();
    let (square, free) = square_free_split(&nd);
    let coeff = BigRational::new(BigInt::from(square), q.denom().clone());
    Canon::term(
        coeff,
        Monomial {
            root: free,
            nested: Vec::new(),
        },
    )
}

fn mul_monomials(m1: &Monomial, m2: &Monomial) -> Canon {
    let g = m1.root.gcd(&m2.root);
    let root = (&m1.root / &g) * (&m2.root / &g);
    let mut nested = Vec::new();
    let mut shared = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < m1.nested.len() || j < m2.nested.len() {
        match (m1.nested.get(i), m2.nested.get(j)) {
            (Some(a), Some(b)) if a == b => {
                shared.push(a.clone());
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                nested.push(a.clone());
                i += 1;
            }
            (Some(_), Some(b)) => {
                nested.push(b.clone());
                j += 1;
            }
            (Some(a), None) => {
                nested.push(a.clone());
                i += 1;
            }
            (None, Some(b)) => {
                nested.push(b.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    let mut out = Canon::term(
        BigRational::from_integer(BigInt::from(g)),
        Monomial { root, nested },
    );
    for radicand in shared {
        out = out.mul(&radicand);
    }
    out
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    if !m.root.is_one() {
        parts.push(format!("sqrt({})", m.root));
    }
    for u in &m.nested {
        parts.push(format!("sqrt({u})"));
    }
    parts.join("*")
}

impl fmt::Display for Canon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{}", format_ratio(&magnitude))?;
                continue;
            }
            let radical = fmt_monomial(m);
            let (n, d) = (magnitude.numer(), magnitude.denom());
            match (n.is_one(), d.is_one()) {
                (true, true) => write!(f, "{radical}")?,
                (false, true) => write!(f, "{n}*{radical}")?,
                (true, false) => write!(f, "{radical}/{d}")?,
                (false, false) => write!(f, "{n}*{radical}/{d}")?,
            }
        }
        Ok(())
    }
}
