//! Properties, verdicts and replayable witnesses.

use std::fmt;

use crate::division::{self, CandidateDivision};
use crate::error::Result;
use crate::func::{Nat, Valuation};
use crate::ring::{Domain, Element, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Euclidean,
    StronglyEuclidean,
    UltraEuclidean,
    UniquelyEuclidean,
    /// f(a) = f(ab) exactly when b is a unit.
    UnitEquality,
    /// The minimum of f is attained exactly on the units.
    MinAtUnits,
    /// Sums of units are units or zero.
    UnitFieldClosure,
}

impl Property {
    pub const PREDICATES: [Property; 4] = [
        Property::Euclidean,
        Property::StronglyEuclidean,
        Property::UltraEuclidean,
        Property::UniquelyEuclidean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Euclidean => "euclidean",
            Property::StronglyEuclidean => "strongly",
            Property::UltraEuclidean => "ultra",
            Property::UniquelyEuclidean => "uniquely",
            Property::UnitEquality => "unit_equality",
            Property::MinAtUnits => "min_at_units",
            Property::UnitFieldClosure => "unit_field_closure",
        }
    }

    pub fn from_name(name: &str) -> Option<Property> {
        [
            Property::Euclidean,
            Property::StronglyEuclidean,
            Property::UltraEuclidean,
            Property::UniquelyEuclidean,
            Property::UnitEquality,
            Property::MinAtUnits,
            Property::UnitFieldClosure,
        ]
        .into_iter()
        .find(|p| p.name() == name)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Concrete evidence against a property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// f(ab) < f(a).
    Strongly {
        a: Element,
        b: Element,
        product: Element,
        f_a: Nat,
        f_product: Nat,
    },
    /// f(a+b) > max(f(a), f(b)).
    Ultra {
        a: Element,
        b: Element,
        sum: Element,
        f_a: Nat,
        f_b: Nat,
        f_sum: Nat,
    },
    /// a ÷ b has no valid division.
    NoDivision { a: Element, b: Element },
    /// a ÷ b has a number of valid divisions other than one; all found are listed.
    Divisions {
        a: Element,
        b: Element,
        divisions: Vec<(Element, Element)>,
    },
    /// f(a) = f(ab) disagrees with b being a unit.
    UnitEquality {
        a: Element,
        b: Element,
        f_a: Nat,
        f_product: Nat,
        b_is_unit: bool,
    },
    /// Attaining the minimum disagrees with being a unit.
    MinAtUnits {
        element: Element,
        value: Nat,
        min: Nat,
        is_unit: bool,
    },
    /// u + v is nonzero and not a unit.
    UnitSum {
        u: Element,
        v: Element,
        sum: Element,
    },
}

impl Witness {
    /// Recomputes the violation from raw arithmetic and f. Returns false
    /// when the witness does not reproduce.
    pub fn replay(&self, f: &dyn Valuation) -> Result<bool> {
        Ok(match self {
            Witness::Strongly { a, b, product, .. } => {
                *product == a.mul(b)? && !product.is_zero() && f.value(product)? < f.value(a)?
            }
            Witness::Ultra { a, b, sum, .. } => {
                *sum == a.add(b)? && !sum.is_zero() && f.value(sum)? > f.value(a)?.max(f.value(b)?)
            }
            Witness::NoDivision { a, b } => {
                let res = division::enumerate_valid_divisions(f, a, b, None)?;
                res.complete && res.divisions.is_empty()
            }
            Witness::Divisions { a, b, divisions } => {
                let mut ok = divisions.len() != 1;
                for (q, r) in divisions {
                    ok &= CandidateDivision::judge(f, a, b, q, r)?.valid;
                }
                if divisions.is_empty() {
                    let res = division::enumerate_valid_divisions(f, a, b, None)?;
                    ok &= res.complete && res.divisions.is_empty();
                }
                ok
            }
            Witness::UnitEquality {
                a, b, b_is_unit, ..
            } => {
                let equal = f.value(a)? == f.value(&a.mul(b)?)?;
                *b_is_unit == b.is_unit() && equal != *b_is_unit
            }
            Witness::MinAtUnits {
                element,
                min,
                is_unit,
                ..
            } => {
                let at_min = f.value(element)? == *min;
                *is_unit == element.is_unit() && at_min != *is_unit
            }
            Witness::UnitSum { u, v, sum } => {
                u.is_unit() && v.is_unit() && *sum == u.add(v)? && !sum.is_zero() && !sum.is_unit()
            }
        })
    }

    /// The elements of the witness in order, for compact reporting.
    pub fn elements(&self) -> Vec<&Element> {
        match self {
            Witness::Strongly { a, b, .. }
            | Witness::Ultra { a, b, .. }
            | Witness::NoDivision { a, b }
            | Witness::Divisions { a, b, .. }
            | Witness::UnitEquality { a, b, .. } => vec![a, b],
            Witness::MinAtUnits { element, .. } => vec![element],
            Witness::UnitSum { u, v, .. } => vec![u, v],
        }
    }
}

/// Rendered in the ring's notation, e.g. `1 = β·α + 0`.
impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Strongly {
                a,
                b,
                product,
                f_a,
                f_product,
            } => {
                write!(
                    f,
                    "a = {a}, b = {b}: f(ab) = f({product}) = {f_product} < f(a) = {f_a}"
                )
            }
            Witness::Ultra {
                a,
                b,
                sum,
                f_a,
                f_b,
                f_sum,
            } => write!(
                f,
                "a = {a}, b = {b}: f(a+b) = f({sum}) = {f_sum} > max{{f(a), f(b)}} = {}",
                f_a.max(f_b)
            ),
            Witness::NoDivision { a, b } => write!(f, "{a} ÷ {b} has no valid division"),
            Witness::Divisions { a, b, divisions } => {
                write!(f, "{a} ÷ {b} has {} valid divisions:", divisions.len())?;
                for (q, r) in divisions {
                    write!(f, " {a} = {}·{} + {};", paren(q), paren(b), paren(r))?;
                }
                Ok(())
            }
            Witness::UnitEquality {
                a,
                b,
                f_a,
                f_product,
                b_is_unit,
            } => {
                let unit = if *b_is_unit { "a unit" } else { "not a unit" };
                write!(
                    f,
                    "a = {a}, b = {b} ({unit}): f(a) = {f_a}, f(ab) = {f_product}"
                )
            }
            Witness::MinAtUnits {
                element,
                value,
                min,
                is_unit,
            } => {
                let unit = if *is_unit { "a unit" } else { "not a unit" };
                write!(f, "{element} ({unit}) has f = {value}, minimum {min}")
            }
            Witness::UnitSum { u, v, sum } => write!(f, "{u} + {v} = {sum} is not a unit"),
        }
    }
}

/// Wraps sums and negatives in parentheses, as in `(x+1)·x` or `1·2 + (-1)`.
pub(crate) fn paren(e: &Element) -> String {
    let s = e.to_string();
    let halved = s.starts_with('(') && s.ends_with(")/2");
    if !halved && (s.starts_with('-') || s.contains(['+', '-'])) {
        format!("({s})")
    } else {
        s
    }
}

/// Outcome of a check over a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// At least one counterexample; the first is canonical.
    Violated(Vec<Witness>),
    /// Nothing found, but the window does not cover the whole quantifier.
    NoViolationFound,
    /// Every quantifier instance was checked.
    ExhaustivelyVerified,
    /// The check's hypothesis failed.
    NotApplicable,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Violated(_) => "violated",
            Verdict::NoViolationFound => "no_violation_found",
            Verdict::ExhaustivelyVerified => "exhaustively_verified",
            Verdict::NotApplicable => "not_applicable",
        }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn witnesses(&self) -> &[Witness] {
        match self {
            Verdict::Violated(w) => w,
            _ => &[],
        }
    }

    pub fn first_witness(&self) -> Option<&Witness> {
        self.witnesses().first()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub domain: Domain,
    pub function: String,
    pub window: Window,
    pub verdict: Verdict,
    pub pairs_checked: u64,
    pub pairs_skipped: u64,
}
