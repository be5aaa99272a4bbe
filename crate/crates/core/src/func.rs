//! Candidate Euclidean functions f: R∖{0} → ℤ₀⁺.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{self, checked_size, Domain, Element, Kind, Window, ENUMERATION_LIMIT};

/// A value in ℤ₀⁺.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Nat(pub u64);

impl Nat {
    pub fn get(self) -> u64 {
        self.0
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Nat {
        Nat(v)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Anything that assigns values to nonzero elements. Property checks run
/// against this trait so that refinements can be checked like built-ins.
pub trait Valuation: Sync {
    fn value(&self, a: &Element) -> Result<Nat>;

    fn label(&self) -> String;

    /// Every nonzero r with value(r) < bound, in enumeration order, when that
    /// set is finite and derivable from the definition.
    fn sublevel(&self, _domain: Domain, _bound: Nat) -> Result<Option<Vec<Element>>> {
        Ok(None)
    }
}

/// Description of a candidate Euclidean function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EuclideanFn {
    /// |n| on ℤ.
    AbsValue,
    /// deg on F_q[x].
    Degree,
    /// Order of vanishing on F_q⟦x⟧.
    Order,
    /// |N(a)| on 𝒪_d.
    QuadNorm,
    /// phi[deg a], phi strictly increasing.
    PhiDeg { phi: Vec<Nat> },
    /// Value table on the nonzero elements of a finite field.
    FieldTable {
        field: Domain,
        table: BTreeMap<Element, Nat>,
    },
    /// `base` with finitely many values overridden.
    ExceptionTable {
        base: Box<EuclideanFn>,
        exceptions: BTreeMap<Element, Nat>,
    },
}

impl EuclideanFn {
    /// The built-in function of a domain; the constant 0 on fields.
    pub fn default_for(domain: Domain) -> EuclideanFn {
        match domain.kind() {
            Kind::Integers => EuclideanFn::AbsValue,
            Kind::Quadratic { .. } => EuclideanFn::QuadNorm,
            Kind::Poly { .. } => EuclideanFn::Degree,
            Kind::Series { .. } => EuclideanFn::Order,
            Kind::Field { .. } => EuclideanFn::constant(domain, 0).unwrap(),
        }
    }

    /// Field table from values listed in enumeration order of the nonzero
    /// elements.
    pub fn field_table(field: Domain, values: &[u64]) -> Result<EuclideanFn> {
        let elems = ring::enumerate_nonzero(field, Window::WholeField)?;
        if values.len() != elems.len() {
            return Err(Error::InvalidFunction(format!(
                "{field} has {} nonzero elements, got {} values",
                elems.len(),
                values.len()
            )));
        }
        let table = elems
            .into_iter()
            .zip(values.iter().map(|&v| Nat(v)))
            .collect();
        Ok(EuclideanFn::FieldTable { field, table })
    }

    pub fn constant(field: Domain, value: u64) -> Result<EuclideanFn> {
        let n = field.field_order().map_or(0, |q| q as usize - 1);
        EuclideanFn::field_table(field, &vec![value; n])
    }

    pub fn phi_deg(phi: impl IntoIterator<Item = u64>) -> EuclideanFn {
        EuclideanFn::PhiDeg {
            phi: phi.into_iter().map(Nat).collect(),
        }
    }

    pub fn with_exceptions(
        base: EuclideanFn,
        exceptions: impl IntoIterator<Item = (Element, u64)>,
    ) -> EuclideanFn {
        EuclideanFn::ExceptionTable {
            base: Box::new(base),
            exceptions: exceptions.into_iter().map(|(e, v)| (e, Nat(v))).collect(),
        }
    }

    /// Short stable name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            EuclideanFn::AbsValue => "abs",
            EuclideanFn::Degree => "deg",
            EuclideanFn::Order => "ord",
            EuclideanFn::QuadNorm => "norm",
            EuclideanFn::PhiDeg { .. } => "phi-deg",
            EuclideanFn::FieldTable { .. } => "table",
            EuclideanFn::ExceptionTable { .. } => "except",
        }
    }

    /// Built-ins whose strong Euclidean property is known, so that the
    /// refinement equals the function itself.
    pub fn is_known_strong(&self) -> bool {
        matches!(
            self,
            EuclideanFn::AbsValue
                | EuclideanFn::Degree
                | EuclideanFn::Order
                | EuclideanFn::QuadNorm
                | EuclideanFn::PhiDeg { .. }
        )
    }

    /// Checks the type invariants: phi strictly increasing, tables total and
    /// on the right domains.
    pub fn validate(&self) -> Result<()> {
        match self {
            EuclideanFn::PhiDeg { phi } => {
                if phi.is_empty() {
                    return Err(Error::InvalidFunction("phi table is empty".into()));
                }
                for (i, w) in phi.windows(2).enumerate() {
                    if w[0] >= w[1] {
                        return Err(Error::NonIncreasingPhi {
                            index: i,
                            value: w[0].0,
                            next: w[1].0,
                        });
                    }
                }
                Ok(())
            }
            EuclideanFn::FieldTable { field, table } => {
                if !field.is_field() {
                    return Err(Error::InvalidFunction(format!(
                        "{field} is not a finite field"
                    )));
                }
                if let Some(bad) = table.keys().find(|k| k.domain() != *field || k.is_zero()) {
                    return Err(Error::InvalidFunction(format!(
                        "table key {bad} is not a nonzero element of {field}"
                    )));
                }
                for e in ring::enumerate_nonzero(*field, Window::WholeField)? {
                    if !table.contains_key(&e) {
                        return Err(Error::PartialTable { missing: e });
                    }
                }
                Ok(())
            }
            EuclideanFn::ExceptionTable { base, exceptions } => {
                if matches!(**base, EuclideanFn::ExceptionTable { .. }) {
                    return Err(Error::InvalidFunction(
                        "exception tables do not nest".into(),
                    ));
                }
                base.validate()?;
                for e in exceptions.keys() {
                    if e.is_zero() {
                        return Err(Error::InvalidFunction("exception at zero".into()));
                    }
                    base.compat(e.domain())?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Ok when the function is defined on the domain.
    pub fn compat(&self, domain: Domain) -> Result<()> {
        let ok = match (self, domain.kind()) {
            (EuclideanFn::AbsValue, Kind::Integers) => true,
            (EuclideanFn::Degree | EuclideanFn::PhiDeg { .. }, Kind::Poly { .. }) => true,
            (EuclideanFn::Order, Kind::Series { .. }) => true,
            (EuclideanFn::QuadNorm, Kind::Quadratic { .. }) => true,
            (EuclideanFn::FieldTable { field, .. }, _) => *field == domain,
            (EuclideanFn::ExceptionTable { base, exceptions }, _) => {
                base.compat(domain)?;
                exceptions.keys().all(|e| e.domain() == domain)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IncompatibleFunction {
                function: self.to_string(),
                domain,
            })
        }
    }

    pub fn eval(&self, a: &Element) -> Result<Nat> {
        if a.is_zero() {
            return Err(if a.domain().precision().is_some() {
                Error::PrecisionExhausted(format!(
                    "{a} is zero modulo x^T; its order is not determined"
                ))
            } else {
                Error::EvalAtZero
            });
        }
        match self {
            EuclideanFn::AbsValue => {
                let n = a.as_integer().ok_or_else(|| self.incompatible(a))?;
                ring::to_u64(&n.abs())
                    .map(Nat)
                    .ok_or_else(|| Error::ValueOverflow(a.to_string()))
            }
            EuclideanFn::Degree => a
                .degree()
                .map(|d| Nat(d as u64))
                .ok_or_else(|| self.incompatible(a)),
            EuclideanFn::Order => match a.domain().kind() {
                Kind::Series { .. } => Ok(Nat(a.order().unwrap() as u64)),
                _ => Err(self.incompatible(a)),
            },
            EuclideanFn::QuadNorm => {
                let n = a.signed_norm().ok_or_else(|| self.incompatible(a))?;
                ring::to_u64(&n.abs())
                    .map(Nat)
                    .ok_or_else(|| Error::ValueOverflow(a.to_string()))
            }
            EuclideanFn::PhiDeg { phi } => {
                let d = a.degree().ok_or_else(|| self.incompatible(a))?;
                phi.get(d).copied().ok_or(Error::RangeExceeded {
                    degree: d,
                    max: phi.len() - 1,
                })
            }
            EuclideanFn::FieldTable { field, table } => {
                if a.domain() != *field {
                    return Err(self.incompatible(a));
                }
                table
                    .get(a)
                    .copied()
                    .ok_or_else(|| Error::PartialTable { missing: a.clone() })
            }
            EuclideanFn::ExceptionTable { base, exceptions } => match exceptions.get(a) {
                Some(v) => Ok(*v),
                None => base.eval(a),
            },
        }
    }

    fn incompatible(&self, a: &Element) -> Error {
        Error::IncompatibleFunction {
            function: self.to_string(),
            domain: a.domain(),
        }
    }

    /// All nonzero r with f(r) < bound, when derivable: absolute value and
    /// imaginary norms give finite balls, degree and phi∘deg give bounded
    /// degree over a finite field, order ranges over the residues modulo x^T
    /// and tables over the whole field. Real quadratic norms have infinite
    /// sublevel sets, so `None` is returned.
    pub fn sublevel(&self, domain: Domain, bound: Nat) -> Result<Option<Vec<Element>>> {
        self.compat(domain)?;
        let b = bound.0;
        let too_large = || Error::WindowTooLarge {
            domain,
            window: Window::default_for(domain),
            limit: ENUMERATION_LIMIT,
        };
        let out = match self {
            EuclideanFn::AbsValue => {
                if b > ENUMERATION_LIMIT {
                    return Err(too_large());
                }
                ring::enumerate_nonzero(domain, Window::Magnitude(b.saturating_sub(1)))?
            }
            EuclideanFn::Degree => self.low_degree(domain, b as usize)?,
            EuclideanFn::PhiDeg { phi } => {
                let below = phi.iter().take_while(|v| v.0 < b).count();
                if below == phi.len() {
                    // every degree in the table qualifies; higher degrees are undefined
                    return Err(Error::RangeExceeded {
                        degree: phi.len(),
                        max: phi.len() - 1,
                    });
                }
                self.low_degree(domain, below)?
            }
            EuclideanFn::Order => {
                let all = ring::enumerate_nonzero(domain, Window::Residues)?;
                all.into_iter()
                    .filter(|r| (r.order().unwrap() as u64) < b)
                    .collect()
            }
            EuclideanFn::QuadNorm => {
                let d = domain.quadratic_d().unwrap();
                if d > 0 {
                    return Ok(None);
                }
                // N = (u² + |d|v²)/4 < b bounds |u| and |v| by 2√b
                let m = (4.0 * b as f64).sqrt().ceil() as u64 + 1;
                if m > 1 << 11 {
                    return Err(too_large());
                }
                ring::enumerate_nonzero(domain, Window::Coordinates(m))?
                    .into_iter()
                    .filter(|r| self.eval(r).is_ok_and(|v| v.0 < b))
                    .collect()
            }
            EuclideanFn::FieldTable { table, .. } => table
                .iter()
                .filter(|(_, v)| v.0 < b)
                .map(|(e, _)| e.clone())
                .collect(),
            EuclideanFn::ExceptionTable { base, exceptions } => {
                let Some(base_set) = base.sublevel(domain, bound)? else {
                    return Ok(None);
                };
                let mut out: Vec<Element> = base_set
                    .into_iter()
                    .filter(|r| !exceptions.contains_key(r))
                    .collect();
                out.extend(
                    exceptions
                        .iter()
                        .filter(|(_, v)| v.0 < b)
                        .map(|(e, _)| e.clone()),
                );
                out.sort();
                out
            }
        };
        Ok(Some(out))
    }

    /// Nonzero polynomials of degree < n.
    fn low_degree(&self, domain: Domain, n: usize) -> Result<Vec<Element>> {
        if n == 0 {
            return Ok(Vec::new());
        }
        let q = domain.field_order().unwrap();
        if checked_size(q, n).is_none() {
            return Err(Error::WindowTooLarge {
                domain,
                window: Window::Degree(n - 1),
                limit: ENUMERATION_LIMIT,
            });
        }
        ring::enumerate_nonzero(domain, Window::Degree(n - 1))
    }
}

impl Valuation for EuclideanFn {
    fn value(&self, a: &Element) -> Result<Nat> {
        self.eval(a)
    }

    fn label(&self) -> String {
        self.to_string()
    }

    fn sublevel(&self, domain: Domain, bound: Nat) -> Result<Option<Vec<Element>>> {
        EuclideanFn::sublevel(self, domain, bound)
    }
}

fn fmt_map(f: &mut fmt::Formatter<'_>, map: &BTreeMap<Element, Nat>) -> fmt::Result {
    let body: Vec<String> = map
        .iter()
        .map(|(k, v)| format!("{}:{v}", k.to_syntax()))
        .collect();
    write!(f, "{{{}}}", body.join(","))
}

/// Reports use the CLI spelling: `abs`, `phi-deg[0,1,2]`, `table{1:0,a:1,b:1}`,
/// `abs+{3:9}`.
impl fmt::Display for EuclideanFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EuclideanFn::PhiDeg { phi } => {
                let step = phi.len() > 4
                    && phi
                        .windows(2)
                        .all(|w| w[1].0.wrapping_sub(w[0].0) == phi[1].0.wrapping_sub(phi[0].0));
                if step {
                    // long arithmetic progressions, e.g. phi-deg[1,2,...,33]
                    return write!(
                        f,
                        "phi-deg[{},{},...,{}]",
                        phi[0],
                        phi[1],
                        phi[phi.len() - 1]
                    );
                }
                let body: Vec<String> = phi.iter().map(|v| v.to_string()).collect();
                write!(f, "phi-deg[{}]", body.join(","))
            }
            EuclideanFn::FieldTable { table, .. } => {
                f.write_str("table")?;
                fmt_map(f, table)
            }
            EuclideanFn::ExceptionTable { base, exceptions } => {
                write!(f, "{base}+")?;
                fmt_map(f, exceptions)
            }
            other => f.write_str(other.name()),
        }
    }
}
