use std::fmt;

use crate::error::{Error, Result};

/// Values of d for which 𝒪_d is supported.
pub const QUADRATIC_D: [i64; 7] = [-11, -7, -3, -2, -1, 2, 3];

/// Supported finite field orders.
pub const FIELD_ORDERS: [u8; 5] = [2, 3, 4, 5, 7];

/// Shape of a concrete integral domain (or, for `Series`, of its truncation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Integers,
    /// 𝒪_d: ℤ[(1+√d)/2] when d ≡ 1 (mod 4), ℤ[√d] otherwise.
    Quadratic {
        d: i64,
    },
    Field {
        q: u8,
    },
    /// F_q[x].
    Poly {
        q: u8,
    },
    /// F_q⟦x⟧ represented modulo x^precision.
    Series {
        q: u8,
        precision: usize,
    },
}

/// A validated [`Kind`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domain(Kind);

impl Domain {
    pub fn new(kind: Kind) -> Result<Domain> {
        let check_q = |q: u8| {
            if FIELD_ORDERS.contains(&q) {
                Ok(())
            } else {
                Err(Error::InvalidDomain(format!(
                    "field order {q} not in {FIELD_ORDERS:?}"
                )))
            }
        };
        match kind {
            Kind::Integers => {}
            Kind::Quadratic { d } => {
                if !QUADRATIC_D.contains(&d) {
                    return Err(Error::InvalidDomain(format!(
                        "d = {d} not in {QUADRATIC_D:?}"
                    )));
                }
            }
            Kind::Field { q } | Kind::Poly { q } => check_q(q)?,
            Kind::Series { q, precision } => {
                check_q(q)?;
                if precision < 2 {
                    return Err(Error::InvalidDomain(format!("precision {precision} < 2")));
                }
            }
        }
        Ok(Domain(kind))
    }

    pub fn integers() -> Domain {
        Domain(Kind::Integers)
    }

    pub fn quadratic(d: i64) -> Result<Domain> {
        Domain::new(Kind::Quadratic { d })
    }

    /// ℤ[i].
    pub fn gaussian() -> Domain {
        Domain(Kind::Quadratic { d: -1 })
    }

    pub fn field(q: u8) -> Result<Domain> {
        Domain::new(Kind::Field { q })
    }

    pub fn poly(q: u8) -> Result<Domain> {
        Domain::new(Kind::Poly { q })
    }

    pub fn series(q: u8, precision: usize) -> Result<Domain> {
        Domain::new(Kind::Series { q, precision })
    }

    pub fn kind(&self) -> Kind {
        self.0
    }

    pub fn is_field(&self) -> bool {
        matches!(self.0, Kind::Field { .. })
    }

    /// Order of the coefficient field, for field, polynomial and series domains.
    pub fn field_order(&self) -> Option<u8> {
        match self.0 {
            Kind::Field { q } | Kind::Poly { q } | Kind::Series { q, .. } => Some(q),
            _ => None,
        }
    }

    pub fn quadratic_d(&self) -> Option<i64> {
        match self.0 {
            Kind::Quadratic { d } => Some(d),
            _ => None,
        }
    }

    /// True for 𝒪_d with d ≡ 1 (mod 4), whose elements may have half-integer
    /// coordinates.
    pub fn is_half_lattice(&self) -> bool {
        matches!(self.0, Kind::Quadratic { d } if d.rem_euclid(4) == 1)
    }

    pub fn precision(&self) -> Option<usize> {
        match self.0 {
            Kind::Series { precision, .. } => Some(precision),
            _ => None,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Integers => write!(f, "Z"),
            Kind::Quadratic { d } => write!(f, "O({d})"),
            Kind::Field { q } => write!(f, "F_{q}"),
            Kind::Poly { q } => write!(f, "F_{q}[x]"),
            Kind::Series { q, precision } => write!(f, "F_{q}[[x]] mod x^{precision}"),
        }
    }
}
