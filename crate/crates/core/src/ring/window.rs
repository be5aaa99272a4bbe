use std::fmt;

use super::domain::{Domain, Kind};
use crate::error::{Error, Result};

/// Default integer window, |n| ≤ 50.
pub const DEFAULT_INTEGER_BOUND: u64 = 50;
/// Default polynomial window, deg ≤ 6.
pub const DEFAULT_DEGREE_BOUND: usize = 6;
/// Default quadratic window, doubled coordinates ≤ 20.
pub const DEFAULT_COORDINATE_BOUND: u64 = 20;

/// A finite set of nonzero elements used in place of a "for all" over the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Window {
    /// Integers with 1 ≤ |n| ≤ M.
    Magnitude(u64),
    /// Quadratic integers whose doubled coordinates satisfy |u|, |v| ≤ M.
    Coordinates(u64),
    /// Every nonzero element of a finite field.
    WholeField,
    /// Nonzero polynomials of degree ≤ D.
    Degree(usize),
    /// Every nonzero residue modulo x^T.
    Residues,
}

impl Window {
    /// Heuristic default window for a domain.
    pub fn default_for(domain: Domain) -> Window {
        match domain.kind() {
            Kind::Integers => Window::Magnitude(DEFAULT_INTEGER_BOUND),
            Kind::Quadratic { .. } => Window::Coordinates(DEFAULT_COORDINATE_BOUND),
            Kind::Field { .. } => Window::WholeField,
            Kind::Poly { .. } => Window::Degree(DEFAULT_DEGREE_BOUND),
            Kind::Series { .. } => Window::Residues,
        }
    }

    /// Window of the domain's natural shape with the given bound. Finite
    /// fields and series residues have no bound to set.
    pub fn bounded(domain: Domain, bound: u64) -> Result<Window> {
        let window = match domain.kind() {
            Kind::Integers => Window::Magnitude(bound),
            Kind::Quadratic { .. } => Window::Coordinates(bound),
            Kind::Poly { .. } => Window::Degree(bound as usize),
            Kind::Field { .. } => {
                return Err(Error::WindowMismatch {
                    domain,
                    window: Window::Magnitude(bound),
                })
            }
            Kind::Series { .. } => {
                return Err(Error::WindowMismatch {
                    domain,
                    window: Window::Degree(bound as usize),
                })
            }
        };
        Ok(window)
    }

    pub fn check(&self, domain: Domain) -> Result<()> {
        let ok = matches!(
            (self, domain.kind()),
            (Window::Magnitude(_), Kind::Integers)
                | (Window::Coordinates(_), Kind::Quadratic { .. })
                | (Window::WholeField, Kind::Field { .. })
                | (Window::Degree(_), Kind::Poly { .. })
                | (Window::Residues, Kind::Series { .. })
        );
        if ok {
            Ok(())
        } else {
            Err(Error::WindowMismatch {
                domain,
                window: *self,
            })
        }
    }

    /// True when the window covers every nonzero element of the domain.
    pub fn is_exhaustive(&self, domain: Domain) -> bool {
        self.check(domain).is_ok() && matches!(self, Window::WholeField | Window::Residues)
    }

    /// True when sums of window elements stay inside the window.
    pub(crate) fn is_additively_closed(&self) -> bool {
        matches!(
            self,
            Window::WholeField | Window::Residues | Window::Degree(_)
        )
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Window::Magnitude(m) => write!(f, "|n| <= {m}"),
            Window::Coordinates(m) => write!(f, "doubled coordinates <= {m}"),
            Window::WholeField => write!(f, "whole field"),
            Window::Degree(d) => write!(f, "deg <= {d}"),
            Window::Residues => write!(f, "all residues"),
        }
    }
}
