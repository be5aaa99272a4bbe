use thiserror::Error;

use crate::ring::{Domain, Element, Window};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid element for {domain}: {reason}")]
    InvalidElement { domain: Domain, reason: String },

    #[error("cannot parse {input:?} as an element of {domain}: {reason}")]
    Parse {
        domain: Domain,
        input: String,
        reason: String,
    },

    #[error("domain mismatch: {left} and {right}")]
    DomainMismatch { left: Domain, right: Domain },

    #[error("window `{window}` does not apply to {domain}")]
    WindowMismatch { domain: Domain, window: Window },

    #[error("window `{window}` over {domain} has more than {limit} elements")]
    WindowTooLarge {
        domain: Domain,
        window: Window,
        limit: u64,
    },

    #[error("function `{function}` is not defined on {domain}")]
    IncompatibleFunction { function: String, domain: Domain },

    #[error("Euclidean function evaluated at zero")]
    EvalAtZero,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("degree {degree} is beyond the phi table (largest degree {max})")]
    RangeExceeded { degree: usize, max: usize },

    #[error("value of {0} does not fit the codomain")]
    ValueOverflow(String),

    #[error("refined value at {0} is only an upper bound")]
    NotExact(String),

    #[error("phi is not strictly increasing: phi({index}) = {value}, phi({next_index}) = {next}", next_index = index + 1)]
    NonIncreasingPhi { index: usize, value: u64, next: u64 },

    #[error("field table has no value for {missing}")]
    PartialTable { missing: Element },

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    /// Rendered operands, to keep the error small.
    #[error("{a} != ({q})·({b}) + ({r})")]
    IdentityFails {
        a: String,
        b: String,
        q: String,
        r: String,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    BothZero,

    #[error("sublevel sets of `{function}` are not enumerable; a window is required")]
    WindowRequired { function: String },

    #[error("division of {a} by the base has {count} valid divisions, expected exactly one")]
    NonUniqueStep { a: Element, count: usize },

    #[error("remainder {r} is neither zero nor a unit")]
    NonUnitRemainder { r: Element },

    #[error("no descent: f({q}) = {f_q} is not below f({a}) = {f_a}")]
    NoDescent {
        a: String,
        q: String,
        f_a: u64,
        f_q: u64,
    },

    #[error("decomposition base {0} is a unit")]
    BaseIsUnit(Element),

    #[error("search budget is zero")]
    BudgetZero,

    #[error("invalid family: {0}")]
    InvalidFamily(String),
}

impl Error {
    /// Errors that make a single quantifier instance undecidable rather than
    /// invalidating the whole computation. Checkers count such instances as
    /// skipped.
    pub fn is_undecidable(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted(_)
                | Error::RangeExceeded { .. }
                | Error::ValueOverflow(_)
                | Error::NotExact(_)
        )
    }
}
