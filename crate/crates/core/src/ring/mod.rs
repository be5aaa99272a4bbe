//! Concrete integral domains: ℤ, quadratic integer rings, small finite
//! fields, polynomials and truncated power series over them.

mod domain;
mod element;
pub(crate) mod gf;
mod notation;
pub(crate) mod poly;
mod window;

pub use domain::{Domain, Kind, FIELD_ORDERS, QUADRATIC_D};
pub(crate) use element::quad_quotient_parts;
pub use element::Element;
pub use window::{Window, DEFAULT_COORDINATE_BOUND, DEFAULT_DEGREE_BOUND, DEFAULT_INTEGER_BOUND};

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Largest window `enumerate_nonzero` will materialise.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

fn too_large(domain: Domain, window: Window) -> Error {
    Error::WindowTooLarge {
        domain,
        window,
        limit: ENUMERATION_LIMIT,
    }
}

/// q^n, or `None` past the enumeration limit.
pub(crate) fn checked_size(q: u8, n: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc
            .checked_mul(q as u64)
            .filter(|&v| v <= ENUMERATION_LIMIT)?;
    }
    Some(acc)
}

/// All nonzero elements of the window in enumeration order.
///
/// The order is: integers 1, −1, 2, −2, …; quadratic integers by height
/// max(|u|, |v|) of the doubled coordinates, then by v and u in the integer
/// order; field elements by table index; polynomials and series residues by
/// base-q code, lowest degree least significant (so 1, x, x+1, x², … over F₂).
pub fn enumerate_nonzero(domain: Domain, window: Window) -> Result<Vec<Element>> {
    window.check(domain)?;
    let out = match (domain.kind(), window) {
        (Kind::Integers, Window::Magnitude(m)) => {
            if m > ENUMERATION_LIMIT / 2 {
                return Err(too_large(domain, window));
            }
            (1..=m as i64)
                .flat_map(|n| [Element::integer(n), Element::integer(-n)])
                .collect()
        }
        (Kind::Quadratic { .. }, Window::Coordinates(m)) => {
            let side = 2 * m + 1;
            if side.saturating_mul(side) > ENUMERATION_LIMIT {
                return Err(too_large(domain, window));
            }
            let m = m as i64;
            let mut v: Vec<Element> = (-m..=m)
                .flat_map(|u| (-m..=m).map(move |v| (u, v)))
                .filter(|&(u, v)| (u, v) != (0, 0))
                .filter_map(|(u, v)| Element::quadratic(domain, u, v).ok())
                .collect();
            v.sort();
            v
        }
        (Kind::Field { q }, Window::WholeField) => {
            (1..q).map(|i| Element::field(domain, i).unwrap()).collect()
        }
        (Kind::Poly { q }, Window::Degree(d)) => {
            let n = checked_size(q, d + 1).ok_or_else(|| too_large(domain, window))?;
            (1..n).map(|c| Element::from_code(domain, c)).collect()
        }
        (Kind::Series { q, precision }, Window::Residues) => {
            let n = checked_size(q, precision).ok_or_else(|| too_large(domain, window))?;
            (1..n).map(|c| Element::from_code(domain, c)).collect()
        }
        _ => unreachable!("window checked against domain"),
    };
    Ok(out)
}

/// Units of the domain lying in the window, by closed form.
pub fn units_in_window(domain: Domain, window: Window) -> Result<Vec<Element>> {
    Ok(enumerate_nonzero(domain, window)?
        .into_iter()
        .filter(Element::is_unit)
        .collect())
}

/// Elements of the window with a multiplicative inverse inside the window.
/// Quadratic in the window size; used to cross-check [`units_in_window`].
pub fn units_by_scan(domain: Domain, window: Window) -> Result<Vec<Element>> {
    let elems = enumerate_nonzero(domain, window)?;
    let one = Element::one(domain);
    Ok(elems
        .iter()
        .filter(|a| elems.iter().any(|b| a.mul(b).is_ok_and(|p| p == one)))
        .cloned()
        .collect())
}

/// The whole unit group when it is finite, in enumeration order.
pub fn unit_group(domain: Domain) -> Option<Vec<Element>> {
    match domain.kind() {
        Kind::Integers => Some(vec![Element::integer(1), Element::integer(-1)]),
        // norm 1 forces |u|, |v| ≤ 2 when d < 0
        Kind::Quadratic { d } if d < 0 => units_in_window(domain, Window::Coordinates(2)).ok(),
        Kind::Quadratic { .. } => None,
        Kind::Field { q } | Kind::Poly { q } => {
            let field = Domain::field(q).ok()?;
            Some(
                (1..q)
                    .map(|i| match domain.kind() {
                        Kind::Field { .. } => Element::field(field, i).unwrap(),
                        _ => Element::poly(domain, vec![i]).unwrap(),
                    })
                    .collect(),
            )
        }
        Kind::Series { .. } => None,
    }
}

/// Converts a big integer to `u64` if it fits.
pub(crate) fn to_u64(n: &BigInt) -> Option<u64> {
    u64::try_from(n).ok()
}
