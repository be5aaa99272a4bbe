//! Candidate divisions a = q·b + r: judging, canonical choice, exhaustive
//! enumeration, gcd, and decomposition in powers of a base element.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::func::Valuation;
use crate::ring::{self, quad_quotient_parts, Element, Kind, Window};

/// A pair (q, r) with a = q·b + r, judged under some function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateDivision {
    pub a: Element,
    pub b: Element,
    pub q: Element,
    pub r: Element,
    pub valid: bool,
}

impl CandidateDivision {
    /// Checks the identity exactly and records whether r = 0 or f(r) < f(b).
    pub fn judge(
        f: &dyn Valuation,
        a: &Element,
        b: &Element,
        q: &Element,
        r: &Element,
    ) -> Result<CandidateDivision> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if q.mul(b)?.add(r)? != *a {
            return Err(Error::IdentityFails {
                a: a.to_string(),
                b: b.to_string(),
                q: q.to_string(),
                r: r.to_string(),
            });
        }
        let valid = r.is_zero() || f.value(r)? < f.value(b)?;
        Ok(CandidateDivision {
            a: a.clone(),
            b: b.clone(),
            q: q.clone(),
            r: r.clone(),
            valid,
        })
    }
}

pub fn is_valid_division(
    f: &dyn Valuation,
    a: &Element,
    b: &Element,
    q: &Element,
    r: &Element,
) -> Result<bool> {
    CandidateDivision::judge(f, a, b, q, r).map(|c| c.valid)
}

/// Nearest integer to n/d (d > 0), ties toward zero.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    let twice = &r * 2u32;
    if twice > *d || (twice == *d && q.is_negative()) {
        q + 1u32
    } else {
        q
    }
}

/// Nearest integer to n/d (d > 0) with the given parity; ties go to the
/// smaller magnitude, then to the positive side.
fn round_div_with_parity(n: &BigInt, d: &BigInt, odd: bool) -> BigInt {
    let base = n.div_floor(d);
    let mut best: Option<(BigInt, BigInt)> = None;
    for k in [&base - 1u32, base.clone(), &base + 1u32, &base + 2u32] {
        if k.is_odd() != odd {
            continue;
        }
        // |n/d − k| compared via |n − k·d|
        let dist = (n - &k * d).abs();
        let better = match &best {
            None => true,
            Some((bk, bd)) => {
                dist < *bd
                    || (dist == *bd && (k.abs(), k.is_negative()) < (bk.abs(), bk.is_negative()))
            }
        };
        if better {
            best = Some((k, dist));
        }
    }
    best.unwrap().0
}

/// One division that is valid under the domain's built-in function:
/// least non-negative remainder on ℤ, long division on F_q[x], q = a/b on
/// fields, rounding of a/b in ℚ(√d) on 𝒪_d, and on F_q⟦x⟧ either q = a/b
/// (when ord a ≥ ord b) or q = 0.
pub fn canonical_divide(a: &Element, b: &Element) -> Result<(Element, Element)> {
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch {
            left: a.domain(),
            right: b.domain(),
        });
    }
    let domain = a.domain();
    if b.is_zero() {
        return Err(match domain.kind() {
            Kind::Series { .. } => Error::PrecisionExhausted("divisor is zero modulo x^T".into()),
            _ => Error::DivisionByZero,
        });
    }
    let q = match domain.kind() {
        Kind::Integers => {
            let (n, m) = (a.as_integer().unwrap(), b.as_integer().unwrap());
            let r = n.mod_floor(&m.abs());
            Element::integer((n - &r) / m)
        }
        Kind::Quadratic { .. } => {
            let (p, qq, den) = quad_quotient_parts(a, b);
            // a/b = (P + Q√d)/D; the doubled target coordinates are 2P/D, 2Q/D
            let (p, qq, den) = if den.is_negative() {
                (-p, -qq, -den)
            } else {
                (p, qq, den)
            };
            let (u, v) = if domain.is_half_lattice() {
                let v = round_div(&(&qq * 2u32), &den);
                let u = round_div_with_parity(&(&p * 2u32), &den, v.is_odd());
                (u, v)
            } else {
                (round_div(&p, &den) * 2u32, round_div(&qq, &den) * 2u32)
            };
            Element::quadratic(domain, u, v)?
        }
        Kind::Field { .. } => a.exact_div(b)?.unwrap(),
        Kind::Poly { q } => {
            let (quot, _) = ring::poly::div_rem(
                ring::gf::table(q),
                a.coefficients().unwrap(),
                b.coefficients().unwrap(),
            );
            Element::poly(domain, quot)?
        }
        Kind::Series { .. } => a.exact_div(b)?.unwrap_or_else(|| Element::zero(domain)),
    };
    let r = a.sub(&q.mul(b)?)?;
    Ok((q, r))
}

/// Valid divisions of a by b, in remainder order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub divisions: Vec<CandidateDivision>,
    /// True when the candidate remainders were the whole sublevel set of f.
    pub complete: bool,
    /// Remainder candidates whose value could not be decided.
    pub skipped: u64,
}

/// All valid divisions of a by b, searched remainder first: r = 0, then every
/// r with f(r) < f(b), each solved for q by exact division.
///
/// When the sublevel set of f is derivable the result is complete. Otherwise
/// the window supplies the candidate remainders and the result is partial;
/// without a window this fails with `WindowRequired`.
pub fn enumerate_valid_divisions(
    f: &dyn Valuation,
    a: &Element,
    b: &Element,
    window: Option<Window>,
) -> Result<EnumerationResult> {
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch {
            left: a.domain(),
            right: b.domain(),
        });
    }
    let domain = a.domain();
    if b.is_zero() {
        return Err(match domain.kind() {
            Kind::Series { .. } => Error::PrecisionExhausted("divisor is zero modulo x^T".into()),
            _ => Error::DivisionByZero,
        });
    }
    let fb = f.value(b)?;
    let mut skipped = 0;
    let (candidates, complete) = match f.sublevel(domain, fb)? {
        Some(set) => (set, true),
        None => {
            let window = window.ok_or_else(|| Error::WindowRequired {
                function: f.label(),
            })?;
            let mut set = Vec::new();
            for r in ring::enumerate_nonzero(domain, window)? {
                match f.value(&r) {
                    Ok(v) if v < fb => set.push(r),
                    Ok(_) => {}
                    Err(e) if e.is_undecidable() => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
            (set, false)
        }
    };
    let mut divisions = Vec::new();
    for r in std::iter::once(Element::zero(domain)).chain(candidates) {
        if let Some(q) = a.sub(&r)?.exact_div(b)? {
            divisions.push(CandidateDivision {
                a: a.clone(),
                b: b.clone(),
                q,
                r,
                valid: true,
            });
        }
    }
    Ok(EnumerationResult {
        divisions,
        complete,
        skipped,
    })
}

/// Associate of `g` that comes first in enumeration order. Real quadratic
/// rings have infinitely many units; only ±1 are tried there. Series
/// residues are normalised to x^ord.
fn normalizing_unit(g: &Element) -> Element {
    let domain = g.domain();
    let units = match domain.kind() {
        Kind::Series { .. } => {
            let k = g.order().unwrap();
            let mut tail = g.coefficients().unwrap()[k..].to_vec();
            tail.resize(domain.precision().unwrap(), 0);
            let unit = Element::poly(domain, tail).unwrap();
            return unit.inverse().unwrap();
        }
        _ => ring::unit_group(domain)
            .unwrap_or_else(|| vec![Element::one(domain), Element::one(domain).neg()]),
    };
    units
        .into_iter()
        .min_by(|u, v| u.mul(g).unwrap().cmp(&v.mul(g).unwrap()))
        .unwrap()
}

/// Extended gcd by repeated canonical division: g = s·a + t·b, with g the
/// first of its associates in enumeration order (positive on ℤ, monic on
/// F_q[x]).
pub fn gcd_extended(a: &Element, b: &Element) -> Result<(Element, Element, Element)> {
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch {
            left: a.domain(),
            right: b.domain(),
        });
    }
    let domain = a.domain();
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    if domain.precision().is_some() && (a.is_zero() || b.is_zero()) {
        return Err(Error::PrecisionExhausted(
            "an operand is zero modulo x^T, so its divisors are not determined".into(),
        ));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Element::one(domain), Element::zero(domain));
    let (mut t0, mut t1) = (Element::zero(domain), Element::one(domain));
    while !r1.is_zero() {
        let (q, r) = canonical_divide(&r0, &r1)?;
        let s = s0.sub(&q.mul(&s1)?)?;
        let t = t0.sub(&q.mul(&t1)?)?;
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let u = normalizing_unit(&r0);
    let (g, s, t) = (r0.mul(&u)?, s0.mul(&u)?, t0.mul(&u)?);
    let check = s.mul(a)?.add(&t.mul(b)?)?;
    assert_eq!(check, g, "Bezout identity failed for gcd({a}, {b})");
    Ok((g, s, t))
}

/// a = Σ coefficients[i]·base^i with every coefficient zero or a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub base: Element,
    pub coefficients: Vec<Element>,
}

impl Decomposition {
    /// Horner evaluation of the coefficients at the base.
    pub fn reconstruct(&self) -> Element {
        let zero = Element::zero(self.base.domain());
        self.coefficients.iter().rev().fold(zero, |acc, c| {
            acc.mul(&self.base)
                .and_then(|p| p.add(c))
                .expect("same domain")
        })
    }
}

/// Writes a in base x by repeated unique division: a = q₀x + r₀, q₀ = q₁x + r₁,
/// and so on. Each step must have exactly one valid division, each remainder
/// must be zero or a unit, and f must strictly decrease along the quotients.
pub fn decompose_by(f: &dyn Valuation, a: &Element, x: &Element) -> Result<Decomposition> {
    if a.domain() != x.domain() {
        return Err(Error::DomainMismatch {
            left: a.domain(),
            right: x.domain(),
        });
    }
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if x.is_unit() {
        return Err(Error::BaseIsUnit(x.clone()));
    }
    let mut coefficients = Vec::new();
    let mut cur = a.clone();
    while !cur.is_zero() {
        let res = enumerate_valid_divisions(f, &cur, x, None)?;
        if !res.complete || res.divisions.len() != 1 {
            return Err(Error::NonUniqueStep {
                a: cur,
                count: res.divisions.len(),
            });
        }
        let CandidateDivision { q, r, .. } = res.divisions.into_iter().next().unwrap();
        if !r.is_zero() && !r.is_unit() {
            return Err(Error::NonUnitRemainder { r });
        }
        if !q.is_zero() {
            let (f_a, f_q) = (f.value(&cur)?, f.value(&q)?);
            if f_q >= f_a {
                return Err(Error::NoDescent {
                    a: cur.to_string(),
                    q: q.to_string(),
                    f_a: f_a.0,
                    f_q: f_q.0,
                });
            }
        }
        coefficients.push(r);
        cur = q;
    }
    Ok(Decomposition {
        base: x.clone(),
        coefficients,
    })
}
