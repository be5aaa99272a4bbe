use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::domain::{Domain, Kind};
use super::gf::{self, Gf};
use super::poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Int(BigInt),
    /// Doubled coordinates: (u + v√d)/2.
    Quad(BigInt, BigInt),
    Field(u8),
    /// Trimmed coefficients, lowest degree first.
    Poly(Vec<u8>),
    /// Exactly `precision` coefficients.
    Series(Vec<u8>),
}

/// An exact element of a [`Domain`].
///
/// Elements are totally ordered: first by domain, then by the enumeration
/// order of that domain (see [`crate::ring::enumerate_nonzero`]). Zero sorts
/// before every nonzero element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    domain: Domain,
    repr: Repr,
}

fn quad_parity_ok(domain: Domain, u: &BigInt, v: &BigInt) -> bool {
    if domain.is_half_lattice() {
        u.is_even() == v.is_even()
    } else {
        u.is_even() && v.is_even()
    }
}

impl Element {
    pub(crate) fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn integer(n: impl Into<BigInt>) -> Element {
        Element {
            domain: Domain::integers(),
            repr: Repr::Int(n.into()),
        }
    }

    /// Quadratic integer (u + v√d)/2 from doubled coordinates.
    pub fn quadratic(
        domain: Domain,
        u: impl Into<BigInt>,
        v: impl Into<BigInt>,
    ) -> Result<Element> {
        let (u, v) = (u.into(), v.into());
        if domain.quadratic_d().is_none() {
            return Err(Error::InvalidElement {
                domain,
                reason: "not a quadratic ring".into(),
            });
        }
        if !quad_parity_ok(domain, &u, &v) {
            return Err(Error::InvalidElement {
                domain,
                reason: format!("doubled coordinates ({u}, {v}) violate the lattice parity"),
            });
        }
        Ok(Element {
            domain,
            repr: Repr::Quad(u, v),
        })
    }

    /// Field element by table index (F_4: 0, 1, α = 2, β = 3).
    pub fn field(domain: Domain, index: u8) -> Result<Element> {
        match domain.kind() {
            Kind::Field { q } if index < q => Ok(Element {
                domain,
                repr: Repr::Field(index),
            }),
            _ => Err(Error::InvalidElement {
                domain,
                reason: format!("no field element with index {index}"),
            }),
        }
    }

    /// Polynomial or series from coefficient indices, lowest degree first.
    /// Series coefficients at or beyond the precision are dropped.
    pub fn poly(domain: Domain, coeffs: Vec<u8>) -> Result<Element> {
        let q = domain.field_order().unwrap_or(0);
        if let Some(bad) = coeffs.iter().find(|&&c| c >= q) {
            return Err(Error::InvalidElement {
                domain,
                reason: format!("coefficient index {bad} out of range"),
            });
        }
        match domain.kind() {
            Kind::Poly { .. } => Ok(Element {
                domain,
                repr: Repr::Poly(poly::trim(coeffs)),
            }),
            Kind::Series { precision, .. } => {
                let mut c = coeffs;
                c.resize(precision, 0);
                Ok(Element {
                    domain,
                    repr: Repr::Series(c),
                })
            }
            _ => Err(Error::InvalidElement {
                domain,
                reason: "not a polynomial or series ring".into(),
            }),
        }
    }

    /// Image of the integer `n` under the canonical map ℤ → R.
    pub fn from_int(domain: Domain, n: i64) -> Element {
        let repr = match domain.kind() {
            Kind::Integers => Repr::Int(BigInt::from(n)),
            Kind::Quadratic { .. } => Repr::Quad(BigInt::from(n) * 2, BigInt::zero()),
            Kind::Field { q } => Repr::Field(gf::table(q).reduce(n)),
            Kind::Poly { q } => Repr::Poly(poly::trim(vec![gf::table(q).reduce(n)])),
            Kind::Series { q, precision } => {
                let mut c = vec![0; precision];
                c[0] = gf::table(q).reduce(n);
                Repr::Series(c)
            }
        };
        Element { domain, repr }
    }

    pub fn zero(domain: Domain) -> Element {
        Element::from_int(domain, 0)
    }

    pub fn one(domain: Domain) -> Element {
        Element::from_int(domain, 1)
    }

    /// The indeterminate x of a polynomial or series ring.
    pub fn variable(domain: Domain) -> Result<Element> {
        Element::poly(domain, vec![0, 1])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Int(n) => Some(n),
            _ => None,
        }
    }

    /// Doubled coordinates (u, v) of (u + v√d)/2.
    pub fn doubled_coordinates(&self) -> Option<(&BigInt, &BigInt)> {
        match &self.repr {
            Repr::Quad(u, v) => Some((u, v)),
            _ => None,
        }
    }

    pub fn field_index(&self) -> Option<u8> {
        match self.repr {
            Repr::Field(i) => Some(i),
            _ => None,
        }
    }

    /// Coefficients of a polynomial (trimmed) or series (full length).
    pub fn coefficients(&self) -> Option<&[u8]> {
        match &self.repr {
            Repr::Poly(c) | Repr::Series(c) => Some(c),
            _ => None,
        }
    }

    /// Degree of a nonzero polynomial.
    pub fn degree(&self) -> Option<usize> {
        match &self.repr {
            Repr::Poly(c) if !c.is_empty() => Some(c.len() - 1),
            _ => None,
        }
    }

    /// Order of a series residue or polynomial; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        match &self.repr {
            Repr::Poly(c) | Repr::Series(c) => poly::order(c),
            _ => None,
        }
    }

    /// Signed norm (u² − d·v²)/4 of a quadratic integer.
    pub fn signed_norm(&self) -> Option<BigInt> {
        match &self.repr {
            Repr::Quad(u, v) => {
                let d = self.domain.quadratic_d()?;
                Some((u * u - BigInt::from(d) * v * v) / 4)
            }
            _ => None,
        }
    }

    fn gf(&self) -> &'static Gf {
        gf::table(
            self.domain
                .field_order()
                .expect("finite-field based domain"),
        )
    }

    fn same_domain(&self, rhs: &Element) -> Result<()> {
        if self.domain == rhs.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.domain,
                right: rhs.domain,
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(n) => n.is_zero(),
            Repr::Quad(u, v) => u.is_zero() && v.is_zero(),
            Repr::Field(i) => *i == 0,
            Repr::Poly(c) => c.is_empty(),
            Repr::Series(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Element::one(self.domain)
    }

    /// Unit membership by closed form.
    pub fn is_unit(&self) -> bool {
        match &self.repr {
            Repr::Int(n) => n.abs().is_one(),
            Repr::Quad(..) => self.signed_norm().is_some_and(|n| n.abs().is_one()),
            Repr::Field(i) => *i != 0,
            Repr::Poly(c) => c.len() == 1,
            Repr::Series(c) => c[0] != 0,
        }
    }

    pub fn add(&self, rhs: &Element) -> Result<Element> {
        self.same_domain(rhs)?;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a + b),
            (Repr::Quad(a, b), Repr::Quad(c, d)) => Repr::Quad(a + c, b + d),
            (Repr::Field(a), Repr::Field(b)) => Repr::Field(self.gf().add(*a, *b)),
            (Repr::Poly(a), Repr::Poly(b)) => Repr::Poly(poly::trim(poly::add(self.gf(), a, b))),
            (Repr::Series(a), Repr::Series(b)) => Repr::Series(poly::add(self.gf(), a, b)),
            _ => unreachable!("same domain implies same representation"),
        };
        Ok(Element {
            domain: self.domain,
            repr,
        })
    }

    pub fn neg(&self) -> Element {
        let repr = match &self.repr {
            Repr::Int(a) => Repr::Int(-a),
            Repr::Quad(a, b) => Repr::Quad(-a, -b),
            Repr::Field(a) => Repr::Field(self.gf().neg(*a)),
            Repr::Poly(a) => Repr::Poly(poly::neg(self.gf(), a)),
            Repr::Series(a) => Repr::Series(poly::neg(self.gf(), a)),
        };
        Element {
            domain: self.domain,
            repr,
        }
    }

    pub fn sub(&self, rhs: &Element) -> Result<Element> {
        self.same_domain(rhs)?;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Poly(a), Repr::Poly(b)) => Repr::Poly(poly::trim(poly::sub(self.gf(), a, b))),
            (Repr::Series(a), Repr::Series(b)) => Repr::Series(poly::sub(self.gf(), a, b)),
            _ => return self.add(&rhs.neg()),
        };
        Ok(Element {
            domain: self.domain,
            repr,
        })
    }

    /// Product. For series the product is reduced modulo x^T; a zero residue
    /// may hide a nonzero product of order ≥ T.
    pub fn mul(&self, rhs: &Element) -> Result<Element> {
        self.same_domain(rhs)?;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a * b),
            (Repr::Quad(u1, v1), Repr::Quad(u2, v2)) => {
                let d = BigInt::from(self.domain.quadratic_d().unwrap());
                let u = (u1 * u2 + d * v1 * v2) / 2;
                let v = (u1 * v2 + u2 * v1) / 2;
                Repr::Quad(u, v)
            }
            (Repr::Field(a), Repr::Field(b)) => Repr::Field(self.gf().mul(*a, *b)),
            (Repr::Poly(a), Repr::Poly(b)) => Repr::Poly(poly::mul(self.gf(), a, b, None)),
            (Repr::Series(a), Repr::Series(b)) => {
                Repr::Series(poly::mul(self.gf(), a, b, Some(a.len())))
            }
            _ => unreachable!("same domain implies same representation"),
        };
        Ok(Element {
            domain: self.domain,
            repr,
        })
    }

    /// True when the exact (untruncated) product of two series residues is
    /// nonzero but vanishes modulo x^T.
    pub fn product_exhausts_precision(&self, rhs: &Element) -> bool {
        match (&self.repr, &rhs.repr) {
            (Repr::Series(a), Repr::Series(_)) => match (self.order(), rhs.order()) {
                (Some(i), Some(j)) => i + j >= a.len(),
                _ => false,
            },
            _ => false,
        }
    }

    pub fn pow(&self, exp: u32) -> Element {
        let mut acc = Element::one(self.domain);
        for _ in 0..exp {
            acc = acc.mul(self).expect("same domain");
        }
        acc
    }

    /// Multiplicative inverse, if the element is a unit.
    pub fn inverse(&self) -> Option<Element> {
        if !self.is_unit() {
            return None;
        }
        Element::one(self.domain).exact_div(self).ok().flatten()
    }

    /// `Some(q)` with q·divisor = self when the divisor divides self.
    ///
    /// For series residues the quotient is determined only modulo
    /// x^(T − ord divisor); the representative with zero top coefficients is
    /// returned. A zero series divisor yields `PrecisionExhausted`.
    pub fn exact_div(&self, divisor: &Element) -> Result<Option<Element>> {
        self.same_domain(divisor)?;
        if divisor.is_zero() {
            return Err(match divisor.repr {
                Repr::Series(_) => Error::PrecisionExhausted("divisor is zero modulo x^T".into()),
                _ => Error::DivisionByZero,
            });
        }
        let domain = self.domain;
        let out = match (&self.repr, &divisor.repr) {
            (Repr::Int(a), Repr::Int(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(Repr::Int(q))
            }
            (Repr::Quad(..), Repr::Quad(..)) => {
                let (p, q, den) = quad_quotient_parts(self, divisor);
                let (u, ru) = Integer::div_rem(&(&p * 2u32), &den);
                let (v, rv) = Integer::div_rem(&(&q * 2u32), &den);
                (ru.is_zero() && rv.is_zero() && quad_parity_ok(domain, &u, &v))
                    .then_some(Repr::Quad(u, v))
            }
            (Repr::Field(a), Repr::Field(b)) => {
                let f = self.gf();
                Some(Repr::Field(f.mul(*a, f.inv(*b))))
            }
            (Repr::Poly(a), Repr::Poly(b)) => {
                let (q, r) = poly::div_rem(self.gf(), a, b);
                r.is_empty().then_some(Repr::Poly(q))
            }
            (Repr::Series(a), Repr::Series(b)) => {
                let t = a.len();
                let k = poly::order(b).unwrap();
                match poly::order(a) {
                    None => Some(Repr::Series(vec![0; t])),
                    Some(oa) if oa < k => None,
                    Some(_) => {
                        let f = self.gf();
                        let inv = poly::series_inverse(f, &b[k..], t - k);
                        let mut q = poly::mul(f, &a[k..], &inv, Some(t - k));
                        q.resize(t, 0);
                        Some(Repr::Series(q))
                    }
                }
            }
            _ => unreachable!("same domain implies same representation"),
        };
        Ok(out.map(|repr| Element { domain, repr }))
    }

    /// Base-q integer code of a field, polynomial or series element: the
    /// coefficient indices read as digits, lowest degree least significant.
    pub(crate) fn code(&self) -> Option<u64> {
        let q = self.domain.field_order()? as u64;
        match &self.repr {
            Repr::Field(i) => Some(*i as u64),
            Repr::Poly(c) | Repr::Series(c) => {
                Some(c.iter().rev().fold(0u64, |acc, &x| acc * q + x as u64))
            }
            _ => None,
        }
    }

    pub(crate) fn from_code(domain: Domain, mut code: u64) -> Element {
        let q = domain.field_order().expect("finite-field based domain") as u64;
        let repr = match domain.kind() {
            Kind::Field { .. } => Repr::Field(code as u8),
            Kind::Poly { .. } => {
                let mut c = Vec::new();
                while code > 0 {
                    c.push((code % q) as u8);
                    code /= q;
                }
                Repr::Poly(c)
            }
            Kind::Series { precision, .. } => {
                let mut c = vec![0u8; precision];
                for slot in c.iter_mut() {
                    *slot = (code % q) as u8;
                    code /= q;
                }
                Repr::Series(c)
            }
            _ => unreachable!(),
        };
        Element { domain, repr }
    }
}

/// For quadratic c and nonzero b: c/b = (P + Q√d)/D with integer P, Q, D and
/// D = 4·N(b) ≠ 0.
pub(crate) fn quad_quotient_parts(c: &Element, b: &Element) -> (BigInt, BigInt, BigInt) {
    let d = BigInt::from(c.domain.quadratic_d().unwrap());
    let (uc, vc) = c.doubled_coordinates().unwrap();
    let (ub, vb) = b.doubled_coordinates().unwrap();
    let p = uc * ub - &d * vc * vb;
    let q = vc * ub - uc * vb;
    let den = ub * ub - &d * vb * vb;
    (p, q, den)
}

/// Sort key for integers in enumeration order: 0, 1, −1, 2, −2, …
fn int_rank(n: &BigInt) -> (BigInt, bool) {
    (n.abs(), n.is_negative())
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.domain
            .cmp(&other.domain)
            .then_with(|| match (&self.repr, &other.repr) {
                (Repr::Int(a), Repr::Int(b)) => int_rank(a).cmp(&int_rank(b)),
                (Repr::Quad(u1, v1), Repr::Quad(u2, v2)) => {
                    let h1 = u1.abs().max(v1.abs());
                    let h2 = u2.abs().max(v2.abs());
                    h1.cmp(&h2)
                        .then_with(|| int_rank(v1).cmp(&int_rank(v2)))
                        .then_with(|| int_rank(u1).cmp(&int_rank(u2)))
                }
                (Repr::Field(a), Repr::Field(b)) => a.cmp(b),
                (Repr::Poly(a), Repr::Poly(b)) => a
                    .len()
                    .cmp(&b.len())
                    .then_with(|| a.iter().rev().cmp(b.iter().rev())),
                (Repr::Series(a), Repr::Series(b)) => a.iter().rev().cmp(b.iter().rev()),
                _ => unreachable!("same domain implies same representation"),
            })
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
