//! Text forms of elements.
//!
//! Two renderings exist. `Display` uses mathematical notation (`α`, `β`, `x³`,
//! `2+i`, `(1+√-3)/2`). [`Element::to_syntax`] produces the plain ASCII form
//! accepted by [`Element::parse`]:
//!
//! * integers: `-12`
//! * finite fields: residues `0..q`; in F_4 `a` is α and `b` is β
//! * polynomials and series: `a*x^2+x+1`, `2x^3-x`, coefficients optional
//! * quadratic integers: `u+v*sqrt(d)` with half-integers written `u/2`,
//!   e.g. `1/2+1/2*sqrt(-3)`; in ℤ[i] the unit `i` is also accepted

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::domain::{Domain, Kind};
use super::element::{Element, Repr};
use super::gf;
use crate::error::{Error, Result};

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn coefficient(q: u8, c: u8, unicode: bool) -> String {
    match (q, c, unicode) {
        (4, 2, true) => "α".into(),
        (4, 3, true) => "β".into(),
        (4, 2, false) => "a".into(),
        (4, 3, false) => "b".into(),
        _ => c.to_string(),
    }
}

fn render_poly(q: u8, coeffs: &[u8], unicode: bool) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = coefficient(q, c, unicode);
        let term = match (k, c == 1, unicode) {
            (0, _, _) => coef,
            (1, true, _) => "x".into(),
            (1, false, true) => format!("{coef}x"),
            (1, false, false) => format!("{coef}*x"),
            (_, true, true) => format!("x{}", superscript(k)),
            (_, true, false) => format!("x^{k}"),
            (_, false, true) => format!("{coef}x{}", superscript(k)),
            (_, false, false) => format!("{coef}*x^{k}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Joins signed terms "a", "-b" into "a-b".
fn join_signed(terms: &[String]) -> String {
    let mut out = String::new();
    for t in terms {
        if !out.is_empty() && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(t);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn scaled(c: &BigInt, unit: &str, unicode_mul: bool) -> String {
    if c.is_one() {
        unit.to_string()
    } else if *c == -BigInt::one() {
        format!("-{unit}")
    } else if unicode_mul {
        format!("{c}{unit}")
    } else {
        format!("{c}*{unit}")
    }
}

fn render_quadratic(d: i64, u: &BigInt, v: &BigInt, unicode: bool) -> String {
    let half = u.is_odd() || v.is_odd();
    if unicode {
        let unit = if d == -1 {
            "i".to_string()
        } else {
            format!("√{d}")
        };
        let (x, y) = if half {
            (u.clone(), v.clone())
        } else {
            (u / 2u32, v / 2u32)
        };
        let mut terms = Vec::new();
        if !x.is_zero() {
            terms.push(x.to_string());
        }
        if !y.is_zero() {
            terms.push(scaled(&y, &unit, true));
        }
        let body = join_signed(&terms);
        if half {
            format!("({body})/2")
        } else {
            body
        }
    } else {
        let unit = format!("sqrt({d})");
        let coord = |c: &BigInt| {
            if c.is_even() {
                (c / 2u32).to_string()
            } else {
                format!("{c}/2")
            }
        };
        let mut terms = Vec::new();
        if !u.is_zero() {
            terms.push(coord(u));
        }
        if !v.is_zero() {
            if v.is_even() {
                terms.push(scaled(&(v / 2u32), &unit, false));
            } else {
                terms.push(format!("{v}/2*{unit}"));
            }
        }
        join_signed(&terms)
    }
}

impl Element {
    fn render(&self, unicode: bool) -> String {
        let q = self.domain().field_order().unwrap_or(0);
        match self.repr() {
            Repr::Int(n) => n.to_string(),
            Repr::Quad(u, v) => {
                render_quadratic(self.domain().quadratic_d().unwrap(), u, v, unicode)
            }
            Repr::Field(i) => coefficient(q, *i, unicode),
            Repr::Poly(c) | Repr::Series(c) => render_poly(q, c, unicode),
        }
    }

    /// Plain ASCII form, accepted back by [`Element::parse`].
    pub fn to_syntax(&self) -> String {
        self.render(false)
    }

    pub fn parse(domain: Domain, input: &str) -> Result<Element> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| Error::Parse {
            domain,
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(err("empty input"));
        }
        match domain.kind() {
            Kind::Integers => {
                let n = BigInt::from_str(s.trim_start_matches('+'))
                    .map_err(|_| err("not an integer"))?;
                Ok(Element::integer(n))
            }
            Kind::Field { q } => {
                let idx = parse_coefficient(q, &s).ok_or_else(|| err("not a field element"))?;
                Element::field(domain, idx)
            }
            Kind::Poly { q } | Kind::Series { q, .. } => {
                let f = gf::table(q);
                let limit = domain.precision();
                let mut coeffs: Vec<u8> = Vec::new();
                for (negative, term) in split_terms(&s).ok_or_else(|| err("malformed sum"))? {
                    let (coef, exp) =
                        parse_monomial(q, term).ok_or_else(|| err("malformed term"))?;
                    let coef = if negative { f.neg(coef) } else { coef };
                    if limit.is_some_and(|t| exp >= t) {
                        continue;
                    }
                    if coeffs.len() <= exp {
                        coeffs.resize(exp + 1, 0);
                    }
                    coeffs[exp] = f.add(coeffs[exp], coef);
                }
                Element::poly(domain, coeffs)
            }
            Kind::Quadratic { d } => {
                let mut u = BigInt::zero();
                let mut v = BigInt::zero();
                for (negative, term) in split_terms(&s).ok_or_else(|| err("malformed sum"))? {
                    let (doubled, irrational) =
                        parse_quadratic_term(d, term).ok_or_else(|| err("malformed term"))?;
                    let doubled = if negative { -doubled } else { doubled };
                    if irrational {
                        v += doubled;
                    } else {
                        u += doubled;
                    }
                }
                Element::quadratic(domain, u, v).map_err(|_| err("not in the ring of integers"))
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

/// Splits "a-b+c" into signed terms at top-level `+`/`-`, leaving
/// parenthesised content (as in `sqrt(-3)`) and a leading sign intact.
fn split_terms(s: &str) -> Option<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let bytes = s.as_bytes();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                // a sign directly after '^' or '*' belongs to the operand
                if i > 0 && matches!(bytes[i - 1], b'^' | b'*' | b'/') {
                    continue;
                }
                if i > start {
                    out.push((negative, &s[start..i]));
                } else if i > 0 {
                    return None;
                }
                negative = c == b'-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if start >= s.len() || depth != 0 {
        return None;
    }
    out.push((negative, &s[start..]));
    Some(out)
}

fn parse_coefficient(q: u8, s: &str) -> Option<u8> {
    let f = gf::table(q);
    match s {
        "a" | "α" if q == 4 => Some(2),
        "b" | "β" if q == 4 => Some(3),
        _ => {
            let n: i64 = s.parse().ok()?;
            Some(f.reduce(n))
        }
    }
}

fn parse_monomial(q: u8, term: &str) -> Option<(u8, usize)> {
    match term.find('x') {
        None => Some((parse_coefficient(q, term)?, 0)),
        Some(pos) => {
            let coef = term[..pos].trim_end_matches('*');
            let coef = if coef.is_empty() {
                1
            } else {
                parse_coefficient(q, coef)?
            };
            let rest = &term[pos + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')?.parse().ok()?
            };
            Some((coef, exp))
        }
    }
}

/// Parses "n" or "n/2" into a doubled value.
fn parse_doubled(s: &str) -> Option<BigInt> {
    if s.is_empty() {
        return Some(BigInt::from(2));
    }
    match s.strip_suffix("/2") {
        Some(num) => BigInt::from_str(num).ok(),
        None => BigInt::from_str(s).ok().map(|n| n * 2),
    }
}

/// Returns (doubled coefficient, multiplies √d).
fn parse_quadratic_term(d: i64, term: &str) -> Option<(BigInt, bool)> {
    if let Some(pos) = term.find("sqrt(") {
        let inner = term[pos + 5..].strip_suffix(')')?;
        if inner.parse::<i64>().ok()? != d {
            return None;
        }
        let coef = term[..pos].trim_end_matches('*');
        return Some((parse_doubled(coef)?, true));
    }
    if d == -1 {
        if let Some(coef) = term.strip_suffix('i') {
            return Some((parse_doubled(coef.trim_end_matches('*'))?, true));
        }
    }
    Some((
        parse_doubled(term)?.abs() * if term.starts_with('-') { -1 } else { 1 },
        false,
    ))
}
