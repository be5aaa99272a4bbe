//! The refinement f̃(a) = min over nonzero b of f(ab), with a certificate for
//! every computed value.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::func::{EuclideanFn, Nat, Valuation};
use crate::lab::{check_property, CheckOptions};
use crate::ring::{self, Domain, Element, Window};
use crate::verdict::{Property, PropertyReport, Verdict};

/// Why a refined value is what it is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    /// On a field every nonzero element is a multiple of a, so f̃ is the
    /// minimum of f.
    ClosedFormField,
    /// f is strongly Euclidean, so f̃ = f.
    FixedPointStrong,
    /// f overrides a strongly Euclidean base at finitely many points; the
    /// base bounds which multiples can lower the minimum.
    MonotoneBound,
    /// Minimum over the multiples a·b with b in a window.
    BoundedSearch,
}

impl Reason {
    pub fn name(self) -> &'static str {
        match self {
            Reason::ClosedFormField => "closed_form_field",
            Reason::FixedPointStrong => "fixed_point_strong",
            Reason::MonotoneBound => "monotone_bound",
            Reason::BoundedSearch => "bounded_search",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certainty {
    Exact,
    /// f̃(a) ≤ value.
    UpperBound,
}

impl Certainty {
    pub fn name(self) -> &'static str {
        match self {
            Certainty::Exact => "exact",
            Certainty::UpperBound => "upper_bound",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CertifiedValue {
    pub value: Nat,
    pub certainty: Certainty,
    pub reason: Reason,
}

impl CertifiedValue {
    fn exact(value: Nat, reason: Reason) -> CertifiedValue {
        CertifiedValue {
            value,
            certainty: Certainty::Exact,
            reason,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.certainty == Certainty::Exact
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.certainty {
            Certainty::Exact => write!(f, "{} (exact, {})", self.value, self.reason.name()),
            Certainty::UpperBound => write!(f, "<= {} ({})", self.value, self.reason.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefineStrategy {
    /// Certified methods first; the window, if any, is searched when none applies.
    Auto { fallback: Option<Window> },
    /// Search the window only.
    Bounded(Window),
}

impl Default for RefineStrategy {
    fn default() -> Self {
        RefineStrategy::Auto { fallback: None }
    }
}

/// f̃(a) with a certificate.
pub fn refine_eval(
    f: &EuclideanFn,
    a: &Element,
    strategy: RefineStrategy,
) -> Result<CertifiedValue> {
    if a.is_zero() {
        return Err(Error::EvalAtZero);
    }
    let domain = a.domain();
    f.compat(domain)?;
    let fallback = match strategy {
        RefineStrategy::Bounded(w) => return bounded_search(f, a, w),
        RefineStrategy::Auto { fallback } => fallback,
    };
    if domain.is_field() {
        let min = ring::enumerate_nonzero(domain, Window::WholeField)?
            .iter()
            .map(|e| f.eval(e))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min()
            .unwrap();
        return Ok(CertifiedValue::exact(min, Reason::ClosedFormField));
    }
    if f.is_known_strong() {
        return Ok(CertifiedValue::exact(f.eval(a)?, Reason::FixedPointStrong));
    }
    if let EuclideanFn::ExceptionTable { base, exceptions } = f {
        if base.is_known_strong() {
            return monotone_bound(f, base, exceptions, a, fallback);
        }
    }
    match fallback {
        Some(w) => bounded_search(f, a, w),
        None => Err(Error::WindowRequired {
            function: f.to_string(),
        }),
    }
}

/// For f = g except on a finite set E, with g strongly Euclidean:
/// a multiple m = ab outside E has f(m) = g(m) ≥ g(a). So only multiples in
/// E, or outside E with g-value below the running minimum, can matter.
fn monotone_bound(
    f: &EuclideanFn,
    base: &EuclideanFn,
    exceptions: &std::collections::BTreeMap<Element, Nat>,
    a: &Element,
    fallback: Option<Window>,
) -> Result<CertifiedValue> {
    let domain = a.domain();
    let g_a = base.eval(a)?;
    let mut best: Option<Nat> = None;
    for (e, v) in exceptions {
        if e.exact_div(a)?.is_some() {
            best = Some(best.map_or(*v, |b| b.min(*v)));
        }
    }
    if !exceptions.contains_key(a) {
        // a itself realises g(a), the floor for multiples outside E
        let value = best.map_or(g_a, |b| b.min(g_a));
        return Ok(CertifiedValue::exact(value, Reason::MonotoneBound));
    }
    // a ∈ E, so best is f(a) or lower
    let cur = best.unwrap();
    if cur <= g_a {
        return Ok(CertifiedValue::exact(cur, Reason::MonotoneBound));
    }
    // an associate of a outside E attains the floor g(a)
    let units = ring::unit_group(domain)
        .unwrap_or_else(|| vec![Element::one(domain), Element::one(domain).neg()]);
    for u in units {
        let m = a.mul(&u)?;
        if !exceptions.contains_key(&m) {
            return Ok(CertifiedValue::exact(g_a, Reason::MonotoneBound));
        }
    }
    let sublevel = match base.sublevel(domain, cur) {
        Ok(s) => s,
        Err(e) if e.is_undecidable() || matches!(e, Error::WindowTooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(candidates) = sublevel {
        let mut value = cur;
        for m in candidates {
            if !exceptions.contains_key(&m) && m.exact_div(a)?.is_some() {
                value = value.min(base.eval(&m)?);
            }
        }
        return Ok(CertifiedValue::exact(value, Reason::MonotoneBound));
    }
    match fallback {
        Some(w) => {
            let searched = bounded_search(f, a, w)?;
            Ok(CertifiedValue {
                value: searched.value.min(cur),
                ..searched
            })
        }
        None => Ok(CertifiedValue {
            value: cur,
            certainty: Certainty::UpperBound,
            reason: Reason::BoundedSearch,
        }),
    }
}

/// Minimum of f(ab) over b = 1 and b in the window.
fn bounded_search(f: &EuclideanFn, a: &Element, window: Window) -> Result<CertifiedValue> {
    window.check(a.domain())?;
    let mut best: Option<Nat> = None;
    let mut first_err = None;
    for b in std::iter::once(Element::one(a.domain()))
        .chain(ring::enumerate_nonzero(a.domain(), window)?)
    {
        if a.product_exhausts_precision(&b) {
            continue;
        }
        match f.eval(&a.mul(&b)?) {
            Ok(v) => best = Some(best.map_or(v, |x| x.min(v))),
            Err(e) if e.is_undecidable() => {
                first_err.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    match best {
        Some(value) => Ok(CertifiedValue {
            value,
            certainty: Certainty::UpperBound,
            reason: Reason::BoundedSearch,
        }),
        None => Err(first_err.unwrap_or(Error::EvalAtZero)),
    }
}

/// f̃ on every element of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementTable {
    pub entries: Vec<(Element, CertifiedValue)>,
}

impl RefinementTable {
    pub fn all_exact(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.is_exact())
    }
}

pub fn refine_function(
    f: &EuclideanFn,
    domain: Domain,
    window: Window,
    strategy: RefineStrategy,
) -> Result<RefinementTable> {
    f.compat(domain)?;
    let elems = ring::enumerate_nonzero(domain, window)?;
    let entries = elems
        .into_par_iter()
        .map(|a| refine_eval(f, &a, strategy).map(|v| (a, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RefinementTable { entries })
}

/// f̃ as a [`Valuation`]. Values that are only upper bounds are reported
/// as `NotExact`, so checks count them as skipped instead of trusting them.
pub struct Refinement<'a> {
    f: &'a EuclideanFn,
    strategy: RefineStrategy,
    cache: Mutex<HashMap<Element, CertifiedValue>>,
}

impl<'a> Refinement<'a> {
    pub fn new(f: &'a EuclideanFn, strategy: RefineStrategy) -> Refinement<'a> {
        Refinement {
            f,
            strategy,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn certified(&self, a: &Element) -> Result<CertifiedValue> {
        if let Some(v) = self.cache.lock().unwrap().get(a) {
            return Ok(*v);
        }
        let v = refine_eval(self.f, a, self.strategy)?;
        self.cache.lock().unwrap().insert(a.clone(), v);
        Ok(v)
    }

    fn preload(&self, table: &RefinementTable) {
        let mut cache = self.cache.lock().unwrap();
        for (e, v) in &table.entries {
            cache.insert(e.clone(), *v);
        }
    }
}

impl Valuation for Refinement<'_> {
    fn value(&self, a: &Element) -> Result<Nat> {
        let v = self.certified(a)?;
        if v.is_exact() {
            Ok(v.value)
        } else {
            Err(Error::NotExact(a.to_string()))
        }
    }

    fn label(&self) -> String {
        format!("refine({})", self.f)
    }

    fn sublevel(&self, domain: Domain, bound: Nat) -> Result<Option<Vec<Element>>> {
        if domain.is_field() {
            let all = ring::enumerate_nonzero(domain, Window::WholeField)?;
            let c = self.value(&all[0])?;
            return Ok(Some(if c < bound { all } else { Vec::new() }));
        }
        if self.f.is_known_strong() {
            return self.f.sublevel(domain, bound);
        }
        Ok(None)
    }
}

/// Strong and ultra checks on f̃, and the fixed-point test f̃ = f against the
/// strong check on f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementCheck {
    pub table: RefinementTable,
    pub strongly: PropertyReport,
    pub ultra: PropertyReport,
    pub f_strongly: PropertyReport,
    /// First window element with an exact f̃(a) ≠ f(a): (a, f̃(a), f(a)).
    pub first_difference: Option<(Element, Nat, Nat)>,
    /// False when the fixed-point test and the strong verdict on f disagree
    /// in a decided way.
    pub consistent: bool,
}

impl RefinementCheck {
    /// f̃ = f on the whole window, with every value exact.
    pub fn fixed_point_on_window(&self) -> bool {
        self.first_difference.is_none() && self.table.all_exact()
    }
}

pub fn check_refinement_properties(
    f: &EuclideanFn,
    domain: Domain,
    window: Window,
    opts: CheckOptions,
) -> Result<RefinementCheck> {
    let strategy = RefineStrategy::Auto {
        fallback: Some(window),
    };
    let table = refine_function(f, domain, window, strategy)?;
    let refined = Refinement::new(f, strategy);
    refined.preload(&table);
    let strongly = check_property(Property::StronglyEuclidean, &refined, domain, window, opts)?;
    let ultra = check_property(Property::UltraEuclidean, &refined, domain, window, opts)?;
    let f_strongly = check_property(Property::StronglyEuclidean, f, domain, window, opts)?;
    let mut first_difference = None;
    for (a, v) in &table.entries {
        if !v.is_exact() {
            continue;
        }
        match f.eval(a) {
            Ok(fa) if fa != v.value => {
                first_difference = Some((a.clone(), v.value, fa));
                break;
            }
            _ => {}
        }
    }
    // f̃(a) < f(a) exhibits f(ab) < f(a), so f is not strongly Euclidean
    let consistent = match (&first_difference, &f_strongly.verdict) {
        (Some(_), Verdict::ExhaustivelyVerified) => false,
        (None, Verdict::Violated(_)) => !(window.is_exhaustive(domain) && table.all_exact()),
        _ => true,
    };
    Ok(RefinementCheck {
        table,
        strongly,
        ultra,
        f_strongly,
        first_difference,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn auto() -> RefineStrategy {
        RefineStrategy::default()
    }

    #[test]
    fn f4_table_refines_to_zero() {
        let f4 = Domain::field(4).unwrap();
        let f = EuclideanFn::field_table(f4, &[0, 1, 1]).unwrap();
        let t = refine_function(&f, f4, Window::WholeField, auto()).unwrap();
        for (_, v) in &t.entries {
            assert_eq!(*v, CertifiedValue::exact(Nat(0), Reason::ClosedFormField));
        }
    }

    #[test]
    fn strong_builtins_are_fixed_points() {
        let p3 = Domain::poly(3).unwrap();
        let a = Element::parse(p3, "x^2+1").unwrap();
        assert_eq!(
            refine_eval(&EuclideanFn::Degree, &a, auto()).unwrap(),
            CertifiedValue::exact(Nat(2), Reason::FixedPointStrong)
        );
        assert_eq!(
            refine_eval(&EuclideanFn::AbsValue, &Element::integer(-7), auto()).unwrap(),
            CertifiedValue::exact(Nat(7), Reason::FixedPointStrong)
        );
    }

    #[test]
    fn exception_at_three() {
        let three = Element::integer(3);
        // −3 is an associate outside the exceptions, so f̃(3) = |−3| = 3
        let f = EuclideanFn::with_exceptions(EuclideanFn::AbsValue, [(three.clone(), 9)]);
        assert_eq!(
            refine_eval(&f, &three, auto()).unwrap(),
            CertifiedValue::exact(Nat(3), Reason::MonotoneBound)
        );
        // with both associates overridden the next multiple is ±6
        let f = EuclideanFn::with_exceptions(
            EuclideanFn::AbsValue,
            [(three.clone(), 9), (Element::integer(-3), 9)],
        );
        assert_eq!(
            refine_eval(&f, &three, auto()).unwrap(),
            CertifiedValue::exact(Nat(6), Reason::MonotoneBound)
        );
        // an exception below the floor propagates to divisors
        let f = EuclideanFn::with_exceptions(EuclideanFn::AbsValue, [(Element::integer(12), 1)]);
        assert_eq!(refine_eval(&f, &three, auto()).unwrap().value, Nat(1));
        assert_eq!(
            refine_eval(&f, &Element::integer(5), auto()).unwrap().value,
            Nat(5)
        );
    }

    #[test]
    fn bounded_search_is_an_upper_bound() {
        let v = refine_eval(
            &EuclideanFn::AbsValue,
            &Element::integer(4),
            RefineStrategy::Bounded(Window::Magnitude(3)),
        )
        .unwrap();
        assert_eq!(
            v,
            CertifiedValue {
                value: Nat(4),
                certainty: Certainty::UpperBound,
                reason: Reason::BoundedSearch
            }
        );
    }

    #[test]
    fn refinement_checks() {
        let f4 = Domain::field(4).unwrap();
        let f = EuclideanFn::field_table(f4, &[0, 1, 1]).unwrap();
        let c = check_refinement_properties(&f, f4, Window::WholeField, CheckOptions::default())
            .unwrap();
        assert_eq!(c.strongly.verdict, Verdict::ExhaustivelyVerified);
        assert_eq!(c.ultra.verdict, Verdict::ExhaustivelyVerified);
        assert!(c.f_strongly.verdict.is_violated());
        assert!(c.first_difference.is_some());
        assert!(c.consistent);

        let z = check_refinement_properties(
            &EuclideanFn::AbsValue,
            Domain::integers(),
            Window::Magnitude(8),
            CheckOptions::default(),
        )
        .unwrap();
        assert!(z.fixed_point_on_window());
        let w = z.ultra.verdict.first_witness().unwrap().elements();
        assert_eq!(
            (w[0].to_syntax(), w[1].to_syntax()),
            ("1".into(), "1".into())
        );
    }
}
