//! Windowed and exhaustive property checks, unit lemmas and the theorem
//! matrix.
//!
//! Pairs are scanned row by row in the window's enumeration order. Rows are
//! processed in parallel in fixed-size chunks and merged in order, so the
//! report (canonical witness, counts) is the same as a sequential scan.

use rayon::prelude::*;

use crate::division::{self, CandidateDivision};
use crate::error::Result;
use crate::func::{Nat, Valuation};
use crate::ring::{self, gf, Domain, Element, Window};
use crate::verdict::{Property, PropertyReport, Verdict, Witness};

/// Rows per parallel batch. Fixed so that results never depend on the
/// thread count.
const ROW_CHUNK: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Collect every witness instead of stopping at the first.
    pub all_witnesses: bool,
}

// one per pair, dropped at once
#[allow(clippy::large_enum_variant)]
enum Outcome {
    Pass,
    /// Not an instance of the quantifier (e.g. a + b = 0 for ultra).
    Excluded,
    Skip,
    Fail(Witness),
}

#[derive(Default)]
struct Tally {
    checked: u64,
    skipped: u64,
    witnesses: Vec<Witness>,
}

/// Maps undecidable errors to a skipped instance.
fn decide(r: Result<Outcome>) -> Result<Outcome> {
    match r {
        Err(e) if e.is_undecidable() => Ok(Outcome::Skip),
        other => other,
    }
}

fn scan<T>(rows: usize, cols: usize, all: bool, test: T) -> Result<Tally>
where
    T: Fn(usize, usize) -> Result<Outcome> + Sync,
{
    let mut total = Tally::default();
    for start in (0..rows).step_by(ROW_CHUNK) {
        let end = (start + ROW_CHUNK).min(rows);
        let chunk: Vec<Result<Tally>> = (start..end)
            .into_par_iter()
            .map(|i| {
                let mut t = Tally::default();
                for j in 0..cols {
                    match decide(test(i, j))? {
                        Outcome::Pass => t.checked += 1,
                        Outcome::Excluded => {}
                        Outcome::Skip => t.skipped += 1,
                        Outcome::Fail(w) => {
                            t.checked += 1;
                            t.witnesses.push(w);
                            if !all {
                                break;
                            }
                        }
                    }
                }
                Ok(t)
            })
            .collect();
        for row in chunk {
            let row = row?;
            total.checked += row.checked;
            total.skipped += row.skipped;
            let found = !row.witnesses.is_empty();
            total.witnesses.extend(row.witnesses);
            if found && !all {
                return Ok(total);
            }
        }
    }
    Ok(total)
}

fn verdict_from(tally: &mut Tally, exhaustive: bool) -> Verdict {
    if !tally.witnesses.is_empty() {
        Verdict::Violated(std::mem::take(&mut tally.witnesses))
    } else if exhaustive && tally.skipped == 0 {
        Verdict::ExhaustivelyVerified
    } else {
        Verdict::NoViolationFound
    }
}

fn report(
    property: Property,
    f_label: String,
    domain: Domain,
    window: Window,
    mut tally: Tally,
) -> PropertyReport {
    PropertyReport {
        property,
        domain,
        function: f_label,
        window,
        verdict: verdict_from(&mut tally, window.is_exhaustive(domain)),
        pairs_checked: tally.checked,
        pairs_skipped: tally.skipped,
    }
}

/// Checks one property of f over window × window.
///
/// * Euclidean: every a (including 0) and b ≠ 0 has a valid division.
/// * Strongly: f(a) ≤ f(ab).
/// * Ultra: f(a+b) ≤ max(f(a), f(b)) whenever a + b ≠ 0.
/// * Uniquely: every a (including 0) and b ≠ 0 has exactly one valid division.
///
/// Unit lemma properties delegate to [`check_unit_lemmas`] and unit-field
/// closure to [`unit_field_closure`].
pub fn check_property(
    property: Property,
    f: &dyn Valuation,
    domain: Domain,
    window: Window,
    opts: CheckOptions,
) -> Result<PropertyReport> {
    window.check(domain)?;
    let elems = ring::enumerate_nonzero(domain, window)?;
    let all = opts.all_witnesses;
    let tally = match property {
        Property::StronglyEuclidean => scan(elems.len(), elems.len(), all, |i, j| {
            strongly_pair(f, &elems[i], &elems[j])
        })?,
        Property::UltraEuclidean => {
            if let Some(t) = fast_ultra(f, domain, window, &elems, all)? {
                t
            } else {
                scan(elems.len(), elems.len(), all, |i, j| {
                    ultra_pair(f, &elems[i], &elems[j])
                })?
            }
        }
        Property::Euclidean | Property::UniquelyEuclidean => {
            let mut dividends = elems.clone();
            dividends.push(Element::zero(domain));
            let unique = property == Property::UniquelyEuclidean;
            scan(dividends.len(), elems.len(), all, |i, j| {
                division_pair(f, &dividends[i], &elems[j], window, unique)
            })?
        }
        Property::UnitEquality => {
            return Ok(check_unit_lemmas(f, domain, window, opts)?.unit_equality)
        }
        Property::MinAtUnits => return Ok(check_unit_lemmas(f, domain, window, opts)?.min_at_units),
        Property::UnitFieldClosure => return unit_field_closure(domain, window, opts),
    };
    Ok(report(property, f.label(), domain, window, tally))
}

fn strongly_pair(f: &dyn Valuation, a: &Element, b: &Element) -> Result<Outcome> {
    if a.product_exhausts_precision(b) {
        return Ok(Outcome::Skip);
    }
    let product = a.mul(b)?;
    let (f_a, f_product) = (f.value(a)?, f.value(&product)?);
    Ok(if f_product < f_a {
        Outcome::Fail(Witness::Strongly {
            a: a.clone(),
            b: b.clone(),
            product,
            f_a,
            f_product,
        })
    } else {
        Outcome::Pass
    })
}

fn ultra_pair(f: &dyn Valuation, a: &Element, b: &Element) -> Result<Outcome> {
    let sum = a.add(b)?;
    if sum.is_zero() {
        return Ok(Outcome::Excluded);
    }
    let (f_a, f_b, f_sum) = (f.value(a)?, f.value(b)?, f.value(&sum)?);
    Ok(if f_sum > f_a.max(f_b) {
        Outcome::Fail(Witness::Ultra {
            a: a.clone(),
            b: b.clone(),
            sum,
            f_a,
            f_b,
            f_sum,
        })
    } else {
        Outcome::Pass
    })
}

fn division_pair(
    f: &dyn Valuation,
    a: &Element,
    b: &Element,
    window: Window,
    unique: bool,
) -> Result<Outcome> {
    if !unique {
        let (q, r) = division::canonical_divide(a, b)?;
        if CandidateDivision::judge(f, a, b, &q, &r)?.valid {
            return Ok(Outcome::Pass);
        }
    }
    let res = division::enumerate_valid_divisions(f, a, b, Some(window))?;
    let n = res.divisions.len();
    let fail = || {
        let divisions = res
            .divisions
            .iter()
            .map(|d| (d.q.clone(), d.r.clone()))
            .collect();
        Outcome::Fail(Witness::Divisions {
            a: a.clone(),
            b: b.clone(),
            divisions,
        })
    };
    Ok(match (unique, n, res.complete) {
        (false, 0, true) => Outcome::Fail(Witness::NoDivision {
            a: a.clone(),
            b: b.clone(),
        }),
        (false, _, _) if n > 0 => Outcome::Pass,
        (true, 1, true) => Outcome::Pass,
        (true, 0, true) => fail(),
        (true, _, _) if n >= 2 => fail(),
        _ => Outcome::Skip,
    })
}

/// Digit-wise sum of base-q codes.
fn code_add(q: u8, a: u64, b: u64) -> u64 {
    let field = gf::table(q);
    if field.characteristic() == 2 {
        // F_2 and F_4 add coefficient indices by xor
        return a ^ b;
    }
    let (q, mut a, mut b) = (q as u64, a, b);
    let (mut out, mut place) = (0, 1);
    while a > 0 || b > 0 {
        let digit = field.add((a % q) as u8, (b % q) as u8) as u64;
        out += digit * place;
        place *= q;
        a /= q;
        b /= q;
    }
    out
}

/// Ultra check on windows closed under addition, via a value table indexed
/// by element codes. Same pairs, order and witnesses as the generic scan.
fn fast_ultra(
    f: &dyn Valuation,
    domain: Domain,
    window: Window,
    elems: &[Element],
    all: bool,
) -> Result<Option<Tally>> {
    let Some(q) = domain.field_order() else {
        return Ok(None);
    };
    if !window.is_additively_closed() {
        return Ok(None);
    }
    // codes of window elements are exactly 1..=len
    let mut values: Vec<Option<Nat>> = vec![None; elems.len() + 1];
    for (k, e) in elems.iter().enumerate() {
        debug_assert_eq!(e.code(), Some(k as u64 + 1));
        values[k + 1] = match f.value(e) {
            Ok(v) => Some(v),
            Err(err) if err.is_undecidable() => None,
            Err(err) => return Err(err),
        };
    }
    let tally = scan(elems.len(), elems.len(), all, |i, j| {
        let (ca, cb) = (i as u64 + 1, j as u64 + 1);
        let cs = code_add(q, ca, cb);
        if cs == 0 {
            return Ok(Outcome::Excluded);
        }
        let (Some(f_a), Some(f_b), Some(f_sum)) = (
            values[ca as usize],
            values[cb as usize],
            values[cs as usize],
        ) else {
            return Ok(Outcome::Skip);
        };
        Ok(if f_sum > f_a.max(f_b) {
            let sum = Element::from_code(domain, cs);
            Outcome::Fail(Witness::Ultra {
                a: elems[i].clone(),
                b: elems[j].clone(),
                sum,
                f_a,
                f_b,
                f_sum,
            })
        } else {
            Outcome::Pass
        })
    })?;
    Ok(Some(tally))
}

/// The two unit lemmas for a function found strongly Euclidean on the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitLemmaReport {
    pub strongly: PropertyReport,
    /// f(a) = f(ab) exactly when b is a unit.
    pub unit_equality: PropertyReport,
    /// min f is attained exactly on the units of the window.
    pub min_at_units: PropertyReport,
    pub min_value: Option<Nat>,
}

/// Both lemmas presuppose the strong property; when the window already
/// refutes it, both reports are `NotApplicable`.
pub fn check_unit_lemmas(
    f: &dyn Valuation,
    domain: Domain,
    window: Window,
    opts: CheckOptions,
) -> Result<UnitLemmaReport> {
    let strongly = check_property(
        Property::StronglyEuclidean,
        f,
        domain,
        window,
        CheckOptions::default(),
    )?;
    let blank = |property| PropertyReport {
        property,
        domain,
        function: f.label(),
        window,
        verdict: Verdict::NotApplicable,
        pairs_checked: 0,
        pairs_skipped: 0,
    };
    if strongly.verdict.is_violated() {
        return Ok(UnitLemmaReport {
            strongly,
            unit_equality: blank(Property::UnitEquality),
            min_at_units: blank(Property::MinAtUnits),
            min_value: None,
        });
    }
    let elems = ring::enumerate_nonzero(domain, window)?;
    let units = ring::units_in_window(domain, window)?;
    let is_unit = |e: &Element| units.binary_search(e).is_ok();
    let all = opts.all_witnesses;

    let equality = scan(elems.len(), elems.len(), all, |i, j| {
        let (a, b) = (&elems[i], &elems[j]);
        if a.product_exhausts_precision(b) {
            return Ok(Outcome::Skip);
        }
        let (f_a, f_product) = (f.value(a)?, f.value(&a.mul(b)?)?);
        let b_is_unit = is_unit(b);
        Ok(if (f_a == f_product) != b_is_unit {
            Outcome::Fail(Witness::UnitEquality {
                a: a.clone(),
                b: b.clone(),
                f_a,
                f_product,
                b_is_unit,
            })
        } else {
            Outcome::Pass
        })
    })?;

    let mut values = Vec::with_capacity(elems.len());
    let mut skipped = 0;
    for e in &elems {
        match f.value(e) {
            Ok(v) => values.push(Some(v)),
            Err(err) if err.is_undecidable() => {
                skipped += 1;
                values.push(None)
            }
            Err(err) => return Err(err),
        }
    }
    let min_value = values.iter().flatten().min().copied();
    let mut min_tally = Tally {
        skipped,
        ..Tally::default()
    };
    if let Some(min) = min_value {
        for (e, v) in elems.iter().zip(&values) {
            let Some(value) = *v else { continue };
            min_tally.checked += 1;
            let unit = is_unit(e);
            if (value == min) != unit {
                min_tally.witnesses.push(Witness::MinAtUnits {
                    element: e.clone(),
                    value,
                    min,
                    is_unit: unit,
                });
                if !all {
                    break;
                }
            }
        }
    }
    Ok(UnitLemmaReport {
        strongly,
        unit_equality: report(Property::UnitEquality, f.label(), domain, window, equality),
        min_at_units: report(Property::MinAtUnits, f.label(), domain, window, min_tally),
        min_value,
    })
}

/// Checks that u + v is zero or a unit for all units u, v in the window.
pub fn unit_field_closure(
    domain: Domain,
    window: Window,
    opts: CheckOptions,
) -> Result<PropertyReport> {
    window.check(domain)?;
    let units = ring::units_in_window(domain, window)?;
    let tally = scan(units.len(), units.len(), opts.all_witnesses, |i, j| {
        let (u, v) = (&units[i], &units[j]);
        let sum = u.add(v)?;
        Ok(if sum.is_zero() {
            Outcome::Excluded
        } else if sum.is_unit() {
            Outcome::Pass
        } else {
            Outcome::Fail(Witness::UnitSum {
                u: u.clone(),
                v: v.clone(),
                sum,
            })
        })
    })?;
    Ok(report(
        Property::UnitFieldClosure,
        "-".into(),
        domain,
        window,
        tally,
    ))
}

/// Three-valued reading of a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn of(v: &Verdict) -> Truth {
        match v {
            Verdict::ExhaustivelyVerified => Truth::True,
            Verdict::Violated(_) => Truth::False,
            Verdict::NoViolationFound | Verdict::NotApplicable => Truth::Unknown,
        }
    }

    fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    fn definite(self) -> bool {
        self != Truth::Unknown
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixStatus {
    /// Both sides of "uniquely ⟺ Euclidean ∧ strongly ∧ ultra" are decided and agree.
    Consistent,
    /// Nothing decided contradicts the theorems, but the window leaves the
    /// relation open.
    WindowConsistent,
    /// Strongly, ultra or Euclidean is refuted while uniqueness is only
    /// unrefuted on the window; uniqueness may fail outside it.
    InconclusivePair,
    /// Decided verdicts contradict a theorem: an implementation bug.
    TheoremContradiction,
}

impl MatrixStatus {
    pub fn name(self) -> &'static str {
        match self {
            MatrixStatus::Consistent => "consistent",
            MatrixStatus::WindowConsistent => "window_consistent",
            MatrixStatus::InconclusivePair => "inconclusive_pair",
            MatrixStatus::TheoremContradiction => "theorem_contradiction",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixReport {
    pub euclidean: PropertyReport,
    pub strongly: PropertyReport,
    pub ultra: PropertyReport,
    pub uniquely: PropertyReport,
    pub status: MatrixStatus,
    /// Refuted properties that account for a refuted uniqueness.
    pub explained_by: Vec<Property>,
    /// Refuted properties facing an unrefuted uniqueness.
    pub inconclusive: Vec<Property>,
    /// Theorem relations contradicted by decided verdicts.
    pub contradictions: Vec<String>,
}

impl MatrixReport {
    pub fn report(&self, p: Property) -> Option<&PropertyReport> {
        match p {
            Property::Euclidean => Some(&self.euclidean),
            Property::StronglyEuclidean => Some(&self.strongly),
            Property::UltraEuclidean => Some(&self.ultra),
            Property::UniquelyEuclidean => Some(&self.uniquely),
            _ => None,
        }
    }
}

/// Runs the four predicate checks and compares them with the theorem
/// relations using only the verdicts.
pub fn theorem_matrix(
    f: &dyn Valuation,
    domain: Domain,
    window: Window,
    opts: CheckOptions,
) -> Result<MatrixReport> {
    let run = |p| check_property(p, f, domain, window, opts);
    let (euclidean, strongly, ultra, uniquely) = (
        run(Property::Euclidean)?,
        run(Property::StronglyEuclidean)?,
        run(Property::UltraEuclidean)?,
        run(Property::UniquelyEuclidean)?,
    );
    let (e, s, u, q) = (
        Truth::of(&euclidean.verdict),
        Truth::of(&strongly.verdict),
        Truth::of(&ultra.verdict),
        Truth::of(&uniquely.verdict),
    );
    let rhs = e.and(s).and(u);
    let mut contradictions = Vec::new();
    if q == Truth::True && s == Truth::False {
        contradictions.push("uniquely => strongly".to_string());
    }
    if q == Truth::True && e == Truth::False {
        contradictions.push("uniquely => euclidean".to_string());
    }
    if e == Truth::True && s == Truth::True && u.definite() && q.definite() && u != q {
        contradictions.push("given strongly: uniquely <=> ultra".to_string());
    }
    if q.definite() && rhs.definite() && q != rhs {
        contradictions.push("uniquely <=> euclidean and strongly and ultra".to_string());
    }
    let refuted: Vec<Property> = [
        (Property::Euclidean, e),
        (Property::StronglyEuclidean, s),
        (Property::UltraEuclidean, u),
    ]
    .into_iter()
    .filter(|(_, t)| *t == Truth::False)
    .map(|(p, _)| p)
    .collect();
    let (explained_by, inconclusive) = match q {
        Truth::False => (refuted, Vec::new()),
        Truth::Unknown => (Vec::new(), refuted),
        Truth::True => (Vec::new(), Vec::new()),
    };
    let status = if !contradictions.is_empty() {
        MatrixStatus::TheoremContradiction
    } else if q.definite() && rhs.definite() {
        MatrixStatus::Consistent
    } else if !inconclusive.is_empty() {
        MatrixStatus::InconclusivePair
    } else {
        MatrixStatus::WindowConsistent
    };
    Ok(MatrixReport {
        euclidean,
        strongly,
        ultra,
        uniquely,
        status,
        explained_by,
        inconclusive,
        contradictions,
    })
}

/// Witnesses must replay; used by tests and the CLI self-check.
pub fn replay_all(report: &PropertyReport, f: &dyn Valuation) -> Result<bool> {
    for w in report.verdict.witnesses() {
        if !w.replay(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::EuclideanFn;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    fn first_pair(r: &PropertyReport) -> (String, String) {
        let els = r.verdict.first_witness().unwrap().elements();
        (els[0].to_syntax(), els[1].to_syntax())
    }

    #[test]
    fn abs_is_not_ultra() {
        let r = check_property(
            Property::UltraEuclidean,
            &EuclideanFn::AbsValue,
            Domain::integers(),
            Window::Magnitude(3),
            opts(),
        )
        .unwrap();
        assert_eq!(first_pair(&r), ("1".into(), "1".into()));
        assert!(replay_all(&r, &EuclideanFn::AbsValue).unwrap());
    }

    #[test]
    fn order_is_not_ultra() {
        let s = Domain::series(2, 8).unwrap();
        let r = check_property(
            Property::UltraEuclidean,
            &EuclideanFn::Order,
            s,
            Window::Residues,
            opts(),
        )
        .unwrap();
        assert_eq!(first_pair(&r), ("1".into(), "x+1".into()));
    }

    #[test]
    fn fast_ultra_matches_generic_scan() {
        let cases = [
            (
                Domain::poly(3).unwrap(),
                Window::Degree(2),
                EuclideanFn::with_exceptions(
                    EuclideanFn::phi_deg(1..8),
                    [(Element::parse(Domain::poly(3).unwrap(), "x").unwrap(), 0)],
                ),
            ),
            (
                Domain::series(2, 4).unwrap(),
                Window::Residues,
                EuclideanFn::Order,
            ),
            (
                Domain::field(5).unwrap(),
                Window::WholeField,
                EuclideanFn::field_table(Domain::field(5).unwrap(), &[0, 1, 0, 1]).unwrap(),
            ),
        ];
        for (domain, window, f) in cases {
            let all = CheckOptions {
                all_witnesses: true,
            };
            let fast = check_property(Property::UltraEuclidean, &f, domain, window, all).unwrap();
            let elems = ring::enumerate_nonzero(domain, window).unwrap();
            let slow = scan(elems.len(), elems.len(), true, |i, j| {
                ultra_pair(&f, &elems[i], &elems[j])
            })
            .unwrap();
            assert_eq!(fast.verdict.witnesses(), &slow.witnesses[..], "{domain}");
            assert_eq!(fast.pairs_checked, slow.checked);
        }
    }

    #[test]
    fn f4_table_verdicts() {
        let f4 = Domain::field(4).unwrap();
        let f = EuclideanFn::field_table(f4, &[0, 1, 1]).unwrap();
        let m = theorem_matrix(&f, f4, Window::WholeField, opts()).unwrap();
        assert_eq!(m.ultra.verdict, Verdict::ExhaustivelyVerified);
        assert_eq!(m.euclidean.verdict, Verdict::ExhaustivelyVerified);
        assert_eq!(first_pair(&m.strongly), ("a".into(), "b".into()));
        assert_eq!(first_pair(&m.uniquely), ("1".into(), "a".into()));
        assert_eq!(m.status, MatrixStatus::Consistent);
        assert_eq!(m.explained_by, vec![Property::StronglyEuclidean]);
    }

    #[test]
    fn constant_table_on_f5_is_uniquely_euclidean() {
        let f5 = Domain::field(5).unwrap();
        let f = EuclideanFn::constant(f5, 2).unwrap();
        let m = theorem_matrix(&f, f5, Window::WholeField, opts()).unwrap();
        for p in Property::PREDICATES {
            assert_eq!(
                m.report(p).unwrap().verdict,
                Verdict::ExhaustivelyVerified,
                "{p}"
            );
        }
        assert_eq!(m.status, MatrixStatus::Consistent);
    }

    #[test]
    fn integers_matrix() {
        let m = theorem_matrix(
            &EuclideanFn::AbsValue,
            Domain::integers(),
            Window::Magnitude(10),
            opts(),
        )
        .unwrap();
        assert_eq!(m.strongly.verdict, Verdict::NoViolationFound);
        assert!(m.ultra.verdict.is_violated());
        assert_eq!(first_pair(&m.uniquely), ("1".into(), "2".into()));
        assert_eq!(m.status, MatrixStatus::Consistent);
        assert!(m.contradictions.is_empty());
    }

    #[test]
    fn degree_on_f2_window() {
        let p2 = Domain::poly(2).unwrap();
        let m = theorem_matrix(&EuclideanFn::Degree, p2, Window::Degree(3), opts()).unwrap();
        for p in Property::PREDICATES {
            let r = m.report(p).unwrap();
            assert_eq!(r.verdict, Verdict::NoViolationFound, "{p}");
            assert_eq!(r.pairs_skipped, 0, "{p}");
        }
        assert_eq!(m.status, MatrixStatus::WindowConsistent);
    }

    #[test]
    fn unit_lemmas() {
        let z = check_unit_lemmas(
            &EuclideanFn::AbsValue,
            Domain::integers(),
            Window::Magnitude(5),
            opts(),
        )
        .unwrap();
        assert_eq!(z.min_value, Some(Nat(1)));
        assert_eq!(z.unit_equality.verdict, Verdict::NoViolationFound);
        assert_eq!(z.min_at_units.verdict, Verdict::NoViolationFound);
        let p3 = check_unit_lemmas(
            &EuclideanFn::Degree,
            Domain::poly(3).unwrap(),
            Window::Degree(3),
            opts(),
        )
        .unwrap();
        assert_eq!(p3.min_value, Some(Nat(0)));
        assert!(!p3.min_at_units.verdict.is_violated());
        let g = check_unit_lemmas(
            &EuclideanFn::QuadNorm,
            Domain::gaussian(),
            Window::Coordinates(6),
            opts(),
        )
        .unwrap();
        assert_eq!(g.min_value, Some(Nat(1)));
        assert!(!g.unit_equality.verdict.is_violated());
        let f4 = Domain::field(4).unwrap();
        let t = check_unit_lemmas(
            &EuclideanFn::field_table(f4, &[0, 1, 1]).unwrap(),
            f4,
            Window::WholeField,
            opts(),
        )
        .unwrap();
        assert_eq!(t.unit_equality.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn unit_closure() {
        let f5 = unit_field_closure(Domain::field(5).unwrap(), Window::WholeField, opts()).unwrap();
        assert_eq!(f5.verdict, Verdict::ExhaustivelyVerified);
        let z = unit_field_closure(Domain::integers(), Window::Magnitude(3), opts()).unwrap();
        assert_eq!(first_pair(&z), ("1".into(), "1".into()));
        let p2 = unit_field_closure(Domain::poly(2).unwrap(), Window::Degree(3), opts()).unwrap();
        assert_eq!(p2.verdict, Verdict::NoViolationFound);
    }

    #[test]
    fn all_witnesses_extends_first() {
        let z = Domain::integers();
        let first = check_property(
            Property::UltraEuclidean,
            &EuclideanFn::AbsValue,
            z,
            Window::Magnitude(4),
            opts(),
        )
        .unwrap();
        let all = check_property(
            Property::UltraEuclidean,
            &EuclideanFn::AbsValue,
            z,
            Window::Magnitude(4),
            CheckOptions {
                all_witnesses: true,
            },
        )
        .unwrap();
        assert_eq!(first.verdict.witnesses()[0], all.verdict.witnesses()[0]);
        assert!(all.verdict.witnesses().len() > 1);
    }
}
