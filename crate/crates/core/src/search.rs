//! Falsification harness for "f ultra-Euclidean implies f̃ ultra-Euclidean".
//!
//! A counterexample needs f Euclidean and ultra but not strongly Euclidean,
//! with f̃ not ultra. Each generated function runs through those filters in
//! that order; survivors are reported, nothing is ever claimed proven.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::func::EuclideanFn;
use crate::lab::{check_property, CheckOptions};
use crate::refine::{refine_function, RefineStrategy, Refinement};
use crate::ring::{self, Domain, Element, Kind, Window};
use crate::verdict::{Property, Verdict, Witness};

/// Degrees covered by the phi vector of the polynomial perturbation base.
pub const PHI_BASE_LEN: usize = 33;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Every map from the nonzero field elements to {0, …, max_value}.
    AllFieldTables { max_value: u64 },
    /// phi(k) = k + 1 on F_q[x], overridden at up to `exception_budget`
    /// polynomials of degree ≤ `max_degree`.
    PhiDegPerturbations {
        max_degree: usize,
        max_value: u64,
        exception_budget: usize,
    },
    /// |n| on ℤ, overridden at up to `exception_budget` points with |n| ≤ bound.
    IntegerPerturbations {
        bound: u64,
        max_value: u64,
        exception_budget: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub domain: Domain,
    pub generator: Generator,
    /// Maximum number of functions to enumerate.
    pub budget: usize,
}

/// The base of the polynomial perturbation family, phi(k) = k + 1.
pub fn phi_base() -> EuclideanFn {
    EuclideanFn::phi_deg((1..=PHI_BASE_LEN as u64).collect::<Vec<_>>())
}

/// The family's functions in a fixed order, at most `budget` of them.
/// Perturbations never repeat a base value, so no function appears twice.
pub fn enumerate_family(family: &FamilySpec) -> Result<Vec<EuclideanFn>> {
    if family.budget == 0 {
        return Err(Error::BudgetZero);
    }
    let domain = family.domain;
    let budget = family.budget;
    match (family.generator, domain.kind()) {
        (Generator::AllFieldTables { max_value }, Kind::Field { q }) => {
            let n = q as usize - 1;
            let mut values = vec![0u64; n];
            let mut out = Vec::new();
            loop {
                out.push(EuclideanFn::field_table(domain, &values)?);
                if out.len() == budget {
                    return Ok(out);
                }
                // odometer, first element least significant
                let mut i = 0;
                while i < n && values[i] == max_value {
                    values[i] = 0;
                    i += 1;
                }
                if i == n {
                    return Ok(out);
                }
                values[i] += 1;
            }
        }
        (
            Generator::PhiDegPerturbations {
                max_degree,
                max_value,
                exception_budget,
            },
            Kind::Poly { .. },
        ) => {
            if max_degree >= PHI_BASE_LEN {
                return Err(Error::InvalidFamily(format!(
                    "max_degree must be below {PHI_BASE_LEN}"
                )));
            }
            let base = phi_base();
            let points = ring::enumerate_nonzero(domain, Window::Degree(max_degree))?;
            perturbations(&base, &points, max_value, exception_budget, budget)
        }
        (
            Generator::IntegerPerturbations {
                bound,
                max_value,
                exception_budget,
            },
            Kind::Integers,
        ) => {
            let points = ring::enumerate_nonzero(domain, Window::Magnitude(bound))?;
            perturbations(
                &EuclideanFn::AbsValue,
                &points,
                max_value,
                exception_budget,
                budget,
            )
        }
        (generator, _) => Err(Error::InvalidFamily(format!(
            "{generator:?} does not apply to {domain}"
        ))),
    }
}

/// Exception sets by size, then by point order, then by values in odometer
/// order with the last point least significant.
fn perturbations(
    base: &EuclideanFn,
    points: &[Element],
    max_value: u64,
    exception_budget: usize,
    budget: usize,
) -> Result<Vec<EuclideanFn>> {
    let mut alternatives = Vec::with_capacity(points.len());
    for p in points {
        let b = base.eval(p)?.get();
        alternatives.push((0..=max_value).filter(|&v| v != b).collect::<Vec<_>>());
    }
    let mut out = Vec::new();
    for size in 1..=exception_budget.min(points.len()) {
        let mut chosen: Vec<usize> = (0..size).collect();
        loop {
            if !assign(
                base,
                points,
                &alternatives,
                &chosen,
                &mut Vec::new(),
                &mut out,
                budget,
            ) {
                return Ok(out);
            }
            // next combination
            let mut i = size;
            while i > 0 && chosen[i - 1] == points.len() - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            chosen[i - 1] += 1;
            for j in i..size {
                chosen[j] = chosen[j - 1] + 1;
            }
        }
    }
    Ok(out)
}

/// Pushes every value assignment of the chosen points; false once the budget is hit.
fn assign(
    base: &EuclideanFn,
    points: &[Element],
    alternatives: &[Vec<u64>],
    chosen: &[usize],
    values: &mut Vec<u64>,
    out: &mut Vec<EuclideanFn>,
    budget: usize,
) -> bool {
    if values.len() == chosen.len() {
        let exceptions = chosen
            .iter()
            .zip(values.iter())
            .map(|(&i, &v)| (points[i].clone(), v));
        out.push(EuclideanFn::with_exceptions(base.clone(), exceptions));
        return out.len() < budget;
    }
    for &v in &alternatives[chosen[values.len()]] {
        values.push(v);
        let more = assign(base, points, alternatives, chosen, values, out, budget);
        values.pop();
        if !more {
            return false;
        }
    }
    true
}

/// The filter at which a function left the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    /// Some pair has no valid division.
    Euclidean,
    /// f itself is not ultra.
    Ultra,
    /// f is strongly Euclidean on the window, so f̃ = f there.
    StronglyRequired,
    /// f̃ showed no ultra violation among exact values.
    RefinementUltra,
}

impl Stage {
    pub const ALL: [Stage; 4] = [
        Stage::Euclidean,
        Stage::Ultra,
        Stage::StronglyRequired,
        Stage::RefinementUltra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Euclidean => "euclidean",
            Stage::Ultra => "ultra",
            Stage::StronglyRequired => "strongly_violated_required",
            Stage::RefinementUltra => "refinement_ultra",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// Position in the family enumeration.
    pub index: usize,
    pub function: EuclideanFn,
    pub stage: Stage,
    /// Evidence for the rejection, when the stage has one.
    pub witness: Option<Witness>,
}

/// A function that is ultra but not strongly Euclidean on the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub index: usize,
    pub function: EuclideanFn,
    pub ultra: Verdict,
    pub strongly: Verdict,
    pub refinement_ultra: Verdict,
    /// Every f̃ value on the window was certified exact.
    pub refinement_exact: bool,
    /// Refinement pairs skipped because a value was only an upper bound.
    pub refinement_pairs_skipped: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub domain: Domain,
    pub window: Window,
    /// Functions whose refinement is not ultra on the window.
    pub candidates: Vec<Candidate>,
    /// Functions that passed the first three filters, survivors included.
    pub stage_two: Vec<Candidate>,
    pub rejections: Vec<Rejection>,
    pub functions_examined: usize,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn rejected_at(&self, stage: Stage) -> usize {
        self.rejections.iter().filter(|r| r.stage == stage).count()
    }

    pub fn rejection_counts(&self) -> BTreeMap<&'static str, usize> {
        Stage::ALL
            .iter()
            .map(|&s| (s.name(), self.rejected_at(s)))
            .collect()
    }
}

enum Outcome {
    Rejected(Rejection),
    Passed {
        candidate: Candidate,
        survives: bool,
    },
}

fn classify(index: usize, f: &EuclideanFn, domain: Domain, window: Window) -> Result<Outcome> {
    let opts = CheckOptions::default();
    let reject = |stage, verdict: &Verdict| {
        Ok(Outcome::Rejected(Rejection {
            index,
            function: f.clone(),
            stage,
            witness: verdict.first_witness().cloned(),
        }))
    };
    let euclidean = check_property(Property::Euclidean, f, domain, window, opts)?;
    if euclidean.verdict.is_violated() {
        return reject(Stage::Euclidean, &euclidean.verdict);
    }
    let ultra = check_property(Property::UltraEuclidean, f, domain, window, opts)?;
    if ultra.verdict.is_violated() {
        return reject(Stage::Ultra, &ultra.verdict);
    }
    let strongly = check_property(Property::StronglyEuclidean, f, domain, window, opts)?;
    if !strongly.verdict.is_violated() {
        return reject(Stage::StronglyRequired, &strongly.verdict);
    }
    // no fallback window: anything not certified stays an upper bound and is skipped
    let strategy = RefineStrategy::Auto { fallback: None };
    let refinement_exact = match refine_function(f, domain, window, strategy) {
        Ok(table) => table.all_exact(),
        Err(Error::WindowRequired { .. }) => false,
        Err(e) if e.is_undecidable() => false,
        Err(e) => return Err(e),
    };
    let refined = Refinement::new(f, strategy);
    let refined_ultra = check_property(Property::UltraEuclidean, &refined, domain, window, opts)?;
    let survives = refined_ultra.verdict.is_violated();
    let candidate = Candidate {
        index,
        function: f.clone(),
        ultra: ultra.verdict,
        strongly: strongly.verdict,
        refinement_ultra: refined_ultra.verdict,
        refinement_exact,
        refinement_pairs_skipped: refined_ultra.pairs_skipped,
    };
    Ok(Outcome::Passed {
        candidate,
        survives,
    })
}

fn run(functions: Vec<EuclideanFn>, domain: Domain, window: Window) -> Result<SearchReport> {
    let start = Instant::now();
    window.check(domain)?;
    for f in &functions {
        f.compat(domain)?;
    }
    let outcomes = functions
        .par_iter()
        .enumerate()
        .map(|(i, f)| classify(i, f, domain, window))
        .collect::<Result<Vec<_>>>()?;
    let mut report = SearchReport {
        domain,
        window,
        candidates: Vec::new(),
        stage_two: Vec::new(),
        rejections: Vec::new(),
        functions_examined: functions.len(),
        elapsed: Duration::ZERO,
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Rejected(r) => report.rejections.push(r),
            Outcome::Passed {
                candidate,
                survives,
            } => {
                if survives {
                    report.candidates.push(candidate.clone());
                } else {
                    report.rejections.push(Rejection {
                        index: candidate.index,
                        function: candidate.function.clone(),
                        stage: Stage::RefinementUltra,
                        witness: None,
                    });
                }
                report.stage_two.push(candidate);
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

pub fn run_search(family: &FamilySpec, window: Window) -> Result<SearchReport> {
    run(enumerate_family(family)?, family.domain, window)
}

/// Re-runs every filter on one function, typically at a larger window than
/// the search used. Also serves to classify control functions.
pub fn verify_candidate(f: &EuclideanFn, domain: Domain, window: Window) -> Result<SearchReport> {
    run(vec![f.clone()], domain, window)
}

/// f(1) = 0 and f(p) = deg p + 1 otherwise, on F_q[x].
pub fn dipped_degree_function(domain: Domain) -> Result<EuclideanFn> {
    Ok(EuclideanFn::with_exceptions(
        phi_base(),
        [(Element::one(domain), 0)],
    ))
}

impl Candidate {
    pub fn refinement_values_exact(&self) -> bool {
        self.refinement_exact && self.refinement_pairs_skipped == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(domain: Domain, generator: Generator) -> FamilySpec {
        FamilySpec {
            domain,
            generator,
            budget: usize::MAX,
        }
    }

    #[test]
    fn family_sizes() {
        let f4 = Domain::field(4).unwrap();
        assert_eq!(
            enumerate_family(&family(f4, Generator::AllFieldTables { max_value: 1 }))
                .unwrap()
                .len(),
            8
        );
        let f5 = Domain::field(5).unwrap();
        assert_eq!(
            enumerate_family(&family(f5, Generator::AllFieldTables { max_value: 3 }))
                .unwrap()
                .len(),
            256
        );
        let z = family(
            Domain::integers(),
            Generator::IntegerPerturbations {
                bound: 6,
                max_value: 12,
                exception_budget: 1,
            },
        );
        let fs = enumerate_family(&z).unwrap();
        assert_eq!(fs.len(), 12 * 12);
        assert!(fs.iter().all(
            |f| matches!(f, EuclideanFn::ExceptionTable { exceptions, .. } if exceptions.len() == 1)
        ));
        let mut sorted: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), fs.len());
    }

    #[test]
    fn budget_bounds_the_family() {
        let mut spec = family(
            Domain::integers(),
            Generator::IntegerPerturbations {
                bound: 4,
                max_value: 5,
                exception_budget: 2,
            },
        );
        spec.budget = 10;
        assert_eq!(enumerate_family(&spec).unwrap().len(), 10);
        spec.budget = 0;
        assert!(matches!(enumerate_family(&spec), Err(Error::BudgetZero)));
    }

    #[test]
    fn mismatched_generator() {
        let spec = family(
            Domain::integers(),
            Generator::AllFieldTables { max_value: 1 },
        );
        assert!(matches!(
            enumerate_family(&spec),
            Err(Error::InvalidFamily(_))
        ));
    }

    #[test]
    fn phi_family_contains_dipped_degree() {
        let p4 = Domain::poly(4).unwrap();
        let spec = family(
            p4,
            Generator::PhiDegPerturbations {
                max_degree: 0,
                max_value: 2,
                exception_budget: 1,
            },
        );
        let fs = enumerate_family(&spec).unwrap();
        assert_eq!(fs.len(), 3 * 2);
        assert!(fs.contains(&dipped_degree_function(p4).unwrap()));
    }

    #[test]
    fn f4_tables_leave_no_survivors() {
        let f4 = Domain::field(4).unwrap();
        let r = run_search(
            &family(f4, Generator::AllFieldTables { max_value: 1 }),
            Window::WholeField,
        )
        .unwrap();
        assert_eq!(r.functions_examined, 8);
        assert!(r.candidates.is_empty());
        // the table f(1)=0, f(α)=f(β)=1 reaches the refinement stage
        let table = EuclideanFn::field_table(f4, &[0, 1, 1]).unwrap();
        assert!(r.stage_two.iter().any(|c| c.function == table));
    }

    #[test]
    fn dipped_degree_function_is_a_stage_two_candidate() {
        let p4 = Domain::poly(4).unwrap();
        let f = dipped_degree_function(p4).unwrap();
        let r = verify_candidate(&f, p4, Window::Degree(2)).unwrap();
        assert_eq!(r.stage_two.len(), 1);
        let c = &r.stage_two[0];
        assert_eq!(c.ultra, Verdict::NoViolationFound);
        assert!(c.strongly.is_violated());
        assert!(c.refinement_exact);
        assert!(r.candidates.is_empty());
    }

    #[test]
    fn controls() {
        let r = verify_candidate(
            &EuclideanFn::AbsValue,
            Domain::integers(),
            Window::Magnitude(10),
        )
        .unwrap();
        assert_eq!(r.rejections[0].stage, Stage::Ultra);
        let p2 = Domain::poly(2).unwrap();
        let r = verify_candidate(&EuclideanFn::Degree, p2, Window::Degree(4)).unwrap();
        assert_eq!(r.rejections[0].stage, Stage::StronglyRequired);
    }
}
