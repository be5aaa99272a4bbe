use euclid_lab::lab::{check_property, CheckOptions};
use euclid_lab::refine::{refine_function, Certainty, RefineStrategy};
use euclid_lab::search::{
    dipped_degree_function, run_search, verify_candidate, FamilySpec, Generator, Stage,
};
use euclid_lab::verdict::{Property, Verdict};
use euclid_lab::{Domain, Window};

#[test]
fn dipped_degree_function_stays_ultra_at_larger_windows() {
    let p4 = Domain::poly(4).unwrap();
    let f = dipped_degree_function(p4).unwrap();
    for d in [3, 6] {
        let r = check_property(
            Property::UltraEuclidean,
            &f,
            p4,
            Window::Degree(d),
            CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::NoViolationFound, "D = {d}");
        assert_eq!(r.pairs_skipped, 0);
    }
    let v = verify_candidate(&f, p4, Window::Degree(4)).unwrap();
    assert_eq!(v.stage_two.len(), 1);
    assert!(v.candidates.is_empty());
}

#[test]
fn dipped_degree_function_refines_exactly() {
    // f̃ is 0 on constants and deg + 1 elsewhere
    let p4 = Domain::poly(4).unwrap();
    let f = dipped_degree_function(p4).unwrap();
    let t = refine_function(&f, p4, Window::Degree(3), RefineStrategy::default()).unwrap();
    for (a, v) in &t.entries {
        assert_eq!(v.certainty, Certainty::Exact);
        let want = if a.degree() == Some(0) {
            0
        } else {
            a.degree().unwrap() as u64 + 1
        };
        assert_eq!(v.value.get(), want, "f̃({a})");
    }
}

#[test]
fn integer_perturbations_campaign() {
    let family = FamilySpec {
        domain: Domain::integers(),
        generator: Generator::IntegerPerturbations {
            bound: 6,
            max_value: 12,
            exception_budget: 1,
        },
        budget: 1000,
    };
    let r = run_search(&family, Window::Magnitude(12)).unwrap();
    assert_eq!(r.functions_examined, 144);
    // one overridden point never repairs |1 + 1| > |1| on its own
    assert!(r.candidates.is_empty());
    assert_eq!(
        r.rejected_at(Stage::Euclidean) + r.rejected_at(Stage::Ultra),
        144
    );
    let again = run_search(&family, Window::Magnitude(12)).unwrap();
    assert_eq!(again.rejections, r.rejections);
}

#[test]
fn phi_perturbations_campaign() {
    let p2 = Domain::poly(2).unwrap();
    let family = FamilySpec {
        domain: p2,
        generator: Generator::PhiDegPerturbations {
            max_degree: 1,
            max_value: 3,
            exception_budget: 2,
        },
        budget: 500,
    };
    let r = run_search(&family, Window::Degree(3)).unwrap();
    assert_eq!(
        r.functions_examined,
        r.rejections.len() + r.candidates.len()
    );
    for c in &r.candidates {
        assert!(
            c.strongly.is_violated() && !c.ultra.is_violated() && c.refinement_ultra.is_violated()
        );
        assert!(c.refinement_values_exact());
    }
}
