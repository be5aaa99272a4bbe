//! Library results against independent brute-force computations.

use std::collections::{BTreeMap, BTreeSet};

use euclid_lab::division::{enumerate_valid_divisions, gcd_extended};
use euclid_lab::func::{EuclideanFn, Nat};
use euclid_lab::refine::{refine_eval, Certainty, RefineStrategy};
use euclid_lab::ring::{enumerate_nonzero, units_by_scan, units_in_window, QUADRATIC_D};
use euclid_lab::{Domain, Element, Window};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// (u + v√d)/2 as doubled coordinates, multiplied without the library.
fn quad_mul(d: i64, (u1, v1): (i64, i64), (u2, v2): (i64, i64)) -> (i64, i64) {
    ((u1 * u2 + d * v1 * v2) / 2, (u1 * v2 + u2 * v1) / 2)
}

fn quad_norm(d: i64, (u, v): (i64, i64)) -> i64 {
    ((u * u - d * v * v) / 4).abs()
}

fn on_lattice(d: i64, (u, v): (i64, i64)) -> bool {
    if d.rem_euclid(4) == 1 {
        (u - v) % 2 == 0
    } else {
        u % 2 == 0 && v % 2 == 0
    }
}

fn coords(e: &Element) -> (i64, i64) {
    let (u, v) = e.doubled_coordinates().unwrap();
    (i64::try_from(u).unwrap(), i64::try_from(v).unwrap())
}

#[test]
fn imaginary_quadratic_divisions_match_brute_force() {
    for d in [-11i64, -7, -3, -2] {
        let domain = Domain::quadratic(d).unwrap();
        let elems = enumerate_nonzero(domain, Window::Coordinates(4)).unwrap();
        let mut dividends = elems.clone();
        dividends.push(Element::zero(domain));
        for a in &dividends {
            for b in &elems {
                let (ca, cb) = (coords(a), coords(b));
                let mut oracle = BTreeSet::new();
                // |q| < |a|/|b| + 1, and |a| ≤ 3·|d|^(1/2), |b| ≥ 1
                for qu in -40i64..=40 {
                    for qv in -16i64..=16 {
                        if !on_lattice(d, (qu, qv)) {
                            continue;
                        }
                        let p = quad_mul(d, (qu, qv), cb);
                        let r = (ca.0 - p.0, ca.1 - p.1);
                        if r == (0, 0) || quad_norm(d, r) < quad_norm(d, cb) {
                            oracle.insert(((qu, qv), r));
                        }
                    }
                }
                let res = enumerate_valid_divisions(&EuclideanFn::QuadNorm, a, b, None).unwrap();
                assert!(res.complete);
                let got: BTreeSet<_> = res
                    .divisions
                    .iter()
                    .map(|x| (coords(&x.q), coords(&x.r)))
                    .collect();
                assert_eq!(got, oracle, "d = {d}: {a} ÷ {b}");
            }
        }
    }
}

#[test]
fn quadratic_units_closed_form_matches_scan() {
    for d in QUADRATIC_D {
        let domain = Domain::quadratic(d).unwrap();
        let w = Window::Coordinates(8);
        assert_eq!(
            units_in_window(domain, w).unwrap(),
            units_by_scan(domain, w).unwrap(),
            "d = {d}"
        );
    }
}

/// F_4 as F_2[t]/(t² + t + 1), elements as bit pairs (c0, c1) ↦ c0 + c1·t.
fn f4_mul(a: u8, b: u8) -> u8 {
    let mut prod = 0u8;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            prod ^= a << i;
        }
    }
    if prod & 4 != 0 {
        prod ^= 0b111;
    }
    prod
}

#[test]
fn f4_arithmetic_matches_quotient_ring() {
    let f4 = Domain::field(4).unwrap();
    // 0, 1, α = t, β = t + 1
    let bits = [0u8, 1, 2, 3];
    let elems: Vec<Element> = (0..4).map(|i| Element::field(f4, i).unwrap()).collect();
    for i in 0..4 {
        for j in 0..4 {
            let sum = bits.iter().position(|&x| x == bits[i] ^ bits[j]).unwrap();
            let prod = bits
                .iter()
                .position(|&x| x == f4_mul(bits[i], bits[j]))
                .unwrap();
            assert_eq!(elems[i].add(&elems[j]).unwrap(), elems[sum]);
            assert_eq!(elems[i].mul(&elems[j]).unwrap(), elems[prod]);
        }
    }
}

#[test]
fn prime_field_arithmetic_is_modular() {
    for p in [2u8, 3, 5, 7] {
        let f = Domain::field(p).unwrap();
        for i in 0..p {
            for j in 0..p {
                let (a, b) = (Element::field(f, i).unwrap(), Element::field(f, j).unwrap());
                assert_eq!(a.add(&b).unwrap().field_index(), Some((i + j) % p));
                assert_eq!(a.mul(&b).unwrap().field_index(), Some(i * j % p));
            }
        }
    }
}

fn divides(d: &Element, n: &Element) -> bool {
    n.exact_div(d).unwrap().is_some()
}

#[test]
fn integer_gcd_matches_divisor_scan() {
    for a in -30i64..=30 {
        for b in -30i64..=30 {
            if a == 0 && b == 0 {
                continue;
            }
            let (g, s, t) = gcd_extended(&Element::integer(a), &Element::integer(b)).unwrap();
            let largest = (1..=60i64)
                .filter(|k| a % k == 0 && b % k == 0)
                .max()
                .unwrap();
            assert_eq!(g, Element::integer(largest), "gcd({a}, {b})");
            let combo = s
                .mul(&Element::integer(a))
                .unwrap()
                .add(&t.mul(&Element::integer(b)).unwrap())
                .unwrap();
            assert_eq!(combo, g);
        }
    }
}

#[test]
fn polynomial_gcd_matches_divisor_scan() {
    let domain = Domain::poly(3).unwrap();
    let window = enumerate_nonzero(domain, Window::Degree(3)).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..60 {
        let a = &window[rng.gen_range(0..window.len())];
        let b = &window[rng.gen_range(0..window.len())];
        let (g, s, t) = gcd_extended(a, b).unwrap();
        assert!(divides(&g, a) && divides(&g, b));
        // every common divisor in the window divides g, and g is monic
        for c in window.iter().filter(|c| divides(c, a) && divides(c, b)) {
            assert!(divides(c, &g), "{c} divides {a} and {b} but not {g}");
        }
        assert_eq!(g.coefficients().unwrap().last(), Some(&1));
        assert_eq!(s.mul(a).unwrap().add(&t.mul(b).unwrap()).unwrap(), g);
    }
}

#[test]
fn integer_refinement_matches_multiples() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let mut exceptions = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=3) {
            let n = rng.gen_range(1..=12i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            exceptions.insert(Element::integer(n), rng.gen_range(0..=15u64));
        }
        let f = EuclideanFn::with_exceptions(EuclideanFn::AbsValue, exceptions.clone());
        for a in (-12i64..=12).filter(|&a| a != 0) {
            // multiples beyond |12| are ordinary, with f(ab) = |ab| ≥ |a|
            let brute = (-12i64..=12)
                .filter(|&b| b != 0)
                .map(|b| f.eval(&Element::integer(a * b)).unwrap())
                .min()
                .unwrap();
            let v = refine_eval(&f, &Element::integer(a), RefineStrategy::default()).unwrap();
            assert_eq!(v.certainty, Certainty::Exact);
            assert_eq!(v.value, brute, "f = {f}, a = {a}");
        }
    }
}

#[test]
fn polynomial_refinement_matches_multiples() {
    let domain = Domain::poly(2).unwrap();
    let points = enumerate_nonzero(domain, Window::Degree(2)).unwrap();
    let cofactors = enumerate_nonzero(domain, Window::Degree(4)).unwrap();
    let base = EuclideanFn::phi_deg((1..=20).collect::<Vec<u64>>());
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let mut exceptions = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=3) {
            exceptions.insert(
                points[rng.gen_range(0..points.len())].clone(),
                rng.gen_range(0..=5u64),
            );
        }
        let f = EuclideanFn::with_exceptions(base.clone(), exceptions);
        for a in &points {
            // exceptions have degree ≤ 2, so cofactors of degree ≤ 4 reach every relevant multiple
            let brute: Nat = cofactors
                .iter()
                .map(|b| f.eval(&a.mul(b).unwrap()).unwrap())
                .min()
                .unwrap();
            let v = refine_eval(&f, a, RefineStrategy::default()).unwrap();
            assert_eq!(v.certainty, Certainty::Exact);
            assert_eq!(v.value, brute, "f = {f}, a = {a}");
        }
    }
}
