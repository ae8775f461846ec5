mod common;

use infgroup::extremality::coverage::coverage_components;
use infgroup::extremality::{equivariant_perturbation, is_extreme};
use infgroup::json::{finite_from_json, finite_to_json, function_from_json, function_to_json};
use infgroup::library::gmi;
use infgroup::minimality::check_minimality;
use infgroup::{Error, FiniteGroupFunction, Scalar};

use common::*;

#[test]
fn three_slope_functions_survive_json() {
    for (pi, _) in [rational_variant(), irrational_variant()] {
        let text = function_to_json(&pi);
        assert_eq!(function_from_json(&text).unwrap(), pi);
    }
    assert!(function_to_json(&irrational_variant().0).contains("sqrt(2)"));
}

#[test]
fn restriction_survives_json_and_interpolates_back() {
    let pi = gmi(&s("2/7")).unwrap();
    let g = pi.restrict(14).unwrap();
    let back = finite_from_json(&finite_to_json(&g)).unwrap();
    assert_eq!(back, g);
    assert!(back.interpolate().same_function(&pi));
}

#[test]
fn restriction_needs_f_on_the_grid() {
    assert!(gmi(&s("2/7")).unwrap().restrict(5).is_err());
}

#[test]
fn verdict_serializes_with_witness() {
    let v = is_extreme(&gmi(&s("1/3")).unwrap()).unwrap();
    let text = serde_json::to_string(&v).unwrap();
    assert!(text.contains("\"verdict\":\"extreme\""));
    assert!(!text.contains("witness"));

    // Interpolating a non-extreme minimal finite function.
    let g = minimal_finite_functions(5, 2, 4)
        .into_iter()
        .find(|g| !is_extreme(&g.interpolate()).unwrap().is_extreme())
        .expect("a non-extreme minimal function on (1/5)Z");
    let v = is_extreme(&g.interpolate()).unwrap();
    let text = serde_json::to_string(&v).unwrap();
    assert!(text.contains("\"verdict\":\"not_extreme\""));
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let pair = value["witness"].as_array().unwrap();
    assert_eq!(pair.len(), 2);
    let plus = function_from_json(&pair[0].to_string()).unwrap();
    assert!(check_minimality(&plus).is_minimal());
}

#[test]
fn equivariant_witness_on_the_rational_three_slope() {
    let (pi, _) = rational_variant();
    let coverage = coverage_components(&pi).unwrap();
    assert_eq!(coverage.uncovered_components.len(), 2);
    for c in &coverage.uncovered_components {
        let w = equivariant_perturbation(&pi, &coverage, c).unwrap();
        assert!(w.averages_to(&pi));
        assert!(check_minimality(&w.plus).is_minimal());
        assert!(check_minimality(&w.minus).is_minimal());
    }
    let covered = coverage.covered[0];
    assert!(matches!(equivariant_perturbation(&pi, &coverage, &[covered]), Err(Error::NotUncovered(_))));
}

#[test]
fn oracle_sanity() {
    // 0, 1, 0 on (1/3)Z with f = 1/3 fails symmetry; the grid oracle must see it.
    let g = FiniteGroupFunction::new(3, vec![Scalar::zero(), Scalar::one(), Scalar::zero()], s("1/3")).unwrap();
    assert!(!grid_oracle_minimal(&g.interpolate(), 36));
    assert!(grid_oracle_minimal(&gmi(&s("1/3")).unwrap(), 36));
    assert_eq!(minimal_finite_functions(2, 1, 4).len(), 1);
}
