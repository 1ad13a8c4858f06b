use renyi_risk::solver::{bisect, bisect_counted, golden_section, minimize_convex_1d, BracketSpec, ExpandSide};
use renyi_risk::Error;

#[test]
fn minimizes_a_parabola_outside_the_initial_bracket() {
    let f = |t: f64| (t + 37.5) * (t + 37.5) + 2.0;
    let m = minimize_convex_1d(f, BracketSpec::new(0.0, 1.0, ExpandSide::Left), 1e-12).unwrap();
    assert!((m.t_star + 37.5).abs() < 1e-5);
    assert!((m.f_star - 2.0).abs() < 1e-10);
}

#[test]
fn minimizes_a_kinked_function() {
    let f = |t: f64| (t - 0.3).abs() + 0.5 * (t - 2.0).abs();
    let m = minimize_convex_1d(f, BracketSpec::new(-5.0, 5.0, ExpandSide::Both), 1e-12).unwrap();
    assert!((m.t_star - 0.3).abs() < 1e-9);
}

#[test]
fn expands_upwards() {
    let f = |t: f64| (t - 1e3).powi(2);
    let m = minimize_convex_1d(f, BracketSpec::new(0.0, 1.0, ExpandSide::Right), 1e-12).unwrap();
    assert!((m.t_star - 1e3).abs() < 1e-3);
}

#[test]
fn reports_an_unbounded_objective() {
    let f = |t: f64| t;
    let mut spec = BracketSpec::new(0.0, 1.0, ExpandSide::Left);
    spec.max_expansions = 30;
    assert!(matches!(minimize_convex_1d(f, spec, 1e-12), Err(Error::BracketExhausted(_))));
}

#[test]
fn golden_section_on_a_quartic() {
    let (x, fx, steps) = golden_section(&|t: f64| (t - 0.7).powi(4), 0.0, 2.0, 1e-14);
    assert!((x - 0.7).abs() < 1e-3);
    assert!(fx < 1e-12);
    assert!(steps > 10);
}

#[test]
fn bisection_finds_roots() {
    let r = bisect(|x| x * x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
    assert!((r - 2f64.cbrt()).abs() < 1e-13);
    let counted = bisect_counted(|x| x - 0.25, 0.0, 1.0, 1e-12, 10_000).unwrap();
    assert!((counted.x - 0.25).abs() < 1e-12);
    assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    assert!(matches!(
        bisect_counted(|x| x - 0.3, 0.0, 1.0, 1e-15, 3),
        Err(Error::NoConvergence(_))
    ));
}
