mod common;

use proptest::prelude::*;
use renyi_risk::{
    hellinger_divergence, kl_divergence, renyi_divergence, renyi_entropy, Density, DiscreteDistribution, Error, Order,
};

fn uniform_pair() -> DiscreteDistribution {
    DiscreteDistribution::from_samples(&[0.0, 1.0], None).unwrap()
}

fn h(z: &Density, d: &DiscreteDistribution, q: f64) -> f64 {
    renyi_entropy(z, d, Order::new(q).unwrap()).unwrap()
}

/// A base distribution on `n` atoms and a strictly positive density on it.
fn arb_positive_density() -> impl Strategy<Value = (DiscreteDistribution, Density)> {
    (2usize..=8)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(0.05f64..1.0, n),
                proptest::collection::vec(0.01f64..5.0, n),
            )
        })
        .prop_map(|(probs, raw)| {
            let values: Vec<f64> = (0..probs.len()).map(|i| i as f64).collect();
            let d = DiscreteDistribution::from_samples(&values, Some(&probs)).unwrap();
            let z = Density::normalized(&d, &raw).unwrap();
            (d, z)
        })
}

#[test]
fn constant_density_has_zero_entropy() {
    let d = DiscreteDistribution::from_atoms(&[(0.0, 0.2), (1.0, 0.3), (5.0, 0.5)]).unwrap();
    let one = Density::one(&d);
    for q in [0.0, 0.5, 1.0, 2.0, 7.0, -2.0] {
        assert!(h(&one, &d, q).abs() < 1e-15, "q={q}");
    }
    assert_eq!(renyi_entropy(&one, &d, Order::Infinite).unwrap(), 0.0);
    assert!(kl_divergence(&one, &d).unwrap().abs() < 1e-15);
    assert!(hellinger_divergence(&one, &d, 2.0).unwrap().abs() < 1e-15);
    assert!(renyi_divergence(&one, &d, Order::Finite(3.0)).unwrap().abs() < 1e-15);
}

#[test]
fn two_point_density_is_order_free() {
    let alpha = 0.3;
    let d = DiscreteDistribution::from_atoms(&[(0.0, alpha), (1.0, 1.0 - alpha)]).unwrap();
    let z = Density::new(&d, vec![0.0, 1.0 / (1.0 - alpha)]).unwrap();
    let target = (1.0f64 / 0.7).ln();
    for q in [0.0, 0.5, 1.0, 2.0] {
        assert!((h(&z, &d, q) - target).abs() < 1e-12);
    }
    assert!((renyi_entropy(&z, &d, Order::Infinite).unwrap() - target).abs() < 1e-12);
    assert!((kl_divergence(&z, &d).unwrap() - target).abs() < 1e-12);
}

#[test]
fn direct_evaluations() {
    let d = uniform_pair();
    let z = Density::new(&d, vec![0.5, 1.5]).unwrap();
    assert!((h(&z, &d, 2.0) - 1.25f64.ln()).abs() < 1e-15);
    assert!((hellinger_divergence(&z, &d, 2.0).unwrap() - 0.25).abs() < 1e-15);
    assert!(hellinger_divergence(&z, &d, 1.0).is_err());
}

#[test]
fn negative_orders_need_positive_weights() {
    let d = uniform_pair();
    let z = Density::new(&d, vec![0.0, 2.0]).unwrap();
    assert!(matches!(
        renyi_entropy(&z, &d, Order::Finite(-1.0)),
        Err(Error::InvalidDensity(_))
    ));
    assert!(hellinger_divergence(&z, &d, -0.5).is_err());
}

#[test]
fn density_invariants_are_enforced() {
    let d = uniform_pair();
    assert!(Density::new(&d, vec![-0.5, 2.5]).is_err());
    assert!(Density::new(&d, vec![1.0, 1.5]).is_err());
    assert!(Density::new(&d, vec![1.0]).is_err());
    assert!(Density::new(&d, vec![f64::NAN, 1.0]).is_err());
    // Doubling a density and shifting it breaks the unit mean.
    let z = Density::new(&d, vec![0.5, 1.5]).unwrap();
    let scaled: Vec<f64> = z.weights().iter().map(|w| 2.0 * w - 0.25).collect();
    assert!(Density::new(&d, scaled).is_err());
}

#[test]
fn large_orders_stay_finite() {
    let d = DiscreteDistribution::from_atoms(&[(0.0, 0.999), (1.0, 0.001)]).unwrap();
    let z = Density::normalized(&d, &[1.0, 900.0]).unwrap();
    let inf = renyi_entropy(&z, &d, Order::Infinite).unwrap();
    let big = h(&z, &d, 1000.0);
    assert!(big.is_finite() && big <= inf + 1e-12);
    assert!((inf - big) < 1e-2);
}

#[test]
fn continuity_at_one_and_infinity() {
    let d = DiscreteDistribution::from_atoms(&[(0.0, 0.3), (1.0, 0.5), (2.0, 0.2)]).unwrap();
    let z = Density::normalized(&d, &[0.2, 1.0, 3.0]).unwrap();
    let h1 = h(&z, &d, 1.0);
    let hinf = renyi_entropy(&z, &d, Order::Infinite).unwrap();
    let errs = |f: &dyn Fn(f64) -> f64| [f(1e-2), f(1e-4)];
    let above = errs(&|e| (h(&z, &d, 1.0 + e) - h1).abs());
    let below = errs(&|e| (h(&z, &d, 1.0 - e) - h1).abs());
    let top = errs(&|e| (h(&z, &d, 1.0 / e) - hinf).abs());
    for e in [above, below, top] {
        assert!(e[1] < e[0], "{e:?}");
    }
    assert!(above[1] < 1e-4 && below[1] < 1e-4 && top[1] < 1e-3);
}

proptest! {
    #[test]
    fn nondecreasing_in_the_order((d, z) in arb_positive_density()) {
        let mut qs: Vec<f64> = (0..=46).map(|k| -3.0 + 0.5 * k as f64).collect();
        qs.push(1.0);
        qs.sort_by(f64::total_cmp);
        let mut previous = f64::NEG_INFINITY;
        for q in qs {
            let value = h(&z, &d, q);
            prop_assert!(value >= previous - 1e-10, "q={}", q);
            previous = value;
        }
        prop_assert!(renyi_entropy(&z, &d, Order::Infinite).unwrap() >= previous - 1e-10);
    }

    #[test]
    fn sign_of_the_entropy((d, z) in arb_positive_density(), q in -3.0f64..20.0) {
        let value = h(&z, &d, q);
        if q >= 0.0 {
            prop_assert!(value >= -1e-12);
        } else {
            prop_assert!(value <= 1e-12);
        }
    }

    #[test]
    fn scaled_entropy_is_convex((d, z) in arb_positive_density(), a in -3.0f64..20.0, b in -3.0f64..20.0) {
        let g = |q: f64| (q - 1.0) * h(&z, &d, q);
        let mid = 0.5 * (a + b);
        prop_assert!(g(mid) <= 0.5 * (g(a) + g(b)) + 1e-10);
    }

    #[test]
    fn interpolation_against_the_maximum((d, z) in arb_positive_density(), a in -3.0f64..20.0, b in -3.0f64..20.0) {
        let (q, qt) = if a <= b { (a, b) } else { (b, a) };
        let hinf = renyi_entropy(&z, &d, Order::Infinite).unwrap();
        let lhs = (qt - 1.0) * h(&z, &d, qt);
        let rhs = (q - 1.0) * h(&z, &d, q) + (qt - q) * hinf;
        prop_assert!(lhs <= rhs + 1e-10);
    }
}
