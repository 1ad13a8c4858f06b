mod common;

use proptest::prelude::*;
use rand::Rng;
use renyi_risk::{
    alt_dual_check, dual_norm, evar, hb_density_for, hb_witness_for, kusuoka, kusuoka_evaluate, sup_oracle,
    DiscreteDistribution, Error, KusuokaMeasure, Order, RiskSpec,
};

use common::{arb_distribution, dual_norm_oracle, pairing, random_distribution, random_weights, rng};

fn spec(alpha: f64, p: f64) -> RiskSpec {
    RiskSpec::new(alpha, Order::new(p).unwrap()).unwrap()
}

fn norm_of(d: &DiscreteDistribution, y: &[f64], alpha: f64, p: f64) -> f64 {
    let abs: Vec<f64> = y.iter().map(|v| v.abs()).collect();
    let law = DiscreteDistribution::from_samples(&abs, Some(d.probs())).unwrap();
    evar(&law, &spec(alpha, p)).unwrap().value
}

#[test]
fn oracle_examples() {
    let d = DiscreteDistribution::from_atoms(&[(0.0, 0.5), (1.0, 0.3), (4.0, 0.2)]).unwrap();
    for p in [2.0, f64::INFINITY, -1.0] {
        let s = spec(0.5, p);
        let o = sup_oracle(&d, &s, 300).unwrap();
        let v = evar(&d, &s).unwrap().value;
        assert!(o.value <= v + 1e-9 && v - o.value <= 5e-3, "p={p}");
        assert!((o.density.expectation_of(&d) - o.value).abs() < 1e-9);
    }
    let many = DiscreteDistribution::from_samples(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0], None).unwrap();
    assert!(matches!(sup_oracle(&many, &spec(0.5, 2.0), 100), Err(Error::TooManyAtoms { .. })));
    assert!(matches!(sup_oracle(&d, &spec(0.5, 2.0), 5), Err(Error::ResolutionTooSmall(5))));
    assert!(sup_oracle(&d, &spec(0.5, 0.5), 100).is_err());
    assert!(sup_oracle(&d, &spec(0.5, 1.0), 100).is_err());
}

#[test]
fn dual_norm_matches_water_filling() {
    let mut rng = rng(31);
    for _ in 0..60 {
        let n = rng.random_range(1..=6);
        let d = random_distribution(&mut rng, n, 0.0, 1.0);
        let z: Vec<f64> = random_weights(&mut rng, n).iter().map(|w| w * rng.random_range(-1.0..2.0)).collect();
        if z.iter().all(|&w| w == 0.0) {
            continue;
        }
        let alpha = rng.random_range(0.05..0.95);
        for p in [1.5, 2.0, 4.0, -0.5, -1.0, -3.0] {
            let got = dual_norm(&d, &z, alpha, p).unwrap().value;
            let want = dual_norm_oracle(&d, &z, alpha, p);
            assert!((got - want).abs() <= 1e-7 * want, "p={p} alpha={alpha}: {got} vs {want}");
        }
    }
}

#[test]
fn negative_order_needs_the_clipped_witness() {
    let d = DiscreteDistribution::from_samples(&[0.0, 1.0, 2.0], Some(&[0.789, 0.113, 0.097])).unwrap();
    let z = [2.2e-5, 7.38, 1.69];
    let got = dual_norm(&d, &z, 0.25, -3.0).unwrap();
    let want = dual_norm_oracle(&d, &z, 0.25, -3.0);
    assert!((got.value - want).abs() <= 1e-7 * want);
    // Restricting to unclipped witnesses would give only about 1.029.
    assert!((got.value - 1.78287).abs() < 1e-4);
    let y = hb_witness_for(&d, &z, 0.25, -3.0).unwrap();
    assert_eq!(y[0], 0.0);
    let ratio = pairing(&d, &y, &z) / norm_of(&d, &y, 0.25, -3.0);
    assert!((ratio - got.value).abs() <= 1e-8 * got.value);
}

#[test]
fn random_functionals_never_beat_the_norm() {
    let d = DiscreteDistribution::from_samples(&[0.0, 1.0, 2.0], Some(&[0.5, 0.3, 0.2])).unwrap();
    let z = [0.4, 1.0, 2.5];
    let norm = dual_norm(&d, &z, 0.5, 2.0).unwrap().value;
    let mut rng = rng(32);
    let mut best = 0.0f64;
    for _ in 0..100_000 {
        let y: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
        let ratio = pairing(&d, &y, &z) / norm_of(&d, &y, 0.5, 2.0);
        assert!(ratio <= norm * (1.0 + 1e-9));
        best = best.max(ratio);
    }
    assert!(norm - best <= 1e-3 * norm, "{best} vs {norm}");
}

#[test]
fn dual_norm_basics() {
    let d = DiscreteDistribution::from_samples(&[0.0, 1.0, 2.0, 3.0], None).unwrap();
    let z = [0.3, -1.2, 2.0, 0.0];
    for p in [2.0, -2.0] {
        let base = dual_norm(&d, &z, 0.6, p).unwrap().value;
        let scaled: Vec<f64> = z.iter().map(|w| -3.0 * w).collect();
        let s = dual_norm(&d, &scaled, 0.6, p).unwrap().value;
        assert!((s - 3.0 * base).abs() <= 1e-9 * s);
        let mean_abs: f64 = z.iter().map(|w| 0.25 * w.abs()).sum();
        assert!(base >= mean_abs * (1.0 - 1e-12));
    }

    // The constant functional is a density, and E Y ≤ EVaR(Y) caps its norm at
    // one. Its norm is at least E|Z| = 1 as well.
    for (alpha, p) in [(0.5, 2.0), (0.9, 3.0), (0.5, -1.0)] {
        let n = dual_norm(&d, &[1.0; 4], alpha, p).unwrap();
        assert!((n.value - 1.0).abs() < 1e-12);
        assert_eq!(n.t_star, None);
    }

    assert!(matches!(dual_norm(&d, &[1.0; 3], 0.5, 2.0), Err(Error::InvalidArgument(_))));
    assert!(matches!(dual_norm(&d, &[0.0; 4], 0.5, 2.0), Err(Error::InvalidArgument(_))));
    assert!(matches!(dual_norm(&d, &[1.0; 4], 0.0, 2.0), Err(Error::InvalidAlpha(_))));
    assert!(dual_norm(&d, &[1.0; 4], 0.5, 0.5).is_err());
    assert!(dual_norm(&d, &[1.0; 4], 0.5, 1.0).is_err());
}

#[test]
fn dual_norm_sandwich() {
    let mut rng = rng(33);
    for _ in 0..40 {
        let d = random_distribution(&mut rng, 5, 0.0, 1.0);
        let z: Vec<f64> = (0..5).map(|_| rng.random_range(-2.0..2.0)).collect();
        let alpha = rng.random_range(0.05..0.95);
        let p = rng.random_range(1.1..6.0);
        let q = p / (p - 1.0);
        let n = dual_norm(&d, &z, alpha, p).unwrap().value;
        let lq: f64 = d.probs().iter().zip(&z).map(|(pr, w)| pr * w.abs().powf(q)).sum::<f64>().powf(1.0 / q);
        let linf = z.iter().fold(0.0f64, |m, w| m.max(w.abs()));
        let l1: f64 = d.probs().iter().zip(&z).map(|(pr, w)| pr * w.abs()).sum();
        let beta = 1.0 / (1.0 - alpha);
        assert!(n <= lq * (1.0 + 1e-9) && n >= l1 * (1.0 - 1e-12));
        assert!(n >= lq / beta.powf(1.0 / p) * (1.0 - 1e-9));
        assert!(n <= linf * (1.0 + 1e-9));
    }
}

#[test]
fn hahn_banach_examples() {
    let d = DiscreteDistribution::from_atoms(&[(0.0, 0.9), (1.0, 0.1)]).unwrap();
    let s = spec(0.5, -1.0);
    let z = hb_density_for(&d, &s).unwrap();
    // The witness vanishes where Y does.
    assert_eq!(z[0], 0.0);
    let norm = dual_norm(&d, &z, 0.5, -1.0).unwrap().value;
    let value = evar(&d, &s).unwrap().value;
    assert!((pairing(&d, d.values(), &z) - value * norm).abs() < 1e-8);

    let shifted = DiscreteDistribution::from_atoms(&[(-2.0, 0.6), (1.0, 0.3), (5.0, 0.1)]).unwrap();
    let z = hb_density_for(&shifted, &spec(0.5, 2.0)).unwrap();
    let mean_abs: f64 = shifted.probs().iter().zip(&z).map(|(p, w)| p * w.abs()).sum();
    assert!((mean_abs - 1.0).abs() < 1e-12);
    assert!(z[0] <= 0.0);

    let c = DiscreteDistribution::constant(3.0).unwrap();
    assert!(matches!(hb_density_for(&c, &spec(0.5, 2.0)), Err(Error::Degenerate(_))));
    assert!(hb_density_for(&d, &spec(0.5, f64::INFINITY)).is_err());

    // The constant functional has the t → ∞ witness for p > 1.
    let d = DiscreteDistribution::from_samples(&[0.0, 1.0, 2.0], None).unwrap();
    let y = hb_witness_for(&d, &[1.0; 3], 0.5, 2.0).unwrap();
    assert!(y.iter().all(|&v| v == y[0]));
    assert!(matches!(hb_witness_for(&d, &[1.0; 3], 0.5, -1.0), Err(Error::NoFiniteWitness)));
}

#[test]
fn hahn_banach_pairs() {
    let mut rng = rng(34);
    let mut checked = 0;
    for _ in 0..40 {
        let d = random_distribution(&mut rng, 4, -5.0, 5.0);
        let alpha = rng.random_range(0.05..0.95);
        for p in [2.0, 3.5, -1.0, -2.5] {
            let s = spec(alpha, p);
            let Ok(z) = hb_density_for(&d, &s) else { continue };
            let norm = dual_norm(&d, &z, alpha, p).unwrap().value;
            let lhs = pairing(&d, d.values(), &z);
            let rhs = norm_of(&d, d.values(), alpha, p) * norm;
            assert!((lhs - rhs).abs() <= 1e-7 * (1.0 + rhs.abs()), "p={p}: {lhs} vs {rhs}");
            checked += 1;

            let y = match hb_witness_for(&d, &z, alpha, p) {
                Ok(y) => y,
                Err(Error::NoFiniteWitness) => continue,
                Err(e) => panic!("{e}"),
            };
            let lhs = pairing(&d, &y, &z);
            let rhs = norm_of(&d, &y, alpha, p) * norm;
            assert!((lhs - rhs).abs() <= 1e-7 * (1.0 + rhs.abs()));
        }
    }
    assert!(checked > 40);
}

#[test]
fn sampled_dual_representation() {
    let mut rng = rng(35);
    for _ in 0..10 {
        let d = random_distribution(&mut rng, 4, -3.0, 6.0);
        let alpha = rng.random_range(0.05..0.95);
        for p in [2.0, -1.5] {
            assert!(alt_dual_check(&d, &spec(alpha, p), 40).unwrap());
        }
    }
    let d = DiscreteDistribution::from_samples(&[1.0, 2.0], None).unwrap();
    assert!(alt_dual_check(&d, &spec(0.5, f64::INFINITY), 10).is_err());
}

#[test]
fn kusuoka_special_cases() {
    let d = DiscreteDistribution::from_samples(&[1.0, 2.0, 6.0], None).unwrap();
    let m = kusuoka(&d, &spec(0.4, 1.0)).unwrap();
    assert_eq!(m.atoms(), &[(0.4, 1.0)]);
    assert_eq!(m, KusuokaMeasure::dirac(0.4).unwrap());
    assert_eq!(kusuoka(&d, &spec(0.0, 2.0)).unwrap().atoms(), &[(0.0, 1.0)]);
    assert!(matches!(kusuoka(&d, &spec(0.4, 0.5)), Err(Error::UnsupportedOrder { .. })));
    assert!(kusuoka(&d, &spec(1.0, 2.0)).is_err());
    assert!(KusuokaMeasure::from_atoms(vec![(1.0, 0.5)]).is_err());
    assert!(KusuokaMeasure::from_atoms(vec![(0.2, -0.5)]).is_err());

    let m = KusuokaMeasure::from_atoms(vec![(0.5, 0.5), (0.0, 0.5)]).unwrap();
    assert_eq!(m.sigma(0.25), 0.5);
    assert_eq!(m.sigma(0.75), 1.5);
    assert!((m.integral_sigma_pow(1.0) - 1.0).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kusuoka_invariants(d in arb_distribution(1..=6, -5.0, 5.0), alpha in 0.01f64..0.95, p in prop::sample::select(vec![1.5, 2.0, 4.0, f64::INFINITY, -1.0, -3.0])) {
        let s = spec(alpha, p);
        let Ok(m) = kusuoka(&d, &s) else {
            // Only the degenerate negative branch has no density.
            prop_assert!(p < 0.0);
            return Ok(());
        };
        prop_assert!((m.total_mass() - 1.0).abs() <= 1e-9);
        prop_assert!((m.integral_sigma_pow(1.0) - 1.0).abs() <= 1e-9);
        for w in m.distortion().windows(2) {
            prop_assert!(w[0].0 < w[1].0 && w[0].1 <= w[1].1);
        }
        for &(u, sigma) in m.distortion() {
            prop_assert!((m.sigma_from_measure(u) - sigma).abs() <= 1e-9 * (1.0 + sigma));
        }
        let v = evar(&d, &s).unwrap().value;
        prop_assert!((kusuoka_evaluate(&m, &d).unwrap() - v).abs() <= 1e-8 * (1.0 + v.abs()));

        let beta = 1.0 / (1.0 - alpha);
        if p.is_finite() {
            let q = p / (p - 1.0);
            let moment = m.integral_sigma_pow(q);
            if q > 1.0 {
                prop_assert!(moment <= beta.powf(q - 1.0) * (1.0 + 1e-8));
            } else {
                prop_assert!(moment >= beta.powf(q - 1.0) * (1.0 - 1e-8));
            }
        }
    }

    #[test]
    fn dual_norm_is_a_norm(d in arb_distribution(2..=5, 0.0, 1.0), seed in 0u64..1000, alpha in 0.05f64..0.95, p in prop::sample::select(vec![2.0, 3.0, -1.0, -2.0])) {
        let mut rng = rng(seed);
        let z1: Vec<f64> = (0..d.len()).map(|_| rng.random_range(-2.0..2.0)).collect();
        let z2: Vec<f64> = (0..d.len()).map(|_| rng.random_range(-2.0..2.0)).collect();
        let sum: Vec<f64> = z1.iter().zip(&z2).map(|(a, b)| a + b).collect();
        let n = |z: &[f64]| dual_norm(&d, z, alpha, p).map(|n| n.value).unwrap_or(0.0);
        prop_assert!(n(&sum) <= n(&z1) + n(&z2) + 1e-9);
    }
}
