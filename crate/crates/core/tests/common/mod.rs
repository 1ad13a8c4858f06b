//! Shared generators and independent oracles for the integration tests.
//!
//! Every oracle here is written from the definitions, without calling the
//! solvers it is compared against.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use renyi_risk::DiscreteDistribution;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` atoms with values uniform in `[lo, hi]` and weights bounded away from
/// zero. Duplicate values are merged, so the result may have fewer atoms.
pub fn random_distribution(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> DiscreteDistribution {
    let values: Vec<f64> = (0..n).map(|_| rng.random_range(lo..=hi)).collect();
    let weights: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    DiscreteDistribution::from_samples(&values, Some(&weights)).unwrap()
}

/// Raw per-atom weights, positive and not normalized.
pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(0.05..2.0)).collect()
}

pub fn beta(alpha: f64) -> f64 {
    1.0 / (1.0 - alpha)
}

/// Golden-section minimum of a unimodal function on `[lo, hi]`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..400 {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
        }
        if hi - lo <= 1e-15 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
    }
    let candidates = [(lo, f(lo)), (c, fc), (d, fd), (hi, f(hi))];
    candidates
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
}

/// `E |x|^p` raised to `1/p`, over the atoms of `d`.
pub fn lp_norm(d: &DiscreteDistribution, x: &[f64], p: f64) -> f64 {
    // Factoring out the largest magnitude keeps high powers of small gaps
    // from underflowing to zero.
    let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m == 0.0 {
        return 0.0;
    }
    let s: f64 = d.probs().iter().zip(x).map(|(pr, v)| pr * (v.abs() / m).powf(p)).sum();
    m * s.powf(1.0 / p)
}

/// `AVaR_α` as the smallest value of `t + β E(Y - t)_+` over the atoms,
/// where the piecewise-linear objective attains its minimum.
pub fn avar_oracle(d: &DiscreteDistribution, alpha: f64) -> f64 {
    let b = beta(alpha);
    d.values()
        .iter()
        .map(|&t| t + b * d.expect(|v| (v - t).max(0.0)))
        .fold(f64::INFINITY, f64::min)
}

/// `min_t t + β^{1/p} ‖(Y - t)_+‖_p` for `p > 1`, by golden section.
pub fn higher_oracle(d: &DiscreteDistribution, alpha: f64, p: f64) -> f64 {
    let s = beta(alpha).powf(1.0 / p);
    let range = d.esssup() - d.essinf();
    let f = |t: f64| {
        let tail: Vec<f64> = d.values().iter().map(|&v| (v - t).max(0.0)).collect();
        t + s * lp_norm(d, &tail, p)
    };
    // The slope of the objective is at most 1 - s < 0 far to the left, with
    // the minimizer within a few ranges of the support for moderate α.
    let lo = d.essinf() - 1e4 * (1.0 + range);
    golden_min(f, lo, d.esssup()).1
}

/// `inf_{t > esssup} t - β^{1/p} ‖t - Y‖_p` for `p < 0`, by golden section
/// in `ln(t - esssup)`.
pub fn negative_oracle(d: &DiscreteDistribution, alpha: f64, p: f64) -> f64 {
    let s = beta(alpha).powf(1.0 / p);
    let top = d.esssup();
    let scale = 1.0 + d.esssup() - d.essinf();
    let f = |u: f64| {
        let delta = u.exp();
        let gaps: Vec<f64> = d.values().iter().map(|&v| (top - v) + delta).collect();
        top + delta - s * lp_norm(d, &gaps, p)
    };
    golden_min(f, (1e-16 * scale).ln(), (1e6 * scale).ln()).1
}

/// The Chernoff form `inf_{θ>0} θ^{-1} log(β E e^{θY})`, by golden section
/// in `ln(1/θ)`.
pub fn shannon_oracle(d: &DiscreteDistribution, alpha: f64) -> f64 {
    let top = d.esssup();
    let log_beta = beta(alpha).ln();
    let scale = 1.0 + top - d.essinf();
    let f = |u: f64| {
        let s = u.exp();
        let log_mgf = d.expect(|v| ((v - top) / s).exp()).ln();
        top + s * (log_mgf + log_beta)
    };
    golden_min(f, (1e-10 * scale).ln(), (1e8 * scale).ln()).1
}

/// Dual norm of `Y ↦ E[YZ]` for the norm `EVaR_α^p(|Y|)` by water-filling.
///
/// The unit ball of the norm is the polar of the feasible densities, so the
/// dual norm is the least `λ` for which some feasible density dominates
/// `|Z|/λ`. The cheapest dominating density is `max(|Z|/λ, L)` with `L` fixed
/// by unit mean. It is feasible when `E Q^{p'} ≤ β^{p'-1}` for `p > 1` and
/// when `E Q^{p'} ≥ β^{p'-1}` for `p < 0`, and feasibility is monotone in
/// `λ`.
pub fn dual_norm_oracle(d: &DiscreteDistribution, z: &[f64], alpha: f64, p: f64) -> f64 {
    let q = p / (p - 1.0);
    let bound = beta(alpha).powf(q - 1.0);
    let abs: Vec<f64> = z.iter().map(|w| w.abs()).collect();
    let mean: f64 = d.probs().iter().zip(&abs).map(|(p, a)| p * a).sum();
    let feasible = |lambda: f64| {
        let scaled: Vec<f64> = abs.iter().map(|a| a / lambda).collect();
        let fill = |level: f64| -> f64 { d.probs().iter().zip(&scaled).map(|(p, a)| p * a.max(level)).sum() };
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if fill(mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let level = 0.5 * (lo + hi);
        let moment: f64 = d.probs().iter().zip(&scaled).map(|(p, a)| p * a.max(level).powf(q)).sum();
        if q > 1.0 {
            moment <= bound * (1.0 + 1e-14)
        } else {
            moment >= bound * (1.0 - 1e-14)
        }
    };
    if feasible(mean) {
        return mean;
    }
    let mut lo = mean;
    let mut hi = 2.0 * mean;
    while !feasible(hi) {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `E[Y Z]` for per-atom `y` and `z`.
pub fn pairing(d: &DiscreteDistribution, y: &[f64], z: &[f64]) -> f64 {
    d.probs().iter().zip(y).zip(z).map(|((p, y), z)| p * y * z).sum()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Strategy for distributions with `n` atoms in `[lo, hi]`.
pub fn arb_distribution(
    n: std::ops::RangeInclusive<usize>,
    lo: f64,
    hi: f64,
) -> impl proptest::strategy::Strategy<Value = DiscreteDistribution> {
    use proptest::prelude::*;
    proptest::collection::vec((lo..=hi, 0.05f64..1.0), n).prop_map(|atoms| {
        let (values, weights): (Vec<f64>, Vec<f64>) = atoms.into_iter().unzip();
        DiscreteDistribution::from_samples(&values, Some(&weights)).unwrap()
    })
}
