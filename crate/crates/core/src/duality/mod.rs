//! The supremum side: a brute-force oracle for the defining supremum, dual
//! norms of the norm `‖Y‖ = EVaR_α^p(|Y|)`, Hahn–Banach witnesses, a
//! sampling check of the dual representation and the Kusuoka representation.
//!
//! # Dual norms
//!
//! ```text
//! ‖Z‖* = sup_{Y ≠ 0} E[YZ] / EVaR_α^p(|Y|)
//! ```
//!
//! Maximizing over `Y ≥ 0` with a multiplier for the sign constraint shows
//! that an optimal `Y` lies in a one-parameter family, with `W = |Z|^{p'-1}`:
//!
//! ```text
//! p > 1:  Y_t = (t + W)_+,   ‖Z‖* = sup_t      E[(t + W)_+ |Z|] / (t + β^{1/p} ‖(t + W)_+ - t‖_p)
//! p < 0:  Y_t = (t - W)_+,   ‖Z‖* = sup_{t>min W} E[(t - W)_+ |Z|] / (t - β^{1/p} ‖min(W, t)‖_p)
//! ```
//!
//! In both cases the denominator is the objective of the one-dimensional
//! representation of `EVaR(Y_t)` evaluated at `t`. Atoms where `Y_t` vanishes
//! carry an active sign constraint. Dropping the positive part for `p < 0`
//! and restricting to `t > max W` gives only a lower bound on the dual norm.
//! The optimum typically sets `Y` to zero on the atoms where `Z` is
//! smallest. As `t → ∞` both ratios tend to `E|Z|`.

mod kusuoka;
mod oracle;

pub use kusuoka::{kusuoka, kusuoka_evaluate, kusuoka_with, KusuokaMeasure};
pub use oracle::{sup_oracle, OracleResult};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distribution::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::evar::{beta, evar, Branch, RiskSpec};
use crate::numeric::log_moment;
use crate::order::Order;
use crate::solver::maximize_golden;

/// Number of points in each of the two coarse grids of the `t` search.
const GRID_POINTS: usize = 1001;

/// A finite optimizer must beat the `t → ∞` limit by this relative margin.
const LIMIT_MARGIN: f64 = 1e-12;

/// Value of a dual norm and the optimizing parameter of the witness family,
/// or `None` when the supremum is the `t → ∞` limit `E|Z|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualNorm {
    pub value: f64,
    pub t_star: Option<f64>,
}

/// Dual norm of the functional `Y ↦ E[YZ]` for `p > 1` or `p < 0`.
///
/// `z` holds one raw weight per atom of `d`; it need not be a density, and
/// the result is homogeneous of degree one in `z`.
///
/// ```
/// use renyi_risk::{dual_norm, DiscreteDistribution};
///
/// let d = DiscreteDistribution::from_samples(&[0.0, 1.0, 2.0], None).unwrap();
/// let n = dual_norm(&d, &[1.0, 1.0, 1.0], 0.5, 2.0).unwrap();
/// assert!((n.value - 1.0).abs() < 1e-12);
/// ```
pub fn dual_norm(d: &DiscreteDistribution, z: &[f64], alpha: f64, p: f64) -> Result<DualNorm> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if z.len() != d.len() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} atoms",
            z.len(),
            d.len()
        )));
    }
    if z.iter().any(|w| !w.is_finite()) || z.iter().all(|&w| w == 0.0) {
        return Err(Error::InvalidArgument(
            "the functional needs finite weights, not all zero".into(),
        ));
    }
    let family = WitnessFamily::new(d, z, alpha, p)?;
    family.maximize()
}

/// The one-parameter family of candidate witnesses and its ratio.
struct WitnessFamily<'a> {
    probs: &'a [f64],
    abs: Vec<f64>,
    w: Vec<f64>,
    p: f64,
    scale: f64,
    negative: bool,
    /// `E|Z|`, the `t → ∞` limit of the ratio.
    limit: f64,
    /// Left end of the domain: `-max W` for `p > 1`, `min W` for `p < 0`.
    start: f64,
    /// Largest finite `W`.
    w_max: f64,
}

impl<'a> WitnessFamily<'a> {
    fn new(d: &'a DiscreteDistribution, z: &[f64], alpha: f64, p: f64) -> Result<Self> {
        let negative = if p > 1.0 && p.is_finite() {
            false
        } else if p < 0.0 && p.is_finite() {
            true
        } else {
            return Err(Error::UnsupportedOrder {
                order: p.to_string(),
                operation: "the dual norm",
            });
        };
        let q = p / (p - 1.0);
        let abs: Vec<f64> = z.iter().map(|w| w.abs()).collect();
        // For p < 0 the exponent q - 1 is negative and zero weights map to +∞,
        // which the ratio treats as atoms where the witness vanishes.
        let w: Vec<f64> = abs.iter().map(|&a| a.powf(q - 1.0)).collect();
        let finite = w.iter().copied().filter(|x| x.is_finite());
        let w_max = finite.clone().fold(0.0, f64::max);
        let w_min = finite.fold(f64::INFINITY, f64::min);
        let limit = d.probs().iter().zip(&abs).map(|(p, a)| p * a).sum();
        Ok(WitnessFamily {
            probs: d.probs(),
            abs,
            w,
            p,
            scale: beta(alpha).powf(1.0 / p),
            negative,
            limit,
            start: if negative { w_min } else { -w_max },
            w_max,
        })
    }

    /// The ratio at `t`, or `None` outside the domain.
    fn ratio(&self, t: f64) -> Option<f64> {
        if !(t > self.start) || !t.is_finite() {
            return None;
        }
        let mut numerator = 0.0;
        let mut tail = Vec::with_capacity(self.w.len());
        for ((&pr, &a), &w) in self.probs.iter().zip(&self.abs).zip(&self.w) {
            if self.negative {
                if w < t {
                    numerator += pr * (t - w) * a;
                }
                tail.push(w.min(t));
            } else {
                if t + w > 0.0 {
                    numerator += pr * (t + w) * a;
                }
                // (t + W)_+ - t, written to avoid cancellation for large t
                tail.push(if t + w >= 0.0 { w } else { -t });
            }
        }
        let norm = if tail.iter().all(|&x| x == 0.0) {
            0.0
        } else {
            (log_moment(self.probs, &tail, self.p) / self.p).exp()
        };
        let denominator = if self.negative {
            t - self.scale * norm
        } else {
            t + self.scale * norm
        };
        (denominator > 0.0).then(|| numerator / denominator)
    }

    fn candidates(&self) -> Vec<f64> {
        let span = 1.0 + self.w_max;
        let mut ts = Vec::with_capacity(2 * GRID_POINTS + 1);
        let step = 1.0 / (GRID_POINTS - 1) as f64;
        for j in 0..GRID_POINTS {
            let x = j as f64 * step;
            // Logarithmic in the distance to the left end of the domain,
            // from 1e-12 to 1e6 times the natural scale.
            ts.push(self.start + span * 10f64.powf(-12.0 + 18.0 * x));
            // Linear over [-10 span, 10 span], or to the right of the left
            // end when p < 0.
            if self.negative {
                ts.push(self.start + 10.0 * span * x);
            } else {
                ts.push(-10.0 * span + 20.0 * span * x);
            }
        }
        if self.negative {
            ts.push(self.w_max);
        }
        ts.retain(|&t| t > self.start);
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        ts
    }

    fn maximize(&self) -> Result<DualNorm> {
        let ts = self.candidates();
        let values: Vec<Option<f64>> = ts.iter().map(|&t| self.ratio(t)).collect();
        let best = values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (i, v)))
            .max_by(|a, b| a.1.total_cmp(&b.1));
        let Some((i, mut best_value)) = best else {
            return Err(Error::Domain(
                "the dual-norm denominator is nonpositive on the whole search domain".into(),
            ));
        };
        let mut best_t = ts[i];
        let lo = if i == 0 { 0.5 * (self.start + ts[0]) } else { ts[i - 1] };
        let hi = if i + 1 == ts.len() { ts[i] } else { ts[i + 1] };
        let (t, v, _) = maximize_golden(|t| self.ratio(t).unwrap_or(f64::NEG_INFINITY), lo, hi, 1e-15);
        if v > best_value {
            best_value = v;
            best_t = t;
        }
        if best_value > self.limit * (1.0 + LIMIT_MARGIN) {
            Ok(DualNorm {
                value: best_value,
                t_star: Some(best_t),
            })
        } else {
            Ok(DualNorm {
                value: self.limit,
                t_star: None,
            })
        }
    }

    /// Member of the witness family at `t`, with signs taken from `z`.
    fn witness(&self, z: &[f64], t: f64) -> Vec<f64> {
        z.iter()
            .zip(&self.w)
            .map(|(&zi, &w)| {
                let magnitude = if self.negative {
                    (t - w).max(0.0)
                } else {
                    (t + w).max(0.0)
                };
                sign(zi) * magnitude
            })
            .collect()
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn finite_order(spec: &RiskSpec, operation: &'static str) -> Result<f64> {
    match spec.order() {
        Order::Finite(p) if !(0.0..=1.0).contains(&p) => Ok(p),
        order => Err(Error::UnsupportedOrder {
            order: order.to_string(),
            operation,
        }),
    }
}

/// Hahn–Banach functional of `Y`: a `Z'` with
/// `E[Y Z'] = EVaR_α^p(|Y|) · ‖Z'‖*`.
///
/// The witness is `sign(Y)` times the optimal density of `|Y|`, i.e.
/// `sign(Y) (|Y| - t*)_+^{p-1}` for `p > 1` and `sign(Y) (t* - |Y|)^{p-1}`
/// for `p < 0`, built from the unit-mean density of `|Y|`. So `E|Z'| = 1`
/// unless `Y` has an atom at zero, where the witness vanishes. The weights
/// are aligned with the atoms of `d`. Fails when the minimizer for `|Y|` is
/// not interior.
pub fn hb_density_for(d: &DiscreteDistribution, spec: &RiskSpec) -> Result<Vec<f64>> {
    finite_order(spec, "Hahn-Banach densities")?;
    if !(spec.alpha() > 0.0 && spec.alpha() < 1.0) {
        return Err(Error::InvalidAlpha(spec.alpha()));
    }
    let abs = d.map(f64::abs)?;
    let result = evar(&abs, spec)?;
    let interior = match result.branch {
        Branch::HigherOrder => result.t_star.is_some_and(|t| t < abs.esssup()),
        Branch::NegativeOrder => true,
        _ => false,
    };
    if !interior {
        return Err(Error::Degenerate("the minimizer for |Y| is not interior"));
    }
    let density = result.density.expect("interior branches carry a density");
    let weights = density.weights();
    Ok(d.values()
        .iter()
        .map(|&v| {
            let j = abs.index_of(v.abs()).expect("|v| is an atom of |Y|");
            sign(v) * weights[j]
        })
        .collect())
}

/// Hahn–Banach witness of `Z`: a `Y'` with `E[Y'Z] = EVaR_α^p(Y') · ‖Z‖*`.
///
/// `Y' = sign(Z) (t* + |Z|^{p'-1})_+` for `p > 1` and
/// `Y' = sign(Z) (t* - |Z|^{p'-1})_+` for `p < 0`, where `t*` maximizes the
/// dual-norm ratio. When the supremum is the `t → ∞` limit, `p > 1` returns
/// the limit witness `sign(Z)` and `p < 0` fails with
/// [`Error::NoFiniteWitness`].
pub fn hb_witness_for(d: &DiscreteDistribution, z: &[f64], alpha: f64, p: f64) -> Result<Vec<f64>> {
    let norm = dual_norm(d, z, alpha, p)?;
    let family = WitnessFamily::new(d, z, alpha, p)?;
    match norm.t_star {
        Some(t) => Ok(family.witness(z, t)),
        None if family.negative => Err(Error::NoFiniteWitness),
        None => Ok(z.iter().map(|&zi| sign(zi)).collect()),
    }
}

/// Samples densities and checks the dual representation
/// `EVaR(Y) = sup { E[YZ] : Z ≥ 0, E Z = 1, ‖Z‖* ≤ 1 }`.
///
/// Verifies that the optimal density has dual norm at most `1 + 1e-6`, and
/// that every sampled density with dual norm at most `1 + 1e-9` satisfies
/// `E[YZ] ≤ EVaR(Y) + 1e-6`. Samples are mixtures `1 + s (W - 1)` of the
/// constant density with a random one, with `s` halved until the candidate
/// is feasible. The generator is seeded from `trials`, so the check is
/// deterministic.
pub fn alt_dual_check(d: &DiscreteDistribution, spec: &RiskSpec, trials: usize) -> Result<bool> {
    let p = finite_order(spec, "the dual representation check")?;
    let alpha = spec.alpha();
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let result = evar(d, spec)?;
    let value = result.value;
    let mut ok = true;

    if let Some(z) = &result.density {
        ok &= dual_norm(d, z.weights(), alpha, p)?.value <= 1.0 + 1e-6;
    }
    let mean_of = |z: &[f64]| -> f64 { d.atoms().zip(z).map(|((v, pr), w)| pr * w * v).sum() };
    let one = vec![1.0; d.len()];
    if dual_norm(d, &one, alpha, p)?.value <= 1.0 + 1e-9 {
        ok &= mean_of(&one) <= value + 1e-6;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd5_eed5 ^ trials as u64);
    for _ in 0..trials {
        let raw: Vec<f64> = (0..d.len())
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let mean: f64 = d.probs().iter().zip(&raw).map(|(p, w)| p * w).sum();
        let mut s: f64 = rng.random_range(0.05..=1.0);
        for _ in 0..20 {
            let candidate: Vec<f64> = raw.iter().map(|w| 1.0 + s * (w / mean - 1.0)).collect();
            if dual_norm(d, &candidate, alpha, p)?.value <= 1.0 + 1e-9 {
                ok &= mean_of(&candidate) <= value + 1e-6;
                break;
            }
            s *= 0.5;
        }
    }
    Ok(ok)
}
