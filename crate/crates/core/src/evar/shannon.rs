//! Order `p = ∞`, whose conjugate is the Shannon order `p' = 1`.
//!
//! The feasible densities are those with `E Z log Z ≤ log β`. The maximizer
//! of `E[YZ]` over that set is an exponential tilt
//!
//! ```text
//! Z_θ = exp(θY) / E exp(θY)
//! ```
//!
//! whose entropy increases from `0` at `θ = 0` to `log(1/P(Y = esssup Y))` as
//! `θ → ∞`. Bisection on `θ` finds the tilt that exhausts the budget. If the
//! budget exceeds the entropy of the normalized indicator of the top atom,
//! the value is `esssup Y`.
//!
//! The tilt is evaluated on values centered at the maximum and scaled by the
//! range, so `τ = θ (esssup Y - essinf Y)` is the parameter actually searched.

use super::{beta, Branch, RiskResult, SolverConfig};
use crate::distribution::DiscreteDistribution;
use crate::entropy::Density;
use crate::error::{Error, Result};
use crate::numeric::log_sum_exp;

const MAX_BISECTIONS: usize = 200;

/// `EVaR_α^∞` with default settings. Accepts `α ∈ [0,1)`; `α = 0` returns
/// `E Y` with `θ = 0`.
pub fn evar_shannon(d: &DiscreteDistribution, alpha: f64) -> Result<RiskResult> {
    evar_shannon_with(d, alpha, &SolverConfig::default())
}

/// `EVaR_α^∞` for `α ∈ [0,1)`. The bisection on `θ` stops at relative width
/// `config.tol / 10`.
pub fn evar_shannon_with(d: &DiscreteDistribution, alpha: f64, config: &SolverConfig) -> Result<RiskResult> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if alpha == 0.0 {
        return Ok(RiskResult {
            value: d.expectation(),
            t_star: Some(0.0),
            density: Some(Density::one(d)),
            branch: Branch::Shannon,
            iterations: 0,
            residual: 0.0,
        });
    }
    let top = d.esssup();
    // The relative slack absorbs the rounding in 1 - α, so that an indicator
    // whose entropy equals the budget exactly lands in this branch.
    if d.len() == 1 || d.prob_of_max() >= (1.0 - alpha) * (1.0 - 1e-12) {
        return Ok(RiskResult {
            value: top,
            t_star: None,
            density: Some(Density::indicator_of_max(d)),
            branch: Branch::Shannon,
            iterations: 0,
            residual: 0.0,
        });
    }

    let range = top - d.essinf();
    let tilt = Tilt {
        log_probs: d.probs().iter().map(|p| p.ln()).collect(),
        centered: d.values().iter().map(|&v| (v - top) / range).collect(),
    };
    let budget = beta(alpha).ln();

    let mut hi = 1.0;
    let mut iterations = 0;
    while tilt.entropy(hi) < budget {
        if iterations == MAX_BISECTIONS {
            return Err(Error::BracketExhausted(iterations));
        }
        iterations += 1;
        hi *= 2.0;
    }
    let mut lo = 0.0;
    let rel = config.tol / 10.0;
    let mut converged = false;
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= rel * hi {
            converged = true;
            break;
        }
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if tilt.entropy(mid) < budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if !converged && hi - lo > rel * hi {
        return Err(Error::NoConvergence(iterations));
    }
    let tau = 0.5 * (lo + hi);
    let weights = tilt.weights(tau);
    let shift: f64 = d
        .probs()
        .iter()
        .zip(&weights)
        .zip(&tilt.centered)
        .map(|((p, w), c)| p * w * c)
        .sum();

    Ok(RiskResult {
        value: top + range * shift,
        t_star: Some(tau / range),
        density: Some(Density::from_trusted(weights)),
        branch: Branch::Shannon,
        iterations,
        residual: (tilt.entropy(tau) - budget).abs(),
    })
}

struct Tilt {
    log_probs: Vec<f64>,
    centered: Vec<f64>,
}

impl Tilt {
    fn log_partition(&self, tau: f64) -> f64 {
        log_sum_exp(self.log_probs.iter().zip(&self.centered).map(|(lp, c)| lp + tau * c))
    }

    fn weights(&self, tau: f64) -> Vec<f64> {
        let log_z = self.log_partition(tau);
        self.centered.iter().map(|c| (tau * c - log_z).exp()).collect()
    }

    /// `E Z log Z` of the tilt with parameter `tau`.
    fn entropy(&self, tau: f64) -> f64 {
        let log_z = self.log_partition(tau);
        self.log_probs
            .iter()
            .zip(&self.centered)
            .map(|(lp, c)| {
                let log_w = tau * c - log_z;
                (lp + log_w).exp() * log_w
            })
            .sum()
    }
}
