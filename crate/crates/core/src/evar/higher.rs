//! Orders `1 < p < ∞`.
//!
//! ```text
//! EVaR_α^p(Y) = min_t  t + β^{1/p} ‖(Y - t)_+‖_p
//! ```
//!
//! The objective is convex with derivative tending to `1 - β^{1/p} < 0` as
//! `t → -∞` and jumping to `1` at `esssup Y`. Minimizers can sit well below
//! `essinf Y`, so the bracket starts at `[essinf - 1, esssup]` and its left
//! end is pushed out until the derivative is negative there. The derivative
//! is continuous for every `p > 1`, which makes bisection on it safe even
//! though the objective itself has kinks at the atoms when `p < 2`.
//!
//! When `P(Y = esssup Y) ≥ 1 - α` the derivative is already nonpositive just
//! below the maximum, the minimizer is `esssup Y` itself and the optimal
//! density is the normalized indicator of the top atom.

use super::{check_open_alpha, Branch, PowerObjective, RiskResult, SolverConfig};
use crate::distribution::DiscreteDistribution;
use crate::entropy::Density;
use crate::error::{Error, Result};
use crate::solver::bisect_counted;

/// Gaps closer than this (relative to the atom) trigger the refinement in
/// logarithmic gap coordinates.
const NEAR_ATOM: f64 = 1e-6;

/// `EVaR_α^p` for `1 < p < ∞` and `0 < α < 1` with default settings.
pub fn evar_inf_high(d: &DiscreteDistribution, alpha: f64, p: f64) -> Result<RiskResult> {
    evar_inf_high_with(d, alpha, p, &SolverConfig::default())
}

/// `EVaR_α^p` for `1 < p < ∞` and `0 < α < 1`.
pub fn evar_inf_high_with(
    d: &DiscreteDistribution,
    alpha: f64,
    p: f64,
    config: &SolverConfig,
) -> Result<RiskResult> {
    check_open_alpha(alpha)?;
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::UnsupportedOrder {
            order: p.to_string(),
            operation: "the higher-order representation",
        });
    }
    let top = d.esssup();
    if d.len() == 1 || d.prob_of_max() >= 1.0 - alpha {
        return Ok(RiskResult {
            value: top,
            t_star: Some(top),
            density: Some(Density::indicator_of_max(d)),
            branch: Branch::HigherOrder,
            iterations: 0,
            residual: 0.0,
        });
    }

    let objective = PowerObjective::new(d, alpha, p);
    let values = d.values();
    let gaps_at = |t: f64| -> Vec<f64> { values.iter().map(|&v| (v - t).max(0.0)).collect() };
    let slope = |t: f64| objective.derivative(&objective.moments(&gaps_at(t)));

    let mut lo = d.essinf() - 1.0;
    let mut expansions = 0;
    while slope(lo) >= 0.0 {
        if expansions == 200 {
            return Err(Error::BracketExhausted(expansions));
        }
        expansions += 1;
        lo = top - 2.0 * (top - lo);
    }
    let root = bisect_counted(slope, lo, top, config.tol, config.max_iterations)?;
    let mut t = root.x;
    let mut iterations = expansions + root.iterations;
    let mut gaps = gaps_at(t);

    // Near an atom v_k the weight (v_k - t)^{p-1} is extremely sensitive to
    // t when p is close to one, and t itself only carries absolute precision.
    // Solving again for the gap δ = v_k - t on a log scale restores relative
    // precision in the smallest positive gap.
    if let Some(k) = values.iter().position(|&v| v > t) {
        let vk = values[k];
        let delta = vk - t;
        if delta <= NEAR_ATOM * (1.0 + vk.abs()) {
            let gaps_for = |delta: f64| -> Vec<f64> {
                values.iter().map(|&v| ((v - vk) + delta).max(0.0)).collect()
            };
            let slope_u = |u: f64| -objective.derivative(&objective.moments(&gaps_for(u.exp())));
            let hi_u = (vk - lo).ln();
            let mut lo_u = delta.ln() - 20.0;
            while slope_u(lo_u) > 0.0 && lo_u > -700.0 {
                lo_u -= 40.0;
            }
            if slope_u(lo_u) <= 0.0 {
                let refined = bisect_counted(slope_u, lo_u, hi_u, config.tol, config.max_iterations)?;
                let delta = refined.x.exp();
                t = vk - delta;
                gaps = gaps_for(delta);
                iterations += refined.iterations;
            }
        }
    }

    let moments = objective.moments(&gaps);
    Ok(RiskResult {
        value: t + objective.scaled_norm(&moments),
        t_star: Some(t),
        density: Some(objective.density(&gaps, &moments)),
        branch: Branch::HigherOrder,
        iterations,
        residual: objective.derivative(&moments).abs(),
    })
}
