//! Orders `p < 0`.
//!
//! ```text
//! EVaR_α^p(Y) = inf_{t > esssup Y}  t - β^{1/p} ‖t - Y‖_p
//! ```
//!
//! If `P(Y = esssup Y) ≥ 1 - α` the infimum is the boundary limit
//! `t ↓ esssup Y` and the value is `esssup Y`. Otherwise the objective is
//! convex on the open half-line, its derivative is negative just above
//! `esssup Y` and tends to `1 - β^{1/p} > 0`, so a root exists.
//!
//! The search runs over `u = ln δ` with `δ = t - esssup Y`, and distances are
//! formed as `(esssup Y - v) + δ`. Minimizers are often within `1e-10` of
//! the top atom, and this keeps full relative precision in `δ`.

use super::{check_open_alpha, Branch, PowerObjective, RiskResult, SolverConfig};
use crate::distribution::DiscreteDistribution;
use crate::entropy::Density;
use crate::error::{Error, Result};
use crate::solver::{bisect_counted, Root};

/// Smallest `ln δ` the search visits, close to the least positive normal
/// double.
const MIN_LOG_GAP: f64 = -700.0;

/// `EVaR_α^p` for `p < 0` and `0 < α < 1` with default settings.
pub fn evar_inf_neg(d: &DiscreteDistribution, alpha: f64, p: f64) -> Result<RiskResult> {
    evar_inf_neg_with(d, alpha, p, &SolverConfig::default())
}

/// `EVaR_α^p` for `p < 0` and `0 < α < 1`.
pub fn evar_inf_neg_with(
    d: &DiscreteDistribution,
    alpha: f64,
    p: f64,
    config: &SolverConfig,
) -> Result<RiskResult> {
    check_open_alpha(alpha)?;
    if !(p < 0.0 && p.is_finite()) {
        return Err(Error::UnsupportedOrder {
            order: p.to_string(),
            operation: "the negative-order representation",
        });
    }
    let top = d.esssup();
    if d.prob_of_max() >= 1.0 - alpha {
        return Ok(RiskResult {
            value: top,
            t_star: None,
            density: Some(Density::indicator_of_max(d)),
            branch: Branch::DegenerateNegativeOrder,
            iterations: 0,
            residual: 0.0,
        });
    }

    let objective = PowerObjective::new(d, alpha, p);
    let below_top: Vec<f64> = d.values().iter().map(|&v| top - v).collect();
    let gaps_for = |delta: f64| -> Vec<f64> { below_top.iter().map(|&c| c + delta).collect() };
    let slope_u = |u: f64| objective.derivative(&objective.moments(&gaps_for(u.exp())));

    let scale = top.abs().max(1.0);
    let mut lo_u = (1e-8 * scale).ln();
    let mut expansions = 0;
    let mut underflow = false;
    while slope_u(lo_u) >= 0.0 {
        if lo_u < MIN_LOG_GAP {
            // The minimizer sits closer to the maximum than a double can
            // resolve, and the value differs from esssup Y by less than that
            // distance.
            underflow = true;
            break;
        }
        expansions += 1;
        lo_u -= 10.0;
    }
    let root = if underflow {
        Root { x: lo_u, iterations: 0 }
    } else {
        let range = top - d.essinf();
        let mut hi_u = (scale + range).ln();
        while slope_u(hi_u) <= 0.0 {
            if expansions == 200 {
                return Err(Error::BracketExhausted(expansions));
            }
            expansions += 1;
            hi_u += std::f64::consts::LN_2;
        }
        bisect_counted(slope_u, lo_u, hi_u, config.tol, config.max_iterations)?
    };
    let delta = root.x.exp();
    let gaps = gaps_for(delta);
    let moments = objective.moments(&gaps);

    Ok(RiskResult {
        value: top + delta - objective.scaled_norm(&moments),
        t_star: Some(top + delta),
        density: Some(objective.density(&gaps, &moments)),
        branch: Branch::NegativeOrder,
        iterations: expansions + root.iterations,
        residual: objective.derivative(&moments).abs(),
    })
}
