//! Norm-equivalence constants, level comparison and the sensitivity in the
//! conjugate order.

use super::{beta, check_open_alpha, evar_inf_high};
use crate::distribution::{DiscreteDistribution, PowerMode};
use crate::error::{Error, Result};

/// Sharp constants `(lower, upper)` relating `EVaR_α^p(|Y|)` to a classical
/// norm.
///
/// ```text
/// p > 1:  C ‖Y‖_p ≤ EVaR_α^p(|Y|) ≤ β^{1/p} ‖Y‖_p,   C = 1 ∧ (β^{1/(p-1)} - 1)^{(p-1)/p}
/// p < 0:  c ‖Y‖_∞ ≤ EVaR_α^p(|Y|) ≤ ‖Y‖_∞,           c = 1 - (1-α)^{-1/p}
/// ```
///
/// ```
/// let (lo, hi) = renyi_risk::norm_equivalence_bounds(0.75, 2.0).unwrap();
/// assert_eq!((lo, hi), (1.0, 2.0));
/// ```
pub fn norm_equivalence_bounds(alpha: f64, p: f64) -> Result<(f64, f64)> {
    check_open_alpha(alpha)?;
    if p > 1.0 && p.is_finite() {
        let b = beta(alpha);
        let c = (b.powf(1.0 / (p - 1.0)) - 1.0).powf((p - 1.0) / p);
        Ok((c.min(1.0), b.powf(1.0 / p)))
    } else if p < 0.0 && p.is_finite() {
        Ok((1.0 - (1.0 - alpha).powf(-1.0 / p), 1.0))
    } else {
        Err(Error::UnsupportedOrder {
            order: p.to_string(),
            operation: "the norm-equivalence bounds",
        })
    }
}

/// Factor `K` with `EVaR_α^p(Y) ≤ K · EVaR_{α'}^p(Y)` for `Y ≥ 0` and
/// `α ≥ α'`.
///
/// ```text
/// p > 1:  K = (((1-α)/(1-α'))^{1/(p-1)} - (1/(1-α))^{1/(1-p)})^{(1-p)/p}
/// p < 0:  K = (1 - (1-α')^{-1/p})^{-1}
/// ```
pub fn risk_level_bound(alpha: f64, alpha_prime: f64, p: f64) -> Result<f64> {
    check_open_alpha(alpha)?;
    check_open_alpha(alpha_prime)?;
    if alpha < alpha_prime {
        return Err(Error::InvalidArgument(format!(
            "level {alpha} must not be below the reference level {alpha_prime}"
        )));
    }
    if p > 1.0 && p.is_finite() {
        let ratio = ((1.0 - alpha) / (1.0 - alpha_prime)).powf(1.0 / (p - 1.0));
        let shift = beta(alpha).powf(1.0 / (1.0 - p));
        Ok((ratio - shift).powf((1.0 - p) / p))
    } else if p < 0.0 && p.is_finite() {
        Ok(1.0 / (1.0 - (1.0 - alpha_prime).powf(-1.0 / p)))
    } else {
        Err(Error::UnsupportedOrder {
            order: p.to_string(),
            operation: "the risk-level comparison",
        })
    }
}

/// Derivative of `p' ↦ EVaR_α^p(Y)` where `p = p'/(p'-1)`, for `p' > 1`.
///
/// With `t*` and `Z*` the minimizer and optimal density at `p'`,
///
/// ```text
/// d/dp' EVaR = β^{(p'-1)/p'} ‖(Y - t*)_+‖_p · ( log(β)/p' - E[Z*^{p'} log Z*] / (p' β^{p'-1}) )
/// ```
///
/// The formula assumes the entropy constraint is active. It returns zero when
/// the optimal density is the indicator of the top atom, where the value is
/// `esssup Y` for nearby orders as well. `Y` must be strictly positive and
/// nonconstant.
pub fn evar_derivative_pprime(d: &DiscreteDistribution, alpha: f64, pprime: f64) -> Result<f64> {
    check_open_alpha(alpha)?;
    if !(pprime > 1.0 && pprime.is_finite()) {
        return Err(Error::UnsupportedOrder {
            order: pprime.to_string(),
            operation: "the conjugate-order derivative",
        });
    }
    if d.len() < 2 {
        return Err(Error::Domain("the derivative needs a nonconstant variable".into()));
    }
    if d.essinf() <= 0.0 {
        return Err(Error::Domain("the derivative needs a strictly positive variable".into()));
    }
    let p = pprime / (pprime - 1.0);
    let result = evar_inf_high(d, alpha, p)?;
    let t = result.t_star.expect("higher-order results carry t*");
    let z = result.density.expect("higher-order results carry a density");
    let b = beta(alpha);

    let tail = d.power_mean(p, t, PowerMode::PlusPart)?;
    let entropy_term: f64 = d
        .probs()
        .iter()
        .zip(z.weights())
        .filter(|(_, &w)| w > 0.0)
        .map(|(pr, &w)| pr * w.powf(pprime) * w.ln())
        .sum();
    Ok(b.powf(1.0 / p) * tail * (b.ln() / pprime - entropy_term / (pprime * b.powf(pprime - 1.0))))
}
