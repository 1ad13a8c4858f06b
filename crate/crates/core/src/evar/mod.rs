//! Entropic Value-at-Risk of every Rényi order.
//!
//! For a confidence level `α ∈ [0,1]` and an order `p` with conjugate `p'`,
//!
//! ```text
//! EVaR_α^p(Y) = sup { E[Y Z] : Z ≥ 0, E Z = 1, H_{p'}(Z) ≤ log β },   β = 1/(1-α)
//! ```
//!
//! The supremum is never evaluated directly. Each regime has a
//! one-dimensional representation that [`evar`] dispatches to:
//!
//! | regime        | computation                                               |
//! |---------------|-----------------------------------------------------------|
//! | `α = 1`       | `esssup Y`                                                |
//! | `0 < p < 1`   | `esssup Y` for every `α`, since the constraint is vacuous |
//! | `α = 0`       | `E Y`                                                     |
//! | `p = 1`       | `AVaR_α`, closed form                                     |
//! | `1 < p < ∞`   | `min_t t + β^{1/p} ‖(Y-t)_+‖_p`                           |
//! | `p = ∞`       | exponential tilting `Z ∝ exp(θY)` with `E Z log Z = log β`|
//! | `p < 0`       | `min_{t > esssup Y} t - β^{1/p} ‖t-Y‖_p`                  |
//!
//! The order `p = 0` is not a member of the family and is rejected.

mod bounds;
mod higher;
mod negative;
mod shannon;

use std::fmt;

pub use bounds::{evar_derivative_pprime, norm_equivalence_bounds, risk_level_bound};
pub use higher::{evar_inf_high, evar_inf_high_with};
pub use negative::{evar_inf_neg, evar_inf_neg_with};
pub use shannon::{evar_shannon, evar_shannon_with};

use crate::distribution::DiscreteDistribution;
use crate::entropy::Density;
use crate::error::{Error, Result};
use crate::numeric::log_moment;
use crate::order::Order;
use crate::solver::{DEFAULT_MAX_ITERATIONS, DEFAULT_TOL};

/// `β = 1/(1-α)`.
pub fn beta(alpha: f64) -> f64 {
    1.0 / (1.0 - alpha)
}

/// A member of the family: confidence level plus order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskSpec {
    alpha: f64,
    order: Order,
}

impl RiskSpec {
    /// Validates `alpha ∈ [0,1]` and `order ≠ 0`.
    ///
    /// ```
    /// use renyi_risk::{Order, RiskSpec};
    ///
    /// assert!(RiskSpec::new(0.9, Order::Finite(2.0)).is_ok());
    /// let err = RiskSpec::new(1.5, Order::Finite(2.0)).unwrap_err();
    /// assert!(err.to_string().contains("alpha must lie in [0,1]"));
    /// ```
    pub fn new(alpha: f64, order: Order) -> Result<RiskSpec> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidAlpha(alpha));
        }
        match order {
            Order::Finite(p) if p == 0.0 => return Err(Error::ZeroOrder),
            Order::Finite(p) if !p.is_finite() => return Err(Error::BadOrder(p.to_string())),
            _ => {}
        }
        Ok(RiskSpec { alpha, order })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn beta(&self) -> f64 {
        beta(self.alpha)
    }
}

/// Which formula produced a [`RiskResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Avar,
    HigherOrder,
    Shannon,
    EsssupCollapse,
    NegativeOrder,
    DegenerateNegativeOrder,
    Expectation,
    EsssupLevel1,
}

impl Branch {
    /// Snake-case tag used in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Avar => "avar",
            Branch::HigherOrder => "higher_order",
            Branch::Shannon => "shannon",
            Branch::EsssupCollapse => "esssup_collapse",
            Branch::NegativeOrder => "negative_order",
            Branch::DegenerateNegativeOrder => "degenerate_negative_order",
            Branch::Expectation => "expectation",
            Branch::EsssupLevel1 => "esssup_level1",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Value of a risk measure with its certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskResult {
    pub value: f64,
    /// Minimizer of the one-dimensional representation. For the Shannon
    /// branch this is the tilting parameter `θ`, which is also the minimizer
    /// `z` of the dual form `(log E e^{zY} + log β)/z`.
    pub t_star: Option<f64>,
    /// Optimal density, aligned with the atoms of the input distribution.
    pub density: Option<Density>,
    pub branch: Branch,
    pub iterations: usize,
    /// Stationarity residual at `t_star`: `|f'(t*)|`, or `|KL - log β|` for
    /// the Shannon branch. Zero for closed forms.
    pub residual: f64,
}

impl RiskResult {
    fn closed_form(value: f64, t_star: Option<f64>, density: Option<Density>, branch: Branch) -> Self {
        RiskResult {
            value,
            t_star,
            density,
            branch,
            iterations: 0,
            residual: 0.0,
        }
    }
}

/// Knobs shared by the iterative solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Relative bracket width at which bisection stops.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: DEFAULT_TOL,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

/// `EVaR_α^p(Y)` with default solver settings.
///
/// ```
/// use renyi_risk::{evar, DiscreteDistribution, Order, RiskSpec};
///
/// // Y = 1_A with P(A) = 1 - α
/// let d = DiscreteDistribution::from_atoms(&[(0.0, 0.8), (1.0, 0.2)]).unwrap();
/// let r = evar(&d, &RiskSpec::new(0.8, Order::Finite(2.0)).unwrap()).unwrap();
/// assert!((r.value - 1.0).abs() < 1e-12);
/// ```
pub fn evar(d: &DiscreteDistribution, spec: &RiskSpec) -> Result<RiskResult> {
    evar_with(d, spec, &SolverConfig::default())
}

/// `EVaR_α^p(Y)` with explicit solver settings.
pub fn evar_with(d: &DiscreteDistribution, spec: &RiskSpec, config: &SolverConfig) -> Result<RiskResult> {
    let alpha = spec.alpha();
    if alpha == 1.0 {
        return Ok(RiskResult::closed_form(d.esssup(), None, None, Branch::EsssupLevel1));
    }
    match spec.order() {
        Order::Finite(p) if p > 0.0 && p < 1.0 => Ok(RiskResult::closed_form(
            d.esssup(),
            None,
            Some(Density::indicator_of_max(d)),
            Branch::EsssupCollapse,
        )),
        _ if alpha == 0.0 => Ok(RiskResult::closed_form(
            d.expectation(),
            None,
            Some(Density::one(d)),
            Branch::Expectation,
        )),
        Order::Finite(p) if p == 1.0 => d.avar(alpha),
        Order::Finite(p) if p > 1.0 => evar_inf_high_with(d, alpha, p, config),
        Order::Infinite => evar_shannon_with(d, alpha, config),
        Order::Finite(p) => evar_inf_neg_with(d, alpha, p, config),
    }
}

fn check_open_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

/// Derivative of the objective shared by the finite-order representations.
///
/// With `g` the vector of `(Y-t)_+` for `p > 1` or of `t-Y` for `p < 0`,
/// both objectives have derivative
///
/// ```text
/// f'(t) = 1 - β^{1/p} (E g^p)^{1/p - 1} E g^{p-1}
/// ```
struct PowerObjective<'a> {
    probs: &'a [f64],
    p: f64,
    log_beta: f64,
}

/// Log-moments of a gap vector: `ln E g^p` and `ln E g^{p-1}`.
struct GapMoments {
    log_a: f64,
    log_b: f64,
}

impl<'a> PowerObjective<'a> {
    fn new(d: &'a DiscreteDistribution, alpha: f64, p: f64) -> Self {
        PowerObjective {
            probs: d.probs(),
            p,
            log_beta: -(1.0 - alpha).ln(),
        }
    }

    fn moments(&self, g: &[f64]) -> GapMoments {
        GapMoments {
            log_a: log_moment(self.probs, g, self.p),
            log_b: log_moment(self.probs, g, self.p - 1.0),
        }
    }

    fn derivative(&self, m: &GapMoments) -> f64 {
        if m.log_a == f64::NEG_INFINITY {
            return 1.0;
        }
        let p = self.p;
        1.0 - (self.log_beta / p + m.log_b - (p - 1.0) / p * m.log_a).exp()
    }

    /// `β^{1/p} ‖g‖_p`.
    fn scaled_norm(&self, m: &GapMoments) -> f64 {
        if m.log_a == f64::NEG_INFINITY {
            return 0.0;
        }
        ((self.log_beta + m.log_a) / self.p).exp()
    }

    /// `g^{p-1} / E g^{p-1}`, with zero gaps mapped to zero weight.
    fn density(&self, g: &[f64], m: &GapMoments) -> Density {
        let weights = g
            .iter()
            .map(|&x| {
                if x > 0.0 {
                    ((self.p - 1.0) * x.ln() - m.log_b).exp()
                } else {
                    0.0
                }
            })
            .collect();
        Density::from_trusted(weights)
    }
}
