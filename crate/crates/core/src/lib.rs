//! Entropic Value-at-Risk of every Rényi order on finite discrete
//! distributions.
//!
//! The crate computes
//!
//! ```text
//! EVaR_α^p(Y) = sup { E[Y Z] : Z ≥ 0, E Z = 1, H_{p'}(Z) ≤ log 1/(1-α) }
//! ```
//!
//! through one-dimensional representations, and checks the answers against
//! the defining supremum, explicit dual norms, Hahn–Banach witnesses and the
//! Kusuoka representation.
//!
//! ```
//! use renyi_risk::{evar, DiscreteDistribution, Order, RiskSpec};
//!
//! let y = DiscreteDistribution::from_samples(&[0.0, 1.0, 4.0], Some(&[0.5, 0.3, 0.2])).unwrap();
//! let avar = evar(&y, &RiskSpec::new(0.5, Order::Finite(1.0)).unwrap()).unwrap();
//! let p2 = evar(&y, &RiskSpec::new(0.5, Order::Finite(2.0)).unwrap()).unwrap();
//! let shannon = evar(&y, &RiskSpec::new(0.5, Order::Infinite).unwrap()).unwrap();
//! assert!(avar.value <= p2.value && p2.value <= shannon.value);
//! ```

// Negated comparisons are deliberate: they also reject NaN. Guards on
// float equality read better than float literal patterns.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::redundant_guards)]

pub mod distribution;
pub mod duality;
pub mod entropy;
pub mod error;
pub mod evar;
mod numeric;
pub mod order;
pub mod solver;

pub use distribution::{DiscreteDistribution, PowerMode};
pub use duality::{
    alt_dual_check, dual_norm, hb_density_for, hb_witness_for, kusuoka, kusuoka_evaluate,
    kusuoka_with, sup_oracle, DualNorm, KusuokaMeasure, OracleResult,
};
pub use entropy::{hellinger_divergence, kl_divergence, renyi_divergence, renyi_entropy, Density};
pub use error::{Error, Result};
pub use evar::{
    evar, evar_derivative_pprime, evar_inf_high, evar_inf_neg, evar_shannon, evar_with,
    norm_equivalence_bounds, risk_level_bound, Branch, RiskResult, RiskSpec, SolverConfig,
};
pub use order::{conjugate, Order};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/distributions.md")]
    mod distributions {}
    #[doc = include_str!("../../../book/src/entropy.md")]
    mod entropy {}
    #[doc = include_str!("../../../book/src/evar.md")]
    mod evar {}
    #[doc = include_str!("../../../book/src/ordering.md")]
    mod ordering {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
    #[doc = include_str!("../../../book/src/kusuoka.md")]
    mod kusuoka {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
