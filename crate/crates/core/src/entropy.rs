//! Rényi entropy of a density and the divergences built from it.
//!
//! For a density `Z ≥ 0` with `E Z = 1` the Rényi entropy of order `q` is
//!
//! ```text
//! H_0(Z) = -log P(Z > 0)
//! H_1(Z) = E Z log Z                      (0 log 0 := 0)
//! H_∞(Z) = log esssup Z
//! H_q(Z) = log(E Z^q) / (q - 1)           otherwise
//! ```
//!
//! The order is passed as an [`Order`] so the `q = 1` and `q = ∞` branches are
//! selected by tag. Moments are accumulated as a log-sum-exp over atoms with
//! positive weight, which keeps orders in the thousands finite. Negative
//! orders need every weight to be strictly positive.

use crate::distribution::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::numeric::log_moment;
use crate::order::Order;

/// Tolerance on `|Σ p_i w_i - 1|` accepted by [`Density::new`].
pub const DENSITY_TOLERANCE: f64 = 1e-10;

/// A nonnegative reweighting of the atoms of a distribution with unit mean.
///
/// The weights are aligned with the atoms of the distribution the density was
/// validated against. Functions that take a density also take that
/// distribution and check the lengths agree.
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    weights: Vec<f64>,
}

impl Density {
    /// Validates `weights` against `d`: one finite nonnegative weight per atom
    /// and `|Σ p_i w_i - 1| <= 1e-10`.
    pub fn new(d: &DiscreteDistribution, weights: Vec<f64>) -> Result<Density> {
        if weights.len() != d.len() {
            return Err(Error::InvalidDensity(format!(
                "{} weights for {} atoms",
                weights.len(),
                d.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidDensity(format!(
                "weight {w} is negative or not finite"
            )));
        }
        let mean: f64 = d.probs().iter().zip(&weights).map(|(p, w)| p * w).sum();
        if (mean - 1.0).abs() > DENSITY_TOLERANCE {
            return Err(Error::InvalidDensity(format!("weights have mean {mean}, not 1")));
        }
        Ok(Density { weights })
    }

    /// Rescales nonnegative `raw` weights to unit mean.
    pub fn normalized(d: &DiscreteDistribution, raw: &[f64]) -> Result<Density> {
        let mean: f64 = d.probs().iter().zip(raw).map(|(p, w)| p * w).sum();
        if !(mean > 0.0 && mean.is_finite()) {
            return Err(Error::InvalidDensity(format!(
                "cannot normalize weights with mean {mean}"
            )));
        }
        Density::new(d, raw.iter().map(|w| w / mean).collect())
    }

    /// The density `Z ≡ 1`.
    pub fn one(d: &DiscreteDistribution) -> Density {
        Density {
            weights: vec![1.0; d.len()],
        }
    }

    /// `1_{Y = esssup Y} / P(Y = esssup Y)`.
    pub fn indicator_of_max(d: &DiscreteDistribution) -> Density {
        let mut weights = vec![0.0; d.len()];
        weights[d.len() - 1] = 1.0 / d.prob_of_max();
        Density { weights }
    }

    pub(crate) fn from_trusted(weights: Vec<f64>) -> Density {
        Density { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<f64> {
        self.weights
    }

    /// `E[Y Z]` under the base distribution.
    pub fn expectation_of(&self, d: &DiscreteDistribution) -> f64 {
        d.atoms()
            .zip(&self.weights)
            .map(|((v, p), w)| p * w * v)
            .sum()
    }

    /// `E Z^q` for finite `q`. Zero weights contribute `0` for `q > 0` and
    /// make the moment infinite for `q < 0`; `q = 0` gives `P(Z > 0)`.
    pub fn moment(&self, d: &DiscreteDistribution, q: f64) -> f64 {
        log_moment(d.probs(), &self.weights, q).exp()
    }

    fn check(&self, d: &DiscreteDistribution) -> Result<()> {
        if self.weights.len() != d.len() {
            return Err(Error::InvalidDensity(format!(
                "{} weights for {} atoms",
                self.weights.len(),
                d.len()
            )));
        }
        Ok(())
    }
}

/// Rényi entropy `H_q(Z)` of a density over `d`.
///
/// ```
/// use renyi_risk::{renyi_entropy, DiscreteDistribution, Density, Order};
///
/// let d = DiscreteDistribution::from_samples(&[0.0, 1.0], None).unwrap();
/// let z = Density::new(&d, vec![0.5, 1.5]).unwrap();
/// let h = renyi_entropy(&z, &d, Order::Finite(2.0)).unwrap();
/// assert!((h - 1.25f64.ln()).abs() < 1e-15);
/// ```
pub fn renyi_entropy(z: &Density, d: &DiscreteDistribution, q: Order) -> Result<f64> {
    z.check(d)?;
    let probs = d.probs();
    let w = z.weights();
    match q {
        Order::Infinite => {
            let max = w.iter().copied().fold(0.0, f64::max);
            Ok(max.ln())
        }
        Order::Finite(q) if q.is_nan() => Err(Error::BadOrder(q.to_string())),
        Order::Finite(q) if q == 0.0 => {
            let positive: f64 = probs
                .iter()
                .zip(w)
                .filter(|(_, &w)| w > 0.0)
                .map(|(p, _)| p)
                .sum();
            Ok(-positive.ln())
        }
        Order::Finite(q) if q == 1.0 => Ok(probs
            .iter()
            .zip(w)
            .filter(|(_, &w)| w > 0.0)
            .map(|(p, &w)| p * w * w.ln())
            .sum()),
        Order::Finite(q) => {
            if q < 0.0 && w.contains(&0.0) {
                return Err(Error::InvalidDensity(format!(
                    "order {q} needs strictly positive weights"
                )));
            }
            Ok(log_moment(probs, w, q) / (q - 1.0))
        }
    }
}

/// Rényi divergence of the measure with density `z` from the base measure.
/// It coincides with the Rényi entropy of the density.
pub fn renyi_divergence(z: &Density, d: &DiscreteDistribution, q: Order) -> Result<f64> {
    renyi_entropy(z, d, q)
}

/// Hellinger (Tsallis) divergence `(E Z^q - 1) / (q - 1)` for finite `q ≠ 1`.
pub fn hellinger_divergence(z: &Density, d: &DiscreteDistribution, q: f64) -> Result<f64> {
    z.check(d)?;
    if q == 1.0 || !q.is_finite() {
        return Err(Error::UnsupportedOrder {
            order: q.to_string(),
            operation: "the Hellinger divergence",
        });
    }
    if q < 0.0 && z.weights().contains(&0.0) {
        return Err(Error::InvalidDensity(format!(
            "order {q} needs strictly positive weights"
        )));
    }
    Ok((z.moment(d, q) - 1.0) / (q - 1.0))
}

/// Kullback–Leibler divergence `E Z log Z`.
pub fn kl_divergence(z: &Density, d: &DiscreteDistribution) -> Result<f64> {
    renyi_entropy(z, d, Order::Finite(1.0))
}

/// `ln E Z^q` computed as a log-sum-exp; exposed for callers that need the
/// constraint functional without the `1/(q-1)` factor.
pub fn log_moment_of(z: &Density, d: &DiscreteDistribution, q: f64) -> Result<f64> {
    z.check(d)?;
    Ok(log_moment(d.probs(), z.weights(), q))
}
