//! Finite discrete distributions and their quantile primitives.
//!
//! A [`DiscreteDistribution`] is the law of a random variable `Y` that takes
//! finitely many values. It is stored in canonical form: values strictly
//! increasing, duplicates merged, zero-probability atoms dropped and
//! probabilities normalized to sum to one.

use crate::entropy::Density;
use crate::error::{Error, Result};
use crate::evar::{Branch, RiskResult};
use crate::numeric::log_moment;

/// Cumulative probabilities within this distance of a level count as
/// reaching it. Sums of probabilities such as `0.1 + 0.2` otherwise decide
/// quantiles by rounding noise.
const CDF_TOLERANCE: f64 = 1e-12;

/// The law of a real random variable with finitely many values.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    values: Vec<f64>,
    probs: Vec<f64>,
}

/// How [`DiscreteDistribution::power_mean`] transforms each value before
/// raising it to the power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMode {
    /// `(v - shift)_+`
    PlusPart,
    /// `shift - v`
    Full,
}

impl DiscreteDistribution {
    /// Builds a distribution from samples and optional nonnegative weights.
    ///
    /// Equal weights are used when `weights` is `None`. Values that compare
    /// equal are merged, atoms of zero weight are dropped and the result is
    /// normalized.
    ///
    /// ```
    /// use renyi_risk::DiscreteDistribution;
    ///
    /// let d = DiscreteDistribution::from_samples(&[1.0, 1.0, 2.0], None).unwrap();
    /// assert_eq!(d.values(), &[1.0, 2.0]);
    /// assert!((d.probs()[0] - 2.0 / 3.0).abs() < 1e-15);
    /// ```
    pub fn from_samples(values: &[f64], weights: Option<&[f64]>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index, value });
        }
        let weights: Vec<f64> = match weights {
            Some(w) => {
                if w.len() != values.len() {
                    return Err(Error::LengthMismatch {
                        values: values.len(),
                        weights: w.len(),
                    });
                }
                if let Some((index, &value)) = w
                    .iter()
                    .enumerate()
                    .find(|(_, w)| !w.is_finite() || **w < 0.0)
                {
                    return Err(Error::InvalidWeight { index, value });
                }
                w.to_vec()
            }
            None => vec![1.0; values.len()],
        };

        let mut pairs: Vec<(f64, f64)> = values
            .iter()
            .copied()
            .zip(weights)
            .filter(|&(_, w)| w > 0.0)
            .collect();
        if pairs.is_empty() {
            return Err(Error::ZeroMass);
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
        for (v, w) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += w,
                _ => merged.push((v, w)),
            }
        }
        let total: f64 = merged.iter().map(|a| a.1).sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::ZeroMass);
        }
        Ok(DiscreteDistribution {
            values: merged.iter().map(|a| a.0).collect(),
            probs: merged.iter().map(|a| a.1 / total).collect(),
        })
    }

    /// Builds a distribution from `(value, probability)` pairs. The
    /// probabilities are treated as weights and renormalized.
    pub fn from_atoms(atoms: &[(f64, f64)]) -> Result<Self> {
        let values: Vec<f64> = atoms.iter().map(|a| a.0).collect();
        let weights: Vec<f64> = atoms.iter().map(|a| a.1).collect();
        Self::from_samples(&values, Some(&weights))
    }

    /// Point mass at `c`.
    pub fn constant(c: f64) -> Result<Self> {
        Self::from_samples(&[c], None)
    }

    /// Atom values in increasing order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Atom probabilities, aligned with [`values`](Self::values).
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Iterator over `(value, probability)` pairs.
    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().copied().zip(self.probs.iter().copied())
    }

    /// Number of atoms.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: a distribution has at least one atom.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn esssup(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn essinf(&self) -> f64 {
        self.values[0]
    }

    pub fn expectation(&self) -> f64 {
        self.atoms().map(|(v, p)| v * p).sum()
    }

    /// `E[f(Y)]` for an arbitrary function of the value.
    pub fn expect<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.atoms().map(|(v, p)| p * f(v)).sum()
    }

    /// `P(Y = esssup Y)`.
    pub fn prob_of_max(&self) -> f64 {
        self.probs[self.probs.len() - 1]
    }

    /// The law of `f(Y)`, re-canonicalized so that atoms which collide under
    /// `f` are merged.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Result<Self> {
        let values: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        Self::from_samples(&values, Some(&self.probs))
    }

    /// Index of the atom with exactly this value, if any.
    pub fn index_of(&self, value: f64) -> Option<usize> {
        self.values
            .binary_search_by(|v| v.total_cmp(&value))
            .ok()
    }

    /// Lower (left-continuous) quantile: the smallest atom `v` with
    /// `P(Y <= v) >= alpha`, and `essinf` for `alpha = 0`.
    pub fn var_level(&self, alpha: f64) -> Result<f64> {
        Ok(self.values[self.var_index(alpha)?])
    }

    fn var_index(&self, alpha: f64) -> Result<usize> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::InvalidAlpha(alpha));
        }
        if alpha == 0.0 {
            return Ok(0);
        }
        let mut cdf = 0.0;
        for (i, &p) in self.probs.iter().enumerate() {
            cdf += p;
            if cdf >= alpha - CDF_TOLERANCE {
                return Ok(i);
            }
        }
        Ok(self.len() - 1)
    }

    /// Average Value-at-Risk
    ///
    /// ```text
    /// AVaR_α(Y) = min_t  t + E(Y - t)_+ / (1 - α)
    /// ```
    ///
    /// evaluated in closed form at `t = VaR_α`. The returned density puts
    /// weight `1/(1-α)` strictly above the quantile and splits the quantile
    /// atom so that the weights have unit mean.
    pub fn avar(&self, alpha: f64) -> Result<RiskResult> {
        let k = self.var_index(alpha)?;
        let var = self.values[k];
        let beta = 1.0 / (1.0 - alpha);

        // Summing the tail from the top keeps P(Y > VaR) accurate when it is
        // tiny compared to one.
        let mut tail_prob = 0.0;
        let mut tail_excess = 0.0;
        for i in (k + 1..self.len()).rev() {
            tail_prob += self.probs[i];
            tail_excess += self.probs[i] * (self.values[i] - var);
        }
        let value = var + beta * tail_excess;

        let mut weights = vec![0.0; self.len()];
        for w in weights.iter_mut().skip(k + 1) {
            *w = beta;
        }
        let split = ((1.0 - beta * tail_prob) / self.probs[k]).clamp(0.0, beta);
        weights[k] = split;
        let density = Density::new(self, weights)?;

        Ok(RiskResult {
            value,
            t_star: Some(var),
            density: Some(density),
            branch: Branch::Avar,
            iterations: 0,
            residual: 0.0,
        })
    }

    /// Power mean `(E g(Y)^p)^{1/p}` of a shifted variable.
    ///
    /// `g` is `(v - shift)_+` for [`PowerMode::PlusPart`] and `shift - v` for
    /// [`PowerMode::Full`]. Computed in log space so that large `|p|` does
    /// not overflow.
    ///
    /// ```
    /// use renyi_risk::{DiscreteDistribution, PowerMode};
    ///
    /// let d = DiscreteDistribution::from_atoms(&[(0.0, 0.5), (2.0, 0.5)]).unwrap();
    /// let m = d.power_mean(2.0, 0.0, PowerMode::PlusPart).unwrap();
    /// assert!((m - 2f64.sqrt()).abs() < 1e-15);
    /// ```
    pub fn power_mean(&self, p: f64, shift: f64, mode: PowerMode) -> Result<f64> {
        if p == 0.0 || !p.is_finite() {
            return Err(Error::Domain(format!("power mean of order {p}")));
        }
        let g: Vec<f64> = match mode {
            PowerMode::PlusPart => self.values.iter().map(|&v| (v - shift).max(0.0)).collect(),
            PowerMode::Full => self.values.iter().map(|&v| shift - v).collect(),
        };
        for &x in &g {
            if x < 0.0 || (x == 0.0 && p < 0.0) {
                return Err(Error::Domain(format!(
                    "base {x} raised to power {p}; the shift {shift} lies inside the support"
                )));
            }
        }
        if p > 0.0 && g.iter().all(|&x| x == 0.0) {
            return Ok(0.0);
        }
        Ok((log_moment(&self.probs, &g, p) / p).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let d = DiscreteDistribution::from_samples(&[2.0, 0.0, 2.0, 1.0], Some(&[1.0, 1.0, 1.0, 0.0]))
            .unwrap();
        assert_eq!(d.values(), &[0.0, 2.0]);
        assert!((d.probs()[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(DiscreteDistribution::from_samples(&[], None), Err(Error::Empty));
        assert_eq!(
            DiscreteDistribution::from_samples(&[1.0], Some(&[0.0])),
            Err(Error::ZeroMass)
        );
        assert!(matches!(
            DiscreteDistribution::from_samples(&[f64::NAN], None),
            Err(Error::NonFiniteValue { index: 0, .. })
        ));
        assert!(matches!(
            DiscreteDistribution::from_samples(&[1.0, 2.0], Some(&[1.0, -1.0])),
            Err(Error::InvalidWeight { index: 1, .. })
        ));
    }

    #[test]
    fn avar_density_has_unit_mean_at_extreme_levels() {
        let d = DiscreteDistribution::from_atoms(&[(0.0, 1.0 - 1e-9), (1.0, 1e-9)]).unwrap();
        let r = d.avar(1.0 - 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_power_mean_requires_shift_above_support() {
        let d = DiscreteDistribution::from_atoms(&[(0.0, 0.5), (1.0, 0.5)]).unwrap();
        assert!(d.power_mean(-1.0, 1.0, PowerMode::Full).is_err());
        assert!(d.power_mean(0.0, 2.0, PowerMode::Full).is_err());
    }
}
