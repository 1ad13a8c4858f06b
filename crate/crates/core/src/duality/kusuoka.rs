//! Kusuoka representation.
//!
//! A law-invariant coherent risk measure is a mixture of Average
//! Values-at-Risk. For the optimal density `Z*` of `Y` set
//! `σ*(u) = F⁻¹_{Z*}(u)`, the quantile function of `Z*`. The mixing measure
//!
//! ```text
//! μ*(A) = σ*(0) δ₀(A) + ∫_A (1 - u) dσ*(u)
//! ```
//!
//! satisfies `σ*(u) = ∫_{[0,u]} μ*(dv) / (1 - v)` and
//! `EVaR(Y) = ∫ AVaR_u(Y) μ*(du)`. On a finite space `σ*` is a step function
//! whose jumps sit at cumulative probabilities, so `μ*` is a finite sum of
//! point masses.

use crate::distribution::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::evar::{evar_with, RiskSpec, SolverConfig};
use crate::order::Order;

/// A probability measure on `[0,1)` together with its distortion function.
#[derive(Debug, Clone, PartialEq)]
pub struct KusuokaMeasure {
    /// `(level, mass)` pairs with increasing levels and positive masses.
    atoms: Vec<(f64, f64)>,
    /// `(breakpoint, value)` pairs of the right-continuous step function
    /// `σ`, starting at breakpoint `0`.
    distortion: Vec<(f64, f64)>,
}

impl KusuokaMeasure {
    /// Builds a measure from `(level, mass)` atoms, deriving `σ` from them.
    pub fn from_atoms(atoms: Vec<(f64, f64)>) -> Result<KusuokaMeasure> {
        let mut atoms = atoms;
        for &(level, mass) in &atoms {
            if !(0.0..1.0).contains(&level) || !(mass >= 0.0) || !mass.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "atom ({level}, {mass}) needs a level in [0,1) and a nonnegative mass"
                )));
            }
        }
        atoms.retain(|a| a.1 > 0.0);
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut distortion = vec![(0.0, 0.0)];
        let mut sigma = 0.0;
        for &(level, mass) in &atoms {
            sigma += mass / (1.0 - level);
            match distortion.last_mut() {
                Some(last) if last.0 == level => last.1 = sigma,
                _ => distortion.push((level, sigma)),
            }
        }
        Ok(KusuokaMeasure { atoms, distortion })
    }

    /// The point mass at `level`.
    pub fn dirac(level: f64) -> Result<KusuokaMeasure> {
        KusuokaMeasure::from_atoms(vec![(level, 1.0)])
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn distortion(&self) -> &[(f64, f64)] {
        &self.distortion
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// The distortion `σ(u)` as stored.
    pub fn sigma(&self, u: f64) -> f64 {
        let idx = self.distortion.partition_point(|&(b, _)| b <= u);
        if idx == 0 {
            0.0
        } else {
            self.distortion[idx - 1].1
        }
    }

    /// `∫_{[0,u]} μ(dv) / (1 - v)`, recomputed from the atoms.
    pub fn sigma_from_measure(&self, u: f64) -> f64 {
        self.atoms
            .iter()
            .take_while(|a| a.0 <= u)
            .map(|&(level, mass)| mass / (1.0 - level))
            .sum()
    }

    /// `∫₀¹ σ(u)^q du` for finite `q > 0`; `q = 1` gives the total mass of
    /// the density.
    pub fn integral_sigma_pow(&self, q: f64) -> f64 {
        let mut total = 0.0;
        for (j, &(start, value)) in self.distortion.iter().enumerate() {
            let end = self.distortion.get(j + 1).map_or(1.0, |next| next.0);
            if value > 0.0 {
                total += (end - start) * value.powf(q);
            }
        }
        total
    }
}

/// Kusuoka measure of `EVaR_α^p` at `Y`, with default solver settings.
///
/// Supported: `p > 1` (including `∞`), `p < 0` and `p = 1`, with
/// `α ∈ [0,1)`. For `p = 1` the result is `δ_α`, and for `α = 0` it is `δ₀`.
///
/// ```
/// use renyi_risk::{evar, kusuoka, kusuoka_evaluate, DiscreteDistribution, Order, RiskSpec};
///
/// let d = DiscreteDistribution::from_samples(&[1.0, 2.0, 5.0, 9.0], None).unwrap();
/// let spec = RiskSpec::new(0.5, Order::Finite(2.0)).unwrap();
/// let mu = kusuoka(&d, &spec).unwrap();
/// let mixed = kusuoka_evaluate(&mu, &d).unwrap();
/// assert!((mixed - evar(&d, &spec).unwrap().value).abs() < 1e-9);
/// ```
pub fn kusuoka(d: &DiscreteDistribution, spec: &RiskSpec) -> Result<KusuokaMeasure> {
    kusuoka_with(d, spec, &SolverConfig::default())
}

/// [`kusuoka`] with explicit solver settings.
pub fn kusuoka_with(d: &DiscreteDistribution, spec: &RiskSpec, config: &SolverConfig) -> Result<KusuokaMeasure> {
    let alpha = spec.alpha();
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let order = spec.order();
    match order {
        Order::Finite(p) if p > 0.0 && p < 1.0 => {
            return Err(Error::UnsupportedOrder {
                order: order.to_string(),
                operation: "the Kusuoka representation",
            })
        }
        _ if alpha == 0.0 => return KusuokaMeasure::dirac(0.0),
        // AVaR's density is the indicator of the upper tail in quantile space,
        // which jumps from 0 to β exactly at α.
        Order::Finite(p) if p == 1.0 => return KusuokaMeasure::dirac(alpha),
        _ => {}
    }

    let result = evar_with(d, spec, config)?;
    let density = result
        .density
        .ok_or(Error::Degenerate("no optimal density is available"))?;

    // Quantile function of Z*: sort atoms by weight, ties by value.
    let mut atoms: Vec<(f64, f64)> = density
        .weights()
        .iter()
        .copied()
        .zip(d.probs().iter().copied())
        .collect();
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut distortion: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
    let mut cumulative = 0.0;
    for &(w, p) in &atoms {
        match distortion.last() {
            Some(&(_, last)) if last == w => {}
            _ => distortion.push((cumulative, w)),
        }
        cumulative += p;
    }

    let mut measure_atoms = Vec::with_capacity(distortion.len());
    let mut previous = 0.0;
    for &(u, sigma) in &distortion {
        let jump = sigma - previous;
        if jump > 0.0 {
            measure_atoms.push((u, (1.0 - u) * jump));
        }
        previous = sigma;
    }
    Ok(KusuokaMeasure {
        atoms: measure_atoms,
        distortion,
    })
}

/// `∫ AVaR_u(Y) μ(du)`.
pub fn kusuoka_evaluate(m: &KusuokaMeasure, d: &DiscreteDistribution) -> Result<f64> {
    let mut total = 0.0;
    for &(level, mass) in m.atoms() {
        total += mass * d.avar(level)?.value;
    }
    Ok(total)
}
