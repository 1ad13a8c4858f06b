//! Brute-force evaluation of the defining supremum.
//!
//! Densities are enumerated in the coordinates `q_i = p_i w_i`, which range
//! over the probability simplex. On the grid `q_i = k_i / resolution` the
//! constraint functional splits into per-atom terms:
//!
//! ```text
//! p' > 1:      Σ q_i^{p'} p_i^{1-p'} ≤ β^{p'-1}
//! 0 < p' < 1:  Σ q_i^{p'} p_i^{1-p'} ≥ β^{p'-1}
//! p' = 1:      Σ q_i log(q_i / p_i) ≤ log β
//! ```
//!
//! so each term is tabulated once per atom. The best grid point is then
//! refined on a grid twenty times finer, within twenty fine steps of it in
//! every free coordinate, moving to the best fine point until that stops
//! improving.

use crate::distribution::DiscreteDistribution;
use crate::entropy::Density;
use crate::error::{Error, Result};
use crate::evar::RiskSpec;
use crate::order::Order;

/// Largest number of atoms the enumeration accepts.
pub const MAX_ORACLE_ATOMS: usize = 6;

const REFINE_FACTOR: f64 = 20.0;
const REFINE_STEPS: i64 = 20;
const MAX_REFINE_PASSES: usize = 100;

/// Relative slack on the constraint, absorbing rounding in the tabulated
/// terms.
const FEASIBILITY_SLACK: f64 = 1e-12;

/// Best value found by [`sup_oracle`] and the density attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub density: Density,
}

#[derive(Clone, Copy)]
enum Budget {
    AtMost(f64),
    AtLeast(f64),
}

impl Budget {
    fn admits(self, s: f64) -> bool {
        match self {
            Budget::AtMost(b) => s <= b + FEASIBILITY_SLACK * b.abs().max(1.0),
            Budget::AtLeast(b) => s >= b - FEASIBILITY_SLACK * b.abs().max(1.0),
        }
    }
}

/// Per-atom term of the constraint functional.
#[derive(Clone, Copy)]
enum Term {
    Power { q: f64 },
    Shannon,
}

impl Term {
    fn eval(self, q: f64, p: f64) -> f64 {
        match self {
            Term::Power { q: exponent } => {
                if q == 0.0 {
                    0.0
                } else {
                    (exponent * q.ln() + (1.0 - exponent) * p.ln()).exp()
                }
            }
            Term::Shannon => {
                if q == 0.0 {
                    0.0
                } else {
                    q * (q / p).ln()
                }
            }
        }
    }
}

/// Maximizes `E[YZ]` over feasible densities on a simplex grid of step
/// `1/resolution`, followed by local refinement on a finer grid.
///
/// Supports `p > 1`, `p = ∞` and `p < 0` with `α ∈ [0,1)` and at most six
/// atoms. The constant density is always a candidate, so the result is
/// never below `E Y`.
///
/// ```
/// use renyi_risk::{sup_oracle, DiscreteDistribution, Order, RiskSpec};
///
/// let d = DiscreteDistribution::from_samples(&[0.0, 1.0], None).unwrap();
/// let spec = RiskSpec::new(0.0, Order::Finite(2.0)).unwrap();
/// let r = sup_oracle(&d, &spec, 50).unwrap();
/// assert!((r.value - 0.5).abs() < 1e-12);
/// ```
pub fn sup_oracle(d: &DiscreteDistribution, spec: &RiskSpec, resolution: usize) -> Result<OracleResult> {
    let n = d.len();
    if n > MAX_ORACLE_ATOMS {
        return Err(Error::TooManyAtoms {
            max: MAX_ORACLE_ATOMS,
            got: n,
        });
    }
    if resolution < 10 {
        return Err(Error::ResolutionTooSmall(resolution));
    }
    let alpha = spec.alpha();
    if alpha >= 1.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let beta = 1.0 / (1.0 - alpha);
    let (term, budget) = match spec.order() {
        Order::Infinite => (Term::Shannon, Budget::AtMost(beta.ln())),
        Order::Finite(p) if !(0.0..=1.0).contains(&p) => {
            let q = p / (p - 1.0);
            let bound = beta.powf(q - 1.0);
            let budget = if q > 1.0 {
                Budget::AtMost(bound)
            } else {
                Budget::AtLeast(bound)
            };
            (Term::Power { q }, budget)
        }
        order => {
            return Err(Error::UnsupportedOrder {
                order: order.to_string(),
                operation: "the supremum oracle",
            })
        }
    };

    let probs = d.probs();
    let values = d.values();
    let objective = |q: &[f64]| -> f64 { q.iter().zip(values).map(|(q, v)| q * v).sum() };
    let constraint = |q: &[f64]| -> f64 { q.iter().zip(probs).map(|(&q, &p)| term.eval(q, p)).sum() };

    let mut best_q: Vec<f64> = probs.to_vec();
    let mut best_value = objective(&best_q);

    if n > 1 {
        let grid = Grid::new(values, probs, term, resolution);
        let mut search = GridSearch {
            grid: &grid,
            budget,
            prune: matches!((term, budget), (Term::Power { .. }, Budget::AtMost(_))),
            path: vec![0; n],
            best_path: None,
            best_value,
        };
        search.run(0, resolution, 0.0, 0.0);
        if let Some(path) = search.best_path {
            best_value = search.best_value;
            best_q = path.iter().map(|&k| k as f64 / resolution as f64).collect();
        }

        // Refinement around the best point found so far, re-centered until a
        // pass brings no improvement. A single pass cannot leave the coarse
        // cell, which is too little when the feasible set is thin.
        let fine = 1.0 / (resolution as f64 * REFINE_FACTOR);
        let free = n - 1;
        let mut q = vec![0.0; n];
        for _ in 0..MAX_REFINE_PASSES {
            let center = best_q.clone();
            let before = best_value;
            let mut offsets = vec![-REFINE_STEPS; free];
            'outer: loop {
                let mut sum = 0.0;
                let mut valid = true;
                for j in 0..free {
                    q[j] = center[j] + offsets[j] as f64 * fine;
                    if q[j] < 0.0 {
                        valid = false;
                    }
                    sum += q[j];
                }
                q[free] = 1.0 - sum;
                if valid && q[free] >= 0.0 && budget.admits(constraint(&q)) {
                    let v = objective(&q);
                    if v > best_value {
                        best_value = v;
                        best_q.copy_from_slice(&q);
                    }
                }
                for offset in offsets.iter_mut() {
                    if *offset < REFINE_STEPS {
                        *offset += 1;
                        continue 'outer;
                    }
                    *offset = -REFINE_STEPS;
                }
                break;
            }
            if best_value <= before {
                break;
            }
        }
    }

    let weights: Vec<f64> = best_q.iter().zip(probs).map(|(q, p)| q / p).collect();
    Ok(OracleResult {
        value: best_value,
        density: Density::normalized(d, &weights)?,
    })
}

/// Tabulated per-atom terms on the coarse grid.
struct Grid {
    n: usize,
    constraint: Vec<Vec<f64>>,
    objective: Vec<Vec<f64>>,
}

impl Grid {
    fn new(values: &[f64], probs: &[f64], term: Term, resolution: usize) -> Grid {
        let step = 1.0 / resolution as f64;
        let constraint = probs
            .iter()
            .map(|&p| (0..=resolution).map(|k| term.eval(k as f64 * step, p)).collect())
            .collect();
        let objective = values
            .iter()
            .map(|&v| (0..=resolution).map(|k| v * (k as f64 * step)).collect())
            .collect();
        Grid {
            n: values.len(),
            constraint,
            objective,
        }
    }
}

struct GridSearch<'a> {
    grid: &'a Grid,
    budget: Budget,
    /// Power terms are nonnegative and increasing in `k`, so an upper budget
    /// lets the enumeration stop a coordinate as soon as it is exceeded.
    prune: bool,
    path: Vec<usize>,
    best_path: Option<Vec<usize>>,
    best_value: f64,
}

impl GridSearch<'_> {
    fn run(&mut self, i: usize, remaining: usize, s: f64, v: f64) {
        let grid = self.grid;
        let last = grid.n - 1;
        if i + 1 == last {
            // Innermost level: the final coordinate is determined.
            let (ci, oi) = (&grid.constraint[i], &grid.objective[i]);
            let (cl, ol) = (&grid.constraint[last], &grid.objective[last]);
            for k in 0..=remaining {
                let s_i = s + ci[k];
                if self.prune && !self.budget.admits(s_i) {
                    break;
                }
                let rest = remaining - k;
                let value = v + oi[k] + ol[rest];
                if value > self.best_value && self.budget.admits(s_i + cl[rest]) {
                    self.best_value = value;
                    self.path[i] = k;
                    self.path[last] = rest;
                    self.best_path = Some(self.path.clone());
                }
            }
            return;
        }
        for k in 0..=remaining {
            let s_i = s + grid.constraint[i][k];
            if self.prune && !self.budget.admits(s_i) {
                break;
            }
            self.path[i] = k;
            self.run(i + 1, remaining - k, s_i, v + grid.objective[i][k]);
        }
    }
}
