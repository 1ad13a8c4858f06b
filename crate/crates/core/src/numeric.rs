//! Small log-space helpers shared by the entropy and risk code.

/// `ln Σ exp(x_i)`, returning `-∞` for an empty or all `-∞` input.
pub(crate) fn log_sum_exp<I>(terms: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let terms: Vec<f64> = terms.into_iter().collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let sum: f64 = terms.iter().map(|&x| (x - max).exp()).sum();
    max + sum.ln()
}

/// `ln E g^q` for nonnegative `g` under weights `probs`.
///
/// Atoms with `g = 0` contribute nothing when `q > 0` and make the moment
/// infinite when `q < 0`.
pub(crate) fn log_moment(probs: &[f64], g: &[f64], q: f64) -> f64 {
    debug_assert_eq!(probs.len(), g.len());
    let mut terms = Vec::with_capacity(g.len());
    for (&p, &x) in probs.iter().zip(g) {
        if x > 0.0 {
            terms.push(p.ln() + q * x.ln());
        } else if q < 0.0 {
            return f64::INFINITY;
        } else if q == 0.0 {
            terms.push(p.ln());
        }
    }
    log_sum_exp(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sum_exp_survives_huge_exponents() {
        let v = log_sum_exp([1000.0, 1000.0]);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(Vec::<f64>::new()), f64::NEG_INFINITY);
    }

    #[test]
    fn moments_match_direct_sums() {
        let probs = [0.25, 0.75];
        let g = [2.0, 0.5];
        let direct: f64 = 0.25 * 8.0 + 0.75 * 0.125;
        assert!((log_moment(&probs, &g, 3.0) - direct.ln()).abs() < 1e-14);
        assert_eq!(log_moment(&probs, &[0.0, 1.0], -1.0), f64::INFINITY);
        assert!((log_moment(&probs, &[0.0, 1.0], 2.0) - 0.75f64.ln()).abs() < 1e-15);
    }
}
