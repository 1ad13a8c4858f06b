//! One-dimensional minimization and root finding.
//!
//! [`minimize_convex_1d`] is a golden-section search that first grows its
//! bracket until an interior point sits below both ends, so it needs no
//! derivative and copes with kinks. [`bisect`] finds a sign change of a
//! monotone function. Both stop once the bracket width drops below
//! `tol * (1 + |x|)`.

use crate::error::{Error, Result};

/// Default relative tolerance of the solvers.
pub const DEFAULT_TOL: f64 = 1e-11;

/// Default iteration cap of the iterative solvers.
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Which end(s) of a bracket may move outward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpandSide {
    Left,
    Right,
    Both,
}

/// Initial bracket plus the rules for growing it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketSpec {
    pub lo: f64,
    pub hi: f64,
    pub expand_side: ExpandSide,
    /// Factor applied to the bracket width on every expansion.
    pub growth: f64,
    pub max_expansions: usize,
}

impl BracketSpec {
    /// A bracket with growth 2 and at most 200 expansions.
    pub fn new(lo: f64, hi: f64, expand_side: ExpandSide) -> BracketSpec {
        BracketSpec {
            lo,
            hi,
            expand_side,
            growth: 2.0,
            max_expansions: 200,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo < self.hi) || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "bracket [{}, {}] must satisfy lo < hi",
                self.lo, self.hi
            )));
        }
        if !(self.growth > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "bracket growth {} must exceed 1",
                self.growth
            )));
        }
        Ok(())
    }
}

/// Result of a minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub t_star: f64,
    pub f_star: f64,
    /// Expansions plus golden-section steps.
    pub iterations: usize,
}

/// Minimizes a convex function.
///
/// The bracket is expanded on the permitted side(s) until the midpoint is no
/// higher than either end, which for a convex function certifies a minimizer
/// inside. A golden-section search then shrinks it to width
/// `tol * (1 + |t|)`.
///
/// ```
/// use renyi_risk::solver::{minimize_convex_1d, BracketSpec, ExpandSide};
///
/// let m = minimize_convex_1d(|t| (t - 3.0).powi(2), BracketSpec::new(0.0, 1.0, ExpandSide::Right), 1e-10)
///     .unwrap();
/// assert!((m.t_star - 3.0).abs() < 1e-8);
/// ```
pub fn minimize_convex_1d<F>(f: F, bracket: BracketSpec, tol: f64) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
{
    bracket.validate()?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let mut expansions = 0;
    loop {
        let mid = 0.5 * (lo + hi);
        let (f_lo, f_mid, f_hi) = (f(lo), f(mid), f(hi));
        let left_lower = f_lo < f_mid;
        let right_lower = f_hi < f_mid;
        if !left_lower && !right_lower {
            break;
        }
        let width = hi - lo;
        let grow_left = left_lower
            && matches!(bracket.expand_side, ExpandSide::Left | ExpandSide::Both);
        let grow_right = right_lower
            && matches!(bracket.expand_side, ExpandSide::Right | ExpandSide::Both);
        if !grow_left && !grow_right {
            // The minimizer of the restriction sits at a fixed end.
            break;
        }
        if expansions == bracket.max_expansions {
            return Err(Error::BracketExhausted(expansions));
        }
        expansions += 1;
        if grow_left {
            lo = hi - bracket.growth * width;
        } else {
            hi = lo + bracket.growth * width;
        }
    }
    let (t_star, f_star, steps) = golden_section(&f, lo, hi, tol);
    Ok(Minimum {
        t_star,
        f_star,
        iterations: expansions + steps,
    })
}

/// Golden-section minimization on a fixed interval, returning the best point
/// seen, its value and the number of steps.
pub fn golden_section<F>(f: &F, lo: f64, hi: f64, tol: f64) -> (f64, f64, usize)
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut steps = 0;
    let mut best = (a, f(a));
    let f_b = f(b);
    if f_b < best.1 {
        best = (b, f_b);
    }
    while b - a > tol * (1.0 + 0.5 * (a + b).abs()) {
        steps += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        // The interior points stop moving once the interval reaches the
        // spacing of floating-point numbers.
        if c <= a || d >= b || c >= d {
            break;
        }
    }
    let mid = 0.5 * (a + b);
    for (x, fx) in [(c, fc), (d, fd), (mid, f(mid))] {
        if fx <= best.1 {
            best = (x, fx);
        }
    }
    (best.0, best.1, steps)
}

/// Maximizes `f` on `[lo, hi]` by golden section. Suitable for functions that
/// are unimodal on the interval.
pub fn maximize_golden<F>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64, usize)
where
    F: Fn(f64) -> f64,
{
    let (x, neg, steps) = golden_section(&|t| -f(t), lo, hi, tol);
    (x, -neg, steps)
}

/// A root together with the number of bisection steps that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub iterations: usize,
}

/// Finds a root of `g` on `[lo, hi]` given a sign change.
///
/// ```
/// use renyi_risk::solver::bisect;
///
/// let r = bisect(|t| t - 1.0, 0.0, 2.0, 1e-12).unwrap();
/// assert!((r - 1.0).abs() < 1e-11);
/// ```
pub fn bisect<G>(g: G, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    bisect_counted(g, lo, hi, tol, DEFAULT_MAX_ITERATIONS).map(|r| r.x)
}

/// [`bisect`] with an explicit iteration cap and step count.
pub fn bisect_counted<G>(g: G, lo: f64, hi: f64, tol: f64, max_iterations: usize) -> Result<Root>
where
    G: Fn(f64) -> f64,
{
    if !(lo <= hi) {
        return Err(Error::InvalidArgument(format!("interval [{lo}, {hi}] is empty")));
    }
    let (mut a, mut b) = (lo, hi);
    let (g_a, g_b) = (g(a), g(b));
    if g_a == 0.0 {
        return Ok(Root { x: a, iterations: 0 });
    }
    if g_b == 0.0 {
        return Ok(Root { x: b, iterations: 0 });
    }
    if g_a.signum() == g_b.signum() || g_a.is_nan() || g_b.is_nan() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let a_negative = g_a < 0.0;
    let mut iterations = 0;
    loop {
        let mid = 0.5 * (a + b);
        if b - a <= tol * (1.0 + mid.abs()) || mid <= a || mid >= b {
            return Ok(Root { x: mid, iterations });
        }
        if iterations == max_iterations {
            return Err(Error::NoConvergence(iterations));
        }
        iterations += 1;
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return Ok(Root { x: mid, iterations });
        }
        if (g_mid < 0.0) == a_negative {
            a = mid;
        } else {
            b = mid;
        }
    }
}
