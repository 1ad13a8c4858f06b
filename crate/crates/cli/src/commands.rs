use std::env;

use renyi_risk::{
    dual_norm, evar_with, kusuoka_evaluate, kusuoka_with, renyi_entropy, DiscreteDistribution, Order, RiskResult,
    RiskSpec, SolverConfig,
};
use serde::Serialize;

use crate::error::CliError;
use crate::input::{read_density, read_distribution};
use crate::output::{emit, number, to_csv, to_json};
use crate::Format;

const VERSION: &str = env!("CARGO_PKG_VERSION");
const TOL_VAR: &str = "RENYI_RISK_TOL";

/// Solver settings, with the tolerance taken from `RENYI_RISK_TOL` when set.
pub fn solver_config() -> Result<SolverConfig, CliError> {
    let mut config = SolverConfig::default();
    if let Some(raw) = env::var_os(TOL_VAR) {
        let text = raw.to_string_lossy();
        match text.trim().parse::<f64>() {
            Ok(tol) if tol > 0.0 && tol.is_finite() => config.tol = tol,
            _ => return Err(CliError::Spec(format!("{TOL_VAR} must be a positive decimal, got `{text}`"))),
        }
    }
    Ok(config)
}

fn parse_alpha(token: &str) -> Result<f64, CliError> {
    let alpha: f64 = token
        .trim()
        .parse()
        .map_err(|_| CliError::Spec(format!("alpha must lie in [0,1], got `{token}`")))?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(renyi_risk::Error::InvalidAlpha(alpha).into());
    }
    Ok(alpha)
}

fn parse_order(token: &str) -> Result<Order, CliError> {
    Ok(token.parse::<Order>()?)
}

#[derive(Serialize)]
struct InputSummary {
    atoms: usize,
    essinf: f64,
    esssup: f64,
    mean: f64,
}

impl InputSummary {
    fn of(d: &DiscreteDistribution) -> InputSummary {
        InputSummary {
            atoms: d.len(),
            essinf: d.essinf(),
            esssup: d.esssup(),
            mean: d.expectation(),
        }
    }
}

#[derive(Serialize)]
struct RiskEntry {
    alpha: f64,
    order: String,
    value: f64,
    t_star: Option<f64>,
    branch: &'static str,
    iterations: usize,
    residual: f64,
    /// `(value, weight)` pairs of the optimal density.
    #[serde(skip_serializing_if = "Option::is_none")]
    density: Option<Vec<(f64, f64)>>,
}

#[derive(Serialize)]
struct RiskReport {
    version: &'static str,
    input: InputSummary,
    entries: Vec<RiskEntry>,
}

pub fn risk(
    input: &str,
    alphas: &[String],
    orders: &[String],
    emit_density: bool,
    format: Format,
    config: &SolverConfig,
) -> Result<(), CliError> {
    let alphas = alphas.iter().map(|a| parse_alpha(a)).collect::<Result<Vec<_>, _>>()?;
    let orders = orders.iter().map(|o| parse_order(o)).collect::<Result<Vec<_>, _>>()?;
    let mut specs = Vec::with_capacity(alphas.len() * orders.len());
    for &alpha in &alphas {
        for &order in &orders {
            specs.push(RiskSpec::new(alpha, order)?);
        }
    }
    if emit_density && format == Format::Csv {
        return Err(CliError::Spec("--emit-density needs JSON output".into()));
    }
    let d = read_distribution(input)?;

    let mut entries = Vec::with_capacity(specs.len());
    for spec in &specs {
        let r = evar_with(&d, spec, config)?;
        let density = match (&r.density, emit_density) {
            (Some(z), true) => Some(d.values().iter().copied().zip(z.weights().iter().copied()).collect()),
            _ => None,
        };
        entries.push(RiskEntry {
            alpha: spec.alpha(),
            order: spec.order().to_string(),
            value: r.value,
            t_star: r.t_star,
            branch: r.branch.as_str(),
            iterations: r.iterations,
            residual: r.residual,
            density,
        });
    }

    let text = match format {
        Format::Json => to_json(&RiskReport {
            version: VERSION,
            input: InputSummary::of(&d),
            entries,
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|e| {
                    vec![
                        number(e.alpha),
                        e.order.clone(),
                        number(e.value),
                        e.t_star.map(number).unwrap_or_default(),
                        e.branch.to_string(),
                        e.iterations.to_string(),
                        number(e.residual),
                    ]
                })
                .collect();
            to_csv(&["alpha", "order", "value", "t_star", "branch", "iterations", "residual"], &rows)?
        }
    };
    emit(&text, None)
}

/// Conjugate orders of the `chain` preset, from AVaR's side towards the
/// supremum: higher orders, then Shannon at `p' = 1`, then negative orders.
const CHAIN_PRESET: [f64; 10] = [10.0, 5.0, 3.0, 2.0, 1.5, 1.1, 1.0, 0.9, 0.5, 0.1];

fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Spec(format!("malformed grid `{text}`: {why}; expected lo:hi:n with lo > 1"));
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let [lo, hi, n] = parts[..] else {
        return Err(bad("need three fields"));
    };
    let lo: f64 = lo.parse().map_err(|_| bad("lo is not a number"))?;
    let hi: f64 = hi.parse().map_err(|_| bad("hi is not a number"))?;
    let n: usize = n.parse().map_err(|_| bad("n is not a positive integer"))?;
    if n == 0 {
        return Err(bad("n is not a positive integer"));
    }
    if !(lo > 1.0 && lo.is_finite()) {
        return Err(bad("lo must exceed 1"));
    }
    if !(hi >= lo && hi.is_finite()) {
        return Err(bad("hi must be finite and at least lo"));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|k| if k + 1 == n { hi } else { lo + step * k as f64 }).collect())
}

fn order_cell(order: Order) -> String {
    match order {
        Order::Finite(x) => number(x),
        Order::Infinite => "inf".into(),
    }
}

pub fn sweep(
    input: &str,
    alpha: &str,
    pprime: Option<&str>,
    preset: Option<&str>,
    output: Option<&str>,
    config: &SolverConfig,
) -> Result<(), CliError> {
    let alpha = parse_alpha(alpha)?;
    let grid = match (pprime, preset) {
        (Some(spec), _) => parse_grid(spec)?,
        (None, Some("chain")) => CHAIN_PRESET.to_vec(),
        (None, Some(other)) => return Err(CliError::Spec(format!("unknown preset `{other}`; known presets: chain"))),
        (None, None) => return Err(CliError::Spec("give --pprime or --preset".into())),
    };
    let d = read_distribution(input)?;

    let row = |pp: Order, p: Order, r: &RiskResult| {
        vec![order_cell(pp), order_cell(p), number(r.value), r.t_star.map(number).unwrap_or_default()]
    };
    let mut rows = Vec::with_capacity(grid.len() + 2);
    for &pp in &grid {
        let pp = Order::Finite(pp);
        let p = pp.conjugate()?;
        let r = evar_with(&d, &RiskSpec::new(alpha, p)?, config)?;
        rows.push(row(pp, p, &r));
    }
    let avar = d.avar(alpha)?;
    rows.push(row(Order::Infinite, Order::Finite(1.0), &avar));
    rows.push(vec!["0".into(), "0".into(), number(d.esssup()), String::new()]);

    let text = to_csv(&["pprime", "p", "value", "t_star"], &rows)?;
    emit(&text, output)
}

#[derive(Serialize)]
struct DualNormReport {
    version: &'static str,
    alpha: f64,
    order: String,
    value: f64,
    t_star: Option<f64>,
}

pub fn dualnorm(density: &str, alpha: &str, order: &str) -> Result<(), CliError> {
    let alpha = parse_alpha(alpha)?;
    let order = parse_order(order)?;
    let (d, z) = read_density(density)?;
    let norm = dual_norm(&d, z.weights(), alpha, order.value())?;
    emit(
        &to_json(&DualNormReport {
            version: VERSION,
            alpha,
            order: order.to_string(),
            value: norm.value,
            t_star: norm.t_star,
        })?,
        None,
    )
}

#[derive(Serialize)]
struct KusuokaReport {
    version: &'static str,
    alpha: f64,
    order: String,
    evar: f64,
    /// The mixture of AVaRs under the measure, which reproduces `evar`.
    mixture: f64,
    atoms: Vec<(f64, f64)>,
    distortion: Vec<(f64, f64)>,
}

pub fn kusuoka(input: &str, alpha: &str, order: &str, config: &SolverConfig) -> Result<(), CliError> {
    let alpha = parse_alpha(alpha)?;
    let spec = RiskSpec::new(alpha, parse_order(order)?)?;
    let d = read_distribution(input)?;
    let measure = kusuoka_with(&d, &spec, config)?;
    let report = KusuokaReport {
        version: VERSION,
        alpha,
        order: spec.order().to_string(),
        evar: evar_with(&d, &spec, config)?.value,
        mixture: kusuoka_evaluate(&measure, &d)?,
        atoms: measure.atoms().to_vec(),
        distortion: measure.distortion().to_vec(),
    };
    emit(&to_json(&report)?, None)
}

#[derive(Serialize)]
struct EntropyEntry {
    q: String,
    entropy: f64,
}

#[derive(Serialize)]
struct EntropyReport {
    version: &'static str,
    entries: Vec<EntropyEntry>,
}

pub fn entropy(density: &str, qs: &[String]) -> Result<(), CliError> {
    let orders = qs.iter().map(|q| parse_order(q)).collect::<Result<Vec<_>, _>>()?;
    let (d, z) = read_density(density)?;
    let entries = orders
        .into_iter()
        .map(|q| {
            Ok(EntropyEntry {
                q: q.to_string(),
                entropy: renyi_entropy(&z, &d, q)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    emit(&to_json(&EntropyReport { version: VERSION, entries })?, None)
}
