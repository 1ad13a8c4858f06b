//! Reading distributions and densities from CSV or JSON files.
//!
//! CSV files carry a header row. Distributions need a `value` column and may
//! add a `weight` column. Density files need a `density` column, optionally
//! with `value` and `weight`. JSON files are recognized by a leading `{` and
//! look like `{"atoms": [[v, p], ...], "density": [...]}`.

use std::collections::HashMap;
use std::fs;

use renyi_risk::{Density, DiscreteDistribution};
use serde::Deserialize;

use crate::error::CliError;

/// Columns of one input file, keyed by lowercase header name.
struct Table {
    columns: HashMap<String, Vec<f64>>,
    /// Line number of each data row, for error messages.
    lines: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonInput {
    atoms: Option<Vec<(f64, f64)>>,
    density: Option<Vec<f64>>,
}

fn read_text(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn parse_csv(path: &str, text: &str) -> Result<Table, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| csv_error(path, &e))?
        .iter()
        .map(|h| h.to_ascii_lowercase())
        .collect();
    if headers.iter().all(|h| h.is_empty()) {
        return Err(CliError::parse(path, 1, "missing header row"));
    }
    let mut columns: HashMap<String, Vec<f64>> = HashMap::new();
    for (j, name) in headers.iter().enumerate() {
        if headers[..j].contains(name) {
            return Err(CliError::parse(path, 1, format_args!("duplicate column `{name}`")));
        }
        columns.insert(name.clone(), Vec::new());
    }
    let mut lines = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, &e))?;
        let line = record.position().map_or(0, |p| p.line());
        for (name, field) in headers.iter().zip(record.iter()) {
            let x: f64 = field
                .parse()
                .map_err(|_| CliError::parse(path, line, format_args!("`{field}` in column `{name}` is not a number")))?;
            if !x.is_finite() {
                return Err(CliError::parse(path, line, format_args!("`{field}` in column `{name}` is not finite")));
            }
            columns.get_mut(name).expect("column registered").push(x);
        }
        lines.push(line);
    }
    if lines.is_empty() {
        return Err(CliError::parse(path, 2, "no data rows"));
    }
    Ok(Table { columns, lines })
}

fn csv_error(path: &str, err: &csv::Error) -> CliError {
    let line = err.position().map_or(1, |p| p.line());
    CliError::parse(path, line, err)
}

fn parse_json(path: &str, text: &str) -> Result<JsonInput, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::parse(path, e.line() as u64, e))
}

/// Rejects negative CSV weights with their line. JSON inputs carry no line
/// table, and their weights are validated by the library instead.
fn check_weights(path: &str, weights: &[f64], lines: &[u64]) -> Result<(), CliError> {
    for (w, &line) in weights.iter().zip(lines) {
        if *w < 0.0 {
            return Err(CliError::parse(path, line, format_args!("weight {w} is negative")));
        }
    }
    Ok(())
}

/// Reads a distribution file.
pub fn read_distribution(path: &str) -> Result<DiscreteDistribution, CliError> {
    let text = read_text(path)?;
    let (values, weights, lines) = if is_json(&text) {
        let input = parse_json(path, &text)?;
        if input.density.is_some() {
            return Err(CliError::parse(path, 1, "unexpected field `density` in a distribution file"));
        }
        let atoms = input
            .atoms
            .ok_or_else(|| CliError::parse(path, 1, "missing field `atoms`"))?;
        if atoms.is_empty() {
            return Err(CliError::parse(path, 1, "`atoms` is empty"));
        }
        let (values, weights): (Vec<f64>, Vec<f64>) = atoms.into_iter().unzip();
        (values, Some(weights), Vec::new())
    } else {
        let mut table = parse_csv(path, &text)?;
        let values = table
            .columns
            .remove("value")
            .ok_or_else(|| CliError::parse(path, 1, "missing column `value`"))?;
        let weights = table.columns.remove("weight");
        (values, weights, table.lines)
    };
    if let Some(w) = &weights {
        check_weights(path, w, &lines)?;
    }
    Ok(DiscreteDistribution::from_samples(&values, weights.as_deref())?)
}

/// Reads a density file, returning the reference distribution and the density
/// on its atoms.
///
/// Without a `value` column the rows are taken as distinct atoms `0, 1, …`;
/// without a `weight` column they are equally likely. Rows must name distinct
/// values, since a density assigns one weight per atom.
pub fn read_density(path: &str) -> Result<(DiscreteDistribution, Density), CliError> {
    let text = read_text(path)?;
    let (values, weights, density, lines) = if is_json(&text) {
        let input = parse_json(path, &text)?;
        let density = input
            .density
            .ok_or_else(|| CliError::parse(path, 1, "missing field `density`"))?;
        if density.is_empty() {
            return Err(CliError::parse(path, 1, "`density` is empty"));
        }
        let lines = Vec::new();
        match input.atoms {
            Some(atoms) => {
                if atoms.len() != density.len() {
                    return Err(CliError::parse(
                        path,
                        1,
                        format_args!("{} atoms but {} density weights", atoms.len(), density.len()),
                    ));
                }
                let (values, weights): (Vec<f64>, Vec<f64>) = atoms.into_iter().unzip();
                (Some(values), Some(weights), density, lines)
            }
            None => (None, None, density, lines),
        }
    } else {
        let mut table = parse_csv(path, &text)?;
        let density = table
            .columns
            .remove("density")
            .ok_or_else(|| CliError::parse(path, 1, "missing column `density`"))?;
        (table.columns.remove("value"), table.columns.remove("weight"), density, table.lines)
    };
    if let Some(w) = &weights {
        check_weights(path, w, &lines)?;
    }
    let n = density.len();
    let values = values.unwrap_or_else(|| (0..n).map(|i| i as f64).collect());
    let weights = weights.unwrap_or_else(|| vec![1.0; n]);

    let mut rows: Vec<(f64, f64, f64)> = Vec::with_capacity(n);
    for ((&v, &w), &z) in values.iter().zip(&weights).zip(&density) {
        if w > 0.0 {
            rows.push((v, w, z));
        }
    }
    let mut sorted: Vec<f64> = rows.iter().map(|r| r.0).collect();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(CliError::Spec("density files must list each value once".into()));
    }
    let kept_values: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let kept_weights: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let d = DiscreteDistribution::from_samples(&kept_values, Some(&kept_weights))?;
    let mut aligned = vec![0.0; d.len()];
    for &(v, _, z) in &rows {
        let i = d.index_of(v).expect("every kept value is an atom");
        aligned[i] = z;
    }
    let z = Density::new(&d, aligned)?;
    Ok((d, z))
}
