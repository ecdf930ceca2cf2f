use std::fs;
use std::io::Write;
use std::path::Path;

use kcenter_core::io::{parse_graph, GraphFile};
use kcenter_core::{DecimalLength, SolveError};
use num_rational::Ratio;
use serde::Serialize;

use crate::CliError;

pub(crate) fn read_graph(path: &Path) -> Result<GraphFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

/// Write `text` to `path`, or to `out` when no path is given.
pub(crate) fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

pub(crate) fn solve_error(e: SolveError) -> CliError {
    match e {
        SolveError::ZeroBudget
        | SolveError::ZeroDelta
        | SolveError::WeightCount { .. }
        | SolveError::ZeroWeight(_)
        | SolveError::ExactCapExceeded { .. } => CliError::Invalid(e.to_string()),
        _ => CliError::Failed(e.to_string()),
    }
}

pub(crate) fn json_line<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

/// Aligned `key  value` lines.
pub(crate) fn table(rows: &[(&str, String)], out: &mut dyn Write) -> Result<(), CliError> {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

/// Fixed-width columns, first row is the header.
pub(crate) fn columns(rows: &[Vec<String>], out: &mut dyn Write) -> Result<(), CliError> {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    Ok(())
}

pub(crate) fn list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Exact `num / den` rendered with four decimals, rounded half up.
pub(crate) fn ratio(num: u64, den: u64) -> Option<f64> {
    if den == 0 {
        return (num == 0).then_some(1.0);
    }
    let scaled = (u128::from(num) * 20000 / u128::from(den) + 1) / 2;
    Some(scaled as f64 / 10000.0)
}

pub(crate) fn parse_eps(text: &str) -> Result<Ratio<u64>, CliError> {
    let bad = || CliError::Invalid(format!("eps must be a decimal in (0, 1), got {text:?}"));
    let d: DecimalLength = text.parse().map_err(|_| bad())?;
    if !d.is_positive() {
        return Err(bad());
    }
    let digits = d.fraction_digits();
    let mantissa = d.scaled_to(digits).ok_or_else(bad)?;
    let eps = Ratio::new(mantissa, 10u64.checked_pow(digits).ok_or_else(bad)?);
    if eps >= Ratio::from_integer(1) {
        return Err(bad());
    }
    Ok(eps)
}
