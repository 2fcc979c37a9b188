//! Grid evaluation and delimiter-separated output.

use std::io::{self, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quantity::{evaluate, Evaluation, Model, Point, Quantity};
use crate::series::Precision;

/// Upper limit on the number of grid points a single sweep may request.
pub const MAX_GRID_POINTS: usize = 10_000_000;

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
/// Output order always matches input order.
pub(crate) fn ordered_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// `start, start + step, ...` up to `stop` inclusive. Each point is formed
/// by one multiplication and then rounded to 15 significant digits, so
/// `0.1 + 2 * 0.1` comes out as `0.3` rather than `0.30000000000000004`.
pub fn lambda_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::InvalidConfig("grid bounds must be finite".into()));
    }
    if !(start > 0.0 && start < stop) {
        return Err(Error::InvalidConfig(format!(
            "grid needs 0 < start < stop, got start = {start}, stop = {stop}"
        )));
    }
    if step <= 0.0 {
        return Err(Error::InvalidConfig(format!("grid step must be > 0, got {step}")));
    }
    let span = (stop - start) / step;
    if span >= MAX_GRID_POINTS as f64 {
        return Err(Error::InvalidConfig(format!(
            "grid has more than {MAX_GRID_POINTS} points"
        )));
    }
    let count = (span + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| clean(start + i as f64 * step)).collect())
}

/// `{start/10, ..., stop/10}` for integer tenths, the grid used for Renyi
/// orders throughout.
pub fn tenths(start: u32, stop: u32) -> Vec<f64> {
    (start..=stop).map(|i| f64::from(i) / 10.0).collect()
}

fn clean(x: f64) -> f64 {
    format!("{x:.14e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub quantity: Quantity,
    pub alphas: Vec<f64>,
    pub lambda_start: f64,
    pub lambda_stop: f64,
    pub lambda_step: f64,
    pub n: Option<u64>,
    pub precision: Precision,
}

impl SweepConfig {
    pub fn new(quantity: Quantity) -> Self {
        Self {
            quantity,
            alphas: Vec::new(),
            lambda_start: 0.1,
            lambda_stop: 50.0,
            lambda_step: 0.1,
            n: None,
            precision: Precision::default(),
        }
    }

    /// Checks the configuration and returns the `(alpha, lambda)` points in
    /// output order: alpha ascending outside, lambda ascending inside.
    pub fn points(&self) -> Result<Vec<Point>> {
        self.precision.validated()?;
        let lambdas = lambda_grid(self.lambda_start, self.lambda_stop, self.lambda_step)?;
        let mut base = Point::new(0.0);
        if self.quantity.needs_n() {
            let n = self
                .n
                .ok_or_else(|| Error::InvalidConfig(format!("{} requires n", self.quantity)))?;
            base = base.with_n(n);
        }
        let alphas: Vec<Option<f64>> = if self.quantity.needs_alpha() {
            if self.alphas.is_empty() {
                return Err(Error::InvalidConfig(format!("{} requires an alpha list", self.quantity)));
            }
            let mut a = self.alphas.clone();
            if let Some(bad) = a.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
                return Err(Error::InvalidOrder(*bad));
            }
            a.sort_by(f64::total_cmp);
            a.dedup();
            a.into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        if alphas.len().saturating_mul(lambdas.len()) > MAX_GRID_POINTS {
            return Err(Error::InvalidConfig(format!(
                "grid has more than {MAX_GRID_POINTS} points"
            )));
        }
        Ok(alphas
            .iter()
            .flat_map(|&alpha| lambdas.iter().map(move |&lambda| Point { lambda, alpha, ..base }))
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub point: Point,
    pub result: Result<Evaluation>,
}

impl SweepRow {
    pub fn value(&self) -> f64 {
        self.result.as_ref().map_or(f64::NAN, |e| e.value)
    }
}

/// Evaluates every grid point. Configuration errors fail the whole sweep;
/// evaluation errors are kept on their row.
pub fn run_sweep(model: &dyn Model, config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let points = config.points()?;
    let q = config.quantity;
    let p = config.precision;
    Ok(ordered_map(&points, |&point| SweepRow {
        point,
        result: evaluate(model, q, point, p),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Tsv,
}

impl Format {
    pub fn delimiter(self) -> char {
        match self {
            Format::Csv => ',',
            Format::Tsv => '\t',
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            _ => Err(Error::InvalidConfig(format!("unknown format '{s}'"))),
        }
    }
}

/// 17 significant digits, enough to round-trip any binary64 value.
pub fn format_value(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "NaN".to_string()
    }
}

/// Shortest decimal that round-trips, for grid parameters.
pub fn format_param(x: f64) -> String {
    format!("{x}")
}

/// Writes a header line and one line per row, LF-terminated. With
/// `with_bounds` each row also carries its tail bound and truncation index.
pub fn write_rows(mut out: impl Write, rows: &[SweepRow], format: Format, with_bounds: bool) -> io::Result<()> {
    let d = format.delimiter();
    let mut header = vec!["alpha", "lambda", "value"];
    if with_bounds {
        header.extend(["tail_bound", "truncation_index"]);
    }
    writeln!(out, "{}", header.join(&d.to_string()))?;
    for row in rows {
        let alpha = row.point.alpha.map(format_param).unwrap_or_default();
        write!(out, "{alpha}{d}{}{d}{}", format_param(row.point.lambda), format_value(row.value()))?;
        if with_bounds {
            match &row.result {
                Ok(e) => write!(out, "{d}{}{d}{}", format_value(e.tail_bound), e.truncation_index)?,
                Err(_) => write!(out, "{d}NaN{d}")?,
            }
        }
        writeln!(out)?;
    }
    Ok(())
}
