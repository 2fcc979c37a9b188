//! Data files for the eight standard plots of `psi` and `R` against the
//! intensity.
//!
//! Odd figures are wide tables (`lambda`, then one column per order); even
//! figures hold the same surface in long form (`alpha,lambda,value`).

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quantity::{Model, Quantity};
use crate::series::Precision;
use crate::sweep::{format_param, format_value, lambda_grid, run_sweep, tenths, Format, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

/// What the plotted curves are expected to do along the intensity axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Increasing,
    Decreasing,
    Positive,
    Negative,
}

impl FigureId {
    pub const ALL: [FigureId; 8] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn quantity(self) -> Quantity {
        if self.number() <= 4 {
            Quantity::Psi
        } else {
            Quantity::R
        }
    }

    /// Orders 0.1..0.9 for figures 1, 2, 5, 6; 1.1..2.0 otherwise.
    pub fn alphas(self) -> Vec<f64> {
        match self.number() {
            1 | 2 | 5 | 6 => tenths(1, 9),
            _ => tenths(11, 20),
        }
    }

    pub fn is_wide(self) -> bool {
        self.number() % 2 == 1
    }

    pub fn shape(self) -> Shape {
        match self.number() {
            1 | 2 => Shape::Increasing,
            3 | 4 => Shape::Decreasing,
            5 | 6 => Shape::Positive,
            _ => Shape::Negative,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fig{}", self.number())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.to_string() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown figure '{s}' (expected fig1..fig8)")))
    }
}

/// Evaluated surface: `values[i][j]` is at `alphas[i]`, `lambdas[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub id: FigureId,
    pub alphas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl FigureData {
    /// Places where a curve breaks its expected shape, as
    /// `(alpha, lambda)` pairs. For monotone shapes the pair names the
    /// later of the two points compared.
    pub fn shape_violations(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for (a, row) in self.alphas.iter().zip(&self.values) {
            for (j, &v) in row.iter().enumerate() {
                let ok = match self.id.shape() {
                    Shape::Positive => v > 0.0,
                    Shape::Negative => v < 0.0,
                    Shape::Increasing => j == 0 || v >= row[j - 1],
                    Shape::Decreasing => j == 0 || v <= row[j - 1],
                };
                if !ok {
                    out.push((*a, self.lambdas[j]));
                }
            }
        }
        out
    }

    pub fn write(&self, mut out: impl Write, format: Format) -> io::Result<()> {
        let d = format.delimiter();
        if self.id.is_wide() {
            write!(out, "lambda")?;
            for a in &self.alphas {
                write!(out, "{d}alpha_{}", format_param(*a))?;
            }
            writeln!(out)?;
            for (j, l) in self.lambdas.iter().enumerate() {
                write!(out, "{}", format_param(*l))?;
                for row in &self.values {
                    write!(out, "{d}{}", format_value(row[j]))?;
                }
                writeln!(out)?;
            }
        } else {
            writeln!(out, "alpha{d}lambda{d}value")?;
            for (a, row) in self.alphas.iter().zip(&self.values) {
                for (l, v) in self.lambdas.iter().zip(row) {
                    writeln!(out, "{}{d}{}{d}{}", format_param(*a), format_param(*l), format_value(*v))?;
                }
            }
        }
        Ok(())
    }
}

/// Lambda grid used by every figure: `0.1, 0.2, ..., 50`.
pub fn default_lambdas() -> Vec<f64> {
    lambda_grid(0.1, 50.0, 0.1).expect("static grid is valid")
}

/// Evaluates a figure on the default grid. Any failed point fails the
/// figure, since a hole would silently change the plot.
pub fn figure_data(model: &dyn Model, id: FigureId, precision: Precision) -> Result<FigureData> {
    let mut config = SweepConfig::new(id.quantity());
    config.alphas = id.alphas();
    config.precision = precision;
    let rows = run_sweep(model, &config)?;
    let lambdas = default_lambdas();
    let mut values = Vec::with_capacity(config.alphas.len());
    for chunk in rows.chunks(lambdas.len()) {
        let row = chunk
            .iter()
            .map(|r| r.result.clone().map(|e| e.value))
            .collect::<Result<Vec<f64>>>()?;
        values.push(row);
    }
    Ok(FigureData {
        id,
        alphas: config.alphas,
        lambdas,
        values,
    })
}
