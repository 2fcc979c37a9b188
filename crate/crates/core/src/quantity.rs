//! One entry point for every scalar the crate can evaluate, behind a
//! [`Model`] trait so that verification can be pointed at a substitute.

use std::fmt;
use std::str::FromStr;

use crate::asymptotics::entropy_prime_statistic;
use crate::entropy::{psi, r_statistic, renyi_entropy, shannon_entropy, shannon_prime, shannon_second, RenyiOrder};
use crate::error::{Error, Result};
use crate::majorization::{partial_sum, window_start};
use crate::poisson::{lower_sum, upper_tail, Intensity};
use crate::series::{Precision, SeriesValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    Shannon,
    ShannonPrime,
    ShannonSecond,
    Renyi,
    Psi,
    R,
    PartialSum,
    Statistic,
}

impl Quantity {
    pub const ALL: [Quantity; 8] = [
        Quantity::Shannon,
        Quantity::ShannonPrime,
        Quantity::ShannonSecond,
        Quantity::Renyi,
        Quantity::Psi,
        Quantity::R,
        Quantity::PartialSum,
        Quantity::Statistic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Shannon => "shannon",
            Quantity::ShannonPrime => "shannon_prime",
            Quantity::ShannonSecond => "shannon_second",
            Quantity::Renyi => "renyi",
            Quantity::Psi => "psi",
            Quantity::R => "r",
            Quantity::PartialSum => "partial_sum",
            Quantity::Statistic => "statistic",
        }
    }

    pub fn needs_alpha(self) -> bool {
        matches!(self, Quantity::Renyi | Quantity::Psi | Quantity::R)
    }

    pub fn needs_n(self) -> bool {
        self == Quantity::PartialSum
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown quantity '{s}'")))
    }
}

/// A value with its certified truncation bound. Finite sums report a zero
/// bound and their last index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub tail_bound: f64,
    pub truncation_index: u64,
}

impl From<SeriesValue> for Evaluation {
    fn from(s: SeriesValue) -> Self {
        Self {
            value: s.value,
            tail_bound: s.tail_bound,
            truncation_index: s.truncation_index,
        }
    }
}

impl From<crate::entropy::EntropyValue> for Evaluation {
    fn from(e: crate::entropy::EntropyValue) -> Self {
        Self {
            value: e.value,
            tail_bound: e.tail_bound,
            truncation_index: e.series.truncation_index,
        }
    }
}

/// Parameters of one evaluation. `alpha` and `n` are ignored by quantities
/// that do not use them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub lambda: f64,
    pub alpha: Option<f64>,
    pub n: Option<u64>,
}

impl Point {
    pub fn new(lambda: f64) -> Self {
        Self {
            lambda,
            alpha: None,
            n: None,
        }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self {
            alpha: Some(alpha),
            ..self
        }
    }

    pub fn with_n(self, n: u64) -> Self {
        Self { n: Some(n), ..self }
    }
}

/// The family of functions that verification runs against. Every method
/// has the crate's own implementation as its default.
pub trait Model: Sync {
    fn shannon(&self, lambda: Intensity, p: Precision) -> Result<Evaluation> {
        shannon_entropy(lambda, p).map(Into::into)
    }

    fn shannon_prime(&self, lambda: Intensity, p: Precision) -> Result<Evaluation> {
        shannon_prime(lambda, p).map(Into::into)
    }

    fn shannon_second(&self, lambda: Intensity, p: Precision) -> Result<Evaluation> {
        shannon_second(lambda, p).map(Into::into)
    }

    fn renyi(&self, alpha: RenyiOrder, lambda: Intensity, p: Precision) -> Result<Evaluation> {
        renyi_entropy(alpha, lambda, p).map(Into::into)
    }

    fn psi(&self, alpha: RenyiOrder, lambda: Intensity, p: Precision) -> Result<Evaluation> {
        psi(alpha, lambda, p).map(Into::into)
    }

    fn r(&self, alpha: RenyiOrder, lambda: Intensity, p: Precision) -> Result<Evaluation> {
        r_statistic(alpha, lambda, p).map(Into::into)
    }

    /// `S_n(lambda)`.
    fn partial_sum(&self, lambda: Intensity, n: u64) -> Result<Evaluation> {
        Ok(Evaluation {
            value: partial_sum(lambda, n),
            tail_bound: 0.0,
            truncation_index: n,
        })
    }

    /// `1 - S_n(lambda)`, summed directly so it stays meaningful when
    /// `S_n` rounds to one.
    fn partial_remainder(&self, lambda: Intensity, n: u64) -> Result<Evaluation> {
        let start = window_start(lambda, n);
        Ok(Evaluation {
            value: lower_sum(lambda, start) + upper_tail(lambda, start + n),
            tail_bound: 0.0,
            truncation_index: n,
        })
    }

    fn statistic(&self, lambda: Intensity, p: Precision) -> Result<Evaluation> {
        entropy_prime_statistic(lambda, p).map(Into::into)
    }
}

/// The crate's own evaluators.
#[derive(Debug, Clone, Copy, Default)]
pub struct PoissonModel;

impl Model for PoissonModel {}

/// Evaluates `quantity` at `point` through `model`, validating parameters.
pub fn evaluate(model: &dyn Model, quantity: Quantity, point: Point, precision: Precision) -> Result<Evaluation> {
    let precision = precision.validated()?;
    let lambda = Intensity::new(point.lambda)?;
    let alpha = || -> Result<RenyiOrder> {
        let a = point
            .alpha
            .ok_or_else(|| Error::InvalidConfig(format!("{quantity} requires alpha")))?;
        RenyiOrder::new(a)
    };
    let n = || {
        point
            .n
            .ok_or_else(|| Error::InvalidConfig(format!("{quantity} requires n")))
    };
    match quantity {
        Quantity::Shannon => model.shannon(lambda, precision),
        Quantity::ShannonPrime => model.shannon_prime(lambda, precision),
        Quantity::ShannonSecond => model.shannon_second(lambda, precision),
        Quantity::Renyi => model.renyi(alpha()?, lambda, precision),
        Quantity::Psi => model.psi(alpha()?, lambda, precision),
        Quantity::R => model.r(alpha()?, lambda, precision),
        Quantity::PartialSum => model.partial_sum(lambda, n()?),
        Quantity::Statistic => model.statistic(lambda, precision),
    }
}
