//! Shannon and Renyi entropies of the Poisson distribution, with certified
//! truncation bounds, plus the machinery used to check their monotonicity
//! and concavity in the intensity: rearranged partial sums, majorization,
//! Karamata gaps and large-intensity bounds.
//!
//! Every infinite series is cut at the first index whose geometric tail
//! bound is within the requested tolerance; the bound is returned with the
//! value.
//!
//! ```
//! use entropykit::{shannon_entropy, Intensity};
//!
//! let h = shannon_entropy(Intensity::new(1.0)?, 1e-12)?;
//! assert!((h.value - 1.304_842_242_256_251_5).abs() < 1e-10);
//! assert!(h.tail_bound <= 1e-12);
//! # Ok::<(), entropykit::Error>(())
//! ```

pub mod asymptotics;
pub mod entropy;
pub mod error;
pub mod figure;
pub mod majorization;
pub mod poisson;
pub mod quantity;
pub mod series;
pub mod special;
pub mod sweep;
pub mod verify;

pub use entropy::{psi, r_statistic, renyi_entropy, shannon_entropy, shannon_prime, shannon_second, EntropyValue, RenyiOrder};
pub use error::{Error, Result};
pub use poisson::{log_pmf, pmf, Intensity};
pub use quantity::{evaluate, Evaluation, Model, Point, PoissonModel, Quantity};
pub use series::{Precision, SeriesValue};
