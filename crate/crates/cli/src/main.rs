use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use entropykit::figure::{figure_data, FigureId};
use entropykit::series::DEFAULT_MAX_TERMS;
use entropykit::sweep::{run_sweep, write_rows, Format, SweepConfig};
use entropykit::verify::{verify, ClaimId, VerifyOptions};
use entropykit::{evaluate, Point, PoissonModel, Precision, Quantity};

const MAX_TERMS_VAR: &str = "ENTROPYKIT_MAX_TERMS";

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "entropykit", version, about = "Entropies of the Poisson distribution with certified truncation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one quantity at one point.
    Eval {
        #[arg(long)]
        quantity: Quantity,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        lambda: f64,
        /// Window length minus one, for partial_sum.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
    },
    /// Evaluate a quantity over an (alpha, lambda) grid.
    Sweep {
        #[arg(long)]
        quantity: Quantity,
        #[arg(long, value_delimiter = ',')]
        alpha_list: Vec<f64>,
        #[arg(long, default_value_t = 0.1)]
        lambda_start: f64,
        #[arg(long, default_value_t = 50.0)]
        lambda_stop: f64,
        #[arg(long, default_value_t = 0.1)]
        lambda_step: f64,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Add tail_bound and truncation_index columns.
        #[arg(long)]
        with_bounds: bool,
    },
    /// Check a claim (or all of them) on its default grid.
    Verify {
        #[arg(long, default_value = "all")]
        claim: String,
    },
    /// Write the data behind one of the eight figures.
    Figure {
        #[arg(long)]
        id: FigureId,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<entropykit::Error> for Failure {
    fn from(e: entropykit::Error) -> Self {
        Self {
            code: if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

fn io_failure(path: Option<&Path>, e: io::Error) -> Failure {
    match path {
        Some(p) => Failure::usage(format!("cannot write {}: {e}", p.display())),
        None => Failure::usage(format!("cannot write output: {e}")),
    }
}

fn max_terms() -> Result<u64, Failure> {
    match std::env::var(MAX_TERMS_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::usage(format!("{MAX_TERMS_VAR} must be a positive integer, got '{v}'"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_TERMS),
        Err(e) => Err(Failure::usage(format!("{MAX_TERMS_VAR}: {e}"))),
    }
}

/// Runs `write` against the file at `path`, or standard output.
fn with_output(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    let result = match path {
        Some(p) => File::create(p).and_then(|f| {
            let mut w = BufWriter::new(f);
            write(&mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            // A closed pipe (e.g. `| head`) is not an error.
            match write(&mut w).and_then(|_| w.flush()) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                r => r,
            }
        }
    };
    result.map_err(|e| io_failure(path, e))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let max_terms = max_terms()?;
    match cli.command {
        Command::Eval {
            quantity,
            alpha,
            lambda,
            n,
            eps,
        } => {
            let point = Point { lambda, alpha, n };
            let e = evaluate(&PoissonModel, quantity, point, Precision::new(eps).with_max_terms(max_terms))?;
            with_output(None, |w| {
                writeln!(w, "quantity: {quantity}")?;
                writeln!(w, "value: {:.16e}", e.value)?;
                writeln!(w, "tail_bound: {:e}", e.tail_bound)?;
                writeln!(w, "truncation_index: {}", e.truncation_index)
            })?;
            Ok(0)
        }
        Command::Sweep {
            quantity,
            alpha_list,
            lambda_start,
            lambda_stop,
            lambda_step,
            n,
            eps,
            output,
            format,
            with_bounds,
        } => {
            let config = SweepConfig {
                quantity,
                alphas: alpha_list,
                lambda_start,
                lambda_stop,
                lambda_step,
                n,
                precision: Precision::new(eps).with_max_terms(max_terms),
            };
            let rows = run_sweep(&PoissonModel, &config)?;
            with_output(output.as_deref(), |w| write_rows(w, &rows, format, with_bounds))?;
            let failed: Vec<_> = rows.iter().filter_map(|r| r.result.as_ref().err().map(|e| (r, e))).collect();
            if let Some((row, err)) = failed.first() {
                eprintln!(
                    "error: {} of {} points failed; first at lambda = {}: {err}",
                    failed.len(),
                    rows.len(),
                    row.point.lambda
                );
                let numerical = failed.iter().all(|(_, e)| e.is_numerical());
                return Ok(if numerical { EXIT_NUMERICAL } else { EXIT_USAGE });
            }
            Ok(0)
        }
        Command::Verify { claim } => {
            let claims: Vec<ClaimId> = if claim == "all" {
                ClaimId::ALL.to_vec()
            } else {
                vec![claim.parse()?]
            };
            let opts = VerifyOptions::default().with_max_terms(max_terms);
            let mut all_passed = true;
            for c in claims {
                let report = verify(&PoissonModel, c, &opts)?;
                with_output(None, |w| writeln!(w, "{report}"))?;
                all_passed &= report.passed();
            }
            Ok(if all_passed { 0 } else { EXIT_VERIFICATION })
        }
        Command::Figure { id, output, format } => {
            let data = figure_data(&PoissonModel, id, Precision::default().with_max_terms(max_terms))?;
            with_output(output.as_deref(), |w| data.write(w, format))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
