mod common;

use common::Oracle;
use entropykit::figure::{figure_data, FigureId};
use entropykit::quantity::{PoissonModel, Quantity};
use entropykit::series::Precision;
use entropykit::sweep::{run_sweep, tenths, write_rows, Format, SweepConfig};

fn grid(q: Quantity, alphas: Vec<f64>, start: f64, stop: f64, step: f64) -> SweepConfig {
    SweepConfig {
        alphas,
        lambda_start: start,
        lambda_stop: stop,
        lambda_step: step,
        ..SweepConfig::new(q)
    }
}

#[test]
fn psi_at_order_one_is_normalization() {
    let rows = run_sweep(&PoissonModel, &grid(Quantity::Psi, vec![1.0], 0.1, 50.0, 0.7)).unwrap();
    assert!(rows.iter().all(|r| (r.value() - 1.0).abs() < 1e-12));
}

#[test]
fn row_count_is_grid_product() {
    let rows = run_sweep(&PoissonModel, &grid(Quantity::Psi, tenths(1, 9), 0.1, 10.0, 0.1)).unwrap();
    assert_eq!(rows.len(), 900);
}

#[test]
fn renyi_order_two_rows_match_bessel() {
    let mut o = Oracle::new();
    let rows = run_sweep(&PoissonModel, &grid(Quantity::Renyi, vec![2.0], 1.0, 3.0, 1.0)).unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        let l = r.point.lambda;
        let expected = -o.scaled_bessel_i0(2.0 * l).ln();
        assert!((r.value() - expected).abs() < 1e-10, "lambda = {l}");
    }
}

#[test]
fn bounds_never_exceed_eps() {
    for q in [Quantity::Shannon, Quantity::ShannonPrime, Quantity::Renyi, Quantity::R, Quantity::Statistic] {
        let mut c = grid(q, vec![0.3, 1.7], 1.1, 40.0, 1.3);
        c.precision = Precision::new(1e-9);
        for r in run_sweep(&PoissonModel, &c).unwrap() {
            assert!(r.result.unwrap().tail_bound <= 1e-9, "{q}");
        }
    }
}

#[test]
fn sweep_output_is_deterministic() {
    let c = grid(Quantity::R, tenths(11, 20), 0.1, 20.0, 0.1);
    let render = || {
        let mut buf = Vec::new();
        write_rows(&mut buf, &run_sweep(&PoissonModel, &c).unwrap(), Format::Csv, true).unwrap();
        buf
    };
    assert_eq!(render(), render());
}

#[test]
fn figures_have_expected_shapes_and_sizes() {
    for id in FigureId::ALL {
        let data = figure_data(&PoissonModel, id, Precision::default()).unwrap();
        assert!(data.shape_violations().is_empty(), "{id}");
        let mut buf = Vec::new();
        data.write(&mut buf, Format::Csv).unwrap();
        let lines = String::from_utf8(buf).unwrap().lines().count();
        let expected = if id.is_wide() { 500 + 1 } else { data.alphas.len() * 500 + 1 };
        assert_eq!(lines, expected, "{id}");
    }
}
