//! Statistical properties of the Wishart experiments at moderate size.

use annulus::rmt::{evaluate_statistics, experiment_convergence, EnsembleConfig, TraceStatistic};

#[test]
fn gamma_two_is_nearly_gaussian() {
    let cfg = EnsembleConfig::from_c(200, 1.0, 1, 10_000, 31).unwrap();
    let r = evaluate_statistics(&cfg, &[TraceStatistic::GammaTrace { n: 2, i: 0 }]).unwrap();
    let row = &r.statistics[0];
    assert!(row.skewness.abs() <= 5.0 * row.skewness_se, "skewness {} se {}", row.skewness, row.skewness_se);
    assert!(r.all_pass(), "{}", r.to_text());
}

#[test]
fn convergence_band_holds_and_shrinks() {
    let rows = experiment_convergence(1.0, &[25, 50, 100], 20, 5, 2, 2).unwrap();
    for r in &rows {
        assert!(r.gap <= r.band, "N={} gap {} band {}", r.n, r.gap, r.band);
    }
    assert!(rows.windows(2).all(|w| w[1].band < w[0].band));
}

/// The full doubling table; minutes of work, so run on demand.
#[test]
#[ignore]
fn convergence_table() {
    let rows = experiment_convergence(1.0, &[100, 200, 400], 20, 5, 2, 2).unwrap();
    for r in &rows {
        println!("N={:>4} samples={:>6} estimate={:.4} se={:.4} predicted={} gap={:.4}", r.n, r.samples, r.estimate, r.se, r.predicted, r.gap);
    }
}
