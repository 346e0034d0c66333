//! Draw loop, estimators and the packaged experiments.

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ensemble::{sample_wishart, stream_rng, CMat, EnsembleConfig};
use super::report::{band, CovRow, MomentReport, StatRow};
use super::stats::{Predictor, TraceStatistic};
use super::RmtError;
use crate::diagrams::DEFAULT_CAP;
use crate::polyalg::DEFAULT_TABLE_SIZE;

/// A statistic with its coefficients specialised to a float `c`.
enum Plan {
    /// `sum a_u Tr X_i^u`.
    Single { i: usize, coeffs: Vec<f64> },
    /// `Tr prod_r (sum_u a_ru X_{i_r}^u)`.
    Mixed { factors: Vec<(usize, Vec<f64>)> },
}

fn plan(s: &TraceStatistic, c: f64) -> Plan {
    let single = |s: &TraceStatistic| -> Vec<f64> {
        s.polynomial().expect("single-matrix statistic").coeffs().iter().map(|a| a.eval_f64(c)).collect()
    };
    match s {
        TraceStatistic::MixedTrace { m, i } => Plan::Mixed {
            factors: m.iter().zip(i).map(|(&mr, &ir)| (ir, single(&TraceStatistic::PiTrace { n: mr, i: ir }))).collect(),
        },
        _ => Plan::Single { i: s.matrices()[0], coeffs: single(s) },
    }
}

/// Powers `X^1..X^h` and traces `Tr X^0..Tr X^d` of one matrix.
struct Powers {
    pows: Vec<CMat>,
    traces: Vec<Complex64>,
}

impl Powers {
    fn new(x: CMat, h: usize, d: usize) -> Powers {
        let n = x.dim();
        let mut pows = vec![x];
        while pows.len() < h.max(d.div_ceil(2)).max(1) {
            let next = pows.last().unwrap().mul(&pows[0]);
            pows.push(next);
        }
        let mut traces = vec![Complex64::new(n as f64, 0.0)];
        for u in 1..=d {
            let a = u.div_ceil(2);
            let b = u - a;
            let t = if b == 0 { pows[a - 1].trace() } else { pows[a - 1].trace_prod(&pows[b - 1]) };
            traces.push(t);
        }
        Powers { pows, traces }
    }

    fn poly(&self, coeffs: &[f64]) -> CMat {
        let n = self.pows[0].dim();
        let mut out = CMat::identity(n);
        out.re *= coeffs[0];
        for (u, &a) in coeffs.iter().enumerate().skip(1) {
            if a != 0.0 {
                out.add_scaled(a, &self.pows[u - 1]);
            }
        }
        out
    }
}

fn evaluate_draw(cfg: &EnsembleConfig, plans: &[Plan], need: &[(usize, usize)], draw: usize) -> Vec<Complex64> {
    let powers: Vec<Option<Powers>> = (0..cfg.p)
        .map(|i| {
            let (h, d) = need[i];
            if h == 0 && d == 0 {
                return None;
            }
            let x = sample_wishart(cfg.m, cfg.n, &mut stream_rng(cfg.seed, draw, cfg.p, i));
            Some(Powers::new(x, h, d))
        })
        .collect();
    plans
        .iter()
        .map(|p| match p {
            Plan::Single { i, coeffs } => {
                let t = &powers[*i].as_ref().expect("sampled").traces;
                coeffs.iter().zip(t).map(|(a, z)| z * a).sum()
            }
            Plan::Mixed { factors } => {
                let mats: Vec<CMat> =
                    factors.iter().map(|(i, co)| powers[*i].as_ref().expect("sampled").poly(co)).collect();
                let mut acc = mats[0].clone();
                for f in &mats[1..mats.len() - 1] {
                    acc = acc.mul(f);
                }
                acc.trace_prod(&mats[mats.len() - 1])
            }
        })
        .collect()
}

/// Per-draw values, `values[draw][stat]`, in draw order whatever the thread count.
fn simulate(cfg: &EnsembleConfig, stats: &[TraceStatistic]) -> Result<Vec<Vec<Complex64>>, RmtError> {
    cfg.validate()?;
    let mut need = vec![(0usize, 0usize); cfg.p];
    for s in stats {
        if s.degree() >= DEFAULT_TABLE_SIZE {
            return Err(RmtError::TooLarge(s.degree(), DEFAULT_TABLE_SIZE - 1));
        }
        for &i in &s.matrices() {
            if i >= cfg.p {
                return Err(RmtError::DimensionOverflow(i + 1, cfg.p));
            }
        }
        match s {
            TraceStatistic::MixedTrace { m, i } => {
                for (&mr, &ir) in m.iter().zip(i) {
                    need[ir].0 = need[ir].0.max(mr.max(1));
                }
            }
            _ => {
                let i = s.matrices()[0];
                need[i].1 = need[i].1.max(s.degree());
            }
        }
    }
    let plans: Vec<Plan> = stats.iter().map(|s| plan(s, cfg.c)).collect();
    let run = || -> Vec<Vec<Complex64>> {
        (0..cfg.samples).into_par_iter().map(|d| evaluate_draw(cfg, &plans, &need, d)).collect()
    };
    let threads = cfg.threads();
    if threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| RmtError::Config(format!("thread pool: {e}")))?;
        Ok(pool.install(run))
    } else {
        Ok(run())
    }
}

struct Moments {
    mean: Complex64,
    centred: Vec<Complex64>,
}

fn moments(values: &[Vec<Complex64>], k: usize) -> Moments {
    let n = values.len() as f64;
    let mean = values.iter().map(|v| v[k]).sum::<Complex64>() / n;
    Moments { mean, centred: values.iter().map(|v| v[k] - mean).collect() }
}

/// Sample mean and standard error of real numbers.
fn mean_se(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count() as f64;
    let m = xs.clone().sum::<f64>() / n;
    let var = xs.map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

/// Estimates means and all pairwise covariances of `stats` and compares them
/// to the exact limits. Covariance rows are restricted to `cov_stats` when given.
fn build_report(
    experiment: &str,
    cfg: &EnsembleConfig,
    stats: &[TraceStatistic],
    cov_stats: Option<&[bool]>,
) -> Result<MomentReport, RmtError> {
    let start = Instant::now();
    let values = simulate(cfg, stats)?;
    let mut predictor = Predictor::new(DEFAULT_CAP);
    let n = cfg.n;
    let c = cfg.c;
    let cp = cfg.c_prime();
    let samples = values.len() as f64;
    let mom: Vec<Moments> = (0..stats.len()).map(|k| moments(&values, k)).collect();

    let mut max_rel_imag = 0.0f64;
    let mut rows = Vec::new();
    for (k, s) in stats.iter().enumerate() {
        if !matches!(s, TraceStatistic::MixedTrace { .. }) {
            for v in &values {
                max_rel_imag = max_rel_imag.max(v[k].im.abs() / (1.0 + v[k].re.abs()));
            }
        }
        let (_, se_mean) = mean_se(values.iter().map(|v| v[k].re));
        let (lead, second) = predictor.mean(s)?;
        let predicted_mean = n as f64 * lead.eval_f64(c) + cp * second.eval_f64(c);
        let limit = second.eval_f64(c) + lead.eval_f64(c);
        let pass = (mom[k].mean.re - predicted_mean).abs() <= band(se_mean, limit, n);
        let m2 = mom[k].centred.iter().map(|z| z.re * z.re).sum::<f64>() / samples;
        let m3 = mom[k].centred.iter().map(|z| z.re * z.re * z.re).sum::<f64>() / samples;
        let skewness = if m2 > 0.0 { m3 / m2.powf(1.5) } else { 0.0 };
        rows.push(StatRow {
            key: s.key(),
            mean: mom[k].mean.re,
            mean_im: mom[k].mean.im,
            se_mean,
            predicted_mean,
            pass,
            skewness,
            skewness_se: (6.0 / samples).sqrt(),
        });
    }

    let mut cov = Vec::new();
    let keep = |k: usize| cov_stats.is_none_or(|m| m[k]);
    let correction = samples / (samples - 1.0);
    for a in 0..stats.len() {
        if !keep(a) {
            continue;
        }
        for b in a..stats.len() {
            if !keep(b) {
                continue;
            }
            let (ca, cb) = (&mom[a].centred, &mom[b].centred);
            let herm: Vec<Complex64> = ca.iter().zip(cb).map(|(x, y)| x * y.conj()).collect();
            let (est, se) = mean_se(herm.iter().map(|z| z.re));
            let est_im = herm.iter().map(|z| z.im).sum::<f64>() / samples;
            let bil = ca.iter().zip(cb).map(|(x, y)| (x * y).re).sum::<f64>() / samples;
            let poly = predictor.covariance(&stats[a], &stats[b])?;
            let predicted = poly.eval_f64(c);
            let estimate = est * correction;
            cov.push(CovRow {
                key_a: stats[a].key(),
                key_b: stats[b].key(),
                estimate,
                estimate_im: est_im * correction,
                se,
                bilinear: bil * correction,
                predicted,
                predicted_poly: poly.to_string(),
                pass: (estimate - predicted).abs() <= band(se, predicted, n),
            });
        }
    }

    Ok(MomentReport {
        experiment: experiment.to_string(),
        config: cfg.clone(),
        c_prime: cp,
        seed: cfg.seed,
        samples: cfg.samples,
        max_rel_imag,
        statistics: rows,
        covariance: cov,
        elapsed_s: start.elapsed().as_secs_f64(),
    })
}

/// Means of every statistic and every pairwise covariance.
pub fn evaluate_statistics(cfg: &EnsembleConfig, stats: &[TraceStatistic]) -> Result<MomentReport, RmtError> {
    build_report("statistics", cfg, stats, None)
}

/// `Tr Gamma_n(X_i)` for all `n <= max_degree` and all matrices, the given
/// mixed traces (default `S[1,1:1,2]` when `p >= 2`), all their pairwise
/// covariances, and the means of `Tr Pi_n(X_1)`.
pub fn experiment_diagonalization(
    cfg: &EnsembleConfig,
    max_degree: usize,
    mixed: Option<Vec<TraceStatistic>>,
) -> Result<MomentReport, RmtError> {
    if max_degree == 0 || max_degree >= DEFAULT_TABLE_SIZE {
        return Err(RmtError::TooLarge(max_degree, DEFAULT_TABLE_SIZE - 1));
    }
    let mut stats = Vec::new();
    for i in 0..cfg.p {
        for n in 1..=max_degree {
            stats.push(TraceStatistic::GammaTrace { n, i });
        }
    }
    let mixed = match mixed {
        Some(m) => m,
        None if cfg.p >= 2 => vec![TraceStatistic::mixed(vec![1, 1], vec![0, 1])?],
        None => Vec::new(),
    };
    stats.extend(mixed);
    let mut mask = vec![true; stats.len()];
    for n in 1..=max_degree {
        stats.push(TraceStatistic::PiTrace { n, i: 0 });
        mask.push(false);
    }
    build_report("diagonalization", cfg, &stats, Some(&mask))
}

/// `kappa_2(Tr X^m, Tr X^n)` against the annular count.
pub fn experiment_raw_covariance(cfg: &EnsembleConfig, m: usize, n: usize) -> Result<MomentReport, RmtError> {
    if m == 0 || n == 0 {
        return Err(RmtError::Statistic("raw covariance needs m, n >= 1".into()));
    }
    if m + n > DEFAULT_CAP {
        return Err(crate::diagrams::DiagramError::CapExceeded { name: "m + n", value: m + n, cap: DEFAULT_CAP }.into());
    }
    let mut stats = vec![TraceStatistic::PowerTrace { n: m, i: 0 }];
    if n != m {
        stats.push(TraceStatistic::PowerTrace { n, i: 0 });
    }
    let mut report = build_report("raw-covariance", cfg, &stats, None)?;
    let (ka, kb) = (stats[0].key(), stats[stats.len() - 1].key());
    report.covariance.retain(|r| r.key_a == ka && r.key_b == kb);
    Ok(report)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub samples: usize,
    pub estimate: f64,
    pub se: f64,
    pub predicted: f64,
    pub gap: f64,
    pub band: f64,
}

/// `kappa_2(Tr X^m, Tr X^n)` at each dimension, samples scaled with `N`.
pub fn experiment_convergence(
    c: f64,
    dims: &[usize],
    samples_per_n: usize,
    seed: u64,
    m: usize,
    n: usize,
) -> Result<Vec<ConvergenceRow>, RmtError> {
    dims.iter()
        .map(|&dim| {
            let cfg = EnsembleConfig::from_c(dim, c, 1, samples_per_n * dim, seed)?;
            let r = experiment_raw_covariance(&cfg, m, n)?;
            let row = &r.covariance[0];
            Ok(ConvergenceRow {
                n: dim,
                samples: cfg.samples,
                estimate: row.estimate,
                se: row.se,
                predicted: row.predicted,
                gap: (row.estimate - row.predicted).abs(),
                band: band(row.se, row.predicted, dim),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: usize, c: f64, p: usize, samples: usize) -> EnsembleConfig {
        EnsembleConfig::from_c(n, c, p, samples, 11).unwrap()
    }

    #[test]
    fn powers_traces_match_products() {
        let x = sample_wishart(6, 5, &mut stream_rng(3, 0, 1, 0));
        let p = Powers::new(x.clone(), 1, 5);
        let mut y = x.clone();
        for u in 2..=5 {
            y = y.mul(&x);
            assert!((y.trace() - p.traces[u]).norm() < 1e-9 * y.trace().norm());
        }
    }

    #[test]
    fn reproducible_and_thread_independent() {
        let mut cfg = small(12, 1.0, 2, 64);
        let a = experiment_diagonalization(&cfg, 2, None).unwrap();
        let b = experiment_diagonalization(&cfg, 2, None).unwrap();
        cfg.threads = 3;
        let c = experiment_diagonalization(&cfg, 2, None).unwrap();
        assert_eq!(a.untimed(), b.untimed());
        assert_eq!(a.statistics, c.statistics);
        assert_eq!(a.covariance, c.covariance);
    }

    #[test]
    fn trace_mean_is_m() {
        let cfg = small(20, 1.5, 1, 800);
        let r = evaluate_statistics(&cfg, &[TraceStatistic::PowerTrace { n: 1, i: 0 }]).unwrap();
        let row = &r.statistics[0];
        assert_eq!(row.predicted_mean, 30.0);
        assert!((row.mean - 30.0).abs() < 5.0 * row.se_mean);
        assert!(r.max_rel_imag < 1e-10);
    }

    #[test]
    fn small_diagonalization_passes() {
        let cfg = small(40, 1.0, 2, 1500);
        let r = experiment_diagonalization(&cfg, 2, None).unwrap();
        assert!(r.all_pass(), "{}", r.to_text());
        // Hermitian and bilinear agree on real statistics
        let row = r.cov("gamma[2](X1)", "gamma[2](X1)").unwrap();
        assert!((row.estimate - row.bilinear).abs() < 1e-9 * row.estimate.abs());
        assert!(r.to_csv().unwrap().starts_with("key_a,key_b,estimate"));
        let back: MomentReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back.covariance.len(), r.covariance.len());
    }

    #[test]
    fn gamma_mean_sign_with_offset() {
        // M = 11 against cN = 10.5, so c' = 1/2
        let cfg = small(10, 1.05, 1, 4000);
        assert!((cfg.c_prime() - 0.5).abs() < 1e-12);
        let stats: Vec<TraceStatistic> = (1..=3).map(|n| TraceStatistic::GammaTrace { n, i: 0 }).collect();
        let r = evaluate_statistics(&cfg, &stats).unwrap();
        for (row, want) in r.statistics.iter().zip([0.5, -0.5, 0.5]) {
            assert_eq!(row.predicted_mean, want);
            assert!((row.mean - want).abs() < 4.0 * row.se_mean + 0.15, "{} {}", row.key, row.mean);
        }
    }

    #[test]
    fn rejects_bad_indices() {
        let cfg = small(4, 1.0, 1, 4);
        let s = TraceStatistic::GammaTrace { n: 1, i: 1 };
        assert!(matches!(evaluate_statistics(&cfg, &[s]), Err(RmtError::DimensionOverflow(2, 1))));
        let s = TraceStatistic::GammaTrace { n: 40, i: 0 };
        assert!(matches!(evaluate_statistics(&cfg, &[s]), Err(RmtError::TooLarge(40, _))));
    }
}
