//! Moment reports: sample estimates next to their predicted limits.

use serde::{Deserialize, Serialize};

use super::EnsembleConfig;

/// Acceptance band `3 SE + (10 + 10 |limit|) / N`.
pub fn band(se: f64, limit: f64, n: usize) -> f64 {
    3.0 * se + (10.0 + 10.0 * limit.abs()) / n as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatRow {
    pub key: String,
    pub mean: f64,
    pub mean_im: f64,
    pub se_mean: f64,
    pub predicted_mean: f64,
    pub pass: bool,
    /// Sample skewness and its large-sample standard error `sqrt(6/n)`.
    pub skewness: f64,
    pub skewness_se: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovRow {
    pub key_a: String,
    pub key_b: String,
    /// Real part of `E[A conj B] - E[A] conj E[B]`.
    pub estimate: f64,
    pub estimate_im: f64,
    pub se: f64,
    /// Real part of the bilinear `E[AB] - E[A]E[B]`.
    pub bilinear: f64,
    pub predicted: f64,
    /// The limit as a polynomial in `c`.
    pub predicted_poly: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub experiment: String,
    pub config: EnsembleConfig,
    pub c_prime: f64,
    pub seed: u64,
    pub samples: usize,
    /// Largest `|Im| / (1 + |Re|)` over draws of the single-matrix statistics,
    /// which are real up to round-off.
    pub max_rel_imag: f64,
    pub statistics: Vec<StatRow>,
    pub covariance: Vec<CovRow>,
    pub elapsed_s: f64,
}

impl MomentReport {
    pub fn all_pass(&self) -> bool {
        self.statistics.iter().all(|r| r.pass) && self.covariance.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self.statistics.iter().filter(|r| !r.pass).map(|r| format!("mean {}", r.key)).collect();
        out.extend(self.covariance.iter().filter(|r| !r.pass).map(|r| format!("cov {} {}", r.key_a, r.key_b)));
        out
    }

    pub fn stat(&self, key: &str) -> Option<&StatRow> {
        self.statistics.iter().find(|r| r.key == key)
    }

    /// Either order of the pair.
    pub fn cov(&self, a: &str, b: &str) -> Option<&CovRow> {
        self.covariance.iter().find(|r| (r.key_a == a && r.key_b == b) || (r.key_a == b && r.key_b == a))
    }

    /// Same report with the wall clock zeroed, for reproducibility checks.
    pub fn untimed(&self) -> MomentReport {
        MomentReport { elapsed_s: 0.0, ..self.clone() }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    /// The covariance table.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.covariance {
            w.serialize(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Numbers print in shortest round-trip form, as in the JSON.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}: N={} M={} p={} samples={} seed={} c={} c'={} ({:.1}s)\n",
            self.experiment,
            self.config.n,
            self.config.m,
            self.config.p,
            self.samples,
            self.seed,
            self.config.c,
            self.c_prime,
            self.elapsed_s
        );
        s += &format!("{:<24} {:>22} {:>22} {:>22}  pass\n", "mean", "estimate", "se", "predicted");
        for r in &self.statistics {
            s += &format!("{:<24} {:>22} {:>22} {:>22}  {}\n", r.key, r.mean, r.se_mean, r.predicted_mean, r.pass);
        }
        s += &format!("{:<40} {:>22} {:>22} {:>22}  pass\n", "covariance", "estimate", "se", "predicted");
        for r in &self.covariance {
            let k = format!("{} , {}", r.key_a, r.key_b);
            s += &format!("{:<40} {:>22} {:>22} {:>22}  {}\n", k, r.estimate, r.se, r.predicted, r.pass);
        }
        s += &format!("max relative imaginary part {:e}\n", self.max_rel_imag);
        s
    }
}
