//! Ensemble parameters, complex matrices as real pairs, and Wishart sampling.

use ndarray::{Array2, Zip};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::RmtError;

/// `N x N` Wishart matrices `X = G* G` with `G` of size `M x N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    /// Matrix dimension.
    pub n: usize,
    /// Rows of `G`.
    pub m: usize,
    /// Number of independent matrices.
    pub p: usize,
    pub samples: usize,
    pub seed: u64,
    /// The limiting ratio the polynomials are built for. `m = round(c n)`.
    pub c: f64,
    /// Worker threads; 0 means the `ANNULUS_THREADS` variable or rayon's default.
    #[serde(default)]
    pub threads: usize,
}

impl EnsembleConfig {
    /// `M = round(c N)`.
    pub fn from_c(n: usize, c: f64, p: usize, samples: usize, seed: u64) -> Result<Self, RmtError> {
        let m = (c * n as f64).round() as usize;
        let cfg = EnsembleConfig { n, m, p, samples, seed, c, threads: 0 };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Explicit `M`; then `c = M / N` and `c' = 0`.
    pub fn from_m(n: usize, m: usize, p: usize, samples: usize, seed: u64) -> Result<Self, RmtError> {
        let cfg = EnsembleConfig { n, m, p, samples, seed, c: m as f64 / n as f64, threads: 0 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), RmtError> {
        if self.n == 0 || self.m == 0 || self.p == 0 || self.samples < 2 {
            return Err(RmtError::Config(format!(
                "need N, M, p >= 1 and samples >= 2, got N={} M={} p={} samples={}",
                self.n, self.m, self.p, self.samples
            )));
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(RmtError::Config(format!("c must be positive, got {}", self.c)));
        }
        if self.p > 255 {
            return Err(RmtError::Config("at most 255 matrices".into()));
        }
        Ok(())
    }

    /// `c' = M - c N`.
    pub fn c_prime(&self) -> f64 {
        self.m as f64 - self.c * self.n as f64
    }

    pub fn threads(&self) -> usize {
        if self.threads > 0 {
            return self.threads;
        }
        std::env::var("ANNULUS_THREADS").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
    }
}

/// The generator for matrix `i` of draw `draw`: one ChaCha8 stream per pair,
/// stream id `draw * p + i`, all keyed by the seed.
pub fn stream_rng(seed: u64, draw: usize, p: usize, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((draw * p + i) as u64);
    rng
}

/// A complex matrix stored as real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub re: Array2<f64>,
    pub im: Array2<f64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat { re: Array2::zeros((n, n)), im: Array2::zeros((n, n)) }
    }

    pub fn identity(n: usize) -> Self {
        CMat { re: Array2::eye(n), im: Array2::zeros((n, n)) }
    }

    pub fn dim(&self) -> usize {
        self.re.nrows()
    }

    /// Three real products: `AC - BD` and `(A+B)(C+D) - AC - BD`.
    pub fn mul(&self, o: &CMat) -> CMat {
        let ac = self.re.dot(&o.re);
        let bd = self.im.dot(&o.im);
        let s = (&self.re + &self.im).dot(&(&o.re + &o.im));
        CMat { re: &ac - &bd, im: s - ac - bd }
    }

    /// `sum_ij A_ij B_ji`.
    pub fn trace_prod(&self, o: &CMat) -> Complex64 {
        let mut re = 0.0;
        let mut im = 0.0;
        Zip::from(&self.re).and(&self.im).and(o.re.t()).and(o.im.t()).for_each(|&a, &b, &c, &d| {
            re += a * c - b * d;
            im += a * d + b * c;
        });
        Complex64::new(re, im)
    }

    pub fn trace(&self) -> Complex64 {
        Complex64::new(self.re.diag().sum(), self.im.diag().sum())
    }

    /// `self += a * o` for a real scalar.
    pub fn add_scaled(&mut self, a: f64, o: &CMat) {
        self.re.scaled_add(a, &o.re);
        self.im.scaled_add(a, &o.im);
    }

    /// Largest entry of `X - X*`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        Zip::from(&self.re).and(self.re.t()).and(&self.im).and(self.im.t()).for_each(|&a, &at, &b, &bt| {
            worst = worst.max((a - at).abs()).max((b + bt).abs());
        });
        worst
    }
}

/// `G* G` where `G` is `M x N` with independent complex Gaussian entries,
/// real and imaginary parts each of variance `1/(2N)`.
pub fn sample_wishart<R: Rng>(m: usize, n: usize, rng: &mut R) -> CMat {
    let s = (0.5 / n as f64).sqrt();
    // rows 0..m hold Re G, rows m..2m hold Im G
    let g: Array2<f64> = Array2::from_shape_simple_fn((2 * m, n), || s * rng.sample::<f64, _>(StandardNormal));
    let re = g.t().dot(&g);
    let a = g.slice(ndarray::s![..m, ..]);
    let b = g.slice(ndarray::s![m.., ..]);
    let ab = a.t().dot(&b);
    let im = &ab - &ab.t();
    CMat { re, im }
}
