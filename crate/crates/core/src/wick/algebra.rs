//! Finite-dimensional *-algebras with a tracial state, by structure constants.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

use super::WickError;

/// Coefficients in the algebra basis.
pub type Elem = Vec<Complex64>;

const TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct TracialAlgebra {
    pub name: String,
    pub dim: usize,
    /// `mult[a][b]` = `e_a e_b`.
    pub mult: Vec<Vec<Elem>>,
    /// `star[a]` = `e_a^*`; extended conjugate-linearly.
    pub star: Vec<Elem>,
    /// `psi[a]` = `psi(e_a)`.
    pub psi: Vec<Complex64>,
    pub unit: Elem,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn basis(dim: usize, a: usize) -> Elem {
    let mut e = vec![Complex64::new(0.0, 0.0); dim];
    e[a] = c(1.0);
    e
}

fn close(a: &[Complex64], b: &[Complex64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < TOL)
}

impl TracialAlgebra {
    /// Checks unit, involution, tracial property and positivity on a sample.
    pub fn new(
        name: impl Into<String>,
        mult: Vec<Vec<Elem>>,
        star: Vec<Elem>,
        psi: Vec<Complex64>,
        unit: Elem,
    ) -> Result<Self, WickError> {
        let dim = psi.len();
        let alg = TracialAlgebra { name: name.into(), dim, mult, star, psi, unit };
        let bad = |what: &str| Err(WickError::Algebra(format!("{}: {what}", alg.name)));
        if alg.mult.len() != dim || alg.mult.iter().any(|r| r.len() != dim || r.iter().any(|e| e.len() != dim)) {
            return bad("structure constants have the wrong shape");
        }
        if alg.star.len() != dim || alg.unit.len() != dim {
            return bad("star table or unit has the wrong shape");
        }
        if (alg.psi(&alg.unit) - c(1.0)).norm() > TOL {
            return bad("psi(1) != 1");
        }
        for a in 0..dim {
            let ea = basis(dim, a);
            if !close(&alg.mul(&alg.unit, &ea), &ea) || !close(&alg.mul(&ea, &alg.unit), &ea) {
                return bad("unit is not a unit");
            }
            if !close(&alg.star(&alg.star(&ea)), &ea) {
                return bad("star is not an involution");
            }
            if (alg.psi(&alg.star(&ea)) - alg.psi(&ea).conj()).norm() > TOL {
                return bad("psi is not self-adjoint");
            }
            for b in 0..dim {
                let eb = basis(dim, b);
                if (alg.psi(&alg.mul(&ea, &eb)) - alg.psi(&alg.mul(&eb, &ea))).norm() > TOL {
                    return bad("psi is not tracial");
                }
                let lhs = alg.star(&alg.mul(&ea, &eb));
                let rhs = alg.mul(&alg.star(&eb), &alg.star(&ea));
                if !close(&lhs, &rhs) {
                    return bad("star is not anti-multiplicative");
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..32 {
            let d = alg.random(&mut rng);
            let v = alg.psi(&alg.mul(&alg.star(&d), &d));
            if v.re < -TOL || v.im.abs() > TOL * (1.0 + v.re) {
                return bad("psi(d* d) is not non-negative");
            }
        }
        Ok(alg)
    }

    /// The complex numbers.
    pub fn scalars() -> Self {
        TracialAlgebra::new("C", vec![vec![vec![c(1.0)]]], vec![vec![c(1.0)]], vec![c(1.0)], vec![c(1.0)])
            .expect("scalars are tracial")
    }

    /// `M_n` with the normalized trace, basis `E_ij` at index `n i + j`.
    pub fn matrices(n: usize) -> Self {
        let dim = n * n;
        let mut mult = vec![vec![vec![c(0.0); dim]; dim]; dim];
        let mut star = Vec::with_capacity(dim);
        let mut psi = vec![c(0.0); dim];
        let mut unit = vec![c(0.0); dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    mult[n * i + j][n * j + l][n * i + l] = c(1.0);
                }
                star.push(basis(dim, n * j + i));
            }
            psi[n * i + i] = c(1.0 / n as f64);
            unit[n * i + i] = c(1.0);
        }
        TracialAlgebra::new(format!("M{n}"), mult, star, psi, unit).expect("matrix algebra is tracial")
    }

    /// `C^k` with pointwise product and the state `sum w_i x_i`; faithful when
    /// every weight is positive.
    pub fn diagonal(weights: &[f64]) -> Result<Self, WickError> {
        let dim = weights.len();
        let mut mult = vec![vec![vec![c(0.0); dim]; dim]; dim];
        for (a, row) in mult.iter_mut().enumerate() {
            row[a][a] = c(1.0);
        }
        let star = (0..dim).map(|a| basis(dim, a)).collect();
        TracialAlgebra::new(format!("C^{dim}"), mult, star, weights.iter().map(|&w| c(w)).collect(), vec![c(1.0); dim])
    }

    /// The three instances the checks run over.
    pub fn standard() -> Vec<TracialAlgebra> {
        vec![
            TracialAlgebra::scalars(),
            TracialAlgebra::matrices(2),
            TracialAlgebra::diagonal(&[0.5, 1.0 / 3.0, 1.0 / 6.0]).expect("weights sum to one"),
        ]
    }

    pub fn mul(&self, a: &[Complex64], b: &[Complex64]) -> Elem {
        let mut out = vec![c(0.0); self.dim];
        for (i, x) in a.iter().enumerate() {
            if *x == c(0.0) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let xy = x * y;
                if xy == c(0.0) {
                    continue;
                }
                for (o, m) in out.iter_mut().zip(&self.mult[i][j]) {
                    *o += xy * m;
                }
            }
        }
        out
    }

    pub fn star(&self, a: &[Complex64]) -> Elem {
        let mut out = vec![c(0.0); self.dim];
        for (x, s) in a.iter().zip(&self.star) {
            for (o, y) in out.iter_mut().zip(s) {
                *o += x.conj() * y;
            }
        }
        out
    }

    pub fn psi(&self, a: &[Complex64]) -> Complex64 {
        a.iter().zip(&self.psi).map(|(x, p)| x * p).sum()
    }

    /// `psi` of a product, left to right.
    pub fn psi_product(&self, xs: &[&Elem]) -> Complex64 {
        self.psi(&self.product(xs))
    }

    pub fn product(&self, xs: &[&Elem]) -> Elem {
        xs.iter().fold(self.unit.clone(), |acc, x| self.mul(&acc, x))
    }

    /// `<a, b> = psi(b^* a)`.
    pub fn inner(&self, a: &[Complex64], b: &[Complex64]) -> Complex64 {
        self.psi(&self.mul(&self.star(b), a))
    }

    /// `gram[a][b] = <e_a, e_b>`.
    pub fn gram(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim).map(|a| (0..self.dim).map(|b| self.inner(&basis(self.dim, a), &basis(self.dim, b))).collect()).collect()
    }

    /// Matrix of left multiplication: `(d e_a)[b]` at `[b][a]`.
    pub fn left_matrix(&self, d: &[Complex64]) -> Vec<Vec<Complex64>> {
        let cols: Vec<Elem> = (0..self.dim).map(|a| self.mul(d, &basis(self.dim, a))).collect();
        (0..self.dim).map(|b| (0..self.dim).map(|a| cols[a][b]).collect()).collect()
    }

    /// Standard complex Gaussian coefficients.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Elem {
        (0..self.dim).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect()
    }
}
