//! The full Fock space truncated at depth `L`, in the tensor-word basis.

use num_complex::Complex64;

use super::algebra::{Elem, TracialAlgebra};

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Coefficients by degree; degree `r` holds `dim^r` entries indexed by words
/// with the first letter most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    pub dim: usize,
    pub depth: usize,
    pub blocks: Vec<Vec<Complex64>>,
    /// Set when a creation out of the top degree was dropped.
    pub truncated: bool,
}

impl FockVector {
    pub fn zero(dim: usize, depth: usize) -> Self {
        let blocks = (0..=depth).map(|r| vec![zero(); dim.pow(r as u32)]).collect();
        FockVector { dim, depth, blocks, truncated: false }
    }

    pub fn vacuum(dim: usize, depth: usize) -> Self {
        let mut v = Self::zero(dim, depth);
        v.blocks[0][0] = Complex64::new(1.0, 0.0);
        v
    }

    /// `d_1 (x) .. (x) d_n`.
    pub fn word(dim: usize, depth: usize, letters: &[Elem]) -> Self {
        assert!(letters.len() <= depth, "word longer than the depth");
        let mut v = Self::zero(dim, depth);
        let mut t = vec![Complex64::new(1.0, 0.0)];
        for d in letters {
            t = t.iter().flat_map(|x| d.iter().map(move |y| x * y)).collect();
        }
        v.blocks[letters.len()] = t;
        v
    }

    /// Basis word `idx` of degree `r`.
    pub fn basis(dim: usize, depth: usize, r: usize, idx: usize) -> Self {
        let mut v = Self::zero(dim, depth);
        v.blocks[r][idx] = Complex64::new(1.0, 0.0);
        v
    }

    /// All basis words of degree at most `max_r`, by degree then index.
    pub fn basis_up_to(dim: usize, depth: usize, max_r: usize) -> Vec<FockVector> {
        (0..=max_r.min(depth)).flat_map(|r| (0..dim.pow(r as u32)).map(move |i| Self::basis(dim, depth, r, i))).collect()
    }

    pub fn add_scaled(&mut self, a: Complex64, o: &FockVector) {
        for (x, y) in self.blocks.iter_mut().zip(&o.blocks) {
            for (p, q) in x.iter_mut().zip(y) {
                *p += a * q;
            }
        }
        self.truncated |= o.truncated;
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, o: &FockVector) -> f64 {
        self.blocks.iter().flatten().zip(o.blocks.iter().flatten()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Highest degree with a nonzero coefficient.
    pub fn top_degree(&self) -> Option<usize> {
        (0..=self.depth).rev().find(|&r| self.blocks[r].iter().any(|z| z.norm() > 0.0))
    }
}

/// Creation, annihilation, preservation and the Gram form over one algebra.
pub struct Fock<'a> {
    pub alg: &'a TracialAlgebra,
    pub depth: usize,
    gram: Vec<Vec<Complex64>>,
}

impl<'a> Fock<'a> {
    pub fn new(alg: &'a TracialAlgebra, depth: usize) -> Self {
        Fock { alg, depth, gram: alg.gram() }
    }

    pub fn vacuum(&self) -> FockVector {
        FockVector::vacuum(self.alg.dim, self.depth)
    }

    pub fn word(&self, letters: &[Elem]) -> FockVector {
        FockVector::word(self.alg.dim, self.depth, letters)
    }

    /// `l(d)`: `x -> d (x) x`.
    pub fn create(&self, d: &Elem, v: &FockVector, out: &mut FockVector) {
        let dim = self.alg.dim;
        for r in 0..=self.depth {
            let src = &v.blocks[r];
            if r == self.depth {
                if src.iter().any(|z| z.norm() > 0.0) && d.iter().any(|z| z.norm() > 0.0) {
                    out.truncated = true;
                }
                continue;
            }
            let len = src.len();
            let dst = &mut out.blocks[r + 1];
            for (a, da) in d.iter().enumerate().take(dim) {
                if da.norm() == 0.0 {
                    continue;
                }
                for (i, z) in src.iter().enumerate() {
                    dst[a * len + i] += da * z;
                }
            }
        }
        out.truncated |= v.truncated;
    }

    /// `l^*(f)`: `x_1 (x) rest -> <x_1, f> rest`, zero on the vacuum.
    pub fn annihilate(&self, f: &Elem, v: &FockVector, out: &mut FockVector) {
        let dim = self.alg.dim;
        let coef: Vec<Complex64> = (0..dim).map(|a| {
            let mut e = vec![zero(); dim];
            e[a] = Complex64::new(1.0, 0.0);
            self.alg.inner(&e, f)
        }).collect();
        for r in 1..=self.depth {
            let src = &v.blocks[r];
            let len = src.len() / dim;
            let dst = &mut out.blocks[r - 1];
            for (a, ca) in coef.iter().enumerate() {
                if ca.norm() == 0.0 {
                    continue;
                }
                for i in 0..len {
                    dst[i] += ca * src[a * len + i];
                }
            }
        }
        out.truncated |= v.truncated;
    }

    /// `Lambda(d)`: `x_1 (x) rest -> (d x_1) (x) rest`, zero on the vacuum.
    pub fn preserve(&self, d: &Elem, v: &FockVector, out: &mut FockVector) {
        let dim = self.alg.dim;
        let m = self.alg.left_matrix(d);
        for r in 1..=self.depth {
            let src = &v.blocks[r];
            let len = src.len() / dim;
            let dst = &mut out.blocks[r];
            for (b, row) in m.iter().enumerate() {
                for (a, mba) in row.iter().enumerate() {
                    if mba.norm() == 0.0 {
                        continue;
                    }
                    for i in 0..len {
                        dst[b * len + i] += mba * src[a * len + i];
                    }
                }
            }
        }
        out.truncated |= v.truncated;
    }

    /// `p(d) = l(d) + l^*(d^*) + Lambda(d) + psi(d)`.
    pub fn p(&self, d: &Elem, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero(self.alg.dim, self.depth);
        self.create(d, v, &mut out);
        self.annihilate(&self.alg.star(d), v, &mut out);
        self.preserve(d, v, &mut out);
        out.add_scaled(self.alg.psi(d), v);
        out
    }

    /// `G(u)_w' = sum_w u_w <e_w, e_w'>`, so that `<u, e_w'> = G(u)_w'`.
    pub fn gram_apply(&self, u: &FockVector) -> FockVector {
        let dim = self.alg.dim;
        let mut out = u.clone();
        for (r, block) in out.blocks.iter_mut().enumerate() {
            for axis in 0..r {
                let stride = dim.pow((r - 1 - axis) as u32);
                let mut next = vec![zero(); block.len()];
                for (idx, z) in block.iter().enumerate() {
                    if z.norm() == 0.0 {
                        continue;
                    }
                    let a = (idx / stride) % dim;
                    let base = idx - a * stride;
                    for b in 0..dim {
                        next[base + b * stride] += z * self.gram[a][b];
                    }
                }
                *block = next;
            }
        }
        out
    }

    /// `<x, y>`, linear in `x`.
    pub fn inner(&self, x: &FockVector, y: &FockVector) -> Complex64 {
        let g = self.gram_apply(x);
        g.blocks.iter().flatten().zip(y.blocks.iter().flatten()).map(|(a, b)| a * b.conj()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn p_on_vacuum() {
        let alg = TracialAlgebra::matrices(2);
        let f = Fock::new(&alg, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let d = alg.random(&mut rng);
        let v = f.p(&d, &f.vacuum());
        let mut want = f.word(std::slice::from_ref(&d));
        want.blocks[0][0] = alg.psi(&d);
        assert!(v.max_diff(&want) < 1e-14);
    }

    #[test]
    fn creation_and_annihilation_are_adjoint() {
        let alg = TracialAlgebra::matrices(2);
        let f = Fock::new(&alg, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = alg.random(&mut rng);
        let x = f.word(&[alg.random(&mut rng), alg.random(&mut rng)]);
        let y = f.word(&[alg.random(&mut rng), alg.random(&mut rng), alg.random(&mut rng)]);
        let mut lx = FockVector::zero(alg.dim, 3);
        f.create(&d, &x, &mut lx);
        let mut ly = FockVector::zero(alg.dim, 3);
        f.annihilate(&d, &y, &mut ly);
        let a = f.inner(&lx, &y);
        let b = f.inner(&x, &ly);
        assert!((a - b).norm() < 1e-10 * a.norm().max(1.0), "{a} {b}");
    }

    #[test]
    fn inner_on_words_factorizes() {
        let alg = TracialAlgebra::diagonal(&[0.25, 0.75]).unwrap();
        let f = Fock::new(&alg, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (a, b, c, d) = (alg.random(&mut rng), alg.random(&mut rng), alg.random(&mut rng), alg.random(&mut rng));
        let got = f.inner(&f.word(&[a.clone(), b.clone()]), &f.word(&[c.clone(), d.clone()]));
        let want = alg.inner(&a, &c) * alg.inner(&b, &d);
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn top_creation_is_flagged() {
        let alg = TracialAlgebra::scalars();
        let f = Fock::new(&alg, 1);
        let one = vec![Complex64::new(1.0, 0.0)];
        let v = f.p(&one, &f.p(&one, &f.vacuum()));
        assert!(v.truncated);
    }
}
