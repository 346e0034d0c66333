//! Cutting an annular permutation into two circular half-permutations, and
//! gluing such a pair back together.

use super::{AnnularPerm, CircularHalfPerm, DiagramError, Perm};

fn induced_perm(p: &Perm, lo: usize, hi: usize) -> Perm {
    let ind = p.induced(|x| x >= lo && x < hi);
    let map: Vec<usize> = (lo..hi).map(|x| ind[x].expect("kept point") - lo).collect();
    Perm::from_images(map).expect("induced permutation")
}

fn half(a: &AnnularPerm, outer: bool) -> CircularHalfPerm {
    let (lo, hi) = if outer { (0, a.m) } else { (a.m, a.m + a.n) };
    let inside = |x: usize| x >= lo && x < hi;
    let sub = induced_perm(&a.perm, lo, hi);
    let comp = a.complement();
    // points of this circle lying on complement cycles that cross over
    let mut bar = Vec::new();
    for cyc in comp.cycles() {
        let crosses = cyc.iter().any(|&x| x < a.m) && cyc.iter().any(|&x| x >= a.m);
        if crosses {
            bar.extend(cyc.into_iter().filter(|&x| inside(x)));
        }
    }
    bar.sort_unstable();
    let members: Vec<usize> = a
        .through_blocks()
        .iter()
        .map(|b| *b.iter().find(|&&x| inside(x)).expect("through block meets both circles") - lo)
        .collect();
    CircularHalfPerm::with_open_blocks(sub, bar[0] - lo, &members).expect("cut yields a half-permutation")
}

/// `(outer half, inner half)`. The inner half is relabelled to `0..n`.
pub fn cut(a: &AnnularPerm) -> (CircularHalfPerm, CircularHalfPerm) {
    (half(a, true), half(a, false))
}

/// The `s`-th gluing (`1 <= s <= k`) of two half-permutations with `k` open
/// blocks each: `(x_1, y_{k-1+s}) .. (x_k, y_s) sigma tau`, indices mod `k`.
pub fn reassemble(h1: &CircularHalfPerm, h2: &CircularHalfPerm, s: usize) -> Result<AnnularPerm, DiagramError> {
    let k = h1.k();
    if k != h2.k() {
        return Err(DiagramError::Mismatch(k, h2.k()));
    }
    if k == 0 || s == 0 || s > k {
        return Err(DiagramError::Invalid(format!("gluing index {s} out of range 1..={k}")));
    }
    let (m, n) = (h1.n(), h2.n());
    let mut map: Vec<usize> = h1.perm().images();
    map.extend(h2.perm().images().into_iter().map(|y| y + m));
    let x = h1.open_initials();
    let y: Vec<usize> = h2.open_initials().into_iter().map(|v| v + m).collect();
    let mut t: Vec<usize> = (0..m + n).collect();
    for i in 1..=k {
        let a = x[i - 1];
        let b = y[(k + s - i - 1) % k];
        t[a] = b;
        t[b] = a;
    }
    let glued: Vec<usize> = map.iter().map(|&z| t[z]).collect();
    AnnularPerm::new(m, n, Perm::from_images(glued)?)
}
