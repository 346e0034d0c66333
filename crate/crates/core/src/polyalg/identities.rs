//! Exact checks of the recursions, series identities and moment relations.

use super::{
    series_g, series_g0, series_p, series_p0, transition_matrix, Family, PolyC, PolyXC, SeriesZ,
    TransitionMatrix,
};
use crate::check::CheckReport;

fn one_plus_c() -> PolyC {
    PolyC::from_ints(&[1, 1])
}

fn at(m: &TransitionMatrix, n: isize, k: isize) -> PolyC {
    if n < 0 || k < 0 || k > n || n as usize >= m.size() {
        return PolyC::zero();
    }
    m.get(n as usize, k as usize)
}

/// Three-term recursions of the forward matrix `g'` (rows below `size`).
pub fn check_geq12(size: usize) -> CheckReport {
    let mut r = CheckReport::new("recursions");
    let g = transition_matrix(Family::GammaTilde, size);
    let c = PolyC::c();
    for n in 0..size as isize - 1 {
        let (name, b) = if n == 1 { ("geq2", PolyC::from_ints(&[0, 2])) } else { ("geq1", c.clone()) };
        for k in 0..=n + 1 {
            let lhs = at(&g, n, k - 1);
            let rhs = &(&at(&g, n + 1, k) + &(&one_plus_c() * &at(&g, n, k))) + &(&b * &at(&g, n - 1, k));
            r.eq(name, format!("n={n} k={k}"), &lhs, &rhs);
        }
    }
    r
}

/// Column recursions of an inverse matrix: `x_{n+1,k} = x_{n,k-1} + (1+c) x_{n,k} + c x_{n,k+1}`
/// for `k > 0`, and `x_{n+1,0} = a x_{n,0} + b x_{n,1}`.
fn column_recursion(r: &mut CheckReport, inv: &TransitionMatrix, names: (&str, &str), a0: &PolyC, b0: &PolyC) {
    let c = PolyC::c();
    for n in 0..inv.size() as isize - 1 {
        for k in 0..=n + 1 {
            let lhs = at(inv, n + 1, k);
            if k > 0 {
                let rhs = &(&at(inv, n, k - 1) + &(&one_plus_c() * &at(inv, n, k))) + &(&c * &at(inv, n, k + 1));
                r.eq(names.0, format!("n={n} k={k}"), &lhs, &rhs);
            } else {
                let rhs = &(a0 * &at(inv, n, 0)) + &(b0 * &at(inv, n, 1));
                r.eq(names.1, format!("n={n} k=0"), &lhs, &rhs);
            }
        }
    }
}

pub fn check_geq34(size: usize) -> CheckReport {
    let mut r = CheckReport::new("recursions");
    let inv = transition_matrix(Family::GammaTilde, size).invert_unitriangular().unwrap();
    column_recursion(&mut r, &inv, ("geq3", "geq4"), &one_plus_c(), &PolyC::from_ints(&[0, 2]));
    r
}

pub fn check_prec12(size: usize) -> CheckReport {
    let mut r = CheckReport::new("recursions");
    let inv = transition_matrix(Family::Pi, size).invert_unitriangular().unwrap();
    column_recursion(&mut r, &inv, ("Prec1", "Prec2"), &PolyC::c(), &PolyC::c());
    r
}

/// Series forms: `c z F_{k+1} = (1 - (1+c) z) F_k - z F_{k-1}` for `F = P, G`
/// and `k >= 1`, plus `2 c z G_1 = (1 - (1+c) z) G_0 - 1`.
pub fn check_series_recursions(order: usize) -> CheckReport {
    let mut r = CheckReport::new("series");
    let z = SeriesZ::z(order);
    let shift = &SeriesZ::one(order) - &z.scale(&one_plus_c());
    let c = PolyC::c();
    for (name, f) in [("Prec3", series_p as fn(usize, usize) -> SeriesZ), ("Grec1", series_g)] {
        let fam: Vec<SeriesZ> = (0..order).map(|k| f(k, order)).collect();
        for k in 1..order - 1 {
            let lhs = (&z * &fam[k + 1]).scale(&c);
            let rhs = &(&shift * &fam[k]) - &(&z * &fam[k - 1]);
            r.record(name, format!("k={k} order={order}"), lhs == rhs);
        }
    }
    let g0 = series_g0(order);
    let g1 = series_g(1, order);
    let lhs = (&z * &g1).scale(&PolyC::from_ints(&[0, 2]));
    let rhs = &(&shift * &g0) - &SeriesZ::one(order);
    r.record("Grec2", format!("order={order}"), lhs == rhs);
    r
}

/// Product formulas for `P_k`, `G_n` against the inverse matrices, coefficient by coefficient.
pub fn check_series_vs_matrices(order: usize) -> CheckReport {
    let mut r = CheckReport::new("series");
    let size = order + 1;
    let pinv = transition_matrix(Family::Pi, size).invert_unitriangular().unwrap();
    let ginv = transition_matrix(Family::GammaTilde, size).invert_unitriangular().unwrap();
    let p0 = series_p0(order);
    let q = &p0 - &SeriesZ::one(order);
    let fe_lhs = &q - &(&SeriesZ::z(order) * &q).scale(&one_plus_c());
    let fe_rhs = &(&q * &q) + &SeriesZ::constant(order, PolyC::c());
    r.record("P0-functional-equation", format!("order={order}"), fe_lhs == fe_rhs.shift_z());
    for k in 0..size {
        let pk = series_p(k, order);
        for n in 0..size {
            r.eq("Pk-product-formula", format!("k={k} n={n}"), pk.coeff(n), &at(&pinv, n as isize, k as isize));
        }
        let gk = series_g(k, order);
        for n in 0..size {
            r.eq("power1", format!("k={k} n={n}"), gk.coeff(n), &at(&ginv, n as isize, k as isize));
        }
    }
    r
}

/// `Gt_n + Gt_{n-1} = Pi_n - c Pi_{n-2}` for `n >= 2`; the shifted version with
/// `Gamma` only from `n >= 3` because `d_2 + d_1 = c`.
pub fn check_firstsecond(size: usize) -> CheckReport {
    let mut r = CheckReport::new("recursions");
    let gt = Family::GammaTilde.sequence(size);
    let g = Family::Gamma.sequence(size);
    let p = Family::Pi.sequence(size);
    let c = PolyC::c();
    for n in 2..size {
        let rhs = &p[n] - &p[n - 2].scale(&c);
        r.eq("gamma_pi", format!("n={n}"), &(&gt[n] + &gt[n - 1]), &rhs);
        if n >= 3 {
            r.eq("firstsecond", format!("n={n}"), &(&g[n] + &g[n - 1]), &rhs);
        }
    }
    r
}

fn moment(p0: &SeriesZ, k: usize) -> &PolyC {
    p0.coeff(k)
}

/// Integral against the Marchenko-Pastur law via the moment series.
pub fn mp_integral(poly: &PolyXC, p0: &SeriesZ) -> PolyC {
    poly.coeffs().iter().enumerate().map(|(k, a)| a * moment(p0, k)).sum()
}

/// Centering of `Pi_n`, `Gamma_n` and the norm `int Pi_n^2 = c^n`.
pub fn check_moments(size: usize) -> CheckReport {
    let mut r = CheckReport::new("recursions");
    let p0 = series_p0(2 * size);
    let pis = Family::Pi.sequence(size);
    let gs = Family::Gamma.sequence(size);
    for n in 1..size {
        r.eq("centering-pi", format!("n={n}"), &mp_integral(&pis[n], &p0), &PolyC::zero());
        r.eq("centering-gamma", format!("n={n}"), &mp_integral(&gs[n], &p0), &PolyC::zero());
    }
    for n in 0..size {
        let sq = &pis[n] * &pis[n];
        r.eq("norm-pi", format!("n={n}"), &mp_integral(&sq, &p0), &PolyC::c().pow(n as u32));
    }
    r
}

/// Inverse-of-inverse, integrality and unit diagonal for each family.
pub fn check_matrices(size: usize) -> CheckReport {
    let mut r = CheckReport::new("recursions");
    for fam in [Family::GammaTilde, Family::Gamma, Family::Pi] {
        let m = transition_matrix(fam, size);
        let inv = m.invert_unitriangular().unwrap();
        r.record("double-inverse", fam.name(), inv.invert_unitriangular().unwrap() == m);
        r.record("product-identity", fam.name(), m.mul(&inv).unwrap() == TransitionMatrix::identity(size));
        r.record(
            "inverse-integral",
            fam.name(),
            inv.rows().iter().flatten().all(|p| p.is_integral()),
        );
    }
    // Gamma^{-1} differs from Gt^{-1} only in column 0
    let gi = transition_matrix(Family::Gamma, size).invert_unitriangular().unwrap();
    let gti = transition_matrix(Family::GammaTilde, size).invert_unitriangular().unwrap();
    for n in 0..size {
        for k in 1..=n {
            r.eq("gamma-inverse-columns", format!("n={n} k={k}"), gi.entry(n, k), gti.entry(n, k));
        }
    }
    r
}

/// Everything in this module.
pub fn check_all(size: usize, order: usize) -> CheckReport {
    let mut r = CheckReport::new("polyalg");
    r.extend(check_geq12(size));
    r.extend(check_geq34(size));
    r.extend(check_prec12(size));
    r.extend(check_firstsecond(size));
    r.extend(check_moments(size));
    r.extend(check_matrices(size));
    r.extend(check_series_recursions(order));
    r.extend(check_series_vs_matrices(order));
    r
}
