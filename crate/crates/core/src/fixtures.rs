//! Printed coefficient tables and figure decompositions, transcribed once and
//! used as golden data.

use crate::polyalg::{family_table, Family, PolyC};

/// First five rows of the inverse of the `Gt` matrix.
pub const GAMMA_TILDE_INVERSE: [&[&str]; 5] = [
    &["1"],
    &["1 + c", "1"],
    &["1 + 4*c + c^2", "2 + 2*c", "1"],
    &["1 + 9*c + 9*c^2 + c^3", "3 + 9*c + 3*c^2", "3 + 3*c", "1"],
    &["1 + 16*c + 36*c^2 + 16*c^3 + c^4", "4 + 24*c + 24*c^2 + 4*c^3", "6 + 16*c + 6*c^2", "4 + 4*c", "1"],
];

pub const GAMMA_INVERSE: [&[&str]; 5] = [
    &["1"],
    &["c", "1"],
    &["c + c^2", "2 + 2*c", "1"],
    &["c + 3*c^2 + c^3", "3 + 9*c + 3*c^2", "3 + 3*c", "1"],
    &["c + 6*c^2 + 6*c^3 + c^4", "4 + 24*c + 24*c^2 + 4*c^3", "6 + 16*c + 6*c^2", "4 + 4*c", "1"],
];

pub const PI_INVERSE: [&[&str]; 5] = [
    &["1"],
    &["c", "1"],
    &["c + c^2", "1 + 2*c", "1"],
    &["c + 3*c^2 + c^3", "1 + 5*c + 3*c^2", "2 + 3*c", "1"],
    &["c + 6*c^2 + 6*c^3 + c^4", "1 + 9*c + 14*c^2 + 4*c^3", "3 + 11*c + 6*c^2", "3 + 4*c", "1"],
];

pub fn golden(family: Family) -> Vec<Vec<PolyC>> {
    let src = match family {
        Family::GammaTilde => &GAMMA_TILDE_INVERSE,
        Family::Gamma => &GAMMA_INVERSE,
        Family::Pi => &PI_INVERSE,
    };
    src.iter()
        .map(|row| row.iter().map(|s| s.parse().expect("fixture parses")).collect())
        .collect()
}

/// Compares the first `rows.min(5)` rows of the computed inverse with the fixture.
/// Returns the mismatching `(n, k, computed, expected)` cells.
pub fn compare_golden(family: Family, rows: usize) -> Vec<(usize, usize, PolyC, PolyC)> {
    let rows = rows.min(5);
    let inv = family_table(family, true, rows);
    let gold = golden(family);
    let mut bad = Vec::new();
    for n in 0..rows {
        for k in 0..=n {
            if inv.entry(n, k) != &gold[n][k] {
                bad.push((n, k, inv.entry(n, k).clone(), gold[n][k].clone()));
            }
        }
    }
    bad
}

/// Figure of `x^2` in the `Gamma` basis: coefficients of `Gamma_2, Gamma_1, Gamma_0`.
pub const FIG_X_SQUARED: [&str; 3] = ["1", "2 + 2*c", "c + c^2"];

/// Figure of `x^2 y` over the colour word `X X Y`: coefficients of
/// `Pi_2(X) Pi_1(Y)`, `Pi_1(X) Pi_1(Y)`, `Pi_0(X) Pi_1(Y)` times those of
/// `Pi_1(Y)`, `Pi_0(Y)`.
pub const FIG_XXY_OUTER: [&str; 3] = ["1", "1 + 2*c", "c + c^2"];
pub const FIG_XXY_INNER: [&str; 2] = ["1", "c"];
