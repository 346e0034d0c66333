//! Exact arithmetic over Z[c]: polynomials, series, the shifted Chebyshev
//! families and their transition matrices.

mod families;
pub mod identities;
mod matrix;
mod poly;
mod polyxc;
mod series;

pub use families::{
    chebyshev_c, chebyshev_s, gamma, gamma_tilde, pi_poly, transition_matrix, ConstantsCD, Family,
};
pub use matrix::TransitionMatrix;
pub use poly::PolyC;
pub use polyxc::PolyXC;
pub use series::{series_g, series_g0, series_p, series_p0, SeriesZ};

/// Default number of rows for coefficient tables.
pub const DEFAULT_TABLE_SIZE: usize = 16;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PolyError {
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
    #[error("diagonal entry {0} is {1}, expected 1")]
    NotUnitriangular(usize, String),
    #[error("{0} is not divisible by c")]
    NotDivisibleByC(String),
    #[error("series with constant term {0} is not a unit")]
    NotUnit(String),
    #[error("bad matrix shape: {0}")]
    Shape(String),
}

/// Matrix of the family or of its inverse.
pub fn family_table(family: Family, inverse: bool, size: usize) -> TransitionMatrix {
    let m = transition_matrix(family, size);
    if inverse {
        m.invert_unitriangular().expect("family matrices are unitriangular")
    } else {
        m
    }
}
