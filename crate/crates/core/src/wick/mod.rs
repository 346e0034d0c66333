//! Wick products on a truncated full Fock space over a finite-dimensional
//! tracial *-algebra, and numerical checks of their product rules.

mod algebra;
mod fock;
mod operator;
mod products;
mod verify;

pub use algebra::{Elem, TracialAlgebra};
pub use fock::{Fock, FockVector};
pub use operator::FockOperator;
pub use products::{convolution, prepend, w_pi, w_set, wick, Prepend};
pub use verify::{
    adjoint_residual, combinatorics_suite, fig_perm, figure_product, ncl_all, operator_residual, prepend_bijection,
    verify_adjoints, verify_decomposition, verify_defining, verify_product, wick_suite, WICK_TOL,
};

use crate::diagrams::DiagramError;

#[derive(Debug, thiserror::Error)]
pub enum WickError {
    #[error("word of length {len} needs depth above {depth}")]
    TooDeep { len: usize, depth: usize },
    #[error("half-permutation on {0} points applied to a word of length {1}")]
    SizeMismatch(usize, usize),
    #[error("bad algebra: {0}")]
    Algebra(String),
    #[error("a creation left the truncated space inside a checked identity")]
    Truncated,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
