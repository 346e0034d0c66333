//! Combinatorics of annular non-crossing permutations and the fluctuation
//! moments of complex Wishart matrices: exact tables over Z[c], diagram
//! enumeration, Monte Carlo estimation and Wick products on a full Fock space.

pub mod check;
pub mod diagrams;
pub mod fixtures;
pub mod polyalg;
pub mod rmt;
pub mod wick;

pub use check::{Check, CheckReport};
pub use polyalg::{PolyC, PolyXC, SeriesZ, TransitionMatrix};
