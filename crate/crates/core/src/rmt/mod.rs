//! Monte Carlo estimation of trace statistics of complex Wishart matrices,
//! checked against the exact limits from `polyalg` and `diagrams`.

mod ensemble;
mod experiments;
mod report;
mod stats;

pub use ensemble::{sample_wishart, stream_rng, CMat, EnsembleConfig};
pub use experiments::{
    evaluate_statistics, experiment_convergence, experiment_diagonalization, experiment_raw_covariance, ConvergenceRow,
};
pub use report::{band, CovRow, MomentReport, StatRow};
pub use stats::{predict_covariance, Predictor, TraceStatistic};

use crate::diagrams::DiagramError;

#[derive(Debug, thiserror::Error)]
pub enum RmtError {
    #[error("bad ensemble configuration: {0}")]
    Config(String),
    #[error("degree {0} exceeds the table size {1}")]
    TooLarge(usize, usize),
    #[error("matrix index {0} out of range for p = {1}")]
    DimensionOverflow(usize, usize),
    #[error("index sequence {0:?} is not cyclically alternating")]
    NotAlternating(Vec<usize>),
    #[error("{0}")]
    Statistic(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
