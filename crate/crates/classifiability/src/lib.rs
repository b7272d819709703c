//! Estimation of the intrinsic accuracy limit ("classifiability limit") of
//! labeled datasets.
//!
//! The limit of a dataset is 1 minus the expected local entropy of class
//! proportions in metric neighborhoods, where the local entropy reduces to
//! 1 minus the largest local class proportion. Small neighborhoods push the
//! estimate to 1; neighborhoods covering the whole dataset pull it down to
//! the majority-class proportion, so the threshold (or neighbor count) is
//! the one hyperparameter that matters.
//!
//! The crate ships:
//! - [`data`]: validated dataset types shared by everything else
//! - [`metrics`]: the six distance functions
//! - [`neighbors`]: radius/k-nearest queries, a kd-tree backend that agrees
//!   with brute force index-for-index, and the selection heuristics
//! - [`estimator`]: the limit estimator, entropy maps, jackknife and
//!   subsample sweeps, the over-classification rule
//! - [`oracle`]: analytic limits by quadrature, problem sampling, and a
//!   naive reference estimator that matches the production path bit for bit
//! - [`synth`]: seeded generators for the benchmark problems
//! - [`baselines`]: neighbor classifiers and an accuracy-vs-limit harness
//! - [`io`]: CSV ingestion, standard scaling, entropy-map export
//! - [`cli`]: the `classifiability` command-line tool

pub mod baselines;
pub mod cli;
pub mod data;
pub mod estimator;
pub mod io;
pub mod metrics;
pub mod neighbors;
mod numeric;
pub mod oracle;
mod parallel;
pub mod synth;

pub use data::{
    class_proportions, validate_dataset, ClassProbabilities, ClassTable, DataError,
    EstimateReport, LabeledDataset, NeighborhoodMode, NeighborhoodSpec,
};
pub use estimator::{
    classifiability, classifiability_opts, entropy_map, jackknife, local_entropy,
    local_entropy_full, local_probabilities, overclass_check, rho_hat, subsample_sweep,
    EstimatorError, ExecOptions, JackknifeReport, OverclassReport,
};
pub use metrics::{distance, MetricError, MetricKind};
pub use neighbors::{
    k_from_fraction, neighbors_k, neighbors_radius, threshold_from_fraction, NeighborError,
    NeighborIndex, NeighborList,
};
pub use oracle::{bayes_limit, reference_estimate, sample_problem, AnalyticProblem, OracleError};
pub use parallel::THREADS_ENV;

use thiserror::Error;

/// Any error the crate can produce, for callers that do not care which
/// subsystem failed.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Neighbor(#[from] NeighborError),
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Synth(#[from] synth::SynthError),
    #[error(transparent)]
    Baseline(#[from] baselines::BaselineError),
    #[error(transparent)]
    Io(#[from] io::IoError),
}
