//! Incremental minimum sum-of-squares clustering.
//!
//! The pipeline clusters a dataset into `1..=k_max` centers by repeatedly
//! splitting the worst cluster: two small nonsmooth auxiliary problems
//! produce a starting point for each split, and a limited memory bundle
//! method solves every optimization problem along the way. The crate also
//! provides the evaluation toolkit used to judge the results: relative
//! errors against reference objectives, Davies-Bouldin and Dunn validity
//! indices, adjusted Rand index, accuracy against true labels, and a
//! synthetic three-cluster generator with a controllable outlier share.

pub mod data;
pub mod formats;
pub mod lmbm;
pub mod objective;
pub mod parallel;
pub mod rng;
pub mod splitter;
pub mod synth;
pub mod validate;

pub use data::{assign, cluster_sse, Assignment, CenterSet, CsvOptions, DataError, Dataset};
pub use lmbm::{minimize, SolveStatus, SolverConfig, SolverError, SolverResult};
pub use objective::{Oracle, SpaContext};
pub use splitter::{run, RunReport, RunStatus, SplitConfig, SplitError};
