//! Dynamic linear programming discriminant (DLPD) analysis.
//!
//! Binary classification for high-dimensional data whose class means and
//! common covariance vary smoothly with a low-dimensional covariate. Class
//! moments are estimated by Nadaraya-Watson kernel smoothing, the local
//! discriminant direction is obtained from an l1-minimization program with
//! an l-infinity residual constraint (a Dantzig-selector variant) solved by
//! a built-in dense simplex method, and tuning is done by subset-variables
//! cross-validation (bandwidths) and stratified K-fold cross-validation
//! (the residual level lambda).
//!
//! The crate also ships the oracle side: exact Bayes rules, conditional and
//! expected risk evaluation, four synthetic model families with known
//! moment functions, and static-LPD / k-NN baselines.

pub mod baselines;
pub mod classifier;
pub mod dantzig;
mod integrate;
pub mod kernels;
pub mod moments;
pub mod normal;
pub mod rng;
pub mod select;
pub mod simplex;
pub mod simulate;
pub mod types;

pub use classifier::{DlpdModel, OracleModel};
pub use dantzig::{DantzigProblem, DantzigSolution, SolveStatus};
pub use kernels::{Bandwidth, KernelSpec};
pub use moments::LocalMoments;
pub use rng::{Prng, RngSeed};
pub use select::{BandwidthCvConfig, FitConfig, LambdaCvConfig};
pub use simulate::{ModelId, ModelSpec};
pub use types::{ClassLabel, CovariatePoint, DataSet};
