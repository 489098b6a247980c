//! Fixed-budget best-arm identification in grouped bandits under a feasibility
//! constraint.
//!
//! An instance has `K` arms of `M` attributes each. An arm is feasible when every
//! attribute mean exceeds a threshold τ; the goal is the feasible arm with the
//! highest average attribute mean, or the flag 0 when no arm is feasible.
//!
//! * [`bandit`]: distributions, instances, ground truth, running statistics.
//! * [`hardness`]: gap quantities, hardness indices, exponent predictions,
//!   adversarial instance families.
//! * [`algorithms`]: FCSR and the US / SR / ETC baselines.
//! * [`harness`]: synthetic instances, Monte-Carlo sweeps, confidence bands.
//! * [`movielens`]: ratings ingestion into empirical-reward instances.
//!
//! The math is generic over [`Scalar`] (`f32`, `f64`); the aliases below fix `f64`.

pub mod algorithms;
pub mod bandit;
mod error;
pub mod hardness;
pub mod harness;
pub mod movielens;
mod rng;
mod scalar;

pub use error::{Error, Result};
pub use rng::RngStream;
pub use scalar::{floor_fraction, inverse_square, Scalar};

pub use algorithms::{AlgorithmKind, AlgorithmParams, FcsrConfig, RunTrace, Schedule};
pub use bandit::{AttributeDistribution, BanditInstance, Decision, StatsState};
pub use hardness::{ExponentPrediction, HardnessReport};

pub type Instance = bandit::BanditInstance<f64>;
pub type Distribution = bandit::AttributeDistribution<f64>;
pub type Stats = bandit::StatsState<f64>;
pub type Trace = algorithms::RunTrace<f64>;
pub type Report = hardness::HardnessReport<f64>;
pub type Prediction = hardness::ExponentPrediction<f64>;

pub type Instance32 = bandit::BanditInstance<f32>;
pub type Stats32 = bandit::StatsState<f32>;
pub type Report32 = hardness::HardnessReport<f32>;
