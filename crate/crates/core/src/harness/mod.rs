//! Monte-Carlo experiment harness: the synthetic stress-test instances, sweeps of
//! (algorithm × budget) with per-trial random streams, and accuracy bands.

mod bands;
mod sweep;
mod synthetic;

pub use bands::{confidence_bands, log_error, ConfidenceBands, Z_95};
pub use sweep::{
    run_sweep, run_sweep_config, InstanceSource, SweepCell, SweepConfig, SweepPlan, SweepResult, DEFAULT_BASE_SEED,
    TABLE_HEADER,
};
pub use synthetic::{
    build_synthetic, build_synthetic_with_variance, SyntheticKind, SYNTHETIC_ARMS, SYNTHETIC_ATTRIBUTES,
    SYNTHETIC_VARIANCE,
};
