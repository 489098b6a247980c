//! Grouped-bandit environment: reward distributions, instances with their ground
//! truth, and the running statistics every learner maintains.

mod distribution;
mod instance;
mod stats;

pub use distribution::{AttributeDistribution, DistributionKind};
pub use instance::{ArmDocument, BanditInstance, Decision, InstanceDocument, Oracle};
pub use stats::{score_row, StatsState};
