//! Non-stationary stochastic optimization under a variation budget:
//! cost sequences, noisy feedback, restarted OGD/EGS policies, dynamic-oracle
//! regret and a Monte Carlo harness with log-log rate fitting.

pub mod config;
pub mod cost;
pub mod envgen;
pub mod error;
pub mod feedback;
pub mod fit;
pub mod harness;
pub mod oracle;
pub mod policy;
pub mod seqfile;
pub mod space;

pub use cost::{CostInstance, FunctionSequence, QuadraticCost, VariationMode};
pub use error::{Error, Result};
pub use feedback::{FeedbackChannel, FeedbackKind, NoiseModel, Observation, RandomStream, Substream};
pub use harness::{run_experiment, run_trajectory, ExperimentConfig, ExperimentResult, TrajectoryRecord};
pub use policy::{Policy, PolicyName, PolicySpec};
pub use space::{Action, ActionBox};
