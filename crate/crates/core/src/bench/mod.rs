//! Replay harness, metrics documents and scaling sweeps.

pub mod metrics;
pub mod run;
pub mod scaling;

pub use metrics::{Format, PhaseEntry, QueryEntry, RunMetrics};
pub use run::{run, Algo, Counterexample, RunConfig, RunError, ORACLE_CAP};
pub use scaling::{bench_scaling, ScalingPoint, ScalingReport, ScalingRow, ScalingSpec, GROWTH_FLAG};
