//! Dynamic set cover with `(1+ε)·f` approximation.
//!
//! The universe and the set family are fixed; elements switch between active
//! and inactive, and the solvers keep a cover of the active elements.
//!
//! ```
//! use dyncover::{FullyDynamicSolver, SetSystem};
//!
//! let system = SetSystem::parse("4 3\n2 0 1\n2 1 2\n2 2 3\n")?;
//! let mut solver = FullyDynamicSolver::new(&system, 0.25, 7)?;
//! solver.insert(0)?;
//! solver.insert(3)?;
//! solver.delete(0)?;
//! assert!(solver.audit().is_ok());
//! assert!(solver.cover().iter().any(|&s| system.elems_of(s).contains(&3)));
//! # Ok::<(), dyncover::Error>(())
//! ```

mod error;

pub mod baselines;
pub mod bench;
pub mod decremental;
pub mod engine;
pub mod exact;
pub mod fully_dynamic;
pub mod induced;
pub mod random_cover;
pub mod rng;
pub mod sort_list;
pub mod system;
pub mod workloads;

pub use baselines::{deterministic_cover, greedy_cover, recompute_baseline, Baseline, StaticCover};
pub use bench::{run, Algo, RunConfig, RunMetrics};
pub use decremental::DecrementalSolver;
pub use engine::{CoverEngine, Mode, PhaseReport, UpdateReport, Violation};
pub use error::{Error, Result};
pub use exact::{exact_cover, ExactResult};
pub use fully_dynamic::FullyDynamicSolver;
pub use random_cover::{level_of, random_cover, CoverRun, PivotRecord};
pub use system::{ElemId, SetId, SetSystem};
pub use workloads::{Event, UpdateTrace};
