//! Trace replay through a chosen algorithm, with optional online audits.

use std::fmt;
use std::time::Instant;

use crate::baselines::Baseline;
use crate::decremental::DecrementalSolver;
use crate::engine::{CoverEngine, UpdateReport, Violation};
use crate::error::{Error, Result};
use crate::exact::{exact_cover, ExactResult};
use crate::fully_dynamic::FullyDynamicSolver;
use crate::induced::{InducedInstance, MapScratch};
use crate::system::{ElemId, SetSystem};
use crate::workloads::{Event, UpdateTrace};

use super::metrics::{PhaseEntry, QueryEntry, RunMetrics};

/// Default set-count limit for the exact oracle.
pub const ORACLE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Decremental,
    FullyDynamic,
    RecomputeF,
    RecomputeGreedy,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Decremental, Algo::FullyDynamic, Algo::RecomputeF, Algo::RecomputeGreedy];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Decremental => "decremental",
            Algo::FullyDynamic => "fully-dynamic",
            Algo::RecomputeF => "recompute-f",
            Algo::RecomputeGreedy => "recompute-greedy",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub algo: Algo,
    pub epsilon: f64,
    pub seed: u64,
    /// Full structural audit after every event.
    pub check_invariants: bool,
    /// Exact optimum and ratio check at every query.
    pub oracle: bool,
    pub oracle_cap: usize,
    /// Record wall time (makes the document machine dependent).
    pub timing: bool,
}

impl RunConfig {
    pub fn new(algo: Algo, epsilon: f64, seed: u64) -> Self {
        RunConfig {
            algo,
            epsilon,
            seed,
            check_invariants: false,
            oracle: false,
            oracle_cap: ORACLE_CAP,
            timing: false,
        }
    }

    pub fn checked(self) -> Self {
        RunConfig {
            check_invariants: true,
            oracle: true,
            ..self
        }
    }
}

/// Everything needed to reproduce a failed audit.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub violation: Violation,
    /// Event at which the audit failed; `None` for the initial cover.
    pub event: Option<usize>,
    pub algo: Algo,
    pub epsilon: f64,
    pub seed: u64,
    pub instance: String,
    /// The trace up to and including the failing event.
    pub trace_prefix: String,
}

impl Counterexample {
    pub fn dump(&self) -> String {
        let at = self.event.map_or("initial cover".to_string(), |i| format!("event {i}"));
        format!(
            "violation at {at}: {}\nalgo {} epsilon {} seed {}\n--- instance\n{}--- trace\n{}",
            self.violation, self.algo, self.epsilon, self.seed, self.instance, self.trace_prefix
        )
    }
}

#[derive(Debug)]
pub enum RunError {
    Input(Error),
    Violation(Box<Counterexample>),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Input(e) => write!(f, "{e}"),
            RunError::Violation(c) => write!(f, "{}", c.dump()),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Input(e)
    }
}

enum Driver<'a> {
    Decremental(DecrementalSolver<'a>),
    FullyDynamic(FullyDynamicSolver<'a>),
    Static(Baseline, Vec<bool>),
}

impl<'a> Driver<'a> {
    fn new(cfg: &RunConfig, system: &'a SetSystem, trace: &UpdateTrace) -> Result<Self> {
        Ok(match cfg.algo {
            Algo::Decremental => {
                if !trace.starts_full() || trace.has_inserts() {
                    return Err(Error::Parameter(
                        "the decremental solver needs a full start and no inserts".into(),
                    ));
                }
                Driver::Decremental(DecrementalSolver::new(system, cfg.epsilon, cfg.seed)?)
            }
            Algo::FullyDynamic if trace.starts_full() => {
                Driver::FullyDynamic(FullyDynamicSolver::with_all_active(system, cfg.epsilon, cfg.seed)?)
            }
            Algo::FullyDynamic => Driver::FullyDynamic(FullyDynamicSolver::new(system, cfg.epsilon, cfg.seed)?),
            Algo::RecomputeF => Driver::Static(Baseline::Deterministic, vec![trace.starts_full(); system.n()]),
            Algo::RecomputeGreedy => Driver::Static(Baseline::Greedy, vec![trace.starts_full(); system.n()]),
        })
    }

    fn engine(&self) -> Option<&CoverEngine<'a>> {
        match self {
            Driver::Decremental(d) => Some(d),
            Driver::FullyDynamic(d) => Some(d),
            Driver::Static(..) => None,
        }
    }

    fn update(&mut self, ev: Event) -> Result<UpdateReport> {
        match (self, ev) {
            (Driver::Decremental(d), Event::Delete(e)) => d.delete(e),
            (Driver::FullyDynamic(d), Event::Insert(e)) => d.insert(e),
            (Driver::FullyDynamic(d), Event::Delete(e)) => d.delete(e),
            (Driver::Static(_, active), Event::Insert(e) | Event::Delete(e)) => {
                active[e] = matches!(ev, Event::Insert(_));
                Ok(UpdateReport::default())
            }
            _ => Err(Error::Parameter(format!("unsupported event {ev:?}"))),
        }
    }

    fn active(&self, n: usize) -> Vec<ElemId> {
        match self {
            Driver::Static(_, active) => (0..n).filter(|&e| active[e]).collect(),
            _ => self.engine().unwrap().active_elements().collect(),
        }
    }
}

fn audit(driver: &Driver, phases: &[crate::PhaseReport]) -> std::result::Result<(), Violation> {
    if let Some(engine) = driver.engine() {
        engine.audit()?;
        engine.audit_phases(phases)?;
    }
    Ok(())
}

/// Replays `trace` on `system` with the configured algorithm.
///
/// With `check_invariants` the full structural audit runs after the initial
/// cover and after every event; with `oracle` every query whose active
/// instance has at most `oracle_cap` sets is compared against the exact
/// optimum, and the dynamic solvers must stay within `f/(1−ε)` of it (the
/// recompute baseline within `f`). Greedy answers are only recorded.
pub fn run(cfg: &RunConfig, system: &SetSystem, trace: &UpdateTrace) -> std::result::Result<RunMetrics, RunError> {
    trace.check_against(system)?;
    if trace.is_set_trace() {
        return Err(Error::Parameter("set-event traces cannot drive an element solver".into()).into());
    }
    let started = Instant::now();
    let fail = |violation: Violation, event: Option<usize>| {
        RunError::Violation(Box::new(Counterexample {
            violation,
            event,
            algo: cfg.algo,
            epsilon: cfg.epsilon,
            seed: cfg.seed,
            instance: system.to_text(),
            trace_prefix: trace.prefix(event.map_or(0, |i| i + 1)).to_text(),
        }))
    };

    let mut driver = Driver::new(cfg, system, trace)?;
    let init_touches = driver.engine().map_or(0, |e| e.touches());
    if cfg.check_invariants {
        let init = driver.engine().map(|e| e.last_phases().to_vec()).unwrap_or_default();
        audit(&driver, &init).map_err(|v| fail(v, None))?;
    }

    let mut metrics = RunMetrics {
        algo: cfg.algo.name().into(),
        epsilon: cfg.epsilon,
        seed: cfg.seed,
        n: system.n(),
        m: system.m(),
        f: system.f(),
        events: trace.len(),
        init_touches,
        touches_total: 0,
        event_touches: Vec::with_capacity(trace.len()),
        phases: Vec::new(),
        queries: Vec::new(),
        max_moves: 0,
        wall_ms: None,
    };
    let mut scratch = MapScratch::for_system(system);
    let mut warned = false;

    for (i, &ev) in trace.events().iter().enumerate() {
        let touches = if ev == Event::Query {
            let (cover_size, p_total, d_total, touches) = match &driver {
                Driver::Static(baseline, _) => {
                    let inst = InducedInstance::build(&mut scratch, system, &driver.active(system.n()), None)?;
                    let c = baseline.cover(&inst);
                    (c.cover.len(), c.pivots.len(), 0, inst.build_touches() + c.touches)
                }
                _ => {
                    let e = driver.engine().unwrap();
                    (e.cover_size(), e.p_total(), e.d_total(), 0)
                }
            };
            let mut entry = QueryEntry {
                index: i,
                cover_size,
                p_total,
                d_total,
                opt: None,
                ratio: None,
            };
            if cfg.oracle {
                let inst = InducedInstance::build(&mut scratch, system, &driver.active(system.n()), None)?;
                match exact_cover(&inst, cfg.oracle_cap) {
                    ExactResult::Optimum(opt) => {
                        entry.opt = Some(opt);
                        if opt > 0 {
                            entry.ratio = Some(cover_size as f64 / opt as f64);
                        }
                        let f = system.f() as f64;
                        let bound = match cfg.algo {
                            Algo::Decremental | Algo::FullyDynamic => Some(f / (1.0 - cfg.epsilon)),
                            Algo::RecomputeF => Some(f),
                            Algo::RecomputeGreedy => None,
                        };
                        if let Some(b) = bound {
                            if cover_size as f64 > b * opt as f64 + 1e-9 {
                                let v = Violation {
                                    check: "approximation",
                                    detail: format!("cover {cover_size} > {b:.4} · OPT {opt}"),
                                };
                                return Err(fail(v, Some(i)));
                            }
                        }
                    }
                    ExactResult::ExceedsCap => {
                        if !warned {
                            log::warn!("oracle skipped: more than {} sets in play", cfg.oracle_cap);
                            warned = true;
                        }
                    }
                    ExactResult::Infeasible => unreachable!("every element lies in some set"),
                }
            }
            metrics.queries.push(entry);
            touches
        } else {
            let report = driver.update(ev)?;
            for ph in &report.phases {
                metrics.phases.push(PhaseEntry {
                    event: i,
                    level: ph.level,
                    x_prime: ph.x_prime,
                    moved: ph.moved,
                    new_pivots: ph.new_pivots,
                    touches: ph.touches,
                });
            }
            if cfg.check_invariants {
                audit(&driver, &report.phases).map_err(|v| fail(v, Some(i)))?;
            }
            report.touches
        };
        metrics.event_touches.push(touches);
        metrics.touches_total += touches;
    }
    metrics.max_moves = driver.engine().map_or(0, |e| e.max_moves());
    if cfg.timing {
        metrics.wall_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    Ok(metrics)
}
