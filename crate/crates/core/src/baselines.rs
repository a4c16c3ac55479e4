//! Static reference covers: the pivot-based `f`-approximation, greedy, and
//! a recompute-at-every-query baseline over an update trace.
//!
//! Inputs are induced instances; outputs use the parent system's ids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::induced::{InducedInstance, MapScratch};
use crate::sort_list::SortList;
use crate::system::{ElemId, SetId, SetSystem};
use crate::workloads::{Event, UpdateTrace};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StaticCover {
    /// Empty for greedy.
    pub pivots: Vec<ElemId>,
    pub cover: Vec<SetId>,
    pub touches: u64,
}

/// Repeatedly takes the lowest-id uncovered element as a pivot and adds
/// every set containing it. No set holds two pivots, so `|cover| ≤ f·OPT`.
pub fn deterministic_cover(inst: &InducedInstance) -> StaticCover {
    let mut covered = vec![false; inst.local_n()];
    let mut taken = vec![false; inst.local_m()];
    let mut out = StaticCover::default();
    for p in 0..inst.local_n() {
        out.touches += 1;
        if covered[p] {
            continue;
        }
        out.pivots.push(inst.global_elem(p));
        for &s in inst.sets_of(p) {
            out.touches += 1;
            // a set containing the pivot was never taken before, since
            // taken sets cover all their elements
            debug_assert!(!taken[s]);
            taken[s] = true;
            out.cover.push(inst.global_set(s));
            for &e in inst.elems_of(s) {
                out.touches += 1;
                covered[e] = true;
            }
        }
    }
    out
}

/// Classic greedy: repeatedly adds the set covering the most uncovered
/// elements.
pub fn greedy_cover(inst: &InducedInstance) -> StaticCover {
    let cards: Vec<usize> = (0..inst.local_m()).map(|s| inst.elems_of(s).len()).collect();
    let mut sort = SortList::from_cardinalities(&cards);
    let mut covered = vec![false; inst.local_n()];
    let mut out = StaticCover {
        touches: cards.iter().sum::<usize>() as u64,
        ..Default::default()
    };
    while let Some(z) = sort.head() {
        out.cover.push(inst.global_set(z));
        for &e in inst.elems_of(z) {
            out.touches += 1;
            if covered[e] {
                continue;
            }
            covered[e] = true;
            for &s in inst.sets_of(e) {
                out.touches += 1;
                sort.decrement(s).expect("uncovered element's sets are listed");
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Baseline {
    Deterministic,
    Greedy,
}

impl Baseline {
    pub fn cover(self, inst: &InducedInstance) -> StaticCover {
        match self {
            Baseline::Deterministic => deterministic_cover(inst),
            Baseline::Greedy => greedy_cover(inst),
        }
    }
}

/// Cover sizes and work of a static baseline rerun at every query.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RecomputeRun {
    pub sizes: Vec<usize>,
    pub touches: Vec<u64>,
}

/// Replays an element trace, recomputing `baseline` on the active elements
/// at each query.
pub fn recompute_baseline(
    system: &SetSystem,
    trace: &UpdateTrace,
    baseline: Baseline,
) -> Result<RecomputeRun> {
    trace.check_against(system)?;
    let mut active = vec![trace.starts_full(); system.n()];
    let mut scratch = MapScratch::for_system(system);
    let mut run = RecomputeRun::default();
    for ev in trace.events() {
        match *ev {
            Event::Insert(e) => active[e] = true,
            Event::Delete(e) => active[e] = false,
            Event::Query => {
                let elems: Vec<ElemId> = (0..system.n()).filter(|&e| active[e]).collect();
                let inst = InducedInstance::build(&mut scratch, system, &elems, None)?;
                let c = baseline.cover(&inst);
                run.sizes.push(c.cover.len());
                run.touches.push(inst.build_touches() + c.touches);
            }
            Event::InsertSet(_) | Event::DeleteSet(_) => {
                return Err(Error::Parameter("set events in an element trace".into()))
            }
        }
    }
    Ok(run)
}
