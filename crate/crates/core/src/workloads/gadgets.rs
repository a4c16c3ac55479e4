//! Update sequences that turn a containment instance into set cover
//! queries, one stage per member of `ℬ`.
//!
//! Element gadget: the sets are `𝒜` over `[n]`. A stage keeps exactly the
//! elements of `B` active and queries, so the optimum is the fewest members
//! of `𝒜` covering `B`: 1 at a contained pair, above `t` on a NO instance.
//!
//! Set gadget: the universe holds `k` copies of `[n]` (copy `i` of `e` is
//! `i·n + e`), every `A` has one copy per universe copy, and each column
//! `e` has a set `S_e` of all its copies. A stage activates `S_e` for every
//! `e ∉ B`. A contained pair gives a cover of size `≤ n + k`; on a NO
//! instance every cover needs more than `t` sets in each copy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{exact_cover, ExactResult};
use crate::induced::{InducedInstance, MapScratch};
use crate::system::{SetId, SetSystem};

use super::containment::ContainmentInstance;
use super::trace::{Event, UpdateTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    /// Index into `ℬ`.
    pub b: usize,
    /// Query number within the trace, `None` for a skipped stage.
    pub query: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ElementGadget {
    pub system: SetSystem,
    pub trace: UpdateTrace,
    pub threshold: usize,
    pub stages: Vec<Stage>,
}

impl ElementGadget {
    /// YES as soon as some query answer falls below the threshold.
    pub fn decide(&self, answers: &[usize]) -> bool {
        answers.iter().any(|&a| a < self.threshold)
    }
}

fn complement(n: usize, b: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n];
    for &e in b {
        inside[e] = true;
    }
    (0..n).filter(|&e| !inside[e]).collect()
}

/// Builds the element-update gadget. The trace inserts all `n` elements,
/// then for each `B` deletes the elements outside `B`, queries, and
/// reinserts them. An empty `B` would leave nothing active and is skipped.
pub fn gen_element_update_gadget(ci: &ContainmentInstance) -> Result<ElementGadget> {
    let system = SetSystem::from_sets(ci.n, ci.a_sets.clone())?;
    let mut trace = UpdateTrace::new(ci.n, ci.a_sets.len());
    for e in 0..ci.n {
        trace.push(Event::Insert(e));
    }
    let mut stages = Vec::new();
    let mut queries = 0;
    for (j, b) in ci.b_sets.iter().enumerate() {
        if b.is_empty() {
            log::warn!("stage {j}: empty B, skipped");
            stages.push(Stage { b: j, query: None });
            continue;
        }
        let out = complement(ci.n, b);
        for &e in &out {
            trace.push(Event::Delete(e));
        }
        trace.push(Event::Query);
        for &e in &out {
            trace.push(Event::Insert(e));
        }
        stages.push(Stage {
            b: j,
            query: Some(queries),
        });
        queries += 1;
    }
    Ok(ElementGadget {
        system,
        trace,
        threshold: ci.t,
        stages,
    })
}

#[derive(Debug, Clone)]
pub struct SetGadget {
    pub system: SetSystem,
    /// Set-event trace; every set starts inactive.
    pub trace: UpdateTrace,
    pub n: usize,
    pub k: usize,
    pub a_count: usize,
    pub stages: Vec<Stage>,
    /// Answers at most this mean YES: `(n + k)(t − 1)`.
    pub yes_threshold: usize,
    /// Lower bound on every NO-instance answer: `k·t`.
    pub no_floor: usize,
}

impl SetGadget {
    /// Set id of copy `i` of `𝒜[a]`.
    pub fn a_copy(&self, a: usize, i: usize) -> SetId {
        a * self.k + i
    }

    /// Set id of the column set `S_e`.
    pub fn column(&self, e: usize) -> SetId {
        self.a_count * self.k + e
    }

    /// The gap holds when `k·t > (n + k)(t − 1)`.
    pub fn gap_holds(&self) -> bool {
        self.no_floor > self.yes_threshold
    }

    pub fn decide(&self, answers: &[usize]) -> bool {
        answers.iter().any(|&a| a <= self.yes_threshold)
    }

    /// Minimum cover of the whole universe by the active sets, assuming all
    /// copies of `𝒜` are active. A cover takes some available columns `E'`
    /// and covers the other columns separately in each of the `k` identical
    /// copies, so the optimum is `min |E'| + k · c([n] \ E')` with `c`
    /// computed by [`exact_cover`] on `𝒜`.
    pub fn stage_optimum(&self, active_sets: &[SetId]) -> Result<Option<usize>> {
        let a_total = self.a_count * self.k;
        if active_sets.iter().filter(|&&s| s < a_total).count() != a_total {
            return Err(Error::Parameter("not every copy of the A-family is active".into()));
        }
        let cols: Vec<usize> = active_sets.iter().filter(|&&s| s >= a_total).map(|&s| s - a_total).collect();
        if cols.len() > 20 {
            return Err(Error::Parameter(format!("{} columns is too many to enumerate", cols.len())));
        }
        let a_family = SetSystem::from_sets(self.n, (0..self.a_count).map(|a| self.system.elems_of(a * self.k).to_vec()).collect())?;
        let mut scratch = MapScratch::for_system(&a_family);
        let mut best: Option<usize> = None;
        for pick in 0u32..1 << cols.len() {
            let mut taken = vec![false; self.n];
            for (i, &c) in cols.iter().enumerate() {
                if pick >> i & 1 == 1 {
                    taken[c] = true;
                }
            }
            let rest: Vec<usize> = (0..self.n).filter(|&e| !taken[e]).collect();
            let inst = InducedInstance::build(&mut scratch, &a_family, &rest, None)?;
            let per_copy = match exact_cover(&inst, a_family.m()) {
                ExactResult::Optimum(c) => c,
                _ => continue,
            };
            let total = pick.count_ones() as usize + self.k * per_copy;
            best = Some(best.map_or(total, |b| b.min(total)));
        }
        Ok(best)
    }
}

/// Builds the set-update gadget with `k` universe copies. The trace first
/// activates every copy of `𝒜`; each stage activates the column sets
/// outside `B`, queries and deactivates them again.
pub fn gen_set_update_gadget(ci: &ContainmentInstance, k: usize) -> Result<SetGadget> {
    if k == 0 {
        return Err(Error::Parameter("k must be positive".into()));
    }
    let n = ci.n;
    let mut sets = Vec::with_capacity(ci.a_sets.len() * k + n);
    for a in &ci.a_sets {
        for i in 0..k {
            sets.push(a.iter().map(|&e| i * n + e).collect());
        }
    }
    for e in 0..n {
        sets.push((0..k).map(|i| i * n + e).collect());
    }
    let system = SetSystem::from_sets(k * n, sets)?;
    let mut g = SetGadget {
        trace: UpdateTrace::new(k * n, system.m()),
        system,
        n,
        k,
        a_count: ci.a_sets.len(),
        stages: Vec::new(),
        yes_threshold: (n + k) * ci.t.saturating_sub(1),
        no_floor: k * ci.t,
    };
    for a in 0..g.a_count {
        for i in 0..k {
            g.trace.push(Event::InsertSet(g.a_copy(a, i)));
        }
    }
    let mut queries = 0;
    for (j, b) in ci.b_sets.iter().enumerate() {
        if b.is_empty() {
            log::warn!("stage {j}: empty B, skipped");
            g.stages.push(Stage { b: j, query: None });
            continue;
        }
        let out = complement(n, b);
        for &e in &out {
            g.trace.push(Event::InsertSet(g.column(e)));
        }
        g.trace.push(Event::Query);
        for &e in &out {
            g.trace.push(Event::DeleteSet(g.column(e)));
        }
        g.stages.push(Stage {
            b: j,
            query: Some(queries),
        });
        queries += 1;
    }
    Ok(g)
}
