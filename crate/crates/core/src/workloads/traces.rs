//! Deletion orders and mixed insert/delete traces.
//!
//! Traces are fixed before any solver runs. The pivot-adversarial order
//! consults a probe solver, but the probe draws from its own seed stream,
//! so the solver being measured still faces an oblivious sequence.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::decremental::DecrementalSolver;
use crate::error::{Error, Result};
use crate::rng::{stream, PROBE_STREAM, WORKLOAD_STREAM};
use crate::system::{ElemId, SetSystem};

use super::trace::{Event, UpdateTrace};

/// Accuracy parameter of the probe solver behind the adversarial order.
pub const PROBE_EPSILON: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeletionOrder {
    Random,
    /// Deletes a current pivot of a probe solver whenever it has one.
    PivotAdversarial,
}

/// Items with O(1) random pick and removal.
#[derive(Debug, Clone)]
struct Pool {
    items: Vec<usize>,
    pos: Vec<usize>,
}

impl Pool {
    fn new(cap: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Pool {
            items: Vec::new(),
            pos: vec![usize::MAX; cap],
        };
        for x in items {
            p.add(x);
        }
        p
    }

    fn add(&mut self, x: usize) {
        self.pos[x] = self.items.len();
        self.items.push(x);
    }

    fn remove(&mut self, x: usize) {
        let i = self.pos[x];
        let last = *self.items.last().unwrap();
        self.items.swap_remove(i);
        if last != x {
            self.pos[last] = i;
        }
        self.pos[x] = usize::MAX;
    }

    fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.items[rng.gen_range(0..self.items.len())]
    }

    fn len(&self) -> usize {
        self.items.len()
    }
}

/// Deletes every element once, starting from the full set, with a query
/// after each deletion.
pub fn gen_deletion_trace(system: &SetSystem, order: DeletionOrder, seed: u64) -> Result<UpdateTrace> {
    let n = system.n();
    let mut trace = UpdateTrace::full(n, system.m());
    let mut rng = stream(seed, WORKLOAD_STREAM);
    let order: Vec<ElemId> = match order {
        DeletionOrder::Random => {
            let mut perm: Vec<ElemId> = (0..n).collect();
            perm.shuffle(&mut rng);
            perm
        }
        DeletionOrder::PivotAdversarial => {
            let probe_seed = stream(seed, PROBE_STREAM).next_u64();
            let mut probe = DecrementalSolver::new(system, PROBE_EPSILON, probe_seed)?;
            let mut pool = Pool::new(n, 0..n);
            let mut out = Vec::with_capacity(n);
            while pool.len() > 0 {
                let pivots = probe.undeleted_pivots();
                let e = match pivots.choose(&mut rng) {
                    Some(&p) => p,
                    None => pool.pick(&mut rng),
                };
                probe.delete(e)?;
                pool.remove(e);
                out.push(e);
            }
            out
        }
    };
    for e in order {
        trace.push(Event::Delete(e));
        trace.push(Event::Query);
    }
    Ok(trace)
}

/// `len` random inserts and deletes from an empty start, a query after
/// each. Inserts are drawn with probability `0.6` while both moves are
/// possible.
pub fn gen_mixed_trace(system: &SetSystem, len: usize, seed: u64) -> Result<UpdateTrace> {
    let n = system.n();
    if n == 0 && len > 0 {
        return Err(Error::Parameter("no elements to update".into()));
    }
    let mut rng = stream(seed, WORKLOAD_STREAM);
    let mut trace = UpdateTrace::new(n, system.m());
    let mut inactive = Pool::new(n, 0..n);
    let mut active = Pool::new(n, []);
    for _ in 0..len {
        let insert = active.len() == 0 || (inactive.len() > 0 && rng.gen_bool(0.6));
        if insert {
            let e = inactive.pick(&mut rng);
            inactive.remove(e);
            active.add(e);
            trace.push(Event::Insert(e));
        } else {
            let e = active.pick(&mut rng);
            active.remove(e);
            inactive.add(e);
            trace.push(Event::Delete(e));
        }
        trace.push(Event::Query);
    }
    Ok(trace)
}
