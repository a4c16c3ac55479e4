//! Randomized pivot covering over an induced instance.
//!
//! Each iteration takes the set with the most uncovered elements, samples a
//! pivot uniformly among those elements and adds every set containing the
//! pivot. Every set keeps its uncovered elements in a compact prefix of its
//! member array so sampling is one index draw, and covering an element
//! swap-removes it from each of its `≤ f` sets via the cross-pointers.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::induced::InducedInstance;
use crate::sort_list::SortList;
use crate::system::{ElemId, SetId};

/// `⌊log₂ size⌋` for `size ≥ 1`.
pub fn level_of(size: usize) -> usize {
    assert!(size > 0, "level of an empty sample");
    (usize::BITS - 1 - size.leading_zeros()) as usize
}

/// A pivot together with what it brought into the cover (global ids).
///
/// `orig` holds the elements accounted to the pivot when it was selected,
/// `extra` the ones attributed to it later by the fully dynamic solver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PivotRecord {
    pub pivot: ElemId,
    pub level: usize,
    pub sampled_size: usize,
    /// Set the pivot was sampled from; `None` for a pivot created by an
    /// uncovered insertion (`S(e) = {e}`).
    pub source: Option<SetId>,
    pub sets: Vec<SetId>,
    pub orig: Vec<ElemId>,
    pub extra: Vec<ElemId>,
}

impl PivotRecord {
    pub fn covered(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.orig.iter().chain(&self.extra).copied()
    }

    pub fn covered_len(&self) -> usize {
        self.orig.len() + self.extra.len()
    }
}

#[derive(Debug, Clone, Default)]
pub struct CoverRun {
    /// Pivots in selection order.
    pub pivots: Vec<PivotRecord>,
    /// Union of the pivots' sets, in the order they were added.
    pub cover: Vec<SetId>,
    pub touches: u64,
}

impl CoverRun {
    pub fn levels(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.iter().map(|p| p.level)
    }
}

struct Uncovered<'a> {
    inst: &'a InducedInstance,
    members: Vec<Vec<usize>>,
    live: Vec<usize>,
    elem_slot: Vec<Vec<usize>>,
    set_slot: Vec<Vec<usize>>,
    sort: SortList,
    touches: u64,
}

impl<'a> Uncovered<'a> {
    fn new(inst: &'a InducedInstance) -> Self {
        let live: Vec<usize> = inst.elem_of.iter().map(Vec::len).collect();
        let touches = live.iter().sum::<usize>() as u64 + live.len() as u64;
        Uncovered {
            inst,
            members: inst.elem_of.clone(),
            elem_slot: inst.elem_slot.clone(),
            set_slot: inst.set_slot.clone(),
            sort: SortList::from_cardinalities(&live),
            live,
            touches,
        }
    }

    fn cover(&mut self, e: usize) {
        for (j, &s) in self.inst.set_of[e].iter().enumerate() {
            self.touches += 1;
            let pos = self.elem_slot[e][j];
            let last = self.live[s] - 1;
            let moved = self.members[s][last];
            let moved_j = self.set_slot[s][last];
            self.members[s].swap(pos, last);
            self.set_slot[s].swap(pos, last);
            self.elem_slot[moved][moved_j] = pos;
            self.elem_slot[e][j] = last;
            self.live[s] = last;
            self.sort
                .decrement(s)
                .expect("set with an uncovered element is in the sort list");
        }
    }
}

/// Runs the randomized covering procedure on `inst`.
///
/// Ties between maximum sets go to the first set of the head bucket.
/// Touches are `O(f · local_n)`.
pub fn random_cover<R: Rng + ?Sized>(inst: &InducedInstance, rng: &mut R) -> CoverRun {
    let mut state = Uncovered::new(inst);
    let mut run = CoverRun::default();
    while let Some(z) = state.sort.head() {
        let size = state.live[z];
        let pivot = state.members[z][rng.gen_range(0..size)];
        let mut orig = Vec::new();
        state.cover(pivot);
        orig.push(pivot);
        let sets = inst.set_of[pivot].clone();
        for &s in &sets {
            while state.live[s] > 0 {
                let e = state.members[s][0];
                state.touches += 1;
                state.cover(e);
                orig.push(e);
            }
        }
        let sets: Vec<SetId> = sets.into_iter().map(|s| inst.global_set(s)).collect();
        run.cover.extend_from_slice(&sets);
        run.pivots.push(PivotRecord {
            pivot: inst.global_elem(pivot),
            level: level_of(size),
            sampled_size: size,
            source: Some(inst.global_set(z)),
            sets,
            orig: orig.into_iter().map(|e| inst.global_elem(e)).collect(),
            extra: Vec::new(),
        });
    }
    run.touches = state.touches;
    run
}
