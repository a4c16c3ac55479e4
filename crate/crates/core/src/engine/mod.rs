//! Solver state shared by the decremental and fully dynamic algorithms.
//!
//! The cover is described entirely by its pivots: each in-cover set is owned
//! by the one pivot that brought it in, and each active element is accounted
//! to exactly one pivot (in its `orig` or `extra` list). Pivots are grouped by
//! level; an update phase at level `ℓ` throws away every pivot at level `≤ ℓ`
//! and re-covers the elements they accounted for.

pub mod audit;
pub mod levels;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::induced::{InducedInstance, MapScratch};
use crate::random_cover::{random_cover, PivotRecord};
use crate::system::{ElemId, SetId, SetSystem};

pub use audit::Violation;
pub use levels::{find_critical_level, is_critical, GreedyList, LevelCounters, PivotId};

const NIL: usize = usize::MAX;

/// Which algorithm drives the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Decremental,
    FullyDynamic,
}

/// Outcome of one update phase.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub level: usize,
    /// Pivots discarded (all levels `≤ level`).
    pub discarded: usize,
    /// `|X'|`: active elements accounted to the discarded pivots.
    pub x_prime: usize,
    /// Elements reattached to surviving higher-level sets.
    pub moved: usize,
    /// `|Y'|`: elements handed to the covering step.
    pub y_prime: usize,
    pub new_pivots: usize,
    /// Levels of the new pivots in selection order.
    pub new_pivot_levels: Vec<usize>,
    pub touches: u64,
    /// `Σ_{p discarded} f · 2^{ℓ(p)+1}`, the bound on `|X'|` for
    /// pivots without extra elements.
    pub x_prime_bound: u64,
}

/// Outcome of one insertion or deletion.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct UpdateReport {
    pub touches: u64,
    pub phases: Vec<PhaseReport>,
    /// The inserted element became a new pivot.
    pub new_pivot: bool,
}

#[derive(Debug, Clone, Copy)]
struct Acct {
    pivot: PivotId,
    extra: bool,
    idx: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct Pivot {
    pub(crate) rec: PivotRecord,
    pub(crate) deleted: bool,
}

#[derive(Debug, Clone)]
pub struct CoverEngine<'a> {
    system: &'a SetSystem,
    mode: Mode,
    eps: f64,
    rng: ChaCha8Rng,
    scratch: MapScratch,

    active: Vec<bool>,
    live_elem_of: Vec<Vec<ElemId>>,
    live_back: Vec<Vec<usize>>,
    live_pos: Vec<Vec<usize>>,

    pivots: Vec<Option<Pivot>>,
    free: Vec<PivotId>,
    pivot_of_elem: Vec<Option<PivotId>>,
    acct: Vec<Option<Acct>>,
    in_cover: Vec<Option<PivotId>>,
    cover_size: usize,

    counters: LevelCounters,
    greedy: GreedyList,

    moves: Vec<u32>,
    max_moves: u32,
    touches: u64,
    last_phases: Vec<PhaseReport>,
}

impl<'a> CoverEngine<'a> {
    /// An engine with no active elements and an empty cover.
    pub fn empty(system: &'a SetSystem, mode: Mode, eps: f64, seed: u64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::Parameter(format!("epsilon must be in (0, 1), got {eps}")));
        }
        let n = system.n();
        let m = system.m();
        Ok(CoverEngine {
            system,
            mode,
            eps,
            rng: crate::rng::stream(seed, crate::rng::SOLVER_STREAM),
            scratch: MapScratch::for_system(system),
            active: vec![false; n],
            live_elem_of: vec![Vec::new(); m],
            live_back: vec![Vec::new(); m],
            live_pos: (0..n).map(|e| vec![NIL; system.sets_of(e).len()]).collect(),
            pivots: Vec::new(),
            free: Vec::new(),
            pivot_of_elem: vec![None; n],
            acct: vec![None; n],
            in_cover: vec![None; m],
            cover_size: 0,
            counters: LevelCounters::new(system.max_level()),
            greedy: GreedyList::new(),
            moves: vec![0; n],
            max_moves: 0,
            touches: 0,
            last_phases: Vec::new(),
        })
    }

    /// Activates every element and covers them with one Random Cover run.
    pub fn with_all_active(
        system: &'a SetSystem,
        mode: Mode,
        eps: f64,
        seed: u64,
    ) -> Result<Self> {
        let mut engine = Self::empty(system, mode, eps, seed)?;
        for e in 0..system.n() {
            engine.activate(e);
        }
        let all: Vec<ElemId> = (0..system.n()).collect();
        let report = engine.covering_step(&all)?;
        engine.last_phases = vec![report];
        Ok(engine)
    }

    // ---- element activity and live membership lists ----

    fn activate(&mut self, e: ElemId) {
        self.active[e] = true;
        for (j, &s) in self.system.sets_of(e).iter().enumerate() {
            self.touches += 1;
            self.live_pos[e][j] = self.live_elem_of[s].len();
            self.live_elem_of[s].push(e);
            self.live_back[s].push(j);
        }
    }

    fn deactivate(&mut self, e: ElemId) {
        self.active[e] = false;
        for (j, &s) in self.system.sets_of(e).iter().enumerate() {
            self.touches += 1;
            let pos = self.live_pos[e][j];
            self.live_elem_of[s].swap_remove(pos);
            self.live_back[s].swap_remove(pos);
            if pos < self.live_elem_of[s].len() {
                let moved = self.live_elem_of[s][pos];
                let mj = self.live_back[s][pos];
                self.live_pos[moved][mj] = pos;
            }
            self.live_pos[e][j] = NIL;
        }
    }

    // ---- accounting of elements to pivots ----

    fn record_mut(&mut self, id: PivotId) -> &mut Pivot {
        self.pivots[id].as_mut().expect("live pivot id")
    }

    pub(crate) fn record(&self, id: PivotId) -> &Pivot {
        self.pivots[id].as_ref().expect("live pivot id")
    }

    fn attach(&mut self, e: ElemId, pivot: PivotId, extra: bool) {
        let rec = &mut self.record_mut(pivot).rec;
        let list = if extra { &mut rec.extra } else { &mut rec.orig };
        let idx = list.len();
        list.push(e);
        self.acct[e] = Some(Acct { pivot, extra, idx });
    }

    fn detach(&mut self, e: ElemId) {
        let Some(a) = self.acct[e].take() else {
            return;
        };
        let rec = &mut self.record_mut(a.pivot).rec;
        let list = if a.extra { &mut rec.extra } else { &mut rec.orig };
        list.swap_remove(a.idx);
        if let Some(&moved) = list.get(a.idx) {
            if let Some(m) = self.acct[moved].as_mut() {
                m.idx = a.idx;
            }
        }
    }

    fn alloc(&mut self, pivot: Pivot) -> PivotId {
        match self.free.pop() {
            Some(id) => {
                self.pivots[id] = Some(pivot);
                id
            }
            None => {
                self.pivots.push(Some(pivot));
                self.pivots.len() - 1
            }
        }
    }

    /// Highest-level in-cover set containing `e` (lowest set id on ties),
    /// returned as its owning pivot.
    fn highest_cover(&mut self, e: ElemId) -> Option<PivotId> {
        let mut best: Option<(usize, PivotId)> = None;
        for &s in self.system.sets_of(e) {
            self.touches += 1;
            if let Some(p) = self.in_cover[s] {
                let level = self.record(p).rec.level;
                if best.is_none_or(|(bl, _)| level > bl) {
                    best = Some((level, p));
                }
            }
        }
        best.map(|(_, p)| p)
    }

    fn note_move(&mut self, e: ElemId) {
        self.moves[e] += 1;
        self.max_moves = self.max_moves.max(self.moves[e]);
    }

    // ---- updates ----

    pub(crate) fn delete(&mut self, e: ElemId) -> Result<UpdateReport> {
        if e >= self.system.n() {
            return Err(Error::contract(format!("element {e} out of range")));
        }
        if !self.active[e] {
            return Err(Error::contract(format!("delete of inactive element {e}")));
        }
        let start = self.touches;
        self.last_phases.clear();
        self.deactivate(e);
        self.detach(e);
        self.moves[e] = 0;
        if let Some(id) = self.pivot_of_elem[e] {
            let piv = self.record_mut(id);
            if !piv.deleted {
                piv.deleted = true;
                let level = piv.rec.level;
                self.counters.mark_deleted(level);
            }
        }
        let mut phases = Vec::new();
        while self.counters.triggered(self.eps) {
            let level =
                find_critical_level(&self.counters.pivots, &self.counters.deleted, self.eps)?;
            phases.push(self.update_phase(level)?);
        }
        self.last_phases = phases.clone();
        Ok(UpdateReport {
            touches: self.touches - start,
            phases,
            new_pivot: false,
        })
    }

    pub(crate) fn insert(&mut self, e: ElemId) -> Result<UpdateReport> {
        if e >= self.system.n() {
            return Err(Error::contract(format!("element {e} out of range")));
        }
        if self.active[e] {
            return Err(Error::contract(format!("insert of active element {e}")));
        }
        let start = self.touches;
        self.last_phases.clear();
        self.activate(e);
        self.moves[e] = 0;
        let new_pivot = match self.highest_cover(e) {
            Some(owner) => {
                self.attach(e, owner, true);
                false
            }
            None => {
                let sets = self.system.sets_of(e).to_vec();
                let id = self.alloc(Pivot {
                    rec: PivotRecord {
                        pivot: e,
                        level: 0,
                        sampled_size: 1,
                        source: None,
                        sets: sets.clone(),
                        orig: Vec::new(),
                        extra: Vec::new(),
                    },
                    deleted: false,
                });
                for s in sets {
                    self.touches += 1;
                    self.in_cover[s] = Some(id);
                    self.cover_size += 1;
                }
                self.attach(e, id, false);
                self.pivot_of_elem[e] = Some(id);
                self.counters.add_pivot(0);
                self.greedy.push(0, id);
                true
            }
        };
        Ok(UpdateReport {
            touches: self.touches - start,
            phases: Vec::new(),
            new_pivot,
        })
    }

    /// Runs one update phase at `level`, which must be non-empty and critical.
    pub(crate) fn update_phase(&mut self, level: usize) -> Result<PhaseReport> {
        if level >= self.counters.pivots.len()
            || self.counters.pivots[level] == 0
            || !is_critical(&self.counters.pivots, &self.counters.deleted, self.eps, level)
        {
            return Err(Error::contract(format!("level {level} is not critical")));
        }
        let start = self.touches;
        let f = self.system.f() as u64;
        let discarded = self.greedy.take_prefix(level);
        let mut x_prime = Vec::new();
        let mut bound = 0u64;
        for &id in &discarded {
            let piv = self.pivots[id].take().expect("greedy lists live pivots");
            self.free.push(id);
            bound += f << (piv.rec.level + 1);
            self.counters.remove_pivot(piv.rec.level, piv.deleted);
            for &s in &piv.rec.sets {
                self.touches += 1;
                self.in_cover[s] = None;
                self.cover_size -= 1;
            }
            for e in piv.rec.covered() {
                self.touches += 1;
                self.acct[e] = None;
                x_prime.push(e);
            }
            if self.pivot_of_elem[piv.rec.pivot] == Some(id) {
                self.pivot_of_elem[piv.rec.pivot] = None;
            }
        }
        let y_prime = self.movement_step(&x_prime);
        let covering = self.covering_step(&y_prime)?;
        Ok(PhaseReport {
            level,
            discarded: discarded.len(),
            x_prime: x_prime.len(),
            moved: x_prime.len() - y_prime.len(),
            y_prime: y_prime.len(),
            new_pivots: covering.new_pivots,
            new_pivot_levels: covering.new_pivot_levels,
            touches: self.touches - start,
            x_prime_bound: bound,
        })
    }

    /// Attributes every element of `x_prime` that some in-cover set still
    /// contains to the owner of the highest-level such set. Returns the rest.
    pub(crate) fn movement_step(&mut self, x_prime: &[ElemId]) -> Vec<ElemId> {
        let mut rest = Vec::new();
        for &e in x_prime {
            match self.highest_cover(e) {
                Some(owner) => {
                    self.attach(e, owner, true);
                    self.note_move(e);
                }
                None => rest.push(e),
            }
        }
        rest
    }

    /// Runs Random Cover on the instance induced by the uncovered active
    /// elements `y_prime` and installs the resulting pivots.
    pub(crate) fn covering_step(&mut self, y_prime: &[ElemId]) -> Result<PhaseReport> {
        let start = self.touches;
        let inst = InducedInstance::build(
            &mut self.scratch,
            self.system,
            y_prime,
            Some(&self.active),
        )?;
        let run = random_cover(&inst, &mut self.rng);
        self.touches += inst.build_touches() + run.touches;
        let mut placed = Vec::with_capacity(run.pivots.len());
        let mut levels = Vec::with_capacity(run.pivots.len());
        for mut rec in run.pivots {
            let orig = std::mem::take(&mut rec.orig);
            let (pivot, level) = (rec.pivot, rec.level);
            let sets = rec.sets.clone();
            let id = self.alloc(Pivot {
                rec,
                deleted: false,
            });
            for s in sets {
                debug_assert!(self.in_cover[s].is_none());
                self.in_cover[s] = Some(id);
                self.cover_size += 1;
            }
            for e in orig {
                self.attach(e, id, false);
                self.moves[e] = 0;
            }
            self.pivot_of_elem[pivot] = Some(id);
            self.counters.add_pivot(level);
            placed.push((level, id));
            levels.push(level);
        }
        self.greedy.splice(levels::group_by_level(placed));
        Ok(PhaseReport {
            y_prime: y_prime.len(),
            new_pivots: levels.len(),
            new_pivot_levels: levels,
            touches: self.touches - start,
            ..Default::default()
        })
    }

    // ---- queries ----

    pub fn system(&self) -> &'a SetSystem {
        self.system
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn epsilon(&self) -> f64 {
        self.eps
    }

    pub fn is_active(&self, e: ElemId) -> bool {
        self.active[e]
    }

    pub fn active_elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.active.len()).filter(|&e| self.active[e])
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    /// Undeleted elements of `s` (the live membership list).
    pub fn live_members(&self, s: SetId) -> &[ElemId] {
        &self.live_elem_of[s]
    }

    pub fn cover_size(&self) -> usize {
        self.cover_size
    }

    pub fn in_cover(&self, s: SetId) -> bool {
        self.in_cover[s].is_some()
    }

    pub fn cover(&self) -> Vec<SetId> {
        (0..self.in_cover.len()).filter(|&s| self.in_cover[s].is_some()).collect()
    }

    pub fn counters(&self) -> &LevelCounters {
        &self.counters
    }

    pub fn p_total(&self) -> usize {
        self.counters.p_total
    }

    pub fn d_total(&self) -> usize {
        self.counters.d_total
    }

    pub fn greedy(&self) -> &GreedyList {
        &self.greedy
    }

    /// All current pivots with their deleted flag, in level order.
    pub fn pivots(&self) -> impl Iterator<Item = (&PivotRecord, bool)> + '_ {
        self.greedy.groups().flat_map(move |(_, ids)| {
            ids.iter().map(move |&id| {
                let p = self.record(id);
                (&p.rec, p.deleted)
            })
        })
    }

    /// Pivot elements that are still active.
    pub fn undeleted_pivots(&self) -> Vec<ElemId> {
        self.pivots()
            .filter(|(_, deleted)| !deleted)
            .map(|(r, _)| r.pivot)
            .collect()
    }

    /// The pivot an active element is accounted to, and whether as extra.
    pub fn accounted_to(&self, e: ElemId) -> Option<(&PivotRecord, bool)> {
        self.acct[e].map(|a| (&self.record(a.pivot).rec, a.extra))
    }

    /// Level of the pivot owning in-cover set `s`.
    pub fn set_level(&self, s: SetId) -> Option<usize> {
        self.in_cover[s].map(|p| self.record(p).rec.level)
    }

    /// Largest number of consecutive movement steps any element took
    /// without being re-covered as an original element.
    pub fn max_moves(&self) -> u32 {
        self.max_moves
    }

    pub fn touches(&self) -> u64 {
        self.touches
    }

    /// Phases run by the most recent update (the initial covering run right
    /// after construction).
    pub fn last_phases(&self) -> &[PhaseReport] {
        &self.last_phases
    }
}
