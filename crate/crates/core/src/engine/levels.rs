//! Per-level pivot bookkeeping: the `P[i]`/`D[i]` counters, the critical
//! level search and the level-ordered pivot list.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type PivotId = usize;

/// Pivot and deleted-pivot counts per level, plus their totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCounters {
    pub pivots: Vec<usize>,
    pub deleted: Vec<usize>,
    pub p_total: usize,
    pub d_total: usize,
}

impl LevelCounters {
    pub fn new(max_level: usize) -> Self {
        LevelCounters {
            pivots: vec![0; max_level + 1],
            deleted: vec![0; max_level + 1],
            p_total: 0,
            d_total: 0,
        }
    }

    pub(crate) fn add_pivot(&mut self, level: usize) {
        self.pivots[level] += 1;
        self.p_total += 1;
    }

    pub(crate) fn mark_deleted(&mut self, level: usize) {
        self.deleted[level] += 1;
        self.d_total += 1;
    }

    pub(crate) fn remove_pivot(&mut self, level: usize, deleted: bool) {
        self.pivots[level] -= 1;
        self.p_total -= 1;
        if deleted {
            self.deleted[level] -= 1;
            self.d_total -= 1;
        }
    }

    /// `d_total ≥ ε · p_total` with at least one deleted pivot.
    pub fn triggered(&self, eps: f64) -> bool {
        self.d_total > 0 && reaches(self.d_total, self.p_total, eps)
    }
}

/// Relative slack so that exact ties such as `3 ≥ 0.1 · 30` survive
/// rounding of `eps`.
const TIE_SLACK: f64 = 1e-12;

#[inline]
fn reaches(d: usize, p: usize, eps: f64) -> bool {
    d as f64 >= eps * p as f64 * (1.0 - TIE_SLACK)
}

/// True if every suffix `i..=level` of levels has a deleted fraction of at
/// least `eps`.
pub fn is_critical(pivots: &[usize], deleted: &[usize], eps: f64, level: usize) -> bool {
    let (mut p, mut d) = (0, 0);
    for i in (0..=level).rev() {
        p += pivots[i];
        d += deleted[i];
        if !reaches(d, p, eps) {
            return false;
        }
    }
    true
}

/// Lowest non-empty critical level, in `O(L²)`.
///
/// Empty levels contribute nothing to any suffix sum, so an empty level 0 is
/// vacuously critical; the search skips empty levels so that the returned
/// level always holds a deleted pivot.
pub fn find_critical_level(pivots: &[usize], deleted: &[usize], eps: f64) -> Result<usize> {
    let p: usize = pivots.iter().sum();
    let d: usize = deleted.iter().sum();
    if d == 0 || !reaches(d, p, eps) {
        return Err(Error::contract(format!(
            "no update due: {d} deleted of {p} pivots at eps = {eps}"
        )));
    }
    (0..pivots.len())
        .filter(|&l| pivots[l] > 0)
        .find(|&l| is_critical(pivots, deleted, eps, l))
        .ok_or_else(|| Error::contract("no critical level (counters inconsistent)"))
}

/// Pivots grouped by level, ascending, with no empty groups.
#[derive(Debug, Clone, Default)]
pub struct GreedyList {
    groups: VecDeque<(usize, Vec<PivotId>)>,
}

impl GreedyList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, level: usize, pivot: PivotId) {
        let pos = self.groups.partition_point(|(l, _)| *l < level);
        match self.groups.get_mut(pos) {
            Some((l, ids)) if *l == level => ids.push(pivot),
            _ => self.groups.insert(pos, (level, vec![pivot])),
        }
    }

    /// Removes and returns every pivot at level `≤ level`.
    pub fn take_prefix(&mut self, level: usize) -> Vec<PivotId> {
        let mut out = Vec::new();
        while self.groups.front().is_some_and(|(l, _)| *l <= level) {
            let (_, ids) = self.groups.pop_front().unwrap();
            out.extend(ids);
        }
        out
    }

    /// Merges an ascending list of groups into the list. When all new levels
    /// lie below the current head this is a plain prepend.
    pub fn splice(&mut self, new: Vec<(usize, Vec<PivotId>)>) {
        if new.is_empty() {
            return;
        }
        let below_head = match self.groups.front() {
            Some((head, _)) => new.last().unwrap().0 < *head,
            None => true,
        };
        if below_head {
            for g in new.into_iter().rev() {
                self.groups.push_front(g);
            }
            return;
        }
        for (level, ids) in new {
            for id in ids {
                self.push(level, id);
            }
        }
    }

    pub fn groups(&self) -> impl Iterator<Item = (usize, &[PivotId])> {
        self.groups.iter().map(|(l, ids)| (*l, ids.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(|(_, ids)| ids.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// Groups `(level, pivot)` pairs into ascending non-empty level groups.
pub(crate) fn group_by_level(mut items: Vec<(usize, PivotId)>) -> Vec<(usize, Vec<PivotId>)> {
    items.sort_by_key(|&(l, _)| l);
    let mut out: Vec<(usize, Vec<PivotId>)> = Vec::new();
    for (l, id) in items {
        match out.last_mut() {
            Some((last, ids)) if *last == l => ids.push(id),
            _ => out.push((l, vec![id])),
        }
    }
    out
}
