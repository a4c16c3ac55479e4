//! Decremental set cover: every element starts active and may only be
//! deleted.
//!
//! The initial cover is one Random Cover run over the whole system. A
//! deleted pivot stays in the pivot set until an update phase discards it;
//! a phase is due once `d_total ≥ ε · p_total`, and it rebuilds every level
//! up to the lowest critical one. Phases repeat until the deleted fraction
//! is back under `ε`.

use std::ops::Deref;

use crate::engine::{CoverEngine, Mode, PhaseReport, UpdateReport};
use crate::error::Result;
use crate::system::{ElemId, SetSystem};

pub use crate::engine::levels::{find_critical_level, is_critical};

#[derive(Debug, Clone)]
pub struct DecrementalSolver<'a> {
    engine: CoverEngine<'a>,
}

impl<'a> DecrementalSolver<'a> {
    /// Covers all of `system`; `eps` must lie in `(0, 1)`.
    pub fn new(system: &'a SetSystem, eps: f64, seed: u64) -> Result<Self> {
        Ok(DecrementalSolver {
            engine: CoverEngine::with_all_active(system, Mode::Decremental, eps, seed)?,
        })
    }

    pub fn delete(&mut self, e: ElemId) -> Result<UpdateReport> {
        self.engine.delete(e)
    }

    /// Runs a single update phase at `level`, which must be critical.
    pub fn update_phase(&mut self, level: usize) -> Result<PhaseReport> {
        self.engine.update_phase(level)
    }

    pub fn engine(&self) -> &CoverEngine<'a> {
        &self.engine
    }
}

impl<'a> Deref for DecrementalSolver<'a> {
    type Target = CoverEngine<'a>;

    fn deref(&self) -> &Self::Target {
        &self.engine
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn sys(n: usize, sets: &[&[usize]]) -> SetSystem {
        SetSystem::from_sets(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn one_big_set() {
        let s = sys(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]);
        let d = DecrementalSolver::new(&s, 0.5, 3).unwrap();
        assert_eq!(d.p_total(), 1);
        assert_eq!(d.pivots().next().unwrap().0.level, 3);
        assert_eq!(d.cover_size(), 1);
        d.audit().unwrap();
    }

    #[test]
    fn singletons_are_level_zero_pivots() {
        let s = sys(5, &[&[0], &[1], &[2], &[3], &[4]]);
        let d = DecrementalSolver::new(&s, 0.5, 3).unwrap();
        assert_eq!(d.p_total(), 5);
        assert!(d.pivots().all(|(r, _)| r.level == 0));
        d.audit().unwrap();
    }

    #[test]
    fn triangle() {
        let s = sys(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let d = DecrementalSolver::new(&s, 0.5, 1).unwrap();
        assert_eq!(d.p_total(), 1);
        assert_eq!(d.cover_size(), 2);
        assert!(d.cover_size() <= s.f() * d.p_total());
    }

    #[test]
    fn non_pivot_delete_is_cheap() {
        let s = sys(4, &[&[0, 1, 2, 3]]);
        let mut d = DecrementalSolver::new(&s, 0.5, 9).unwrap();
        let pivot = d.undeleted_pivots()[0];
        let other = (0..4).find(|&e| e != pivot).unwrap();
        let r = d.delete(other).unwrap();
        assert!(r.phases.is_empty());
        assert!(r.touches <= 2 * s.f() as u64 + 2);
        d.audit().unwrap();
    }

    #[test]
    fn deleting_sole_pivot_rebuilds() {
        let s = sys(4, &[&[0, 1, 2, 3]]);
        let mut d = DecrementalSolver::new(&s, 0.5, 5).unwrap();
        let pivot = d.undeleted_pivots()[0];
        let r = d.delete(pivot).unwrap();
        assert_eq!(r.phases.len(), 1);
        assert_eq!(r.phases[0].x_prime, 3);
        assert_eq!(r.phases[0].new_pivots, 1);
        assert_eq!(d.p_total(), 1);
        assert_eq!(d.d_total(), 0);
        assert!(d.is_active(d.undeleted_pivots()[0]));
        d.audit().unwrap();
    }

    #[test]
    fn lone_level_zero_pivot_leaves_nothing_to_cover() {
        let s = sys(3, &[&[0], &[1, 2]]);
        let mut d = DecrementalSolver::new(&s, 0.9, 0).unwrap();
        let r = d.delete(0).unwrap();
        // one of two pivots deleted: 1 < 0.9 · 2, no phase yet
        assert!(r.phases.is_empty());
        let mut d = DecrementalSolver::new(&s, 0.5, 0).unwrap();
        let r = d.delete(0).unwrap();
        assert_eq!(r.phases.len(), 1);
        assert_eq!((r.phases[0].level, r.phases[0].x_prime), (0, 0));
        assert_eq!(d.p_total(), 1);
        d.audit().unwrap();
    }

    #[test]
    fn overlapping_sets_repick_pivot() {
        // The level-1 pivot's sets also cover a surviving element; deleting
        // the pivot exposes it and a fresh pivot is drawn among survivors.
        let s = sys(4, &[&[0, 1, 2], &[2, 3]]);
        for seed in 0..20 {
            let mut d = DecrementalSolver::new(&s, 0.5, seed).unwrap();
            let first = d.undeleted_pivots();
            let r = d.delete(first[0]).unwrap();
            d.audit().unwrap();
            d.audit_phases(&r.phases).unwrap();
            assert!(!d.undeleted_pivots().contains(&first[0]));
        }
    }

    #[test]
    fn delete_everything() {
        let s = sys(6, &[&[0, 1, 2], &[2, 3], &[3, 4, 5], &[1, 5]]);
        for seed in 0..10 {
            let mut d = DecrementalSolver::new(&s, 0.25, seed).unwrap();
            for e in [3, 0, 5, 1, 4, 2] {
                let r = d.delete(e).unwrap();
                d.audit().unwrap();
                d.audit_phases(&r.phases).unwrap();
            }
            assert_eq!(d.cover_size(), 0);
            assert_eq!(d.p_total(), 0);
        }
    }

    #[test]
    fn contract_errors() {
        let s = sys(2, &[&[0, 1]]);
        let mut d = DecrementalSolver::new(&s, 0.5, 0).unwrap();
        d.delete(0).unwrap();
        assert!(matches!(d.delete(0), Err(Error::Contract(_))));
        assert!(matches!(d.delete(9), Err(Error::Contract(_))));
        assert!(matches!(
            DecrementalSolver::new(&s, 1.0, 0),
            Err(Error::Parameter(_))
        ));
        assert!(DecrementalSolver::new(&s, 0.0, 0).is_err());
    }

    #[test]
    fn empty_phase_is_noop() {
        // level 0 is empty, so it is only vacuously critical
        let s = sys(2, &[&[0, 1]]);
        let mut d = DecrementalSolver::new(&s, 0.5, 0).unwrap();
        assert!(d.update_phase(0).is_err());
        assert_eq!(d.p_total(), 1);
    }
}
