//! Fully dynamic set cover under element insertions and deletions.
//!
//! An inserted element that some in-cover set already contains is
//! attributed, as an extra element, to the pivot owning the highest-level
//! such set; otherwise it becomes a level-0 pivot and brings in every set
//! containing it. Deletions trigger update phases as in the decremental
//! solver, but a phase first moves exposed elements onto surviving
//! higher-level sets (movement step) and only re-covers the rest (covering
//! step). Newly covered elements become original elements of their pivot.
//!
//! Deleting and reinserting an element yields a new logical copy: its old
//! accounting is dropped on deletion, and a deleted pivot record stays
//! deleted even after its element comes back.

use std::ops::Deref;

use crate::engine::{CoverEngine, Mode, PhaseReport, UpdateReport};
use crate::error::{Error, Result};
use crate::system::{ElemId, SetSystem};

#[derive(Debug, Clone)]
pub struct FullyDynamicSolver<'a> {
    engine: CoverEngine<'a>,
}

impl<'a> FullyDynamicSolver<'a> {
    /// Starts with no active elements.
    pub fn new(system: &'a SetSystem, eps: f64, seed: u64) -> Result<Self> {
        Ok(FullyDynamicSolver {
            engine: CoverEngine::empty(system, Mode::FullyDynamic, eps, seed)?,
        })
    }

    /// Starts with every element active, covered by one Random Cover run.
    pub fn with_all_active(system: &'a SetSystem, eps: f64, seed: u64) -> Result<Self> {
        Ok(FullyDynamicSolver {
            engine: CoverEngine::with_all_active(system, Mode::FullyDynamic, eps, seed)?,
        })
    }

    pub fn insert(&mut self, e: ElemId) -> Result<UpdateReport> {
        self.engine.insert(e)
    }

    pub fn delete(&mut self, e: ElemId) -> Result<UpdateReport> {
        self.engine.delete(e)
    }

    /// Runs a single update phase at `level`, which must be critical.
    pub fn update_phase(&mut self, level: usize) -> Result<PhaseReport> {
        self.engine.update_phase(level)
    }

    /// Movement step over `x_prime`: every element still inside an in-cover
    /// set is attributed to that set's pivot; the others are returned.
    ///
    /// Elements must be active and currently unaccounted (exposed by a
    /// discard).
    pub fn movement_step(&mut self, x_prime: &[ElemId]) -> Result<Vec<ElemId>> {
        self.check_exposed(x_prime)?;
        Ok(self.engine.movement_step(x_prime))
    }

    /// Covering step over uncovered active elements.
    pub fn covering_step(&mut self, y_prime: &[ElemId]) -> Result<PhaseReport> {
        self.check_exposed(y_prime)?;
        for &e in y_prime {
            if self.engine.system().sets_of(e).iter().any(|&s| self.engine.in_cover(s)) {
                return Err(Error::contract(format!("element {e} is already covered")));
            }
        }
        self.engine.covering_step(y_prime)
    }

    fn check_exposed(&self, elems: &[ElemId]) -> Result<()> {
        for &e in elems {
            if e >= self.engine.system().n() || !self.engine.is_active(e) {
                return Err(Error::contract(format!("element {e} is not active")));
            }
            if self.engine.accounted_to(e).is_some() {
                return Err(Error::contract(format!("element {e} is already accounted")));
            }
        }
        Ok(())
    }

    pub fn engine(&self) -> &CoverEngine<'a> {
        &self.engine
    }
}

impl<'a> Deref for FullyDynamicSolver<'a> {
    type Target = CoverEngine<'a>;

    fn deref(&self) -> &Self::Target {
        &self.engine
    }
}
