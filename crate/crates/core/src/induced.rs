//! Sub-instances induced by a subset of elements, with compact local ids.
//!
//! Remapping uses two zero-initialised arrays indexed by global id
//! (`map_elem`, `map_set`) that store `local id + 1`, so zero means
//! "unmapped". They are owned by a [`MapScratch`] that lives as long as the
//! solver and is reset after every build by walking the inverse maps, which
//! keeps each build at `O(f · |X'|)` touches regardless of `n` and `m`.

use crate::error::{Error, Result};
use crate::system::{ElemId, SetId, SetSystem};

/// Scratch remapping arrays sized to a parent system.
#[derive(Debug, Clone)]
pub struct MapScratch {
    map_elem: Vec<usize>,
    map_set: Vec<usize>,
}

impl MapScratch {
    pub fn new(n: usize, m: usize) -> Self {
        MapScratch {
            map_elem: vec![0; n],
            map_set: vec![0; m],
        }
    }

    pub fn for_system(system: &SetSystem) -> Self {
        Self::new(system.n(), system.m())
    }

    /// True when every entry is zero, which must hold between builds.
    pub fn is_clean(&self) -> bool {
        self.map_elem.iter().chain(&self.map_set).all(|&x| x == 0)
    }
}

/// A set-cover instance `(X', S')` over local ids `0..local_n`, `0..local_m`.
///
/// Alongside the two membership directions it keeps cross-pointers:
/// `elem_slot[e][j]` is the position of `e` inside `elem_of[set_of[e][j]]`
/// and `set_slot[s][i]` is the position of `s` inside `set_of[elem_of[s][i]]`.
#[derive(Debug, Clone, Default)]
pub struct InducedInstance {
    pub(crate) set_of: Vec<Vec<usize>>,
    pub(crate) elem_of: Vec<Vec<usize>>,
    pub(crate) elem_slot: Vec<Vec<usize>>,
    pub(crate) set_slot: Vec<Vec<usize>>,
    elem_inv: Vec<ElemId>,
    set_inv: Vec<SetId>,
    f: usize,
    touches: u64,
}

impl InducedInstance {
    /// Builds the instance induced by `uncovered` on `system`.
    ///
    /// Every id must be active according to `active` (when given). Repeated
    /// ids are skipped. Sets are numbered in order of first visit.
    pub fn build(
        scratch: &mut MapScratch,
        system: &SetSystem,
        uncovered: &[ElemId],
        active: Option<&[bool]>,
    ) -> Result<Self> {
        debug_assert!(scratch.is_clean());
        let mut inst = InducedInstance::default();
        let mut touches = 0u64;
        for &g in uncovered {
            if g >= system.n() {
                inst.release(scratch);
                return Err(Error::contract(format!("element {g} out of range")));
            }
            if let Some(active) = active {
                if !active[g] {
                    inst.release(scratch);
                    return Err(Error::contract(format!("element {g} is not active")));
                }
            }
            if scratch.map_elem[g] != 0 {
                continue;
            }
            let le = inst.elem_inv.len();
            scratch.map_elem[g] = le + 1;
            inst.elem_inv.push(g);
            inst.set_of.push(Vec::new());
            inst.elem_slot.push(Vec::new());
            for &gs in system.sets_of(g) {
                touches += 1;
                let ls = match scratch.map_set[gs] {
                    0 => {
                        let ls = inst.set_inv.len();
                        scratch.map_set[gs] = ls + 1;
                        inst.set_inv.push(gs);
                        inst.elem_of.push(Vec::new());
                        inst.set_slot.push(Vec::new());
                        ls
                    }
                    k => k - 1,
                };
                inst.link(le, ls);
            }
        }
        inst.release(scratch);
        touches += (inst.elem_inv.len() + inst.set_inv.len()) as u64;
        inst.touches = touches;
        inst.f = inst.set_of.iter().map(Vec::len).max().unwrap_or(0);
        Ok(inst)
    }

    /// The instance induced by every element of `system`.
    pub fn whole(system: &SetSystem) -> Self {
        let all: Vec<ElemId> = (0..system.n()).collect();
        Self::build(&mut MapScratch::for_system(system), system, &all, None)
            .expect("all ids are in range")
    }

    /// An instance given directly by local set lists. Elements that no set
    /// contains are allowed (the instance is then infeasible).
    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Self {
        let mut inst = InducedInstance {
            set_of: vec![Vec::new(); n],
            elem_slot: vec![Vec::new(); n],
            elem_inv: (0..n).collect(),
            set_inv: (0..sets.len()).collect(),
            ..Default::default()
        };
        for (s, elems) in sets.iter().enumerate() {
            inst.elem_of.push(Vec::new());
            inst.set_slot.push(Vec::new());
            for &e in elems {
                assert!(e < n, "element {e} out of range");
                inst.link(e, s);
            }
        }
        inst.f = inst.set_of.iter().map(Vec::len).max().unwrap_or(0);
        inst
    }

    fn link(&mut self, e: usize, s: usize) {
        let j = self.set_of[e].len();
        let i = self.elem_of[s].len();
        self.set_of[e].push(s);
        self.elem_slot[e].push(i);
        self.elem_of[s].push(e);
        self.set_slot[s].push(j);
    }

    /// Zeroes the scratch entries this instance wrote.
    fn release(&self, scratch: &mut MapScratch) {
        for &g in &self.elem_inv {
            scratch.map_elem[g] = 0;
        }
        for &g in &self.set_inv {
            scratch.map_set[g] = 0;
        }
    }

    pub fn local_n(&self) -> usize {
        self.elem_inv.len()
    }

    pub fn local_m(&self) -> usize {
        self.set_inv.len()
    }

    /// Maximum local frequency.
    pub fn f(&self) -> usize {
        self.f
    }

    pub fn sets_of(&self, e: usize) -> &[usize] {
        &self.set_of[e]
    }

    pub fn elems_of(&self, s: usize) -> &[usize] {
        &self.elem_of[s]
    }

    pub fn global_elem(&self, e: usize) -> ElemId {
        self.elem_inv[e]
    }

    pub fn global_set(&self, s: usize) -> SetId {
        self.set_inv[s]
    }

    pub fn global_elems(&self) -> &[ElemId] {
        &self.elem_inv
    }

    pub fn global_sets(&self) -> &[SetId] {
        &self.set_inv
    }

    /// Membership-list entries visited while building.
    pub fn build_touches(&self) -> u64 {
        self.touches
    }
}
