//! Exact minimum set cover for small instances.
//!
//! Depth-first branch and bound: take the lowest uncovered element and try
//! each of its `≤ f` sets. A greedy cover seeds the upper bound and
//! `⌈uncovered / largest set⌉` prunes.

use serde::{Deserialize, Serialize};

use crate::induced::InducedInstance;

/// Default limit on the number of sets the exact solver will accept.
pub const DEFAULT_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactResult {
    Optimum(usize),
    /// Some element lies in no set.
    Infeasible,
    /// The instance has more sets than the cap allows; no answer is given.
    ExceedsCap,
}

impl ExactResult {
    pub fn optimum(self) -> Option<usize> {
        match self {
            ExactResult::Optimum(k) => Some(k),
            _ => None,
        }
    }
}

struct Search<'a> {
    inst: &'a InducedInstance,
    masks: Vec<Vec<u64>>,
    widest: usize,
    best: usize,
}

impl Search<'_> {
    fn dfs(&mut self, covered: &mut [u64], left: usize, depth: usize) {
        if left == 0 {
            self.best = self.best.min(depth);
            return;
        }
        if depth + left.div_ceil(self.widest) >= self.best {
            return;
        }
        let e = first_zero(covered, self.inst.local_n());
        for &s in self.inst.sets_of(e) {
            let mut next = covered.to_vec();
            let mut gained = 0;
            for (w, m) in next.iter_mut().zip(&self.masks[s]) {
                gained += (m & !*w).count_ones() as usize;
                *w |= m;
            }
            self.dfs(&mut next, left - gained, depth + 1);
        }
    }
}

fn first_zero(bits: &[u64], n: usize) -> usize {
    for (i, w) in bits.iter().enumerate() {
        if *w != u64::MAX {
            let e = i * 64 + w.trailing_ones() as usize;
            debug_assert!(e < n);
            return e;
        }
    }
    unreachable!("no uncovered element")
}

/// Size of a minimum cover of all of `inst`'s elements, or `ExceedsCap`
/// when `inst` has more than `cap` sets.
pub fn exact_cover(inst: &InducedInstance, cap: usize) -> ExactResult {
    let n = inst.local_n();
    let m = inst.local_m();
    if m > cap {
        return ExactResult::ExceedsCap;
    }
    if (0..n).any(|e| inst.sets_of(e).is_empty()) {
        return ExactResult::Infeasible;
    }
    if n == 0 {
        return ExactResult::Optimum(0);
    }
    let words = n.div_ceil(64);
    let masks: Vec<Vec<u64>> = (0..m)
        .map(|s| {
            let mut mask = vec![0u64; words];
            for &e in inst.elems_of(s) {
                mask[e / 64] |= 1 << (e % 64);
            }
            mask
        })
        .collect();
    let mut covered = vec![0u64; words];
    // padding bits past n count as covered
    if !n.is_multiple_of(64) {
        covered[words - 1] = !0u64 << (n % 64);
    }
    let widest = (0..m).map(|s| inst.elems_of(s).len()).max().unwrap_or(1).max(1);
    let upper = crate::baselines::greedy_cover(inst).cover.len();
    let mut search = Search {
        inst,
        masks,
        widest,
        best: upper,
    };
    search.dfs(&mut covered, n, 0);
    ExactResult::Optimum(search.best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exact(n: usize, sets: &[Vec<usize>]) -> ExactResult {
        exact_cover(&InducedInstance::from_sets(n, sets), DEFAULT_CAP)
    }

    /// Minimum over all `2^m` subfamilies.
    fn enumerate(n: usize, sets: &[Vec<usize>]) -> Option<usize> {
        let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
        let masks: Vec<u32> = sets.iter().map(|s| s.iter().fold(0, |a, &e| a | 1 << e)).collect();
        (0u32..1 << sets.len())
            .filter(|pick| {
                let u = (0..sets.len()).filter(|i| pick >> i & 1 == 1).fold(0, |a, i| a | masks[i]);
                u == full
            })
            .map(|pick| pick.count_ones() as usize)
            .min()
    }

    #[test]
    fn small_cases() {
        assert_eq!(exact(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]), ExactResult::Optimum(2));
        assert_eq!(exact(4, &[vec![0, 1, 2, 3]]), ExactResult::Optimum(1));
        assert_eq!(exact(0, &[]), ExactResult::Optimum(0));
        assert_eq!(exact(2, &[vec![0]]), ExactResult::Infeasible);
    }

    #[test]
    fn cap_is_explicit() {
        let sets: Vec<Vec<usize>> = (0..30).map(|i| vec![i]).collect();
        let inst = InducedInstance::from_sets(30, &sets);
        assert_eq!(exact_cover(&inst, 24), ExactResult::ExceedsCap);
        assert_eq!(exact_cover(&inst, 30), ExactResult::Optimum(30));
    }

    #[test]
    fn wide_universe() {
        // more than one bitset word
        let sets = vec![(0..70).collect(), (0..35).collect(), (35..70).collect(), vec![69]];
        assert_eq!(exact(70, &sets), ExactResult::Optimum(1));
    }

    proptest! {
        #[test]
        fn agrees_with_enumeration(
            n in 1usize..10,
            raw in prop::collection::vec(prop::collection::btree_set(0usize..10, 1..5), 1..16),
            rot in 0usize..16,
        ) {
            let mut sets: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|s| s.into_iter().filter(|&e| e < n).collect::<Vec<_>>())
                .filter(|s| !s.is_empty())
                .collect();
            let want = enumerate(n, &sets);
            let got = exact(n, &sets);
            prop_assert_eq!(got.optimum(), want);
            if want.is_none() {
                prop_assert_eq!(got, ExactResult::Infeasible);
            }
            // order independence
            if !sets.is_empty() {
                let k = rot % sets.len();
                sets.rotate_left(k);
                sets.reverse();
                prop_assert_eq!(exact(n, &sets).optimum(), want);
            }
        }
    }
}
