//! Random and structured set systems.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{stream, INSTANCE_STREAM};
use crate::system::SetSystem;

/// A random system with `m` sets over `n` elements and frequency at most
/// `f_target`. Every element gets a random target frequency in
/// `1..=f_target` (capped by `m`), after one element has been dealt to each
/// set so that no set is empty.
pub fn gen_random_system(n: usize, m: usize, f_target: usize, seed: u64) -> Result<SetSystem> {
    if f_target == 0 {
        return Err(Error::Parameter("f_target must be positive".into()));
    }
    if n > 0 && m == 0 {
        return Err(Error::Parameter("elements need at least one set".into()));
    }
    if m > n.saturating_mul(f_target) {
        return Err(Error::Parameter(format!(
            "{m} non-empty sets cannot fit {n} elements of frequency ≤ {f_target}"
        )));
    }
    let mut rng = stream(seed, INSTANCE_STREAM);
    let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    let mut freq = vec![0usize; n];
    let mut deal: Vec<usize> = (0..n).collect();
    deal.shuffle(&mut rng);
    for (s, set) in sets.iter_mut().enumerate() {
        let e = deal[s % n];
        set.insert(e);
        freq[e] += 1;
    }
    let cap = f_target.min(m);
    let mut order: Vec<usize> = (0..m).collect();
    for e in 0..n {
        let target = rng.gen_range(1..=cap);
        order.shuffle(&mut rng);
        for &s in &order {
            if freq[e] >= target {
                break;
            }
            if sets[s].insert(e) {
                freq[e] += 1;
            }
        }
    }
    SetSystem::from_sets(n, sets.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// `(n - 2) / f` disjoint `f`-cliques whose edges are the sets, plus one
/// isolated edge on the last two elements.
/// Clique vertices have frequency `f - 1`, the isolated edge's ends
/// frequency 1.
pub fn gen_clique_instance(f: usize, n: usize) -> Result<SetSystem> {
    if f < 2 || n < 2 || !(n - 2).is_multiple_of(f) {
        return Err(Error::Parameter(format!(
            "need f ≥ 2 and f | n - 2, got f = {f}, n = {n}"
        )));
    }
    let mut sets = Vec::new();
    for c in 0..(n - 2) / f {
        let base = c * f;
        for a in 0..f {
            for b in a + 1..f {
                sets.push(vec![base + a, base + b]);
            }
        }
    }
    sets.push(vec![n - 2, n - 1]);
    SetSystem::from_sets(n, sets)
}
