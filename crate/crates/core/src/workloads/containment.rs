//! Planted containment instances: two families `𝒜`, `ℬ` of subsets of
//! `[n]`.
//!
//! A YES instance has some `B ∈ ℬ` contained in some `A ∈ 𝒜`. A NO
//! instance has no `B ∈ ℬ` covered by the union of any `t` members of `𝒜`.
//! Both are produced by random generation plus exhaustive checking, so the
//! universe is limited to 64 elements and `𝒜` to 16 sets.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{stream, INSTANCE_STREAM};

pub const MAX_N: usize = 64;
pub const MAX_A: usize = 16;
const ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Planted {
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentInstance {
    pub n: usize,
    pub a_sets: Vec<Vec<usize>>,
    pub b_sets: Vec<Vec<usize>>,
    pub t: usize,
    pub planted: Planted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContainmentParams {
    pub n: usize,
    pub a_count: usize,
    pub b_count: usize,
    pub t: usize,
    pub planted: Planted,
}

pub(crate) fn mask(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &e| m | 1 << e)
}

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&e| mask >> e & 1 == 1).collect()
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl ContainmentInstance {
    /// Samples until the planted property holds and `𝒜` covers `[n]`.
    ///
    /// Every element goes into one random member of `𝒜` and into each other
    /// member with probability 1/10; members of `ℬ` take each element with
    /// probability 2/3. A YES instance then replaces one `B` by a random
    /// non-empty subset of one `A`.
    pub fn generate(p: ContainmentParams, seed: u64) -> Result<Self> {
        if p.n == 0 || p.n > MAX_N || p.a_count == 0 || p.a_count > MAX_A || p.b_count == 0 || p.t == 0 {
            return Err(Error::Parameter(format!(
                "need 1 ≤ n ≤ {MAX_N}, 1 ≤ |A| ≤ {MAX_A}, |B| ≥ 1, t ≥ 1; got {p:?}"
            )));
        }
        let mut rng = stream(seed, INSTANCE_STREAM);
        for _ in 0..ATTEMPTS {
            let mut a = vec![0u64; p.a_count];
            for e in 0..p.n {
                a[rng.gen_range(0..p.a_count)] |= 1 << e;
                for m in a.iter_mut() {
                    if rng.gen_bool(0.1) {
                        *m |= 1 << e;
                    }
                }
            }
            let mut b: Vec<u64> = (0..p.b_count)
                .map(|_| (0..p.n).filter(|_| rng.gen_bool(2.0 / 3.0)).fold(0, |m, e| m | 1 << e))
                .collect();
            if p.planted == Planted::Yes {
                let host = a[rng.gen_range(0..p.a_count)];
                let sub = members(host)
                    .into_iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .fold(0, |m, e| m | 1 << e);
                let sub = if sub == 0 { host & host.wrapping_neg() } else { sub };
                let slot = rng.gen_range(0..p.b_count);
                b[slot] = sub;
            }
            if b.contains(&0) {
                continue;
            }
            let ci = ContainmentInstance {
                n: p.n,
                a_sets: a.iter().map(|&m| members(m)).collect(),
                b_sets: b.iter().map(|&m| members(m)).collect(),
                t: p.t,
                planted: p.planted,
            };
            if ci.verify().is_ok() {
                return Ok(ci);
            }
        }
        Err(Error::Parameter(format!("no instance found for {p:?}")))
    }

    /// Fewest members of `𝒜` whose union contains `target`, by exhaustive
    /// search over subfamilies; `None` if even all of `𝒜` falls short.
    pub fn cover_number(&self, target: &[usize]) -> Option<usize> {
        let want = mask(target);
        let a: Vec<u64> = self.a_sets.iter().map(|s| mask(s)).collect();
        (0u32..1 << a.len())
            .filter(|pick| {
                let u = (0..a.len()).filter(|i| pick >> i & 1 == 1).fold(0, |m, i| m | a[i]);
                u & want == want
            })
            .map(|pick| pick.count_ones() as usize)
            .min()
    }

    /// Index of some `B` contained in some `A`.
    pub fn contained_pair(&self) -> Option<(usize, usize)> {
        for (j, b) in self.b_sets.iter().enumerate() {
            let bm = mask(b);
            for (i, a) in self.a_sets.iter().enumerate() {
                if bm & !mask(a) == 0 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Exhaustively checks shape and the planted property.
    pub fn verify(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        if self.n == 0 || self.n > MAX_N || self.a_sets.len() > MAX_A {
            return bad(format!("instance too large to verify (n = {}, |A| = {})", self.n, self.a_sets.len()));
        }
        let all = self.a_sets.iter().fold(0, |m, s| m | mask(s));
        if all != full(self.n) {
            return bad("the A-family does not cover the universe".into());
        }
        if self.a_sets.iter().chain(&self.b_sets).any(|s| s.is_empty()) {
            return bad("empty member".into());
        }
        match self.planted {
            Planted::Yes if self.contained_pair().is_none() => bad("no B lies inside any A".into()),
            Planted::No => {
                for (j, b) in self.b_sets.iter().enumerate() {
                    if self.cover_number(b).is_some_and(|c| c <= self.t) {
                        return bad(format!("B[{j}] is covered by at most t = {} sets", self.t));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(planted: Planted) -> ContainmentParams {
        ContainmentParams {
            n: 12,
            a_count: 6,
            b_count: 6,
            t: 3,
            planted,
        }
    }

    #[test]
    fn planted_yes() {
        for seed in 0..10 {
            let ci = ContainmentInstance::generate(params(Planted::Yes), seed).unwrap();
            let (i, j) = ci.contained_pair().unwrap();
            assert!(ci.b_sets[j].iter().all(|e| ci.a_sets[i].contains(e)));
            assert_eq!(ci.cover_number(&ci.b_sets[j]), Some(1));
        }
    }

    #[test]
    fn planted_no() {
        for seed in 0..10 {
            let ci = ContainmentInstance::generate(params(Planted::No), seed).unwrap();
            for b in &ci.b_sets {
                assert!(ci.cover_number(b).unwrap() > 3);
            }
            assert!(ci.contained_pair().is_none());
        }
    }

    #[test]
    fn verify_catches_mislabels() {
        let mut ci = ContainmentInstance::generate(params(Planted::Yes), 1).unwrap();
        ci.planted = Planted::No;
        assert!(ci.verify().is_err());
        let ci = ContainmentInstance {
            n: 3,
            a_sets: vec![vec![0, 1]],
            b_sets: vec![vec![2]],
            t: 1,
            planted: Planted::No,
        };
        assert!(ci.verify().is_err());
    }

    #[test]
    fn bad_params() {
        let mut p = params(Planted::No);
        p.n = 65;
        assert!(ContainmentInstance::generate(p, 0).is_err());
    }
}
