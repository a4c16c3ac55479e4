//! Full structural audit of a [`CoverEngine`], recomputed from scratch.

use std::fmt;

use super::{CoverEngine, Mode, PhaseReport};
use crate::random_cover::level_of;

/// First failed check, with a human-readable counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

impl std::error::Error for Violation {}

fn fail<T>(check: &'static str, detail: impl Into<String>) -> Result<T, Violation> {
    Err(Violation {
        check,
        detail: detail.into(),
    })
}

macro_rules! ensure {
    ($cond:expr, $check:literal, $($fmt:tt)+) => {
        if !$cond {
            return fail($check, format!($($fmt)+));
        }
    };
}

impl CoverEngine<'_> {
    /// Checks every structural invariant of the solver state.
    ///
    /// Feasibility, pivot independence, `|F| ≤ f·|P|`, the deleted-pivot
    /// budget, counter and level-list consistency, the accounting partition
    /// and the live membership lists.
    pub fn audit(&self) -> Result<(), Violation> {
        let sys = self.system;
        let n = sys.n();
        let f = sys.f();

        // live membership lists
        for s in 0..sys.m() {
            let mut want: Vec<_> = sys.elems_of(s).iter().copied().filter(|&e| self.active[e]).collect();
            let mut got = self.live_elem_of[s].clone();
            want.sort_unstable();
            got.sort_unstable();
            ensure!(want == got, "live-lists", "set {s}: live {got:?}, expected {want:?}");
        }

        // feasibility
        for e in 0..n {
            if self.active[e] {
                ensure!(
                    sys.sets_of(e).iter().any(|&s| self.in_cover[s].is_some()),
                    "feasibility",
                    "active element {e} is uncovered"
                );
            }
        }

        // registry, greedy list and counters
        let mut seen = vec![false; self.pivots.len()];
        let mut pivots = vec![0usize; self.counters.pivots.len()];
        let mut deleted = vec![0usize; self.counters.deleted.len()];
        let mut prev_level = None;
        for (level, ids) in self.greedy.groups() {
            ensure!(!ids.is_empty(), "greedy-order", "empty group at level {level}");
            ensure!(
                prev_level.is_none_or(|p| p < level),
                "greedy-order",
                "level {level} after {prev_level:?}"
            );
            prev_level = Some(level);
            for &id in ids {
                ensure!(
                    self.pivots.get(id).is_some_and(Option::is_some),
                    "greedy-order",
                    "pivot id {id} is not live"
                );
                ensure!(!seen[id], "greedy-order", "pivot id {id} listed twice");
                seen[id] = true;
                let piv = self.record(id);
                ensure!(
                    piv.rec.level == level,
                    "greedy-order",
                    "pivot {} of level {} filed under {level}",
                    piv.rec.pivot,
                    piv.rec.level
                );
                pivots[level] += 1;
                if piv.deleted {
                    deleted[level] += 1;
                }
            }
        }
        let live = self.pivots.iter().filter(|p| p.is_some()).count();
        ensure!(
            live == seen.iter().filter(|&&s| s).count(),
            "greedy-order",
            "{live} live pivots, greedy list holds fewer"
        );
        ensure!(
            pivots == self.counters.pivots && deleted == self.counters.deleted,
            "counter-recount",
            "P {:?} / D {:?} stored, recount P {pivots:?} / D {deleted:?}",
            self.counters.pivots,
            self.counters.deleted
        );
        ensure!(
            self.counters.p_total == pivots.iter().sum::<usize>()
                && self.counters.d_total == deleted.iter().sum::<usize>(),
            "counter-recount",
            "totals P~={} D~={} do not match per-level sums",
            self.counters.p_total,
            self.counters.d_total
        );

        // per-pivot records
        let mut owned = 0;
        for (id, slot) in self.pivots.iter().enumerate() {
            let Some(piv) = slot else { continue };
            let rec = &piv.rec;
            ensure!(
                rec.sampled_size >= 1 && level_of(rec.sampled_size) == rec.level,
                "pivot-record",
                "pivot {} has level {} but sampled size {}",
                rec.pivot,
                rec.level,
                rec.sampled_size
            );
            ensure!(rec.sets.len() <= f, "pivot-record", "pivot {} owns {} > f sets", rec.pivot, rec.sets.len());
            ensure!(
                self.pivot_of_elem[rec.pivot] == Some(id),
                "pivot-record",
                "pivot element {} not mapped to its record",
                rec.pivot
            );
            if !piv.deleted {
                ensure!(self.active[rec.pivot], "pivot-record", "undeleted pivot {} is inactive", rec.pivot);
                ensure!(
                    rec.orig.contains(&rec.pivot),
                    "pivot-record",
                    "undeleted pivot {} missing from its own orig list",
                    rec.pivot
                );
            }
            for &s in &rec.sets {
                ensure!(
                    self.in_cover[s] == Some(id),
                    "set-ownership",
                    "set {s} of pivot {} is owned by {:?}",
                    rec.pivot,
                    self.in_cover[s]
                );
                ensure!(
                    sys.sets_of(rec.pivot).contains(&s),
                    "set-ownership",
                    "set {s} does not contain its pivot {}",
                    rec.pivot
                );
            }
            owned += rec.sets.len();
            for (list, extra) in [(&rec.orig, false), (&rec.extra, true)] {
                for (idx, &e) in list.iter().enumerate() {
                    ensure!(self.active[e], "accounting", "inactive element {e} accounted to pivot {}", rec.pivot);
                    let a = self.acct[e];
                    ensure!(
                        a.is_some_and(|a| a.pivot == id && a.extra == extra && a.idx == idx),
                        "accounting",
                        "element {e} listed by pivot {} but indexed as {a:?}",
                        rec.pivot
                    );
                    ensure!(
                        sys.sets_of(e).iter().any(|&s| self.in_cover[s] == Some(id)),
                        "accounting",
                        "element {e} accounted to pivot {} lies in none of its sets",
                        rec.pivot
                    );
                }
            }
        }
        ensure!(
            owned == self.cover_size && self.in_cover.iter().filter(|o| o.is_some()).count() == owned,
            "set-ownership",
            "cover size {} but {owned} owned sets",
            self.cover_size
        );
        for e in 0..n {
            ensure!(
                self.active[e] == self.acct[e].is_some(),
                "accounting",
                "element {e}: active = {}, accounted = {}",
                self.active[e],
                self.acct[e].is_some()
            );
        }

        // independence of undeleted pivots
        let undeleted: Vec<bool> = {
            let mut v = vec![false; n];
            for (rec, del) in self.pivots() {
                if !del {
                    v[rec.pivot] = true;
                }
            }
            v
        };
        for s in 0..sys.m() {
            if self.in_cover[s].is_some() {
                let inside: Vec<_> = sys.elems_of(s).iter().copied().filter(|&e| undeleted[e]).collect();
                ensure!(
                    inside.len() <= 1,
                    "pivot-independence",
                    "in-cover set {s} contains undeleted pivots {inside:?}"
                );
            }
        }

        // size bounds
        let p = self.counters.p_total;
        let d = self.counters.d_total;
        ensure!(
            self.cover_size <= f * p,
            "cover-bound",
            "|F| = {} > f·|P| = {f}·{p}",
            self.cover_size
        );
        ensure!(
            p == 0 || (d as f64) < self.eps * p as f64,
            "deleted-budget",
            "{d} deleted of {p} pivots at eps = {}",
            self.eps
        );
        ensure!(
            p as f64 * (1.0 - self.eps) <= (p - d) as f64 + 1e-9,
            "deleted-budget",
            "|P| = {p} > |U|/(1-eps) with |U| = {}",
            p - d
        );

        let max_moves = level_of(n.max(1)) as u32 + 1;
        ensure!(
            self.max_moves <= max_moves,
            "movement-bound",
            "an element moved {} times, bound {max_moves}",
            self.max_moves
        );
        Ok(())
    }

    /// Checks the per-phase facts of the most recent update: levels within
    /// each Random Cover run are non-increasing and, for the decremental
    /// solver, no element moved and every new pivot sits at level `≤ ℓ`
    /// with `|X'|` inside the `Σ f·2^{ℓ(p)+1}` bound.
    pub fn audit_phases(&self, phases: &[PhaseReport]) -> Result<(), Violation> {
        for ph in phases {
            ensure!(
                ph.new_pivot_levels.windows(2).all(|w| w[0] >= w[1]),
                "level-monotonicity",
                "pivot levels {:?} in the phase at level {}",
                ph.new_pivot_levels,
                ph.level
            );
            if self.mode == Mode::Decremental && ph.discarded > 0 {
                ensure!(ph.moved == 0, "decremental-phase", "{} elements moved at level {}", ph.moved, ph.level);
                ensure!(
                    ph.new_pivot_levels.iter().all(|&l| l <= ph.level),
                    "decremental-phase",
                    "new pivot levels {:?} above the phase level {}",
                    ph.new_pivot_levels,
                    ph.level
                );
                ensure!(
                    ph.x_prime as u64 <= ph.x_prime_bound,
                    "decremental-phase",
                    "|X'| = {} exceeds the bound {}",
                    ph.x_prime,
                    ph.x_prime_bound
                );
            }
        }
        Ok(())
    }
}
