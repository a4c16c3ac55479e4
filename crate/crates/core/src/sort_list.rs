//! Cardinality buckets for constant-time max-set selection.
//!
//! The list holds `(cardinality, bucket)` entries in strictly decreasing
//! cardinality, keeping only non-empty buckets. Both the entry list and each
//! bucket are intrusive doubly linked lists over index arenas, and every set
//! has a back-pointer to its entry, so moving a set from cardinality `i` to
//! `i - 1` is `O(1)`.

use crate::error::{Error, Result};

const NIL: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Entry {
    card: usize,
    first: usize,
    last: usize,
    prev: usize,
    next: usize,
}

#[derive(Debug, Clone)]
pub struct SortList {
    entries: Vec<Entry>,
    free: Vec<usize>,
    head: usize,
    // per set
    entry_of: Vec<usize>,
    prev: Vec<usize>,
    next: Vec<usize>,
}

impl SortList {
    /// An empty list able to hold set ids `0..m`.
    pub fn new(m: usize) -> Self {
        SortList {
            entries: Vec::new(),
            free: Vec::new(),
            head: NIL,
            entry_of: vec![NIL; m],
            prev: vec![NIL; m],
            next: vec![NIL; m],
        }
    }

    /// Groups sets by cardinality in one linear pass (no comparison sort).
    /// Sets of cardinality zero are left out. Within a bucket sets appear in
    /// increasing id order.
    pub fn from_cardinalities(cards: &[usize]) -> Self {
        let mut list = SortList::new(cards.len());
        let max = cards.iter().copied().max().unwrap_or(0);
        let mut by_card: Vec<Vec<usize>> = vec![Vec::new(); max + 1];
        for (s, &c) in cards.iter().enumerate() {
            if c > 0 {
                by_card[c].push(s);
            }
        }
        let mut tail = NIL;
        for c in (1..=max).rev() {
            if by_card[c].is_empty() {
                continue;
            }
            let ent = list.new_entry(c, tail, NIL);
            for &s in &by_card[c] {
                list.push_back(ent, s);
            }
            tail = ent;
        }
        list
    }

    fn new_entry(&mut self, card: usize, prev: usize, next: usize) -> usize {
        let ent = Entry {
            card,
            first: NIL,
            last: NIL,
            prev,
            next,
        };
        let id = match self.free.pop() {
            Some(id) => {
                self.entries[id] = ent;
                id
            }
            None => {
                self.entries.push(ent);
                self.entries.len() - 1
            }
        };
        if prev == NIL {
            self.head = id;
        } else {
            self.entries[prev].next = id;
        }
        if next != NIL {
            self.entries[next].prev = id;
        }
        id
    }

    fn drop_entry(&mut self, id: usize) {
        let Entry { prev, next, .. } = self.entries[id];
        if prev == NIL {
            self.head = next;
        } else {
            self.entries[prev].next = next;
        }
        if next != NIL {
            self.entries[next].prev = prev;
        }
        self.free.push(id);
    }

    fn push_back(&mut self, ent: usize, s: usize) {
        let last = self.entries[ent].last;
        self.prev[s] = last;
        self.next[s] = NIL;
        if last == NIL {
            self.entries[ent].first = s;
        } else {
            self.next[last] = s;
        }
        self.entries[ent].last = s;
        self.entry_of[s] = ent;
    }

    /// Unlinks `s` from its bucket, dropping the entry if it empties.
    /// Returns the neighbouring entries `(prev, next)` that survive.
    fn unlink(&mut self, s: usize) -> (usize, usize) {
        let ent = self.entry_of[s];
        let (p, n) = (self.prev[s], self.next[s]);
        if p == NIL {
            self.entries[ent].first = n;
        } else {
            self.next[p] = n;
        }
        if n == NIL {
            self.entries[ent].last = p;
        } else {
            self.prev[n] = p;
        }
        self.entry_of[s] = NIL;
        let (eprev, enext) = (self.entries[ent].prev, self.entries[ent].next);
        if self.entries[ent].first == NIL {
            self.drop_entry(ent);
            (eprev, enext)
        } else {
            (ent, enext)
        }
    }

    /// First set of the highest-cardinality bucket.
    pub fn head(&self) -> Option<usize> {
        (self.head != NIL).then(|| self.entries[self.head].first)
    }

    pub fn contains(&self, s: usize) -> bool {
        self.entry_of.get(s).is_some_and(|&e| e != NIL)
    }

    /// Current cardinality of `s`, zero when absent.
    pub fn cardinality(&self, s: usize) -> usize {
        match self.entry_of.get(s) {
            Some(&e) if e != NIL => self.entries[e].card,
            _ => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.head == NIL
    }

    /// Moves `s` from bucket `i` to bucket `i - 1`; a set reaching zero leaves
    /// the structure.
    pub fn decrement(&mut self, s: usize) -> Result<()> {
        if !self.contains(s) {
            return Err(Error::contract(format!("set {s} is not in the sort list")));
        }
        let card = self.cardinality(s);
        let (before, after) = self.unlink(s);
        if card == 1 {
            return Ok(());
        }
        // The bucket for card - 1, if present, is the entry right after the
        // one s came from.
        let target = if after != NIL && self.entries[after].card == card - 1 {
            after
        } else {
            self.new_entry(card - 1, before, after)
        };
        self.push_back(target, s);
        Ok(())
    }

    /// Inserts an absent set with the given cardinality. Walks the entry
    /// list, so this is linear in the number of distinct cardinalities.
    pub fn insert(&mut self, s: usize, card: usize) -> Result<()> {
        if s >= self.entry_of.len() {
            return Err(Error::contract(format!("set {s} out of range")));
        }
        if self.contains(s) {
            return Err(Error::contract(format!("set {s} already present")));
        }
        if card == 0 {
            return Ok(());
        }
        let mut prev = NIL;
        let mut cur = self.head;
        while cur != NIL && self.entries[cur].card > card {
            prev = cur;
            cur = self.entries[cur].next;
        }
        let target = if cur != NIL && self.entries[cur].card == card {
            cur
        } else {
            self.new_entry(card, prev, cur)
        };
        self.push_back(target, s);
        Ok(())
    }

    /// Removes `s` entirely.
    pub fn remove(&mut self, s: usize) -> Result<()> {
        if !self.contains(s) {
            return Err(Error::contract(format!("set {s} is not in the sort list")));
        }
        self.unlink(s);
        Ok(())
    }

    /// Snapshot of the list as `(cardinality, sets)` pairs, head first.
    pub fn entries(&self) -> Vec<(usize, Vec<usize>)> {
        let mut out = Vec::new();
        let mut cur = self.head;
        while cur != NIL {
            let mut sets = Vec::new();
            let mut s = self.entries[cur].first;
            while s != NIL {
                sets.push(s);
                s = self.next[s];
            }
            out.push((self.entries[cur].card, sets));
            cur = self.entries[cur].next;
        }
        out
    }
}
