//! Update traces and their text format.
//!
//! ```text
//! trace <n> <m> [full]
//! + e      insert element
//! - e      delete element
//! +S s     activate set
//! -S s     deactivate set
//! ?        query
//! ```
//!
//! Without `full`, every element (or, for set traces, every set) starts
//! inactive; with it, everything starts active. Blank lines and lines
//! starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::system::{ElemId, SetId, SetSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    Insert(ElemId),
    Delete(ElemId),
    Query,
    InsertSet(SetId),
    DeleteSet(SetId),
}

impl Event {
    pub fn is_set_event(self) -> bool {
        matches!(self, Event::InsertSet(_) | Event::DeleteSet(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateTrace {
    n: usize,
    m: usize,
    full: bool,
    events: Vec<Event>,
}

impl UpdateTrace {
    /// An empty trace starting with nothing active.
    pub fn new(n: usize, m: usize) -> Self {
        UpdateTrace {
            n,
            m,
            full: false,
            events: Vec::new(),
        }
    }

    /// An empty trace starting with everything active.
    pub fn full(n: usize, m: usize) -> Self {
        UpdateTrace {
            full: true,
            ..Self::new(n, m)
        }
    }

    pub fn push(&mut self, ev: Event) {
        self.events.push(ev);
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn starts_full(&self) -> bool {
        self.full
    }

    pub fn is_set_trace(&self) -> bool {
        self.events.iter().any(|e| e.is_set_event())
    }

    pub fn has_inserts(&self) -> bool {
        self.events.iter().any(|e| matches!(e, Event::Insert(_)))
    }

    pub fn queries(&self) -> usize {
        self.events.iter().filter(|e| **e == Event::Query).count()
    }

    /// The first `k` events under the same header.
    pub fn prefix(&self, k: usize) -> UpdateTrace {
        UpdateTrace {
            events: self.events[..k.min(self.events.len())].to_vec(),
            ..self.clone()
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing trace header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(hl, format!("bad number {s:?}")));
        let mut trace = match h.as_slice() {
            ["trace", n, m] => UpdateTrace::new(num(n)?, num(m)?),
            ["trace", n, m, "full"] => UpdateTrace::full(num(n)?, num(m)?),
            _ => return Err(Error::parse(hl, "expected \"trace n m [full]\"")),
        };
        for (ln, line) in lines {
            let tok: Vec<&str> = line.split_whitespace().collect();
            let id = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(ln, format!("bad id {s:?}")));
            let ev = match tok.as_slice() {
                ["?"] => Event::Query,
                ["+", x] => Event::Insert(id(x)?),
                ["-", x] => Event::Delete(id(x)?),
                ["+S", x] => Event::InsertSet(id(x)?),
                ["-S", x] => Event::DeleteSet(id(x)?),
                _ => return Err(Error::parse(ln, format!("unknown event {line:?}"))),
            };
            trace.events.push(ev);
        }
        Ok(trace)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("trace {} {}", self.n, self.m);
        if self.full {
            out.push_str(" full");
        }
        out.push('\n');
        for ev in &self.events {
            let _ = match ev {
                Event::Insert(e) => writeln!(out, "+ {e}"),
                Event::Delete(e) => writeln!(out, "- {e}"),
                Event::Query => writeln!(out, "?"),
                Event::InsertSet(s) => writeln!(out, "+S {s}"),
                Event::DeleteSet(s) => writeln!(out, "-S {s}"),
            };
        }
        out
    }

    /// Replays the trace against activity flags: ids in range, inserts only
    /// of inactive items, deletes only of active ones, and no mixing of
    /// element and set events.
    pub fn validate(&self) -> Result<()> {
        let sets = self.is_set_trace();
        let bound = if sets { self.m } else { self.n };
        let mut active = vec![self.full; bound];
        for (i, ev) in self.events.iter().enumerate() {
            let bad = |msg: String| Error::contract(format!("event {i}: {msg}"));
            let (x, on) = match *ev {
                Event::Query => continue,
                Event::Insert(e) | Event::Delete(e) if sets => {
                    return Err(bad(format!("element event on {e} in a set trace")))
                }
                Event::Insert(x) | Event::InsertSet(x) => (x, true),
                Event::Delete(x) | Event::DeleteSet(x) => (x, false),
            };
            if x >= bound {
                return Err(bad(format!("id {x} out of range")));
            }
            if active[x] == on {
                let state = if on { "active" } else { "inactive" };
                return Err(bad(format!("{x} is already {state}")));
            }
            active[x] = on;
        }
        Ok(())
    }

    /// Active ids (elements, or sets for a set trace) at each query, in
    /// increasing order. Assumes the trace validates.
    pub fn query_states(&self) -> Vec<Vec<usize>> {
        let bound = if self.is_set_trace() { self.m } else { self.n };
        let mut active = vec![self.full; bound];
        let mut out = Vec::new();
        for ev in &self.events {
            match *ev {
                Event::Query => out.push((0..bound).filter(|&x| active[x]).collect()),
                Event::Insert(x) | Event::InsertSet(x) => active[x] = true,
                Event::Delete(x) | Event::DeleteSet(x) => active[x] = false,
            }
        }
        out
    }

    /// Header matches `system` and the trace replays cleanly.
    pub fn check_against(&self, system: &SetSystem) -> Result<()> {
        if (self.n, self.m) != (system.n(), system.m()) {
            return Err(Error::Parameter(format!(
                "trace is for n = {}, m = {} but the instance has n = {}, m = {}",
                self.n,
                self.m,
                system.n(),
                system.m()
            )));
        }
        self.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "trace 4 2\n+ 0\n+ 3\n?\n- 0\n?\n";
        let t = UpdateTrace::parse(text).unwrap();
        assert_eq!(t.to_text(), text);
        assert_eq!(t.queries(), 2);
        assert_eq!(t.query_states(), vec![vec![0, 3], vec![3]]);
        t.validate().unwrap();
        let s = UpdateTrace::parse("trace 2 3 full\n-S 1\n?\n+S 1\n").unwrap();
        assert!(s.is_set_trace() && s.starts_full());
        assert_eq!(UpdateTrace::parse(&s.to_text()).unwrap(), s);
        s.validate().unwrap();
    }

    #[test]
    fn replay_rejects_bad_events() {
        for text in [
            "trace 2 1\n- 0\n",
            "trace 2 1\n+ 0\n+ 0\n",
            "trace 2 1\n+ 2\n",
            "trace 2 1 full\n+ 1\n",
            "trace 2 1\n+S 0\n+ 1\n",
        ] {
            assert!(UpdateTrace::parse(text).unwrap().validate().is_err(), "{text}");
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert_eq!(
            UpdateTrace::parse("trace 2 1\n\n* 1\n").unwrap_err(),
            Error::Parse {
                line: 3,
                msg: "unknown event \"* 1\"".into()
            }
        );
        assert!(UpdateTrace::parse("").is_err());
        assert!(UpdateTrace::parse("trace x 1").is_err());
    }
}
