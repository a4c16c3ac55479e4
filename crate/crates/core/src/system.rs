//! Static set systems and the line-oriented instance format.
//!
//! ```text
//! n m
//! k e1 e2 ... ek      <- set 0
//! ...                 <- one line per set
//! ```

use crate::error::{Error, Result};

pub type ElemId = usize;
pub type SetId = usize;

/// A fixed universe `0..n` and a family of `m` sets over it.
///
/// Both membership directions are stored: `set_of[e]` lists the sets that
/// contain `e`, `elem_of[s]` the elements of `s`. The membership relation never
/// changes; dynamic algorithms only toggle which elements are active.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    n: usize,
    m: usize,
    set_of: Vec<Vec<SetId>>,
    elem_of: Vec<Vec<ElemId>>,
    f: usize,
}

impl SetSystem {
    /// Builds a system from per-set element lists.
    ///
    /// Rejects out-of-range ids, repeated elements inside one set, empty sets
    /// and elements that no set contains (such an element can never be covered).
    pub fn from_sets(n: usize, sets: Vec<Vec<ElemId>>) -> Result<Self> {
        Self::build(n, sets, |i, msg| Error::Parameter(format!("set {i}: {msg}")))
    }

    fn build(
        n: usize,
        sets: Vec<Vec<ElemId>>,
        err: impl Fn(usize, String) -> Error,
    ) -> Result<Self> {
        let m = sets.len();
        let mut set_of = vec![Vec::new(); n];
        for (s, elems) in sets.iter().enumerate() {
            if elems.is_empty() {
                return Err(err(s, "empty set".into()));
            }
            for &e in elems {
                if e >= n {
                    return Err(err(s, format!("element {e} out of range (n = {n})")));
                }
                if set_of[e].last() == Some(&s) {
                    return Err(err(s, format!("element {e} listed twice")));
                }
                set_of[e].push(s);
            }
        }
        if let Some(e) = set_of.iter().position(Vec::is_empty) {
            return Err(Error::Parameter(format!("element {e} belongs to no set")));
        }
        let f = set_of.iter().map(Vec::len).max().unwrap_or(0);
        Ok(SetSystem {
            n,
            m,
            set_of,
            elem_of: sets,
            f,
        })
    }

    /// Parses the instance format. Errors name the offending (1-based) line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let head = parse_ids(hline, header)?;
        if head.len() != 2 {
            return Err(Error::parse(hline, "header must be \"n m\""));
        }
        let (n, m) = (head[0], head[1]);
        let mut sets = Vec::with_capacity(m);
        let mut set_lines = Vec::with_capacity(m);
        for (lineno, line) in lines {
            if sets.len() == m {
                return Err(Error::parse(lineno, format!("more than {m} set lines")));
            }
            let ids = parse_ids(lineno, line)?;
            let k = ids[0];
            if ids.len() - 1 != k {
                return Err(Error::parse(
                    lineno,
                    format!("declared {k} elements, found {}", ids.len() - 1),
                ));
            }
            sets.push(ids[1..].to_vec());
            set_lines.push(lineno);
        }
        if sets.len() != m {
            return Err(Error::parse(
                hline,
                format!("expected {m} set lines, found {}", sets.len()),
            ));
        }
        // Map set-level errors back to their source line.
        Self::build(n, sets, |s, msg| Error::parse(set_lines[s], msg)).map_err(|e| match e {
            Error::Parameter(msg) => Error::parse(hline, msg),
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m);
        for elems in &self.elem_of {
            out.push_str(&elems.len().to_string());
            for e in elems {
                out.push(' ');
                out.push_str(&e.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Maximum frequency: the largest number of sets sharing one element.
    pub fn f(&self) -> usize {
        self.f
    }

    pub fn sets_of(&self, e: ElemId) -> &[SetId] {
        &self.set_of[e]
    }

    pub fn elems_of(&self, s: SetId) -> &[ElemId] {
        &self.elem_of[s]
    }

    /// `⌊log₂ n⌋`, the highest pivot level (0 for n ≤ 1).
    pub fn max_level(&self) -> usize {
        crate::random_cover::level_of(self.n.max(1))
    }
}

fn parse_ids(lineno: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(lineno, format!("bad integer {tok:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_two_overlapping_sets() {
        let sys = SetSystem::parse("3 2\n2 0 1\n2 1 2\n").unwrap();
        assert_eq!((sys.n(), sys.m(), sys.f()), (3, 2, 2));
        assert_eq!(sys.sets_of(1), &[0, 1]);
    }

    #[test]
    fn loads_singleton() {
        let sys = SetSystem::parse("1 1\n1 0").unwrap();
        assert_eq!((sys.n(), sys.m(), sys.f()), (1, 1, 1));
    }

    #[test]
    fn chain_membership() {
        let sys = SetSystem::parse("4 3\n2 0 1\n2 1 2\n2 2 3\n").unwrap();
        assert_eq!(sys.f(), 2);
        assert_eq!(sys.sets_of(1), &[0, 1]);
        assert_eq!(sys.sets_of(3), &[2]);
        assert_eq!(sys.elems_of(1), &[1, 2]);
    }

    #[test]
    fn empty_system() {
        let sys = SetSystem::parse("0 0\n").unwrap();
        assert_eq!((sys.n(), sys.m(), sys.f()), (0, 0, 0));
    }

    #[test]
    fn errors_name_the_line() {
        let cases = [
            ("3 2\n2 0 1\n2 1 7\n", 3),      // out of range
            ("3 2\n2 0 1\n2 1 1\n", 3),      // duplicate in set
            ("3 2\n2 0 1\n3 1 2\n", 3),      // wrong count
            ("3 2\n2 0 x\n2 1 2\n", 2),      // not an integer
            ("3 2\n2 0 1\n", 1),             // missing set line
            ("3 2\n2 0 1\n0\n", 3),          // empty set
            ("3 1\n2 0 1\n", 1),             // element 2 uncovered
            ("2 1\n2 0 1\n1 0\n", 3),        // extra line
        ];
        for (text, line) in cases {
            match SetSystem::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let sys = SetSystem::parse("4 3\n2 0 1\n2 1 2\n2 2 3\n").unwrap();
        assert_eq!(SetSystem::parse(&sys.to_text()).unwrap(), sys);
    }
}
