use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical_form, CanonicalForm};
use super::iso::{is_isomorphic, Isomorphism};
use super::Quiver;
use crate::error::Result;

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub max_depth: usize,
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub sequence: Vec<i64>,
    pub result: Quiver,
    pub witness: Isomorphism,
    /// Isomorphism classes visited.
    pub visited: usize,
}

/// Shortest mutation sequence from `source` to a quiver isomorphic to
/// `target`, or `None` within `max_depth` steps.
pub fn search(source: &Quiver, target: &Quiver, max_depth: usize) -> Result<Option<SearchResult>> {
    search_with(source, target, SearchOptions { max_depth, parallel: true })
}

struct Node {
    seq: Vec<i64>,
    quiver: Quiver,
}

/// Breadth-first search over isomorphism classes. Levels are expanded in
/// order, children in increasing vertex id, and a class is kept on first
/// sight; the answer is the lexicographically least surviving sequence of
/// minimal length. Children are canonicalized in parallel when asked, and
/// merged sequentially so the result does not depend on scheduling.
pub fn search_with(
    source: &Quiver,
    target: &Quiver,
    opts: SearchOptions,
) -> Result<Option<SearchResult>> {
    if source.len() != target.len() {
        return Ok(None);
    }
    let goal = canonical_form(target);
    let mut ids = source.ids();
    ids.sort_unstable();
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let start = canonical_form(source);
    let done = |seq: Vec<i64>, quiver: Quiver, visited: usize| {
        let witness = is_isomorphic(&quiver, target).expect("canonical forms agree");
        Some(SearchResult { sequence: seq, result: quiver, witness, visited })
    };
    if start == goal {
        return Ok(done(vec![], source.clone(), 1));
    }
    seen.insert(start);
    let mut frontier = vec![Node { seq: vec![], quiver: source.clone() }];
    for _ in 0..opts.max_depth {
        let expand = |node: &Node| -> Vec<(Node, CanonicalForm)> {
            ids.iter()
                .filter(|&&v| node.seq.last() != Some(&v))
                .map(|&v| {
                    let quiver = node.quiver.mutate(v).expect("vertex exists");
                    let canon = canonical_form(&quiver);
                    let mut seq = node.seq.clone();
                    seq.push(v);
                    (Node { seq, quiver }, canon)
                })
                .collect()
        };
        let children: Vec<Vec<(Node, CanonicalForm)>> = if opts.parallel {
            frontier.par_iter().map(expand).collect()
        } else {
            frontier.iter().map(expand).collect()
        };
        let mut next = Vec::new();
        for (node, canon) in children.into_iter().flatten() {
            if !seen.insert(canon.clone()) {
                continue;
            }
            if canon == goal {
                return Ok(done(node.seq, node.quiver, seen.len()));
            }
            next.push(node);
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::{Arrow, Vertex};
    use super::*;

    fn line(n: i64) -> Quiver {
        let vs = (1..=n).map(|i| Vertex::new(i, "")).collect();
        let arrows: Vec<_> = (1..n).map(|i| Arrow { from: i, to: i + 1, mult: 1 }).collect();
        Quiver::new(vs, &arrows).unwrap()
    }

    #[test]
    fn trivial_search() {
        let q = line(4);
        let r = search(&q, &q, 3).unwrap().unwrap();
        assert!(r.sequence.is_empty());
    }

    #[test]
    fn finds_short_sequences() {
        let q = line(5);
        let t = q.apply(&[3, 2, 4]).unwrap();
        for parallel in [false, true] {
            let r = search_with(&q, &t, SearchOptions { max_depth: 4, parallel }).unwrap().unwrap();
            assert!(r.sequence.len() <= 3);
            let reached = q.apply(&r.sequence).unwrap();
            assert!(is_isomorphic(&reached, &t).is_some());
        }
        let a = search_with(&q, &t, SearchOptions { max_depth: 4, parallel: false }).unwrap();
        let b = search_with(&q, &t, SearchOptions { max_depth: 4, parallel: true }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exhaustion_gives_none() {
        let a = line(3);
        let vs = (1..=3).map(|i| Vertex::new(i, "")).collect();
        let b = Quiver::new(vs, &[Arrow { from: 1, to: 2, mult: 2 }]).unwrap();
        assert!(search(&a, &b, 6).unwrap().is_none());
        assert!(search(&a, &line(4), 2).unwrap().is_none());
    }
}
