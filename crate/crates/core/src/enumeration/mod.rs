//! The clique-interval family `C_n`: exhaustive generation, exact counts and
//! realizability at a fixed range.
//!
//! `C_n` is the set of graphs on `1..=n` in which every edge `(i, j)` spans
//! a clique `{i, ..., j}`. Its members are exactly the L-vectors with
//! `0 <= L_{i+1} <= L_i + 1`, and there are Catalan-many of them.

mod counting;
mod realize;

pub use counting::{
    binomial, catalan, count_with_k_cliques, last_clique_counts, p_count, q_count, PqTable,
};
pub use realize::{
    exact_structure_count, is_realizable, realizable, RealizabilityWitness, StructureCount,
};

use crate::graph::OrderedGraph;
use crate::{Error, Result};

/// Largest `n` for which exhaustive enumeration is offered.
pub const ENUMERATION_MAX_N: usize = 16;

/// Which route computes `p`/`q` counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Closed-form binomial expression.
    Formula,
    /// Recurrence over the number of maximal cliques.
    Recurrence,
}

/// All members of `C_n` (or only the connected ones) in lexicographic
/// order of their L-vectors.
#[derive(Debug, Clone)]
pub struct OrderedGraphs {
    floor: usize,
    counts: Vec<usize>,
    started: bool,
    done: bool,
}

impl Iterator for OrderedGraphs {
    type Item = OrderedGraph;

    fn next(&mut self) -> Option<OrderedGraph> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(OrderedGraph::from_counts_unchecked(self.counts.clone()));
        }
        // odometer: bump the rightmost entry below its cap L_{i-1} + 1
        let pos = (1..self.counts.len())
            .rev()
            .find(|&p| self.counts[p] < self.counts[p - 1] + 1);
        match pos {
            None => {
                self.done = true;
                None
            }
            Some(p) => {
                self.counts[p] += 1;
                for q in p + 1..self.counts.len() {
                    self.counts[q] = self.floor;
                }
                Some(OrderedGraph::from_counts_unchecked(self.counts.clone()))
            }
        }
    }
}

pub fn enumerate_ordered_graphs(n: usize, connected_only: bool) -> Result<OrderedGraphs> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if n > ENUMERATION_MAX_N {
        return Err(Error::SizeLimit {
            what: "n",
            value: n,
            max: ENUMERATION_MAX_N,
        });
    }
    let floor = usize::from(connected_only);
    let mut counts = vec![floor; n];
    counts[0] = 0;
    Ok(OrderedGraphs {
        floor,
        counts,
        started: false,
        done: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{maximal_cliques, og_from_cliques, reverse};
    use std::collections::HashSet;

    fn lists(n: usize, connected: bool) -> Vec<Vec<usize>> {
        enumerate_ordered_graphs(n, connected)
            .unwrap()
            .map(|g| g.left_counts().to_vec())
            .collect()
    }

    #[test]
    fn n3_by_hand() {
        assert_eq!(
            lists(3, false),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]
        );
        assert_eq!(lists(3, true), vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(lists(1, false), vec![Vec::<usize>::new()]);
        assert_eq!(lists(1, true), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn cardinalities_are_catalan() {
        for n in 1..=12 {
            let all = enumerate_ordered_graphs(n, false).unwrap().count();
            let conn = enumerate_ordered_graphs(n, true).unwrap().count();
            assert_eq!(catalan(n).to_string(), all.to_string(), "n = {n}");
            assert_eq!(catalan(n - 1).to_string(), conn.to_string(), "n = {n}");
        }
    }

    #[test]
    fn lexicographic_and_valid() {
        for n in 1..=9 {
            let all: Vec<_> = enumerate_ordered_graphs(n, false).unwrap().collect();
            for w in all.windows(2) {
                assert!(w[0].left_counts() < w[1].left_counts());
            }
            for g in &all {
                assert!(OrderedGraph::new(g.left_counts().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn cover_round_trip_and_reversal_closure() {
        for n in 1..=10 {
            let all: HashSet<_> = enumerate_ordered_graphs(n, false).unwrap().collect();
            for g in &all {
                assert_eq!(&og_from_cliques(&maximal_cliques(g)), g);
                let r = reverse(g);
                assert!(all.contains(&r));
                assert_eq!(&reverse(&r), g);
            }
        }
    }

    #[test]
    fn size_guard() {
        assert!(enumerate_ordered_graphs(0, false).is_err());
        assert!(matches!(
            enumerate_ordered_graphs(17, false),
            Err(Error::SizeLimit { .. })
        ));
    }
}
