//! Maximal-clique interval covers, left-right reversal, connected components
//! and canonical structures of ordered graphs.
//!
//! In an ordered graph every edge `(i, j)` spans a clique `{i, ..., j}`, so
//! each maximal clique is an interval `[a:b]` of consecutive vertices. The
//! intervals, sorted, satisfy
//!
//! ```text
//! 1 = a_1 < a_2 < ... < a_k <= n
//! 1 <= b_1 < b_2 < ... < b_k = n
//! a_{t+1} <= b_t + 1
//! ```
//!
//! and this cover determines the graph.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::graph::{LabeledGraph, OrderedGraph};
use crate::{CoverError, Error, Result};

/// Largest vertex count accepted by the brute-force isomorphism search.
pub const BRUTEFORCE_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CliqueCover {
    n: usize,
    intervals: Vec<(usize, usize)>,
}

impl CliqueCover {
    pub fn new(n: usize, intervals: Vec<(usize, usize)>) -> std::result::Result<Self, CoverError> {
        validate_cover(n, &intervals)?;
        Ok(CliqueCover { n, intervals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `k` on the first line, then `a b` per interval.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.intervals.len());
        for (a, b) in &self.intervals {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    /// Parses the text format; `n` is taken from the last interval end.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let k: usize = lines
            .next()
            .ok_or_else(|| Error::invalid("empty cover file"))?
            .parse()
            .map_err(|_| Error::invalid("first line must be the interval count"))?;
        let mut intervals = Vec::with_capacity(k);
        for line in lines {
            let nums: Vec<_> = line.split_whitespace().map(str::parse::<usize>).collect();
            match nums.as_slice() {
                [Ok(a), Ok(b)] => intervals.push((*a, *b)),
                _ => return Err(Error::invalid(format!("bad interval line {line:?}"))),
            }
        }
        if intervals.len() != k {
            return Err(Error::invalid(format!(
                "header announces {k} intervals, found {}",
                intervals.len()
            )));
        }
        let n = intervals.last().map(|&(_, b)| b).ok_or(CoverError::Empty)?;
        Ok(CliqueCover::new(n, intervals)?)
    }
}

impl fmt::Display for CliqueCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|(a, b)| format!("[{a}:{b}]"))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Checks the interval conditions, reporting the first one that fails.
pub fn validate_cover(
    n: usize,
    intervals: &[(usize, usize)],
) -> std::result::Result<(), CoverError> {
    let (&(a1, _), &(_, bk)) = match (intervals.first(), intervals.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(CoverError::Empty),
    };
    for (t, &(a, b)) in intervals.iter().enumerate() {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(CoverError::OutOfRange {
                index: t + 1,
                a,
                b,
                n,
            });
        }
    }
    if a1 != 1 {
        return Err(CoverError::FirstStart(a1));
    }
    if bk != n {
        return Err(CoverError::LastEnd { n, found: bk });
    }
    for (t, w) in intervals.windows(2).enumerate() {
        let ((a, b), (a_next, b_next)) = (w[0], w[1]);
        if a_next <= a {
            return Err(CoverError::StartsNotIncreasing(t + 2));
        }
        if b_next <= b {
            return Err(CoverError::EndsNotIncreasing(t + 2));
        }
        if a_next > b + 1 {
            return Err(CoverError::Gap(t + 1));
        }
    }
    Ok(())
}

/// Maximal cliques of an ordered graph, as intervals.
///
/// `[i - L_i : i]` is maximal iff `i = n` or `L_{i+1} <= L_i`.
pub fn maximal_cliques(og: &OrderedGraph) -> CliqueCover {
    let n = og.n();
    let intervals = (1..=n)
        .filter(|&i| i == n || og.left(i + 1) <= og.left(i))
        .map(|i| (og.leftmost(i), i))
        .collect();
    CliqueCover { n, intervals }
}

/// Inverse of [`maximal_cliques`]: vertex `i`'s leftmost neighbour is the
/// start of the first interval that reaches `i`.
pub fn og_from_cliques(cover: &CliqueCover) -> OrderedGraph {
    let mut counts = Vec::with_capacity(cover.n);
    let mut t = 0;
    for i in 1..=cover.n {
        while cover.intervals[t].1 < i {
            t += 1;
        }
        counts.push(i - cover.intervals[t].0);
    }
    OrderedGraph::from_counts_unchecked(counts)
}

/// Validating variant of [`og_from_cliques`] for raw interval lists.
pub fn og_from_intervals(n: usize, intervals: Vec<(usize, usize)>) -> Result<OrderedGraph> {
    Ok(og_from_cliques(&CliqueCover::new(n, intervals)?))
}

/// Relabels `i -> n - i + 1`; intervals map to `[n-b+1 : n-a+1]`.
pub fn reverse(og: &OrderedGraph) -> OrderedGraph {
    og_from_cliques(&reverse_cover(&maximal_cliques(og)))
}

pub fn reverse_cover(cover: &CliqueCover) -> CliqueCover {
    let n = cover.n;
    let intervals = cover
        .intervals
        .iter()
        .rev()
        .map(|&(a, b)| (n + 1 - b, n + 1 - a))
        .collect();
    CliqueCover { n, intervals }
}

/// Maximal vertex spans of connected components; a new span starts at
/// every `i` with `L_i = 0`.
pub fn connected_components(og: &OrderedGraph) -> Vec<RangeInclusive<usize>> {
    let mut spans = Vec::new();
    let mut start = 1;
    for i in 2..=og.n() {
        if og.left(i) == 0 {
            spans.push(start..=i - 1);
            start = i;
        }
    }
    spans.push(start..=og.n());
    spans
}

/// The induced ordered graph on a contiguous span.
fn restrict(og: &OrderedGraph, span: &RangeInclusive<usize>) -> OrderedGraph {
    let mut counts = vec![0];
    counts.extend((span.start() + 1..=*span.end()).map(|i| og.left(i)));
    OrderedGraph::from_counts_unchecked(counts)
}

/// Isomorphism class representative: connected components in their
/// lexicographically smaller orientation, sorted by `(size, L-vector)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalStructure {
    pub n: usize,
    pub components: Vec<OrderedGraph>,
}

impl CanonicalStructure {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("structure serializes")
    }

    /// Ordered graph obtained by laying the components out left to right.
    pub fn to_ordered_graph(&self) -> OrderedGraph {
        let mut counts = Vec::with_capacity(self.n);
        for c in &self.components {
            counts.push(0);
            counts.extend_from_slice(c.left_counts());
        }
        OrderedGraph::from_counts_unchecked(counts)
    }
}

pub fn canonicalize(og: &OrderedGraph) -> CanonicalStructure {
    let mut components: Vec<OrderedGraph> = connected_components(og)
        .iter()
        .map(|span| {
            let c = restrict(og, span);
            let r = reverse(&c);
            if r.left_counts() < c.left_counts() {
                r
            } else {
                c
            }
        })
        .collect();
    components.sort_by(|x, y| (x.n(), x.left_counts()).cmp(&(y.n(), y.left_counts())));
    CanonicalStructure {
        n: og.n(),
        components,
    }
}

/// Whether some vertex permutation maps the edge set of `g1` onto that of
/// `g2`. Exhaustive search; a test oracle for small graphs only.
pub fn isomorphic_bruteforce(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<bool> {
    let mut found = false;
    search_isomorphisms(g1, g2, &mut |_| {
        found = true;
        false
    })?;
    Ok(found)
}

/// Every isomorphism from `g1` to `g2`, as `perm[v - 1] = image of v` (1-based images).
pub fn all_isomorphisms(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<Vec<Vec<usize>>> {
    let mut all = Vec::new();
    search_isomorphisms(g1, g2, &mut |perm| {
        all.push(perm.iter().map(|&v| v + 1).collect());
        true
    })?;
    Ok(all)
}

/// Depth-first search over permutations, pruned only by degree and by
/// adjacency against already placed vertices. `visit` returns whether to
/// keep searching.
fn search_isomorphisms(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    let n = g1.n();
    if n != g2.n() {
        return Err(Error::invalid(format!(
            "vertex counts differ: {} vs {}",
            n,
            g2.n()
        )));
    }
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::SizeLimit {
            what: "n",
            value: n,
            max: BRUTEFORCE_MAX_N,
        });
    }
    if g1.edge_count() != g2.edge_count() {
        return Ok(());
    }
    let adj = |g: &LabeledGraph| {
        let mut m = vec![vec![false; n]; n];
        for &(i, j) in g.edges() {
            m[i - 1][j - 1] = true;
            m[j - 1][i - 1] = true;
        }
        m
    };
    let (a1, a2) = (adj(g1), adj(g2));
    let (d1, d2) = (g1.degrees(), g2.degrees());
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn extend(
        v: usize,
        n: usize,
        a1: &[Vec<bool>],
        a2: &[Vec<bool>],
        d1: &[usize],
        d2: &[usize],
        perm: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if v == n {
            return visit(perm);
        }
        for w in 0..n {
            if used[w] || d1[v] != d2[w] {
                continue;
            }
            if (0..v).any(|u| a1[v][u] != a2[w][perm[u]]) {
                continue;
            }
            used[w] = true;
            perm.push(w);
            let go_on = extend(v + 1, n, a1, a2, d1, d2, perm, used, visit);
            perm.pop();
            used[w] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    extend(0, n, &a1, &a2, &d1, &d2, &mut perm, &mut used, visit);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_labeled_graph, PointSample};

    fn fig4() -> OrderedGraph {
        OrderedGraph::new(vec![1, 2, 3, 3, 2, 2, 0, 1, 2]).unwrap()
    }

    fn fig4_cover() -> Vec<(usize, usize)> {
        vec![(1, 4), (2, 5), (4, 6), (5, 7), (8, 10)]
    }

    #[test]
    fn fig4_locations_give_fig4_graph() {
        let locs = vec![0.11, 0.19, 0.24, 0.29, 0.32, 0.46, 0.51, 0.73, 0.76, 0.83];
        let s = PointSample::from_locations(locs, 0.2).unwrap();
        assert_eq!(crate::graph::build_ordered_graph(&s), fig4());
    }

    #[test]
    fn fig4_maximal_cliques() {
        assert_eq!(
            maximal_cliques(&fig4()).intervals(),
            fig4_cover().as_slice()
        );
    }

    #[test]
    fn trivial_covers() {
        assert_eq!(
            maximal_cliques(&OrderedGraph::complete(6)).intervals(),
            &[(1, 6)]
        );
        assert_eq!(
            maximal_cliques(&OrderedGraph::empty(4)).intervals(),
            &[(1, 1), (2, 2), (3, 3), (4, 4)]
        );
        assert_eq!(
            maximal_cliques(&OrderedGraph::empty(1)).intervals(),
            &[(1, 1)]
        );
    }

    #[test]
    fn cover_to_graph() {
        assert_eq!(og_from_intervals(10, fig4_cover()).unwrap(), fig4());
        assert_eq!(
            og_from_intervals(5, vec![(1, 5)]).unwrap(),
            OrderedGraph::complete(5)
        );
        assert_eq!(
            og_from_intervals(3, vec![(1, 1), (2, 3)])
                .unwrap()
                .left_counts(),
            &[0, 1]
        );
    }

    #[test]
    fn invalid_covers_name_the_condition() {
        use CoverError::*;
        let check = |n, iv: Vec<(usize, usize)>| CliqueCover::new(n, iv).unwrap_err();
        assert_eq!(check(3, vec![]), Empty);
        assert_eq!(check(3, vec![(2, 3)]), FirstStart(2));
        assert_eq!(check(3, vec![(1, 2)]), LastEnd { n: 3, found: 2 });
        assert_eq!(check(4, vec![(1, 2), (1, 4)]), StartsNotIncreasing(2));
        assert_eq!(check(4, vec![(1, 3), (2, 3), (3, 4)]), EndsNotIncreasing(2));
        assert_eq!(check(4, vec![(1, 1), (3, 4)]), Gap(1));
        assert!(matches!(check(3, vec![(1, 5)]), OutOfRange { .. }));
        assert!(matches!(
            og_from_intervals(4, vec![(1, 1), (3, 4)]),
            Err(Error::InvalidCover(Gap(1)))
        ));
    }

    #[test]
    fn cover_text_format() {
        let cover = maximal_cliques(&fig4());
        let text = cover.to_text();
        assert!(text.starts_with("5\n1 4\n2 5\n"));
        assert_eq!(CliqueCover::parse(&text).unwrap(), cover);
        assert!(CliqueCover::parse("2\n1 3\n").is_err());
        assert!(CliqueCover::parse("").is_err());
        assert_eq!(cover.to_string(), "{[1:4],[2:5],[4:6],[5:7],[8:10]}");
    }

    #[test]
    fn fig4_reversal() {
        let rev = reverse(&fig4());
        assert_eq!(
            maximal_cliques(&rev).intervals(),
            &[(1, 3), (4, 6), (5, 7), (6, 9), (7, 10)]
        );
        assert_eq!(reverse(&rev), fig4());
        assert_eq!(
            reverse(&OrderedGraph::complete(5)),
            OrderedGraph::complete(5)
        );
    }

    #[test]
    fn reversal_matches_relabelled_edges() {
        let og = fig4();
        let n = og.n();
        let rev = reverse(&og);
        for (j, i) in og.edges() {
            assert!(rev.has_edge(n + 1 - i, n + 1 - j));
        }
        assert_eq!(rev.edge_count(), og.edge_count());
    }

    #[test]
    fn fig4_components() {
        assert_eq!(connected_components(&fig4()), vec![1..=7, 8..=10]);
        assert_eq!(
            connected_components(&OrderedGraph::complete(4)),
            vec![1..=4]
        );
        assert_eq!(
            connected_components(&OrderedGraph::empty(3)),
            vec![1..=1, 2..=2, 3..=3]
        );
    }

    #[test]
    fn fig1_outcomes_share_structure() {
        let r = 1.0 / 3.0;
        let a = PointSample::from_locations(vec![0.45, 0.15, 0.25, 0.9, 0.7], r).unwrap();
        let b = PointSample::from_locations(vec![0.85, 0.37, 0.07, 0.63, 0.23], r).unwrap();
        let (ga, gb) = (build_labeled_graph(&a), build_labeled_graph(&b));
        let expect_b = LabeledGraph::new(5, [(1, 4), (2, 3), (2, 4), (2, 5), (3, 5)]).unwrap();
        assert_eq!(gb, expect_b);
        assert!(isomorphic_bruteforce(&ga, &gb).unwrap());
        // the permutation worked out by hand
        let pi = [2, 3, 5, 1, 4];
        for &(i, j) in ga.edges() {
            assert!(gb.has_edge(pi[i - 1], pi[j - 1]));
        }
        let ca = canonicalize(&crate::graph::build_ordered_graph(&a));
        let cb = canonicalize(&crate::graph::build_ordered_graph(&b));
        assert_eq!(ca, cb);
    }

    #[test]
    fn graph_and_reverse_share_structure() {
        assert_eq!(canonicalize(&fig4()), canonicalize(&reverse(&fig4())));
    }

    #[test]
    fn canonical_form_layout() {
        let cs = canonicalize(&fig4());
        assert_eq!(cs.component_count(), 2);
        assert_eq!(cs.components[0].n(), 3);
        assert_eq!(cs.components[1].n(), 7);
        // component [1..7] has L = (1,2,3,3,2,2); its reverse is (1,2,2,2,3,3)
        assert_eq!(cs.components[1].left_counts(), &[1, 2, 2, 2, 3, 3]);
        assert_eq!(
            cs.to_json(),
            r#"{"n":10,"components":[[1,2],[1,2,2,2,3,3]]}"#
        );
        let back: CanonicalStructure = serde_json::from_str(&cs.to_json()).unwrap();
        assert_eq!(back, cs);
        assert_eq!(canonicalize(&cs.to_ordered_graph()), cs);
    }

    #[test]
    fn bruteforce_basics() {
        let p3 = LabeledGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let k3 = LabeledGraph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(isomorphic_bruteforce(&p3, &p3).unwrap());
        assert!(!isomorphic_bruteforce(&p3, &k3).unwrap());
        let big = LabeledGraph::new(11, []).unwrap();
        assert!(matches!(
            isomorphic_bruteforce(&big, &big),
            Err(Error::SizeLimit { .. })
        ));
        // P3 has two automorphisms
        assert_eq!(all_isomorphisms(&p3, &p3).unwrap().len(), 2);
        assert_eq!(all_isomorphisms(&k3, &k3).unwrap().len(), 6);
    }
}
