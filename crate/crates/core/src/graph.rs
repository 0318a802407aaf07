//! Point samples, labeled graphs, ordered graphs and the connectivity regime.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rng::{self, Rng};
use crate::{Error, Result};

/// `n` locations in `[0, 1]` sorted ascending, together with the label each
/// sorted position came from.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSample {
    r: f64,
    locations: Vec<f64>,
    /// `original_order[k]` is the 1-based label of the k-th smallest point.
    original_order: Vec<usize>,
}

impl PointSample {
    /// Builds a sample from locations given in label order (`locations[j]`
    /// belongs to label `j + 1`). Ties keep label order.
    pub fn from_locations(locations: Vec<f64>, r: f64) -> Result<Self> {
        check_range(r)?;
        if locations.is_empty() {
            return Err(Error::invalid("a sample needs at least one point"));
        }
        if let Some(x) = locations.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::invalid(format!("location {x} outside [0, 1]")));
        }
        let mut order: Vec<usize> = (0..locations.len()).collect();
        order.sort_by(|&i, &j| locations[i].total_cmp(&locations[j]).then(i.cmp(&j)));
        let sorted = order.iter().map(|&i| locations[i]).collect();
        Ok(PointSample {
            r,
            locations: sorted,
            original_order: order.into_iter().map(|i| i + 1).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.locations.len()
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Sorted locations.
    pub fn locations(&self) -> &[f64] {
        &self.locations
    }

    pub fn original_order(&self) -> &[usize] {
        &self.original_order
    }

    /// Location of label `label` (1-based).
    pub fn location_of(&self, label: usize) -> Option<f64> {
        self.original_order
            .iter()
            .position(|&l| l == label)
            .map(|k| self.locations[k])
    }

    /// `index,location` CSV, one row per sorted point, 1-based index.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,location\n");
        for (k, x) in self.locations.iter().enumerate() {
            out.push_str(&format!("{},{}\n", k + 1, x));
        }
        out
    }
}

fn check_range(r: f64) -> Result<()> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::invalid(format!("range r = {r} must lie in (0, 1]")));
    }
    Ok(())
}

/// Draws `n` i.i.d. uniform locations on `[0, 1]`.
pub fn sample_points(n: usize, r: f64, seed: u64) -> Result<PointSample> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    check_range(r)?;
    let mut rng = rng::rng_for(seed);
    let locations = (0..n).map(|_| rng.random::<f64>()).collect();
    PointSample::from_locations(locations, r)
}

/// Fills `buf` with `buf.len()` sorted uniform draws.
pub(crate) fn fill_sorted_uniform(rng: &mut Rng, buf: &mut [f64]) {
    for x in buf.iter_mut() {
        *x = rng.random::<f64>();
    }
    buf.sort_unstable_by(f64::total_cmp);
}

/// Writes `L_1, ..., L_n` (with `L_1 = 0`) for sorted locations into `out`.
pub(crate) fn left_counts_into(sorted: &[f64], r: f64, out: &mut Vec<usize>) {
    out.clear();
    let mut lo = 0;
    for (i, &x) in sorted.iter().enumerate() {
        while x - sorted[lo] > r {
            lo += 1;
        }
        out.push(i - lo);
    }
}

/// Graph on labels `1..=n`, edges stored as `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl LabeledGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j {
                return Err(Error::invalid(format!("self-loop at vertex {i}")));
            }
            let (i, j) = if i < j { (i, j) } else { (j, i) };
            if i == 0 || j > n {
                return Err(Error::invalid(format!("edge ({i}, {j}) outside 1..={n}")));
            }
            set.insert((i, j));
        }
        Ok(LabeledGraph { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.contains(&key)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in &self.edges {
            deg[i - 1] += 1;
            deg[j - 1] += 1;
        }
        deg
    }

    /// `i j` per line, 1-based.
    pub fn to_edge_list(&self) -> String {
        self.edges
            .iter()
            .map(|(i, j)| format!("{i} {j}\n"))
            .collect()
    }

    pub fn parse_edge_list(n: usize, text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(i)), Some(Ok(j)), None) => edges.push((i, j)),
                _ => return Err(Error::invalid(format!("bad edge line {line:?}"))),
            }
        }
        LabeledGraph::new(n, edges)
    }
}

/// Edge `(i, j)` present iff `|X_i - X_j| <= r`, on the original labels.
pub fn build_labeled_graph(sample: &PointSample) -> LabeledGraph {
    let og = build_ordered_graph(sample);
    let labels = sample.original_order();
    let edges = og
        .edges()
        .map(|(j, i)| {
            let (a, b) = (labels[j - 1], labels[i - 1]);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    LabeledGraph {
        n: sample.n(),
        edges,
    }
}

/// Graph on vertices indexed by ascending location, stored as its
/// leftward-neighbour counts. Vertex `i` is adjacent to exactly
/// `i - L_i, ..., i - 1` among the vertices to its left.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct OrderedGraph {
    /// `L_1, ..., L_n`; `counts[0]` is always 0.
    counts: Vec<usize>,
}

impl OrderedGraph {
    /// Builds from `(L_2, ..., L_n)`; `n` is `left.len() + 1`.
    pub fn new(left: Vec<usize>) -> Result<Self> {
        let mut counts = Vec::with_capacity(left.len() + 1);
        counts.push(0);
        counts.extend(left);
        for i in 1..counts.len() {
            if counts[i] > counts[i - 1] + 1 {
                return Err(Error::invalid(format!(
                    "L_{} = {} exceeds L_{} + 1 = {}",
                    i + 1,
                    counts[i],
                    i,
                    counts[i - 1] + 1
                )));
            }
        }
        Ok(OrderedGraph { counts })
    }

    /// Builds from `L_1..L_n` without validation.
    pub(crate) fn from_counts_unchecked(counts: Vec<usize>) -> Self {
        debug_assert!(counts.first() == Some(&0));
        OrderedGraph { counts }
    }

    pub fn complete(n: usize) -> Self {
        OrderedGraph::from_counts_unchecked((0..n.max(1)).collect())
    }

    pub fn empty(n: usize) -> Self {
        OrderedGraph::from_counts_unchecked(vec![0; n.max(1)])
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    /// `(L_2, ..., L_n)`.
    pub fn left_counts(&self) -> &[usize] {
        &self.counts[1..]
    }

    /// `L_i` for 1-based `i` (with `L_1 = 0`).
    pub fn left(&self, i: usize) -> usize {
        self.counts[i - 1]
    }

    /// Index of the leftmost neighbour of `i` (or `i` itself when isolated to the left).
    pub fn leftmost(&self, i: usize) -> usize {
        i - self.counts[i - 1]
    }

    pub fn is_connected(&self) -> bool {
        self.counts[1..].iter().all(|&l| l >= 1)
    }

    pub fn edge_count(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        lo != hi && lo >= self.leftmost(hi)
    }

    /// Edges `(j, i)` with `j < i`, ordered by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n()).flat_map(move |i| (self.leftmost(i)..i).map(move |j| (j, i)))
    }

    pub fn to_labeled(&self) -> LabeledGraph {
        LabeledGraph {
            n: self.n(),
            edges: self.edges().collect(),
        }
    }
}

impl fmt::Debug for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedGraph{:?}", self.left_counts())
    }
}

impl fmt::Display for OrderedGraph {
    /// Comma-separated `L_2,...,L_n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.left_counts().iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl TryFrom<Vec<usize>> for OrderedGraph {
    type Error = Error;
    fn try_from(left: Vec<usize>) -> Result<Self> {
        OrderedGraph::new(left)
    }
}

impl From<OrderedGraph> for Vec<usize> {
    fn from(og: OrderedGraph) -> Self {
        og.counts[1..].to_vec()
    }
}

impl std::str::FromStr for OrderedGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return OrderedGraph::new(Vec::new());
        }
        let left = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad L entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        OrderedGraph::new(left)
    }
}

/// `L_i = #{ j < i : X_(i) - X_(j) <= r }` on the sorted locations.
pub fn build_ordered_graph(sample: &PointSample) -> OrderedGraph {
    let mut counts = Vec::with_capacity(sample.n());
    left_counts_into(sample.locations(), sample.r(), &mut counts);
    OrderedGraph::from_counts_unchecked(counts)
}

/// Connection range as a function of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RegimeSpec {
    /// `r_n = c / n`.
    COverN { c: f64 },
    /// `r_n = c ln n / n`.
    Log { c: f64 },
    /// `r_n = r`.
    Const { r: f64 },
}

impl RegimeSpec {
    pub fn c_over_n(c: f64) -> Result<Self> {
        positive(c)?;
        Ok(RegimeSpec::COverN { c })
    }

    pub fn log(c: f64) -> Result<Self> {
        positive(c)?;
        Ok(RegimeSpec::Log { c })
    }

    pub fn constant(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::invalid(format!(
                "constant range {r} must lie in (0, 1)"
            )));
        }
        Ok(RegimeSpec::Const { r })
    }

    pub fn range(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            RegimeSpec::COverN { c } => c / nf,
            RegimeSpec::Log { c } => c * nf.ln() / nf,
            RegimeSpec::Const { r } => r,
        }
    }
}

fn positive(c: f64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::invalid(format!("coefficient {c} must be positive")));
    }
    Ok(())
}

/// `ln n / n`.
pub fn critical_range(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("critical range needs n >= 2"));
    }
    let nf = n as f64;
    Ok(nf.ln() / nf)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectivityEstimate {
    pub probability: f64,
    pub std_error: f64,
    pub trials: u64,
}

/// Fraction of sampled graphs that are connected, i.e. every consecutive
/// gap of the sorted locations is at most `r` (equivalently `L_i >= 1`).
pub fn connectivity_probability(
    n: usize,
    r: f64,
    trials: u64,
    seed: u64,
) -> Result<ConnectivityEstimate> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    check_range(r)?;
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let shards: Vec<_> = rng::shards(trials).collect();
    let connected: u64 = shards
        .par_iter()
        .map(|&(k, count)| {
            let mut rng = rng::shard_rng(seed, k);
            let mut buf = vec![0.0; n];
            let mut hits = 0;
            for _ in 0..count {
                fill_sorted_uniform(&mut rng, &mut buf);
                if buf.windows(2).all(|w| w[1] - w[0] <= r) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let p = connected as f64 / trials as f64;
    Ok(ConnectivityEstimate {
        probability: p,
        std_error: (p * (1.0 - p) / trials as f64).sqrt(),
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1a() -> PointSample {
        PointSample::from_locations(vec![0.45, 0.15, 0.25, 0.9, 0.7], 1.0 / 3.0).unwrap()
    }

    #[test]
    fn single_point() {
        let s = sample_points(1, 0.5, 9).unwrap();
        assert_eq!(s.n(), 1);
        assert_eq!(s.original_order(), &[1]);
        assert!((0.0..=1.0).contains(&s.locations()[0]));
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(
            sample_points(50, 0.1, 3).unwrap(),
            sample_points(50, 0.1, 3).unwrap()
        );
        assert_ne!(
            sample_points(50, 0.1, 3).unwrap(),
            sample_points(50, 0.1, 4).unwrap()
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(sample_points(0, 0.5, 1).is_err());
        assert!(sample_points(3, 0.0, 1).is_err());
        assert!(sample_points(3, -0.1, 1).is_err());
        assert!(sample_points(3, 1.5, 1).is_err());
        assert!(sample_points(3, f64::NAN, 1).is_err());
        assert!(PointSample::from_locations(vec![0.1, 1.2], 0.5).is_err());
        assert!(critical_range(1).is_err());
    }

    #[test]
    fn location_mean_concentrates() {
        let n = 1_000_000;
        let s = sample_points(n, 0.1, 11).unwrap();
        let mean = s.locations().iter().sum::<f64>() / n as f64;
        let sigma = (1.0f64 / 12.0).sqrt();
        assert!(
            (mean - 0.5).abs() < 3.0 * sigma / (n as f64).sqrt(),
            "mean {mean}"
        );
    }

    #[test]
    fn fig1a_labeled_edges() {
        let g = build_labeled_graph(&fig1a());
        let expect: BTreeSet<_> = [(1, 2), (1, 3), (1, 5), (2, 3), (4, 5)]
            .into_iter()
            .collect();
        assert_eq!(g.edges(), &expect);
    }

    #[test]
    fn fig1a_ordered_graph() {
        let og = build_ordered_graph(&fig1a());
        assert_eq!(og.left_counts(), &[1, 2, 1, 1]);
    }

    #[test]
    fn full_range_gives_complete_graph() {
        let s = sample_points(12, 1.0, 5).unwrap();
        assert_eq!(build_labeled_graph(&s).edge_count(), 12 * 11 / 2);
        assert_eq!(build_ordered_graph(&s), OrderedGraph::complete(12));
    }

    #[test]
    fn far_apart_pair_is_empty() {
        let s = PointSample::from_locations(vec![0.1, 0.9], 0.5).unwrap();
        assert_eq!(build_labeled_graph(&s).edge_count(), 0);
        let s = PointSample::from_locations(vec![0.0, 0.3, 0.6, 0.9], 0.25).unwrap();
        assert_eq!(build_ordered_graph(&s), OrderedGraph::empty(4));
    }

    #[test]
    fn closed_threshold_and_stable_ties() {
        let s = PointSample::from_locations(vec![0.5, 0.25, 0.5], 0.25).unwrap();
        assert_eq!(s.original_order(), &[2, 1, 3]);
        let g = build_labeled_graph(&s);
        assert!(g.has_edge(1, 2) && g.has_edge(1, 3) && g.has_edge(2, 3));
    }

    #[test]
    fn ordered_graph_invariants_checked() {
        assert!(OrderedGraph::new(vec![2]).is_err());
        assert!(OrderedGraph::new(vec![1, 3]).is_err());
        assert!(OrderedGraph::new(vec![1, 2, 0, 1]).is_ok());
        let og: OrderedGraph = "1,2,1,1".parse().unwrap();
        assert_eq!(og.to_string(), "1,2,1,1");
        assert_eq!(og.n(), 5);
        assert_eq!(og.edge_count(), 5);
        let n1: OrderedGraph = "".parse().unwrap();
        assert_eq!(n1.n(), 1);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = build_labeled_graph(&fig1a());
        let text = g.to_edge_list();
        assert_eq!(text.lines().next(), Some("1 2"));
        assert_eq!(LabeledGraph::parse_edge_list(5, &text).unwrap(), g);
        assert!(LabeledGraph::new(3, [(1, 1)]).is_err());
        assert!(LabeledGraph::new(3, [(1, 4)]).is_err());
    }

    #[test]
    fn csv_layout() {
        let csv = fig1a().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "index,location");
        assert_eq!(lines[1], "1,0.15");
        assert_eq!(lines.len(), 6);
    }

    #[test]
    fn critical_range_values() {
        assert!((critical_range(3).unwrap() - 0.366_204_096_222_703_3).abs() < 1e-12);
        assert!((critical_range(10).unwrap() - 0.230_258_509_299_404_6).abs() < 1e-12);
        let mut prev = critical_range(3).unwrap();
        for n in 4..200 {
            let v = critical_range(n).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn regimes() {
        assert!(RegimeSpec::c_over_n(0.0).is_err());
        assert!(RegimeSpec::constant(1.0).is_err());
        assert_eq!(RegimeSpec::c_over_n(2.0).unwrap().range(50), 0.04);
        assert_eq!(RegimeSpec::constant(0.3).unwrap().range(7), 0.3);
        let log = RegimeSpec::log(1.0).unwrap().range(10);
        assert!((log - critical_range(10).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn connectivity_full_range() {
        let est = connectivity_probability(30, 1.0, 500, 1).unwrap();
        assert_eq!(est.probability, 1.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn connectivity_two_points() {
        let est = connectivity_probability(2, 0.5, 1_000_000, 8).unwrap();
        assert!(
            (est.probability - 0.75).abs() < 3.0 * est.std_error,
            "{est:?}"
        );
    }

    #[test]
    fn connectivity_rejects_zero_trials() {
        assert!(connectivity_probability(5, 0.2, 0, 1).is_err());
    }
}
