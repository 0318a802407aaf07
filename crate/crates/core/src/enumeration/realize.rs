//! Realizability of an ordered graph at a fixed range `r`.
//!
//! An L-vector is realized by sorted locations `0 <= y_1 <= ... <= y_n <= 1`
//! iff `y_i - y_{i-L_i} <= r` whenever `L_i >= 1` and
//! `y_i - y_{i-L_i-1} > r` whenever `i - L_i - 1 >= 1`. With a common margin
//! `delta` on both families this is a system of difference constraints;
//! the graph is realizable iff the largest feasible `delta` is positive.

use std::collections::HashSet;

use serde::Serialize;

use super::enumerate_ordered_graphs;
use crate::graph::OrderedGraph;
use crate::structure::canonicalize;
use crate::{Error, Result};

/// Margins at or below this are treated as zero.
pub const SLACK_TOLERANCE: f64 = 1e-12;

const EXACT_COUNT_MAX_N: usize = 12;
const BISECTION_STEPS: usize = 60;
const RELAX_EPS: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizabilityWitness {
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locations: Option<Vec<f64>>,
    /// Smallest margin `y_i - y_j - r` over the required non-edges; absent
    /// when the graph has no such constraint.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<f64>,
}

impl RealizabilityWitness {
    fn infeasible() -> Self {
        RealizabilityWitness {
            feasible: false,
            locations: None,
            slack: None,
        }
    }
}

/// Edge `from -> to` with weight `w` encodes `y_to - y_from <= w`.
/// Node 0 is the origin, nodes `1..=n` are the locations.
struct System {
    nodes: usize,
    fixed: Vec<(usize, usize, f64)>,
    /// `(from, to, base)`; weight is `base - delta`
    margin: Vec<(usize, usize, f64)>,
}

impl System {
    fn new(og: &OrderedGraph, r: f64) -> Self {
        let n = og.n();
        let mut fixed = vec![(0, n, 1.0), (1, 0, 0.0)];
        let mut margin = Vec::new();
        for i in 2..=n {
            fixed.push((i, i - 1, 0.0));
            let l = og.left(i);
            if l >= 1 {
                margin.push((i - l, i, r));
            }
            if i > l + 1 {
                margin.push((i, i - l - 1, -r));
            }
        }
        System {
            nodes: n + 1,
            fixed,
            margin,
        }
    }

    /// Shortest-path potentials from a virtual source, or `None` on a
    /// negative cycle.
    fn solve(&self, delta: f64) -> Option<Vec<f64>> {
        let edges: Vec<(usize, usize, f64)> = self
            .fixed
            .iter()
            .copied()
            .chain(self.margin.iter().map(|&(u, v, w)| (u, v, w - delta)))
            .collect();
        let mut dist = vec![0.0f64; self.nodes];
        for _ in 0..=self.nodes {
            let mut changed = false;
            for &(u, v, w) in &edges {
                if dist[u] + w < dist[v] - RELAX_EPS {
                    dist[v] = dist[u] + w;
                    changed = true;
                }
            }
            if !changed {
                return Some(dist);
            }
        }
        None
    }
}

fn locations_from(dist: &[f64]) -> Vec<f64> {
    let mut y: Vec<f64> = dist[1..]
        .iter()
        .map(|d| (d - dist[0]).clamp(0.0, 1.0))
        .collect();
    for i in 1..y.len() {
        if y[i] < y[i - 1] {
            y[i] = y[i - 1];
        }
    }
    y
}

/// Rechecks locations against the graph with the closed threshold and
/// returns the smallest non-edge margin (infinity if there is none).
fn verify(og: &OrderedGraph, r: f64, y: &[f64]) -> Option<f64> {
    let mut slack = f64::INFINITY;
    for i in 2..=og.n() {
        let l = og.left(i);
        if l >= 1 && y[i - 1] - y[i - 1 - l] > r {
            return None;
        }
        if i > l + 1 {
            slack = slack.min(y[i - 1] - y[i - l - 2] - r);
        }
    }
    Some(slack)
}

fn check_args(r: f64) -> Result<()> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::invalid(format!("range r = {r} must lie in (0, 1]")));
    }
    Ok(())
}

/// Decides membership in the support at range `r` and, when feasible,
/// returns locations maximizing the smallest constraint margin.
pub fn realizable(og: &OrderedGraph, r: f64) -> Result<RealizabilityWitness> {
    check_args(r)?;
    let system = System::new(og, r);
    let Some(mut best) = system.solve(0.0) else {
        return Ok(RealizabilityWitness::infeasible());
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        match system.solve(mid) {
            Some(dist) => {
                lo = mid;
                best = dist;
            }
            None => hi = mid,
        }
    }
    if lo <= SLACK_TOLERANCE {
        return Ok(RealizabilityWitness::infeasible());
    }
    let y = locations_from(&best);
    match verify(og, r, &y) {
        Some(slack) if slack > SLACK_TOLERANCE => Ok(RealizabilityWitness {
            feasible: true,
            locations: Some(y),
            slack: slack.is_finite().then_some(slack),
        }),
        _ => Ok(RealizabilityWitness::infeasible()),
    }
}

/// Feasibility only: a single solve at a margin just above the tolerance.
pub fn is_realizable(og: &OrderedGraph, r: f64) -> Result<bool> {
    check_args(r)?;
    let Some(dist) = System::new(og, r).solve(2.0 * SLACK_TOLERANCE) else {
        return Ok(false);
    };
    Ok(matches!(verify(og, r, &locations_from(&dist)), Some(s) if s > SLACK_TOLERANCE))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureCount {
    pub ordered_graphs: u64,
    pub structures: u64,
}

/// Realizable ordered graphs at `(n, r)` and the distinct structures among them.
pub fn exact_structure_count(n: usize, r: f64) -> Result<StructureCount> {
    check_args(r)?;
    if n > EXACT_COUNT_MAX_N {
        return Err(Error::SizeLimit {
            what: "n",
            value: n,
            max: EXACT_COUNT_MAX_N,
        });
    }
    let mut ordered = 0;
    let mut structures = HashSet::new();
    for og in enumerate_ordered_graphs(n, false)? {
        if is_realizable(&og, r)? {
            ordered += 1;
            structures.insert(canonicalize(&og));
        }
    }
    Ok(StructureCount {
        ordered_graphs: ordered,
        structures: structures.len() as u64,
    })
}
