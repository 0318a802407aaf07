//! Distributions of neighbour counts, entropy bounds and Monte Carlo
//! entropy estimates.
//!
//! All entropies are in bits and use the convention `0 log 0 = 0`.

mod bounds;
mod distributions;
mod estimate;
pub mod quadrature;
mod special;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bounds::{
    asymptotic_upper, bound_curve, chain_upper_bound, h_lower, h_upper, theorem1_bound,
    POISSON_TAIL,
};
pub use distributions::{delta_pmf, gap_tail, joint_pmf_l, location_density, pmf_l};
pub use estimate::{mc_entropy, mc_entropy_targets, BOOTSTRAP_RESAMPLES};
pub use special::{binomial_pmf, kummer_m, ln_factorials};

use crate::Error;

/// `-sum p log2 p` over the given probabilities.
pub fn entropy_bits(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Probability mass function on a finite integer support.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pmf {
    support: Vec<usize>,
    probabilities: Vec<f64>,
}

impl Pmf {
    pub(crate) fn from_parts(support: Vec<usize>, probabilities: Vec<f64>) -> Self {
        debug_assert_eq!(support.len(), probabilities.len());
        Pmf {
            support,
            probabilities,
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Probability of value `k` (zero off the support).
    pub fn prob(&self, k: usize) -> f64 {
        self.support
            .iter()
            .position(|&s| s == k)
            .map_or(0.0, |j| self.probabilities[j])
    }

    pub fn entropy_bits(&self) -> f64 {
        entropy_bits(&self.probabilities)
    }

    /// Total variation distance to `other`, indexed by value `0, 1, ...`.
    pub fn total_variation(&self, other: &[f64]) -> f64 {
        let top = self
            .support
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
            .max(other.len().saturating_sub(1));
        0.5 * (0..=top)
            .map(|k| (self.prob(k) - other.get(k).copied().unwrap_or(0.0)).abs())
            .sum::<f64>()
    }

    /// `value,probability` rows.
    pub fn to_csv(&self, header: &str) -> String {
        let mut out = format!("{header},probability\n");
        for (k, p) in self.support.iter().zip(&self.probabilities) {
            out.push_str(&format!("{k},{}\n", fmt_num(*p)));
        }
        out
    }
}

/// Joint law of `(L_i, L_{i+1})`, stored by row `a`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointPmf {
    rows: Vec<Vec<f64>>,
}

impl JointPmf {
    pub(crate) fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        JointPmf { rows }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn prob(&self, a: usize, b: usize) -> f64 {
        self.rows
            .get(a)
            .and_then(|row| row.get(b))
            .copied()
            .unwrap_or(0.0)
    }

    /// `(a, b, probability)` over the stored entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().enumerate().map(move |(b, &p)| (a, b, p)))
    }

    /// Law of the first coordinate.
    pub fn marginal_first(&self) -> Vec<f64> {
        self.rows.iter().map(|row| row.iter().sum()).collect()
    }

    /// Law of the second coordinate.
    pub fn marginal_second(&self) -> Vec<f64> {
        let width = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![0.0; width];
        for (_, b, p) in self.entries() {
            out[b] += p;
        }
        out
    }

    pub fn entropy_bits(&self) -> f64 {
        self.rows.iter().map(|row| entropy_bits(row)).sum()
    }

    /// `a,b,probability` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,b,probability\n");
        for (a, b, p) in self.entries() {
            out.push_str(&format!("{a},{b},{}\n", fmt_num(p)));
        }
        out
    }
}

/// What a Monte Carlo entropy estimate counts as one outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// Isomorphism classes of the graph.
    Structure,
    /// The L-vector of the graph.
    OrderedGraph,
    /// Structures of connected samples only.
    #[serde(alias = "connected-conditioned")]
    ConnectedStructure,
    /// Ordered graphs of connected samples only.
    ConnectedOrderedGraph,
}

impl Target {
    pub fn is_structure(self) -> bool {
        matches!(self, Target::Structure | Target::ConnectedStructure)
    }

    pub fn is_connected(self) -> bool {
        matches!(
            self,
            Target::ConnectedStructure | Target::ConnectedOrderedGraph
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Target::Structure => "structure",
            Target::OrderedGraph => "ordered-graph",
            Target::ConnectedStructure => "connected-structure",
            Target::ConnectedOrderedGraph => "connected-ordered-graph",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "structure" => Ok(Target::Structure),
            "ordered-graph" => Ok(Target::OrderedGraph),
            "connected-structure" | "connected-conditioned" => Ok(Target::ConnectedStructure),
            "connected-ordered-graph" => Ok(Target::ConnectedOrderedGraph),
            other => Err(Error::invalid(format!("unknown target {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimator {
    /// `-sum p_hat log2 p_hat`.
    #[default]
    PlugIn,
    /// Plug-in plus `(K - 1) / (2 N ln 2)` for `K` observed outcomes.
    MillerMadow,
}

impl Estimator {
    pub fn as_str(self) -> &'static str {
        match self {
            Estimator::PlugIn => "plug-in",
            Estimator::MillerMadow => "miller-madow",
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Estimator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plug-in" => Ok(Estimator::PlugIn),
            "miller-madow" => Ok(Estimator::MillerMadow),
            other => Err(Error::invalid(format!("unknown estimator {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub n: usize,
    pub r: f64,
    pub target: Target,
    pub estimator: Estimator,
    /// Graphs drawn, including rejected ones.
    pub samples: u64,
    pub bits: f64,
    pub std_error: f64,
    /// Distinct outcomes observed.
    #[serde(skip)]
    pub support: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub acceptance_rate: Option<f64>,
}

/// Both per-node bounds tabulated over a grid of `x = n r_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCurve {
    pub x: Vec<f64>,
    pub h_upper: Vec<f64>,
    pub h_lower: Vec<f64>,
}

impl BoundCurve {
    /// `x,h_upper,h_lower` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,h_upper,h_lower\n");
        for ((x, u), l) in self.x.iter().zip(&self.h_upper).zip(&self.h_lower) {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_num(*x),
                fmt_num(*u),
                fmt_num(*l)
            ));
        }
        out
    }
}

/// Formats with 12 significant digits and no trailing zeros.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

/// Rounds to 12 significant digits (for JSON output).
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_convention() {
        assert_eq!(entropy_bits(&[1.0, 0.0]), 0.0);
        assert!((entropy_bits(&[0.5, 0.5]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(0.25), "0.25");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(2.0), "2");
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
    }

    #[test]
    fn names_round_trip() {
        for t in [
            Target::Structure,
            Target::OrderedGraph,
            Target::ConnectedStructure,
            Target::ConnectedOrderedGraph,
        ] {
            assert_eq!(t.as_str().parse::<Target>().unwrap(), t);
        }
        assert_eq!(
            "connected-conditioned".parse::<Target>().unwrap(),
            Target::ConnectedStructure
        );
        assert_eq!(
            "miller-madow".parse::<Estimator>().unwrap(),
            Estimator::MillerMadow
        );
        assert!("mle".parse::<Estimator>().is_err());
    }

    #[test]
    fn pmf_helpers() {
        let p = Pmf::from_parts(vec![0, 1, 2], vec![0.25, 0.5, 0.25]);
        assert_eq!(p.prob(3), 0.0);
        assert!((p.entropy_bits() - 1.5).abs() < 1e-15);
        assert!((p.total_variation(&[0.5, 0.5]) - 0.25).abs() < 1e-15);
        assert_eq!(p.to_csv("a"), "a,probability\n0,0.25\n1,0.5\n2,0.25\n");
    }
}
