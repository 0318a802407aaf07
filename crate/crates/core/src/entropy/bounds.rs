//! Per-node entropy bounds and the finite-n chain-rule bound.

use std::f64::consts::{LN_2, PI};

use rayon::prelude::*;

use super::distributions::{check_half_range, pmf_l, JointRows};
use super::special::{kummer_m, xlny};
use super::{entropy_bits, BoundCurve};
use crate::graph::RegimeSpec;
use crate::{Error, Result};

/// Poisson tail mass below which the outer sum of [`h_upper`] stops.
pub const POISSON_TAIL: f64 = 1e-12;

/// Sparse-limit law of the leftmost-neighbour shift `k = 0..=a` given
/// `L_i = a`: `x / (a + 1) * M(k + 1, a + 2, -x)`. The missing mass
/// `e^{-x}` belongs to `k = a + 1`.
fn sparse_shift_probs(x: f64, a: usize) -> Vec<f64> {
    (0..=a)
        .map(|k| {
            let m = kummer_m(k as u32 + 1, a as u32 + 2, -x).expect("valid Kummer parameters");
            x / (a + 1) as f64 * m
        })
        .collect()
}

/// Upper bound on the per-node structural entropy when `r_n = x / n`.
///
/// The Poisson-weighted sum over the left count `a` is truncated once the
/// remaining Poisson(x) mass falls below [`POISSON_TAIL`]. Returns NaN for
/// negative or non-finite `x`.
pub fn h_upper(x: f64) -> f64 {
    if !x.is_finite() || x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return 0.0;
    }
    let mut total = x * (-x).exp() / LN_2;
    let mut weight = (-x).exp();
    let mut seen = 0.0;
    let mut a = 0usize;
    loop {
        let shift_entropy: f64 = sparse_shift_probs(x, a)
            .iter()
            .map(|&q| xlny(q, q))
            .sum::<f64>()
            / LN_2;
        total -= weight * shift_entropy;
        seen += weight;
        if a as f64 > x && 1.0 - seen < POISSON_TAIL {
            break;
        }
        a += 1;
        weight *= x / a as f64;
    }
    total
}

/// Lower bound on the per-node structural entropy when `r_n = x / n`.
pub fn h_lower(x: f64) -> f64 {
    if !x.is_finite() || x < 0.0 {
        return f64::NAN;
    }
    let s = -(-x).exp_m1();
    s / LN_2 - if s > 0.0 { s * s * s.log2() } else { 0.0 }
}

/// Limit of the per-node upper bound in each range regime.
pub fn asymptotic_upper(regime: &RegimeSpec) -> f64 {
    match *regime {
        RegimeSpec::COverN { c } => h_upper(c),
        RegimeSpec::Log { .. } => 2.0,
        RegimeSpec::Const { r } => 2.0 * (1.0 - r),
    }
}

/// `2n - (3/2) log2 n - (1/2) log2 pi`, the log of the Catalan-type count of
/// all ordered graphs.
pub fn theorem1_bound(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let n = n as f64;
    Ok(2.0 * n - 1.5 * n.log2() - 0.5 * PI.log2())
}

/// `H(L_2) + sum_{i=2}^{n-1} H(L_{i+1} | L_i)` in bits, an upper bound on
/// the entropy of the ordered graph.
pub fn chain_upper_bound(n: usize, r: f64) -> Result<f64> {
    check_half_range(r)?;
    if n < 3 {
        return Err(Error::invalid(format!("chain bound needs n >= 3, got {n}")));
    }
    let mut rows = JointRows::new(n, r);
    let mut total = entropy_bits(pmf_l(n, r, 2)?.probabilities());
    for i in 2..n {
        let joint = rows.table(i);
        let h_joint: f64 = joint.iter().map(|row| entropy_bits(row)).sum();
        let h_marginal = entropy_bits(pmf_l(n, r, i)?.probabilities());
        total += (h_joint - h_marginal).max(0.0);
    }
    Ok(total)
}

/// Tabulates both per-node bounds over `grid`.
pub fn bound_curve(grid: &[f64]) -> Result<BoundCurve> {
    if let Some(&x) = grid.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(Error::invalid(format!(
            "grid value {x} must be a finite nonnegative number"
        )));
    }
    let pairs: Vec<(f64, f64)> = grid.par_iter().map(|&x| (h_upper(x), h_lower(x))).collect();
    let (h_upper, h_lower) = pairs.into_iter().unzip();
    Ok(BoundCurve {
        x: grid.to_vec(),
        h_upper,
        h_lower,
    })
}
