//! Exact finite-n distributions of leftward-neighbour counts, the gap tail
//! and the conditional location density.
//!
//! With `n` uniform points and range `r`, the left neighbourhood of a vertex
//! behaves like a binomial count truncated at the number of vertices to its
//! left. The joint law of consecutive counts and the law of the leftmost
//! neighbour shift are single integrals over the position of the next point,
//! which are evaluated by adaptive quadrature.

use super::quadrature::integrate_default;
use super::special::{binomial_pmf, ln_factorials, xlny};
use super::{JointPmf, Pmf};
use crate::{Error, Result};

pub(crate) fn check_range(r: f64) -> Result<()> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::invalid(format!("range r = {r} must lie in (0, 1]")));
    }
    Ok(())
}

/// The integral forms assume the neighbourhoods of consecutive points do
/// not wrap past each other, which needs `r < 1/2`.
pub(crate) fn check_half_range(r: f64) -> Result<()> {
    check_range(r)?;
    if r >= 0.5 {
        return Err(Error::UnsupportedRange { r });
    }
    Ok(())
}

/// Law of `L_i`: binomial(n, r) for `a <= i - 2`, with the remaining mass
/// collected at `a = i - 1`.
pub fn pmf_l(n: usize, r: f64, i: usize) -> Result<Pmf> {
    check_range(r)?;
    if i < 2 || i > n {
        return Err(Error::invalid(format!(
            "index i = {i} must satisfy 2 <= i <= n = {n}"
        )));
    }
    let binom = binomial_pmf(n, r);
    let mut probs = binom[..i - 1].to_vec();
    probs.push(binom[i - 1..].iter().sum());
    Ok(Pmf::from_parts((0..i).collect(), probs))
}

/// `Pr(L_i = a, L_{i+1} = b)` for `a <= i - 2`, `0 <= b <= a + 1`; does
/// not depend on `i`.
fn joint_row(n: usize, r: f64, a: usize, lf: &[f64]) -> Vec<f64> {
    let (lr, lq2) = (r.ln(), (-2.0 * r).ln_1p());
    let mut row = Vec::with_capacity(a + 2);
    // nobody within r to the left of X_(i+1): the i-th point's window and
    // the gap to the next point leave 1 - 2r for the others
    row.push((lf[n] - lf[a] - lf[n - a] + a as f64 * lr + (n - a) as f64 * lq2).exp());
    for b in 1..=a + 1 {
        let (p, q, s) = ((a + 1 - b) as f64, (b - 1) as f64, (n - a - 1) as f64);
        let norm = lf[n] - lf[a + 1 - b] - lf[b - 1] - lf[n - a - 1] + (a + 1) as f64 * lr;
        let integrand = |t: f64| {
            let e = norm + xlny(p, t) + xlny(q, 1.0 - t) + xlny(s, 1.0 - r - r * t);
            e.exp()
        };
        row.push(integrate_default(integrand, 0.0, 1.0));
    }
    row
}

/// Row `a = i - 1` obtained from the marginal of `L_{i+1}` minus the rows
/// already known.
fn last_row(i: usize, rows: &[Vec<f64>], binom: &[f64]) -> Vec<f64> {
    (0..=i)
        .map(|b| {
            let marginal = if b < i {
                binom[b]
            } else {
                binom[i..].iter().sum()
            };
            let known: f64 = rows.iter().filter_map(|row| row.get(b)).sum();
            (marginal - known).max(0.0)
        })
        .collect()
}

pub(crate) struct JointRows {
    n: usize,
    r: f64,
    lf: Vec<f64>,
    binom: Vec<f64>,
    rows: Vec<Vec<f64>>,
}

impl JointRows {
    pub(crate) fn new(n: usize, r: f64) -> Self {
        JointRows {
            n,
            r,
            lf: ln_factorials(n),
            binom: binomial_pmf(n, r),
            rows: Vec::new(),
        }
    }

    /// Joint table of `(L_i, L_{i+1})`, reusing the rows shared across `i`.
    pub(crate) fn table(&mut self, i: usize) -> Vec<Vec<f64>> {
        while self.rows.len() + 1 < i {
            let a = self.rows.len();
            self.rows.push(joint_row(self.n, self.r, a, &self.lf));
        }
        let mut table = self.rows[..i - 1].to_vec();
        table.push(last_row(i, &table, &self.binom));
        table
    }
}

/// Joint law of `(L_i, L_{i+1})` for `2 <= i <= n - 1` and `r < 1/2`.
pub fn joint_pmf_l(n: usize, r: f64, i: usize) -> Result<JointPmf> {
    check_half_range(r)?;
    if i < 2 || i + 1 > n {
        return Err(Error::invalid(format!(
            "index i = {i} must satisfy 2 <= i <= n - 1 = {}",
            n.saturating_sub(1)
        )));
    }
    Ok(JointPmf::from_rows(JointRows::new(n, r).table(i)))
}

/// Law of the shift `k` of the leftmost neighbour between consecutive
/// vertices given `L_i = a`, over `k = 0..=a+1`.
pub fn delta_pmf(n: usize, r: f64, a: usize) -> Result<Pmf> {
    check_half_range(r)?;
    if n < 3 || a > n - 3 {
        return Err(Error::invalid(format!(
            "count a = {a} must satisfy 0 <= a <= n - 3 (n = {n})"
        )));
    }
    let lf = ln_factorials(n);
    let rho = r / (1.0 - r);
    let s = (n - a - 1) as f64;
    let lead = ((n - a) as f64 * rho).ln();
    let mut probs: Vec<f64> = (0..=a)
        .map(|k| {
            let (p, q) = (k as f64, (a - k) as f64);
            let norm = lead + lf[a] - lf[k] - lf[a - k];
            let integrand =
                |t: f64| (norm + xlny(p, t) + xlny(q, 1.0 - t) + s * (-rho * t).ln_1p()).exp();
            integrate_default(integrand, 0.0, 1.0)
        })
        .collect();
    probs.push((1.0 - rho).powi((n - a) as i32));
    Ok(Pmf::from_parts((0..=a + 1).collect(), probs))
}

/// `Pr(X_(i+1) - X_(i) > u | X_(i) = x) = (1 - u / (1 - x))^{n - i}`.
pub fn gap_tail(u: f64, x: f64, n: usize, i: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::invalid(format!(
            "location x = {x} must lie in [0, 1)"
        )));
    }
    if !(0.0..=1.0 - x).contains(&u) {
        return Err(Error::invalid(format!(
            "gap u = {u} must lie in [0, 1 - x]"
        )));
    }
    if i == 0 || i >= n {
        return Err(Error::invalid(format!(
            "index i = {i} must satisfy 1 <= i < n = {n}"
        )));
    }
    Ok((1.0 - u / (1.0 - x)).max(0.0).powi((n - i) as i32))
}

/// Density of `X_(i)` given `L_i = a` for `a <= i - 2`: a Beta(i - a, n - i + 1)
/// law stretched over `(r, 1)`.
pub fn location_density(x: f64, n: usize, r: f64, i: usize, a: usize) -> Result<f64> {
    check_half_range(r)?;
    if i > n || a + 2 > i {
        return Err(Error::invalid(format!(
            "need a <= i - 2 and i <= n, got a = {a}, i = {i}, n = {n}"
        )));
    }
    if !(x > r && x < 1.0) {
        return Err(Error::invalid(format!(
            "location x = {x} must lie in (r, 1)"
        )));
    }
    let lf = ln_factorials(n);
    let e = lf[n - a] - lf[i - a - 1] - lf[n - i]
        + xlny((i - a - 1) as f64, x - r)
        + xlny((n - i) as f64, 1.0 - x)
        - (n - a) as f64 * (1.0 - r).ln();
    Ok(e.exp())
}
