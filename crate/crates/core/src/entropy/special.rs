//! Log-factorials, binomial probabilities and Kummer's function `M`.

use super::quadrature::{integrate, ABS_TOL};
use crate::{Error, Result};

/// Relative tolerance of [`kummer_m`].
pub const KUMMER_REL_TOL: f64 = 1e-10;

/// `ln 0!, ln 1!, ..., ln n!`.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(acc);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// `x * ln(y)` with `0 * ln(0) = 0`.
pub(crate) fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

/// Binomial(n, p) probabilities for `0..=n`, evaluated in log space.
pub fn binomial_pmf(n: usize, p: f64) -> Vec<f64> {
    let lf = ln_factorials(n);
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    (0..=n)
        .map(|a| {
            if p == 0.0 {
                return if a == 0 { 1.0 } else { 0.0 };
            }
            if p == 1.0 {
                return if a == n { 1.0 } else { 0.0 };
            }
            (lf[n] - lf[a] - lf[n - a] + a as f64 * lp + (n - a) as f64 * lq).exp()
        })
        .collect()
}

/// Kummer's confluent hypergeometric function for integer `0 < alpha < beta`
/// and `z <= 0`, as the Beta(alpha, beta - alpha) mean of `e^{z t}`.
pub fn kummer_m(alpha: u32, beta: u32, z: f64) -> Result<f64> {
    if alpha == 0 || beta <= alpha {
        return Err(Error::invalid(format!(
            "Kummer M needs integers 0 < alpha < beta, got alpha = {alpha}, beta = {beta}"
        )));
    }
    if z.is_nan() || z > 0.0 {
        return Err(Error::invalid(format!(
            "Kummer M argument z = {z} must be <= 0"
        )));
    }
    let lf = ln_factorials(beta as usize);
    let (p, q) = (alpha - 1, beta - alpha - 1);
    let norm = lf[(beta - 1) as usize] - lf[p as usize] - lf[q as usize];
    let density = move |t: f64| {
        let mut e = norm + z * t;
        if p > 0 {
            e += p as f64 * t.ln();
        }
        if q > 0 {
            e += q as f64 * (-t).ln_1p();
        }
        e.exp()
    };
    Ok(integrate(density, 0.0, 1.0, ABS_TOL * 1e-3, KUMMER_REL_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    /// 200-term series `sum (alpha)_j z^j / ((beta)_j j!)` in exact rationals.
    fn kummer_series(alpha: i64, beta: i64, z: i64) -> f64 {
        let mut term = BigRational::one();
        let mut sum = BigRational::zero();
        for j in 0..200i64 {
            sum += &term;
            term *= BigRational::new(
                BigInt::from((alpha + j) * z),
                BigInt::from((beta + j) * (j + 1)),
            );
        }
        sum.to_f64().unwrap()
    }

    #[test]
    fn trivial_values() {
        for (a, b) in [(1, 2), (3, 7), (10, 40)] {
            assert!((kummer_m(a, b, 0.0).unwrap() - 1.0).abs() < 1e-12);
        }
        let x: f64 = 1.0;
        let closed = (1.0 - (-x).exp()) / x;
        assert!((kummer_m(1, 2, -x).unwrap() - closed).abs() < 1e-12);
        assert!((closed - 0.632_120_558_828_557_7).abs() < 1e-15);
    }

    #[test]
    fn matches_rational_series() {
        for &(a, b) in &[(1, 2), (1, 5), (3, 4), (5, 12), (20, 40)] {
            for z in [-1, -5, -13, -30] {
                let q = kummer_m(a as u32, b as u32, z as f64).unwrap();
                let s = kummer_series(a, b, z);
                assert!(
                    (q - s).abs() <= 1e-8 * s.abs().max(1e-300) || (q - s).abs() < 1e-14,
                    "M({a},{b},{z}): {q} vs {s}"
                );
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(kummer_m(2, 2, -1.0).is_err());
        assert!(kummer_m(0, 2, -1.0).is_err());
        assert!(kummer_m(1, 2, 0.5).is_err());
    }

    #[test]
    fn binomial_pmf_normalized() {
        for &(n, p) in &[(0, 0.3), (5, 1.0 / 3.0), (200, 0.01), (10, 0.0), (10, 1.0)] {
            let s: f64 = binomial_pmf(n, p).iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
        let v = binomial_pmf(5, 1.0 / 3.0);
        assert!((v[1] - 80.0 / 243.0).abs() < 1e-15);
    }

    #[test]
    fn log_factorials() {
        let lf = ln_factorials(20);
        assert!((lf[20] - 2_432_902_008_176_640_000f64.ln()).abs() < 1e-12);
    }
}
