//! Exact counts: Catalan and Narayana numbers, and the number of graphs whose
//! last maximal clique is `[m:n]` (`p` for all graphs, `q` for connected ones).

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{enumerate_ordered_graphs, Method};
use crate::structure::maximal_cliques;
use crate::{Error, Result};

/// `C(n, k)`, zero when `k < 0` or `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

pub fn catalan(n: usize) -> BigUint {
    let n = n as i64;
    binomial(2 * n, n) / BigUint::from((n + 1) as u64)
}

/// Number of members of `C_n` with exactly `k` maximal cliques:
/// `C(n,k) C(n,k-1) / n`, or `C(n-1,k) C(n-1,k-1) / (n-1)` for connected graphs.
pub fn count_with_k_cliques(n: usize, k: usize, connected_only: bool) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if connected_only {
        if n == 1 {
            return if k == 1 {
                Ok(BigUint::one())
            } else {
                Err(Error::invalid("a single vertex has exactly one clique"))
            };
        }
        if k == 0 || k > n - 1 {
            return Err(Error::invalid(format!(
                "connected graphs on {n} vertices have 1..={} maximal cliques, got k = {k}",
                n - 1
            )));
        }
        return Ok(narayana((n - 1) as i64, k as i64));
    }
    if k == 0 || k > n {
        return Err(Error::invalid(format!("k = {k} outside 1..={n}")));
    }
    Ok(narayana(n as i64, k as i64))
}

fn narayana(n: i64, k: i64) -> BigUint {
    binomial(n, k) * binomial(n, k - 1) / BigUint::from(n as u64)
}

fn check_p_args(m: usize, n: usize, k: usize) -> Result<()> {
    if k == 0 || n == 0 {
        return Err(Error::invalid("k and n must be at least 1"));
    }
    let ok = if k == 1 {
        (1..=n).contains(&m)
    } else {
        k <= m && m <= n
    };
    if !ok {
        return Err(Error::invalid(format!(
            "p({m}, {n}, {k}) is outside its index range"
        )));
    }
    Ok(())
}

fn check_q_args(m: usize, n: usize, k: usize) -> Result<()> {
    if k == 0 || n == 0 {
        return Err(Error::invalid("k and n must be at least 1"));
    }
    let ok = if k == 1 {
        (1..=n).contains(&m)
    } else {
        k <= m && m < n
    };
    if !ok {
        return Err(Error::invalid(format!(
            "q({m}, {n}, {k}) is outside its index range"
        )));
    }
    Ok(())
}

/// Graphs in `C_n` with `k` maximal cliques whose last clique is `[m:n]`.
pub fn p_count(m: usize, n: usize, k: usize, method: Method) -> Result<BigUint> {
    check_p_args(m, n, k)?;
    Ok(match method {
        Method::Formula => p_formula(m, n, k),
        Method::Recurrence => PqTable::recurrence(n).p(m, n, k),
    })
}

/// Connected analogue of [`p_count`].
pub fn q_count(m: usize, n: usize, k: usize, method: Method) -> Result<BigUint> {
    check_q_args(m, n, k)?;
    Ok(match method {
        Method::Formula => q_formula(m, n, k),
        Method::Recurrence => PqTable::recurrence(n).q(m, n, k),
    })
}

fn first_clique(m: usize) -> BigUint {
    if m == 1 {
        BigUint::one()
    } else {
        BigUint::zero()
    }
}

fn to_unsigned(v: BigInt) -> BigUint {
    v.to_biguint().expect("clique counts are nonnegative")
}

/// `C(n,k-1) C(m-2,k-2) - C(n-1,k-2) C(m-1,k-1)` for `k >= 2`.
fn p_formula(m: usize, n: usize, k: usize) -> BigUint {
    if k == 1 {
        return first_clique(m);
    }
    let (m, n, k) = (m as i64, n as i64, k as i64);
    let plus = BigInt::from(binomial(n, k - 1) * binomial(m - 2, k - 2));
    let minus = BigInt::from(binomial(n - 1, k - 2) * binomial(m - 1, k - 1));
    to_unsigned(plus - minus)
}

/// `C(n-1,k-1) C(m-2,k-2) - C(n-2,k-2) C(m-1,k-1)` for `k >= 2`.
fn q_formula(m: usize, n: usize, k: usize) -> BigUint {
    if k == 1 {
        return first_clique(m);
    }
    let (m, n, k) = (m as i64, n as i64, k as i64);
    let plus = BigInt::from(binomial(n - 1, k - 1) * binomial(m - 2, k - 2));
    let minus = BigInt::from(binomial(n - 2, k - 2) * binomial(m - 1, k - 1));
    to_unsigned(plus - minus)
}

/// `p(m, v, k)` and `q(m, v, k)` for all `v <= n`, filled by the recurrences
///
/// ```text
/// p(m, v, k+1) = sum_{u=k}^{m-1} sum_{w=m-1}^{v-1} p(u, w, k)
/// q(m, v, k+1) = sum_{u=k}^{m-1} sum_{w=m}^{v-1}   q(u, w, k)
/// ```
///
/// starting from `p(m, v, 1) = q(m, v, 1) = [m = 1]`.
#[derive(Debug, Clone)]
pub struct PqTable {
    n: usize,
    /// indexed `[k][m][v]`, all 1-based with unused slot 0
    p: Vec<Vec<Vec<BigUint>>>,
    q: Vec<Vec<Vec<BigUint>>>,
}

impl PqTable {
    pub fn recurrence(n: usize) -> Self {
        let zero = || vec![vec![vec![BigUint::zero(); n + 1]; n + 1]; n + 1];
        let (mut p, mut q) = (zero(), zero());
        for v in 1..=n {
            p[1][1][v] = BigUint::one();
            q[1][1][v] = BigUint::one();
        }
        for k in 1..n {
            for v in 1..=n {
                for m in (k + 1)..=v {
                    let mut sp = BigUint::zero();
                    let mut sq = BigUint::zero();
                    for u in k..m {
                        for w in (m - 1)..v {
                            sp += &p[k][u][w];
                            if w >= m {
                                sq += &q[k][u][w];
                            }
                        }
                    }
                    p[k + 1][m][v] = sp;
                    q[k + 1][m][v] = sq;
                }
            }
        }
        PqTable { n, p, q }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self, m: usize, v: usize, k: usize) -> BigUint {
        self.p[k][m][v].clone()
    }

    pub fn q(&self, m: usize, v: usize, k: usize) -> BigUint {
        self.q[k][m][v].clone()
    }

    /// `(m, k, p, q)` rows for size `n`, over every `(m, k)` valid for `p`;
    /// `q` is reported as 0 outside its own range.
    pub fn rows(&self) -> Vec<(usize, usize, BigUint, BigUint)> {
        let n = self.n;
        let mut out = Vec::new();
        for k in 1..=n {
            let ms: Vec<usize> = if k == 1 { vec![1] } else { (k..=n).collect() };
            for m in ms {
                out.push((m, k, self.p(m, n, k), self.q(m, n, k)));
            }
        }
        out
    }
}

/// Brute force: tallies enumerated graphs by `(start of last clique, clique count)`.
pub fn last_clique_counts(n: usize, connected_only: bool) -> Result<BTreeMap<(usize, usize), u64>> {
    let mut tally = BTreeMap::new();
    for og in enumerate_ordered_graphs(n, connected_only)? {
        let cover = maximal_cliques(&og);
        let m = cover.intervals().last().expect("nonempty cover").0;
        *tally.entry((m, cover.len())).or_insert(0) += 1;
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(5), big(42));
        assert_eq!(catalan(14), big(2_674_440));
    }

    #[test]
    fn catalan_recurrence() {
        // c_{n+1} = sum_i c_i c_{n-i}
        let mut c = vec![big(1)];
        for n in 0..30 {
            let next: BigUint = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
            c.push(next);
        }
        for (n, v) in c.iter().enumerate() {
            assert_eq!(&catalan(n), v);
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(5, 6), big(0));
        assert_eq!(binomial(-1, 0), big(0));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(60, 30), "118264581564861424".parse().unwrap());
    }

    #[test]
    fn narayana_values() {
        assert_eq!(count_with_k_cliques(4, 2, false).unwrap(), big(6));
        for n in 1..=20 {
            assert_eq!(count_with_k_cliques(n, 1, false).unwrap(), big(1));
            let total: BigUint = (1..=n)
                .map(|k| count_with_k_cliques(n, k, false).unwrap())
                .sum();
            assert_eq!(total, catalan(n));
            for k in 1..=n {
                assert_eq!(
                    count_with_k_cliques(n, k, false).unwrap(),
                    count_with_k_cliques(n, n + 1 - k, false).unwrap()
                );
            }
        }
    }

    #[test]
    fn connected_narayana() {
        assert_eq!(count_with_k_cliques(1, 1, true).unwrap(), big(1));
        for n in 2..=15 {
            let total: BigUint = (1..n)
                .map(|k| count_with_k_cliques(n, k, true).unwrap())
                .sum();
            assert_eq!(total, catalan(n - 1));
        }
        assert!(count_with_k_cliques(4, 4, true).is_err());
        assert!(count_with_k_cliques(4, 0, false).is_err());
        assert!(count_with_k_cliques(4, 5, false).is_err());
    }

    #[test]
    fn p_examples() {
        assert_eq!(p_count(1, 7, 1, Method::Formula).unwrap(), big(1));
        assert_eq!(p_count(3, 7, 1, Method::Formula).unwrap(), big(0));
        assert_eq!(p_count(2, 4, 2, Method::Formula).unwrap(), big(3));
        for n in 2..=10 {
            for m in 2..=n {
                let v = big((n - m + 1) as u64);
                assert_eq!(p_count(m, n, 2, Method::Formula).unwrap(), v);
                assert_eq!(p_count(m, n, 2, Method::Recurrence).unwrap(), v);
            }
        }
        assert!(p_count(1, 5, 2, Method::Formula).is_err());
        assert!(p_count(6, 5, 2, Method::Formula).is_err());
        assert!(p_count(1, 5, 0, Method::Formula).is_err());
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_count(2, 4, 2, Method::Formula).unwrap(), big(2));
        assert_eq!(q_count(2, 4, 2, Method::Recurrence).unwrap(), big(2));
        assert_eq!(q_count(1, 6, 1, Method::Recurrence).unwrap(), big(1));
        assert!(q_count(4, 4, 2, Method::Formula).is_err());
    }

    #[test]
    fn formula_matches_recurrence() {
        for n in 1..=12 {
            let table = PqTable::recurrence(n);
            for k in 1..=n {
                let lo = if k == 1 { 1 } else { k };
                for m in lo..=n {
                    assert_eq!(p_formula(m, n, k), table.p(m, n, k), "p({m},{n},{k})");
                    if k == 1 || m < n {
                        assert_eq!(q_formula(m, n, k), table.q(m, n, k), "q({m},{n},{k})");
                    }
                }
                let col: BigUint = (lo..=n).map(|m| table.p(m, n, k)).sum();
                assert_eq!(col, count_with_k_cliques(n, k, false).unwrap());
            }
            let total_q: BigUint = table.rows().into_iter().map(|(_, _, _, q)| q).sum();
            assert_eq!(total_q, catalan(n - 1), "n = {n}");
        }
    }

    #[test]
    fn brute_force_matches_formula() {
        for n in 1..=8 {
            for (&(m, k), &c) in &last_clique_counts(n, false).unwrap() {
                assert_eq!(p_formula(m, n, k), big(c));
            }
            for (&(m, k), &c) in &last_clique_counts(n, true).unwrap() {
                assert_eq!(q_formula(m, n, k), big(c));
            }
        }
    }
}
