//! Monte Carlo estimates of ordered-graph and structure entropies.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::LN_2;

use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use super::distributions::check_range;
use super::{entropy_bits, EntropyEstimate, Estimator, Target};
use crate::graph::{fill_sorted_uniform, left_counts_into, OrderedGraph};
use crate::rng::{mix, rng_for, shard_rng, shards};
use crate::structure::canonicalize;
use crate::{Error, Result};

/// Number of bootstrap resamples behind every standard error.
pub const BOOTSTRAP_RESAMPLES: usize = 50;

const BOOTSTRAP_SALT: u64 = 0xB007_5743_AB1E_0001;

type Counts = HashMap<Vec<usize>, u64>;

/// Draws `samples` graphs and counts their L-vectors.
fn count_ordered_graphs(n: usize, r: f64, samples: u64, seed: u64) -> Counts {
    let per_shard: Vec<Counts> = shards(samples)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(k, trials)| {
            let mut rng = shard_rng(seed, k);
            let mut y = vec![0.0; n];
            let mut l = Vec::with_capacity(n);
            let mut counts = Counts::new();
            for _ in 0..trials {
                fill_sorted_uniform(&mut rng, &mut y);
                left_counts_into(&y, r, &mut l);
                match counts.get_mut(l.as_slice()) {
                    Some(c) => *c += 1,
                    None => {
                        counts.insert(l.clone(), 1);
                    }
                }
            }
            counts
        })
        .collect();
    let mut merged = Counts::new();
    for counts in per_shard {
        for (key, c) in counts {
            *merged.entry(key).or_insert(0) += c;
        }
    }
    merged
}

/// Outcome frequencies in a fixed (sorted-key) order.
fn frequencies(counts: &Counts, target: Target) -> Vec<u64> {
    if target.is_structure() {
        let mut by_structure = BTreeMap::new();
        for (key, &c) in counts {
            let og = OrderedGraph::from_counts_unchecked(key.clone());
            *by_structure.entry(canonicalize(&og)).or_insert(0) += c;
        }
        by_structure.into_values().collect()
    } else {
        counts
            .iter()
            .collect::<BTreeMap<_, _>>()
            .into_values()
            .copied()
            .collect()
    }
}

fn estimate(freqs: &[u64], estimator: Estimator) -> f64 {
    let total: u64 = freqs.iter().sum();
    let n = total as f64;
    let probs: Vec<f64> = freqs.iter().map(|&c| c as f64 / n).collect();
    let plug_in = entropy_bits(&probs);
    match estimator {
        Estimator::PlugIn => plug_in,
        Estimator::MillerMadow => {
            let support = freqs.iter().filter(|&&c| c > 0).count() as f64;
            plug_in + (support - 1.0) / (2.0 * n * LN_2)
        }
    }
}

/// Standard deviation of the estimator over multinomial resamples of the
/// observed frequencies.
fn bootstrap_std_error(freqs: &[u64], estimator: Estimator, seed: u64) -> f64 {
    let total: u64 = freqs.iter().sum();
    let mut rng = rng_for(mix(seed, BOOTSTRAP_SALT));
    let mut resample = vec![0u64; freqs.len()];
    let values: Vec<f64> = (0..BOOTSTRAP_RESAMPLES)
        .map(|_| {
            let (mut left, mut mass) = (total, total);
            for (slot, &c) in resample.iter_mut().zip(freqs) {
                let draw = if left == 0 || mass == 0 {
                    0
                } else if c >= mass {
                    left
                } else {
                    Binomial::new(left, c as f64 / mass as f64)
                        .expect("probability in [0, 1]")
                        .sample(&mut rng)
                };
                *slot = draw;
                left -= draw;
                mass -= c;
            }
            estimate(&resample, estimator)
        })
        .collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
    var.sqrt()
}

/// Monte Carlo estimate of the entropy of the chosen target at `(n, r)`.
///
/// Connected targets reject disconnected samples; the estimate then uses
/// the accepted samples only and reports the acceptance rate. Results are
/// reproducible for a given seed regardless of the number of threads.
pub fn mc_entropy(
    n: usize,
    r: f64,
    target: Target,
    samples: u64,
    seed: u64,
    estimator: Estimator,
) -> Result<EntropyEstimate> {
    let mut out = mc_entropy_targets(n, r, &[target], samples, seed, estimator)?;
    Ok(out.remove(0))
}

/// [`mc_entropy`] for several targets evaluated on one shared set of samples.
pub fn mc_entropy_targets(
    n: usize,
    r: f64,
    targets: &[Target],
    samples: u64,
    seed: u64,
    estimator: Estimator,
) -> Result<Vec<EntropyEstimate>> {
    check_range(r)?;
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    let all = count_ordered_graphs(n, r, samples, seed);
    let connected: Counts = all
        .iter()
        .filter(|(key, _)| !key[1..].contains(&0))
        .map(|(key, &c)| (key.clone(), c))
        .collect();
    targets
        .iter()
        .map(|&target| {
            let counts = if target.is_connected() {
                &connected
            } else {
                &all
            };
            let accepted: u64 = counts.values().sum();
            if accepted == 0 {
                return Err(Error::InsufficientData(format!(
                    "no connected graph among {samples} samples at n = {n}, r = {r}"
                )));
            }
            let freqs = frequencies(counts, target);
            let bits = estimate(&freqs, estimator).max(0.0);
            let std_error = if freqs.len() > 1 {
                bootstrap_std_error(&freqs, estimator, seed)
            } else {
                0.0
            };
            Ok(EntropyEstimate {
                n,
                r,
                target,
                estimator,
                samples,
                bits,
                std_error,
                support: freqs.len(),
                acceptance_rate: target
                    .is_connected()
                    .then(|| accepted as f64 / samples as f64),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::catalan;

    fn binary_entropy(p: f64) -> f64 {
        -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
    }

    #[test]
    fn two_vertices() {
        let e = mc_entropy(2, 0.5, Target::Structure, 1_000_000, 1, Estimator::PlugIn).unwrap();
        let exact = binary_entropy(0.75);
        assert!((exact - 0.8113).abs() < 1e-4);
        assert!(
            (e.bits - exact).abs() < 3.0 * e.std_error.max(1e-4),
            "{e:?}"
        );
        assert_eq!(e.support, 2);
        assert!(e.acceptance_rate.is_none());
    }

    #[test]
    fn full_range_is_deterministic() {
        for target in [
            Target::Structure,
            Target::OrderedGraph,
            Target::ConnectedStructure,
        ] {
            let e = mc_entropy(6, 1.0, target, 1000, 3, Estimator::MillerMadow).unwrap();
            assert_eq!(e.bits, 0.0);
            assert_eq!(e.std_error, 0.0);
        }
    }

    #[test]
    fn reproducible() {
        let a = mc_entropy(6, 0.2, Target::OrderedGraph, 40_000, 9, Estimator::PlugIn).unwrap();
        let b = mc_entropy(6, 0.2, Target::OrderedGraph, 40_000, 9, Estimator::PlugIn).unwrap();
        assert_eq!(a, b);
        let c = mc_entropy(6, 0.2, Target::OrderedGraph, 40_000, 10, Estimator::PlugIn).unwrap();
        assert_ne!(a.bits, c.bits);
    }

    #[test]
    fn structure_entropy_below_ordered_entropy() {
        let s = mc_entropy(6, 0.2, Target::Structure, 200_000, 4, Estimator::PlugIn).unwrap();
        let g = mc_entropy(6, 0.2, Target::OrderedGraph, 200_000, 4, Estimator::PlugIn).unwrap();
        assert!(s.bits <= g.bits);
        assert!((g.support as f64).log2() <= catalan(6).to_string().parse::<f64>().unwrap().log2());
        let mm = mc_entropy(
            6,
            0.2,
            Target::OrderedGraph,
            200_000,
            4,
            Estimator::MillerMadow,
        )
        .unwrap();
        assert!(mm.bits > g.bits);
    }

    #[test]
    fn connected_targets_report_acceptance() {
        let e = mc_entropy(
            5,
            0.3,
            Target::ConnectedOrderedGraph,
            50_000,
            5,
            Estimator::PlugIn,
        )
        .unwrap();
        let rate = e.acceptance_rate.unwrap();
        assert!(rate > 0.0 && rate < 1.0);
        let err = mc_entropy(
            50,
            1e-4,
            Target::ConnectedStructure,
            100,
            5,
            Estimator::PlugIn,
        );
        assert!(matches!(err, Err(Error::InsufficientData(_))));
        assert!(mc_entropy(5, 0.3, Target::Structure, 0, 5, Estimator::PlugIn).is_err());
    }

    #[test]
    fn shared_samples_match_single_runs() {
        let targets = [Target::Structure, Target::ConnectedOrderedGraph];
        let many = mc_entropy_targets(5, 0.3, &targets, 30_000, 8, Estimator::PlugIn).unwrap();
        for (t, e) in targets.iter().zip(&many) {
            assert_eq!(
                *e,
                mc_entropy(5, 0.3, *t, 30_000, 8, Estimator::PlugIn).unwrap()
            );
        }
    }
}
