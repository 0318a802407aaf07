//! End-to-end checks of the library against exact counts, independent
//! oracles and Monte Carlo simulation, one report per criterion.
//!
//! Every tolerance, sample size and seed used here is fixed so that a run is
//! reproducible bit for bit.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::LN_2;
use std::fmt;

use serde::Serialize;

use crate::codec::{decode, encode, StructureCode};
use crate::entropy::{
    bound_curve, chain_upper_bound, h_lower, h_upper, joint_pmf_l, mc_entropy, mc_entropy_targets,
    pmf_l, theorem1_bound, Estimator, Target,
};
use crate::enumeration::{
    catalan, count_with_k_cliques, enumerate_ordered_graphs, last_clique_counts, p_count, q_count,
    Method,
};
use crate::graph::{
    connectivity_probability, fill_sorted_uniform, left_counts_into, LabeledGraph, OrderedGraph,
};
use crate::rng::rng_for;
use crate::structure::{all_isomorphisms, canonicalize, isomorphic_bruteforce, CanonicalStructure};
use crate::Result;

/// Seed shared by all Monte Carlo checks.
pub const SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {:>2} [{verdict}] {}: {}",
            self.id, self.name, self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "catalan enumeration"),
    (2, "narayana decomposition"),
    (3, "p/q cross-validation"),
    (4, "codec"),
    (5, "canonicalization oracle"),
    (6, "neighbour-count distributions"),
    (7, "entropy sandwich"),
    (8, "bound functions"),
    (9, "finite-n bound coherence"),
    (10, "connectivity zero-one trend"),
];

/// Runs one criterion; `None` for an unknown id.
pub fn run_criterion(id: u8) -> Option<CriterionReport> {
    let &(_, name) = CRITERIA.iter().find(|(i, _)| *i == id)?;
    let outcome = match id {
        1 => catalan_enumeration(),
        2 => narayana_decomposition(),
        3 => pq_cross_validation(),
        4 => codec_round_trip(),
        5 => canonicalization_oracle(),
        6 => distribution_checks(),
        7 => entropy_sandwich(),
        8 => bound_functions(),
        9 => bound_coherence(),
        10 => connectivity_trend(),
        _ => unreachable!("id checked above"),
    };
    let (passed, detail) = match outcome {
        Ok(Check { passed, detail }) => (passed, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    Some(CriterionReport {
        id,
        name,
        passed,
        detail,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .filter_map(|&(id, _)| run_criterion(id))
        .collect()
}

struct Check {
    passed: bool,
    detail: String,
}

impl Check {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Check {
            passed,
            detail: detail.into(),
        }
    }
}

/// Runs the command-line front end and returns its standard output.
fn cli_stdout(args: &[&str]) -> std::result::Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rgg1d").chain(args.iter().copied());
    let code = crate::cli::run(argv, &mut out, &mut err);
    if code != 0 {
        return Err(String::from_utf8_lossy(&err).into_owned());
    }
    Ok(String::from_utf8_lossy(&out).into_owned())
}

fn catalan_enumeration() -> Result<Check> {
    let mut failures = Vec::new();
    for n in 1..=14usize {
        for (connected, expected) in [(false, catalan(n)), (true, catalan(n - 1))] {
            let ns = n.to_string();
            let mut args = vec!["enumerate", "--n", ns.as_str(), "--count-only"];
            if connected {
                args.push("--connected-only");
            }
            let got = cli_stdout(&args).map(|s| s.trim().to_string());
            if got.as_deref() != Ok(expected.to_string().as_str()) {
                failures.push(format!(
                    "n={n} connected={connected}: {got:?} != {expected}"
                ));
            }
        }
    }
    Ok(if failures.is_empty() {
        Check::new(
            true,
            format!("n = 1..14 match c_n and c_(n-1); c_14 = {}", catalan(14)),
        )
    } else {
        Check::new(false, failures.join("; "))
    })
}

fn narayana_decomposition() -> Result<Check> {
    let mut checked = 0;
    for n in 1..=12usize {
        for connected in [false, true] {
            let mut by_k: BTreeMap<usize, u64> = BTreeMap::new();
            for ((_, k), c) in last_clique_counts(n, connected)? {
                *by_k.entry(k).or_insert(0) += c;
            }
            let max_k = if connected {
                n.saturating_sub(1).max(1)
            } else {
                n
            };
            for k in 1..=max_k {
                let formula = count_with_k_cliques(n, k, connected)?;
                let observed = by_k.get(&k).copied().unwrap_or(0);
                if formula != observed.into() {
                    return Ok(Check::new(
                        false,
                        format!("n={n} k={k} connected={connected}: formula {formula} vs enumeration {observed}"),
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(Check::new(
        true,
        format!("{checked} (n, k) cells match, n <= 12"),
    ))
}

fn pq_cross_validation() -> Result<Check> {
    let mut checked = 0;
    for n in 1..=10usize {
        let all = last_clique_counts(n, false)?;
        let connected = last_clique_counts(n, true)?;
        for k in 1..=n {
            let ms: Vec<usize> = if k == 1 {
                (1..=n).collect()
            } else {
                (k..=n).collect()
            };
            for m in ms {
                let brute = all.get(&(m, k)).copied().unwrap_or(0);
                let f = p_count(m, n, k, Method::Formula)?;
                let rec = p_count(m, n, k, Method::Recurrence)?;
                if f != rec || f != brute.into() {
                    return Ok(Check::new(
                        false,
                        format!("p({m},{n},{k}): {f} / {rec} / {brute}"),
                    ));
                }
                checked += 1;
                if k == 1 || m < n {
                    let brute = connected.get(&(m, k)).copied().unwrap_or(0);
                    let f = q_count(m, n, k, Method::Formula)?;
                    let rec = q_count(m, n, k, Method::Recurrence)?;
                    if f != rec || f != brute.into() {
                        return Ok(Check::new(
                            false,
                            format!("q({m},{n},{k}): {f} / {rec} / {brute}"),
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(Check::new(
        true,
        format!("{checked} p/q values agree across formula, recurrence and enumeration, n <= 10"),
    ))
}

fn codec_round_trip() -> Result<Check> {
    let mut graphs = 0u64;
    for n in 1..=12usize {
        for og in enumerate_ordered_graphs(n, false)? {
            let code = encode(&og);
            let bytes = code.to_bytes();
            let payload = bytes.len() - 9;
            if decode(&code).ok().as_ref() != Some(&og)
                || StructureCode::from_bytes(&bytes).ok().as_ref() != Some(&code)
                || payload != 2 * n.div_ceil(8)
                || code.bit_len() != 2 * n
            {
                return Ok(Check::new(false, format!("round trip failed for {og}")));
            }
            graphs += 1;
        }
    }
    let fig4 = OrderedGraph::new(vec![1, 2, 3, 3, 2, 2, 0, 1, 2])?;
    let text = encode(&fig4).to_text();
    let golden = text == "1101100100\n0001111001\n";
    Ok(Check::new(
        golden,
        format!("{graphs} graphs round-trip with 2*ceil(n/8) payload bytes; worked example gives {text:?}"),
    ))
}

/// Partitions `items` into classes of the equivalence `same`.
fn classes<T>(items: &[T], mut same: impl FnMut(&T, &T) -> Result<bool>) -> Result<Vec<usize>> {
    let mut reps: Vec<usize> = Vec::new();
    let mut label = Vec::with_capacity(items.len());
    for (j, item) in items.iter().enumerate() {
        let mut found = None;
        for (c, &rep) in reps.iter().enumerate() {
            if same(&items[rep], item)? {
                found = Some(c);
                break;
            }
        }
        label.push(found.unwrap_or_else(|| {
            reps.push(j);
            reps.len() - 1
        }));
    }
    Ok(label)
}

/// True when two labellings induce the same partition.
fn same_partition(x: &[usize], y: &[usize]) -> bool {
    let mut fwd = HashMap::new();
    let mut back = HashMap::new();
    x.iter()
        .zip(y)
        .all(|(a, b)| *fwd.entry(a).or_insert(b) == b && *back.entry(b).or_insert(a) == a)
}

fn degree_signature(g: &LabeledGraph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

fn canonicalization_oracle() -> Result<Check> {
    let mut classes_seen = 0;
    for n in 1..=7usize {
        let graphs: Vec<OrderedGraph> = enumerate_ordered_graphs(n, false)?.collect();
        let canon: Vec<CanonicalStructure> = graphs.iter().map(canonicalize).collect();
        let by_canon = classes(&canon, |a, b| Ok(a == b))?;
        let labeled: Vec<(Vec<usize>, LabeledGraph)> = graphs
            .iter()
            .map(|g| {
                let l = g.to_labeled();
                (degree_signature(&l), l)
            })
            .collect();
        let by_iso = classes(&labeled, |a, b| {
            Ok(a.0 == b.0 && isomorphic_bruteforce(&a.1, &b.1)?)
        })?;
        if !same_partition(&by_canon, &by_iso) {
            return Ok(Check::new(
                false,
                format!("canonical classes differ from isomorphism classes at n = {n}"),
            ));
        }
        classes_seen += by_canon.iter().max().map_or(0, |m| m + 1);
    }

    // isomorphic connected ordered graphs are related by the identity or
    // the reversal (vertices inside one clique are interchangeable, so other
    // isomorphisms may exist as well, but one of these two always does)
    let mut pairs = 0;
    for n in 2..=8usize {
        let graphs: Vec<(Vec<usize>, LabeledGraph)> = enumerate_ordered_graphs(n, true)?
            .map(|g| {
                let l = g.to_labeled();
                (degree_signature(&l), l)
            })
            .collect();
        let identity: Vec<usize> = (1..=n).collect();
        let backward: Vec<usize> = (1..=n).rev().collect();
        for (s1, g1) in &graphs {
            for (s2, g2) in &graphs {
                if s1 != s2 || g1.edge_count() != g2.edge_count() {
                    continue;
                }
                let maps = all_isomorphisms(g1, g2)?;
                if maps.is_empty() {
                    continue;
                }
                if !maps.iter().any(|m| *m == identity || *m == backward) {
                    return Ok(Check::new(
                        false,
                        format!("isomorphism {:?} at n = {n}", maps[0]),
                    ));
                }
                pairs += 1;
            }
        }
    }

    // preimage counts per structure
    let mut structures = 0;
    for n in 1..=8usize {
        let mut preimages: BTreeMap<CanonicalStructure, u64> = BTreeMap::new();
        for g in enumerate_ordered_graphs(n, false)? {
            *preimages.entry(canonicalize(&g)).or_insert(0) += 1;
        }
        for (s, count) in &preimages {
            let ns = s.component_count() as u32;
            let cap = 2u64.pow(ns) * (1..=ns as u64).product::<u64>();
            if count < &1 || *count > cap || (ns == 1 && *count > 2) {
                return Ok(Check::new(
                    false,
                    format!("structure {} has {count} ordered graphs", s.to_json()),
                ));
            }
        }
        structures += preimages.len();
    }

    Ok(Check::new(
        true,
        format!(
            "{classes_seen} classes coincide for n <= 7; {pairs} isomorphic connected pairs (n <= 8) related by identity or reversal; {structures} structures within the preimage bound"
        ),
    ))
}

fn distribution_checks() -> Result<Check> {
    let (n, r, i) = (20, 0.1, 10);
    let samples = 1_000_000u64;
    let mut rng = rng_for(SEED);
    let mut y = vec![0.0; n];
    let mut l = Vec::with_capacity(n);
    let mut counts = vec![0u64; i];
    for _ in 0..samples {
        fill_sorted_uniform(&mut rng, &mut y);
        left_counts_into(&y, r, &mut l);
        counts[l[i - 1]] += 1;
    }
    let empirical: Vec<f64> = counts.iter().map(|&c| c as f64 / samples as f64).collect();
    let tv = pmf_l(n, r, i)?.total_variation(&empirical);

    let joint = joint_pmf_l(n, r, i)?;
    let marginal = pmf_l(n, r, i)?;
    let rows = joint.marginal_first();
    let consistency = (0..=i - 2)
        .map(|a| (rows[a] - marginal.prob(a)).abs())
        .fold(0.0, f64::max);

    let spot = joint_pmf_l(5, 0.2, 3)?.prob(1, 0);
    let spot_err = (spot - 0.1296).abs();
    let passed = tv < 0.01 && consistency < 1e-8 && spot_err < 1e-10;
    Ok(Check::new(
        passed,
        format!("TV = {tv:.5} (< 0.01); marginal gap = {consistency:.2e} (< 1e-8); spot value {spot:.10}"),
    ))
}

fn entropy_sandwich() -> Result<Check> {
    let (n, r) = (5, 1.0 / 3.0);
    let targets = [
        Target::Structure,
        Target::OrderedGraph,
        Target::ConnectedStructure,
        Target::ConnectedOrderedGraph,
    ];
    let e = mc_entropy_targets(n, r, &targets, 10_000_000, SEED, Estimator::PlugIn)?;
    let (s, g, sc, gc) = (&e[0], &e[1], &e[2], &e[3]);
    let margin = |a: f64, b: f64| 3.0 * (a * a + b * b).sqrt();
    let checks = [
        s.bits <= g.bits + margin(s.std_error, g.std_error),
        gc.bits - 1.0 <= sc.bits + margin(gc.std_error, sc.std_error),
        sc.bits <= gc.bits + margin(sc.std_error, gc.std_error),
        s.bits <= theorem1_bound(n)?,
        s.bits <= 42f64.log2(),
    ];
    Ok(Check::new(
        checks.iter().all(|&c| c),
        format!(
            "H(S) = {:.4}, H(G) = {:.4}, H(S^c) = {:.4}, H(G^c) = {:.4} (se {:.1e}); theorem bound {:.4}, log2 42 = {:.4}",
            s.bits,
            g.bits,
            sc.bits,
            gc.bits,
            s.std_error.max(g.std_error).max(sc.std_error).max(gc.std_error),
            theorem1_bound(n)?,
            42f64.log2()
        ),
    ))
}

fn bound_functions() -> Result<Check> {
    let grid = [0.5, 1.0, 2.0, 5.0, 10.0, 20.0];
    let upper: Vec<f64> = grid.iter().map(|&x| h_upper(x)).collect();
    let increasing = upper.windows(2).all(|w| w[0] < w[1]);
    let dense: Vec<f64> = (0..=100).map(|k| k as f64 * 0.5).collect();
    let curve = bound_curve(&dense)?;
    let dominated = curve
        .h_upper
        .iter()
        .zip(&curve.h_lower)
        .all(|(u, l)| u >= l);
    let plateau = (h_lower(50.0) - 1.0 / LN_2).abs();
    let passed =
        h_lower(0.0) == 0.0 && h_upper(0.0) == 0.0 && plateau < 1e-6 && increasing && dominated;
    Ok(Check::new(
        passed,
        format!(
            "h_L(50) - 1/ln 2 = {plateau:.1e}; h_U on grid = {:?}; h_U >= h_L on 101 points of [0, 50]: {dominated}",
            upper.iter().map(|v| (v * 1e5).round() / 1e5).collect::<Vec<_>>()
        ),
    ))
}

fn bound_coherence() -> Result<Check> {
    let per_node = chain_upper_bound(50, 2.0 / 50.0)? / 50.0;
    let gap = (per_node - h_upper(2.0)).abs();
    let mut passed = gap < 0.1;
    let mut detail = format!(
        "chain/n at (50, 0.04) = {per_node:.4}, h_U(2) = {:.4}",
        h_upper(2.0)
    );
    for (n, r) in [(8, 0.1), (10, 0.2)] {
        let chain = chain_upper_bound(n, r)?;
        let est = mc_entropy(
            n,
            r,
            Target::OrderedGraph,
            1_000_000,
            SEED,
            Estimator::PlugIn,
        )?;
        passed &= chain >= est.bits - 3.0 * est.std_error;
        detail.push_str(&format!(
            "; ({n}, {r}): chain {chain:.4} vs H(G) {:.4} +- {:.4}",
            est.bits, est.std_error
        ));
    }
    Ok(Check::new(passed, detail))
}

fn connectivity_trend() -> Result<Check> {
    let n = 10_000usize;
    let trials = 10_000;
    let (ln, lnln) = ((n as f64).ln(), (n as f64).ln().ln());
    let above = connectivity_probability(n, (ln + lnln) / n as f64, trials, SEED)?;
    let below = connectivity_probability(n, (ln - lnln) / n as f64, trials, SEED)?;
    Ok(Check::new(
        above.probability - below.probability >= 0.2,
        format!(
            "P(connected) = {:.4} above vs {:.4} below the threshold",
            above.probability, below.probability
        ),
    ))
}
