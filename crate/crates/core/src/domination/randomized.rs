//! Randomized k-domination.
//!
//! Phase A samples every vertex independently with probability `p`
//! (see [`compute_probability_p`]). Phase B repairs the vertices left with
//! fewer than `k` sampled neighbours, and the union is reduced to a minimal
//! set.
//!
//! Randomness comes from ChaCha8 seeded with the 64-bit seed. Phase A draws
//! exactly one `f64` per vertex in ascending vertex-id order, forced
//! vertices included, and nothing else consumes the stream.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::greedy::greedy_fill;
use super::minimal::minimize_mask;
use super::{
    compute_probability_p, coverage, from_mask, Algorithm, DegreeMode, DominatingSet,
    OutlierPolicy, Provenance, Requirements,
};
use crate::error::{Error, Result};
use crate::reachability::ReachabilityGraph;

/// How Phase B repairs undercovered vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseB {
    /// Add every undercovered vertex at once.
    Sweep,
    /// Add undercovered vertices one at a time, least covered first, and
    /// update coverage after each addition.
    #[default]
    Extension,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RandomizedOptions {
    pub phase_b: PhaseB,
    pub outliers: OutlierPolicy,
}

struct Prepared {
    req: Requirements,
    p: f64,
}

fn prepare(r: &ReachabilityGraph, k: usize, mode: DegreeMode, policy: OutlierPolicy) -> Result<Prepared> {
    let req = Requirements::new(r, k, policy)?;
    let delta_eff = match mode {
        DegreeMode::MinDegree => req.min_regular_degree(r).unwrap_or(0) as f64,
        DegreeMode::AvgDegree => req.mean_regular_degree(r).unwrap_or(0.0),
        DegreeMode::NotApplicable => {
            return Err(Error::DegreeBelowK { delta: f64::NAN, k });
        }
    };
    let p = compute_probability_p(delta_eff, k)?;
    Ok(Prepared { req, p })
}

fn sample_phase_a(n: usize, p: f64, forced: &[bool], seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|v| {
            let draw: f64 = rng.gen();
            forced[v] || draw < p
        })
        .collect()
}

fn extend_least_covered(r: &ReachabilityGraph, k: usize, in_set: &mut [bool], exempt: &[bool]) {
    let n = r.num_vertices();
    let mut cov = coverage(r, in_set);
    // buckets[c] holds undercovered vertices with coverage c
    let mut buckets: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); k];
    for v in 0..n {
        if !in_set[v] && !exempt[v] && cov[v] < k {
            buckets[cov[v]].insert(v as u32);
        }
    }
    while let Some(level) = buckets.iter().position(|b| !b.is_empty()) {
        let v = buckets[level].pop_first().unwrap() as usize;
        in_set[v] = true;
        for &u in r.neighbors(v) {
            let u = u as usize;
            if !in_set[u] && !exempt[u] && cov[u] < k {
                buckets[cov[u]].remove(&(u as u32));
                if cov[u] + 1 < k {
                    buckets[cov[u] + 1].insert(u as u32);
                }
            }
            cov[u] += 1;
        }
    }
}

fn sweep(r: &ReachabilityGraph, k: usize, in_set: &mut [bool], exempt: &[bool]) {
    let cov = coverage(r, in_set);
    for v in 0..r.num_vertices() {
        if !in_set[v] && !exempt[v] && cov[v] < k {
            in_set[v] = true;
        }
    }
}

fn finish(
    r: &ReachabilityGraph,
    k: usize,
    in_set: &mut [bool],
    req: &Requirements,
    provenance: Provenance,
) -> DominatingSet {
    minimize_mask(r, k, in_set, &req.exempt);
    let mut set = DominatingSet::new(from_mask(r, in_set), k, provenance, true, Some(r.fingerprint()));
    set.exempt = req.exempt_ids(r);
    set
}

/// Randomized k-dominating set with the default options (least-covered-first
/// repair, outliers rejected).
///
/// Outliers handled by a policy (forced in or exempt) are left out of the
/// degree statistic that sets `p`.
pub fn randomized_k_dominating(
    r: &ReachabilityGraph,
    k: usize,
    mode: DegreeMode,
    seed: u64,
) -> Result<DominatingSet> {
    randomized_k_dominating_with(r, k, mode, seed, &RandomizedOptions::default())
}

pub fn randomized_k_dominating_with(
    r: &ReachabilityGraph,
    k: usize,
    mode: DegreeMode,
    seed: u64,
    opts: &RandomizedOptions,
) -> Result<DominatingSet> {
    let Prepared { req, p } = prepare(r, k, mode, opts.outliers)?;
    let mut in_set = sample_phase_a(r.num_vertices(), p, &req.forced, seed);
    match opts.phase_b {
        PhaseB::Sweep => sweep(r, k, &mut in_set, &req.exempt),
        PhaseB::Extension => extend_least_covered(r, k, &mut in_set, &req.exempt),
    }
    let provenance = Provenance {
        algorithm: Algorithm::Randomized,
        degree_mode: mode,
        seed: Some(seed),
        runs: 1,
    };
    Ok(finish(r, k, &mut in_set, &req, provenance))
}

/// Phase A sample completed by the greedy rule instead of Phase B: the
/// sample is used as the greedy warm start.
pub fn greedy_extension_k_dominating(
    r: &ReachabilityGraph,
    k: usize,
    mode: DegreeMode,
    seed: u64,
    outliers: OutlierPolicy,
) -> Result<DominatingSet> {
    let Prepared { req, p } = prepare(r, k, mode, outliers)?;
    let mut in_set = sample_phase_a(r.num_vertices(), p, &req.forced, seed);
    greedy_fill(r, k, &mut in_set, &req.exempt);
    let provenance = Provenance {
        algorithm: Algorithm::GreedyExtension,
        degree_mode: mode,
        seed: Some(seed),
        runs: 1,
    };
    Ok(finish(r, k, &mut in_set, &req, provenance))
}

/// Runs the randomized algorithm with seeds `base_seed .. base_seed + runs`
/// and keeps the smallest set, the lowest seed winning ties. Runs execute in
/// parallel; the choice does not depend on scheduling.
pub fn best_of_runs(
    r: &ReachabilityGraph,
    k: usize,
    mode: DegreeMode,
    runs: usize,
    base_seed: u64,
) -> Result<DominatingSet> {
    best_of_runs_with(r, k, mode, runs, base_seed, &RandomizedOptions::default())
}

pub fn best_of_runs_with(
    r: &ReachabilityGraph,
    k: usize,
    mode: DegreeMode,
    runs: usize,
    base_seed: u64,
    opts: &RandomizedOptions,
) -> Result<DominatingSet> {
    if runs == 0 {
        return Err(Error::ZeroRuns);
    }
    let results: Vec<DominatingSet> = (0..runs as u64)
        .into_par_iter()
        .map(|i| randomized_k_dominating_with(r, k, mode, base_seed.wrapping_add(i), opts))
        .collect::<Result<_>>()?;
    let mut best = results
        .into_iter()
        .enumerate()
        .min_by_key(|(i, s)| (s.len(), *i))
        .map(|(_, s)| s)
        .unwrap();
    best.provenance.runs = runs;
    Ok(best)
}
