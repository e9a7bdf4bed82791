use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::minimal::minimize_mask;
use super::{
    coverage, from_mask, to_mask, Algorithm, DegreeMode, DominatingSet, OutlierPolicy, Provenance,
    Requirements,
};
use crate::error::{Error, Result};
use crate::reachability::ReachabilityGraph;
use crate::VertexId;

/// Grows `in_set` until every non-exempt vertex outside it has `k`
/// neighbours inside. Each step adds the outside vertex adjacent to the most
/// undercovered vertices, ties broken by smallest index.
///
/// Scores only ever decrease, so a max-heap with lazy re-insertion finds the
/// true argmax: a popped entry whose stored score is current beats every
/// other vertex.
pub(crate) fn greedy_fill(r: &ReachabilityGraph, k: usize, in_set: &mut [bool], exempt: &[bool]) {
    let n = r.num_vertices();
    let mut cov = coverage(r, in_set);
    let mut under: Vec<bool> = (0..n).map(|v| !in_set[v] && !exempt[v] && cov[v] < k).collect();
    let mut score: Vec<usize> = (0..n)
        .map(|v| r.neighbors(v).iter().filter(|&&u| under[u as usize]).count())
        .collect();
    let mut remaining = under.iter().filter(|&&u| u).count();

    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (0..n)
        .filter(|&v| !in_set[v] && score[v] > 0)
        .map(|v| (score[v], Reverse(v)))
        .collect();

    while remaining > 0 {
        let Some((stored, Reverse(u))) = heap.pop() else {
            unreachable!("undercovered vertices remain but no candidate has an undercovered neighbour")
        };
        if in_set[u] {
            continue;
        }
        if stored != score[u] {
            if score[u] > 0 {
                heap.push((score[u], Reverse(u)));
            }
            continue;
        }

        in_set[u] = true;
        if under[u] {
            under[u] = false;
            remaining -= 1;
            for &w in r.neighbors(u) {
                score[w as usize] -= 1;
            }
        }
        for &w in r.neighbors(u) {
            let w = w as usize;
            cov[w] += 1;
            if under[w] && cov[w] >= k {
                under[w] = false;
                remaining -= 1;
                for &x in r.neighbors(w) {
                    score[x as usize] -= 1;
                }
            }
        }
    }
}

/// Greedy k-dominating set starting from `warm_start` (usually empty),
/// reduced to a minimal set afterwards.
pub fn greedy_k_dominating(
    r: &ReachabilityGraph,
    k: usize,
    warm_start: &[VertexId],
) -> Result<DominatingSet> {
    greedy_k_dominating_with(r, k, warm_start, OutlierPolicy::Error)
}

pub fn greedy_k_dominating_with(
    r: &ReachabilityGraph,
    k: usize,
    warm_start: &[VertexId],
    outliers: OutlierPolicy,
) -> Result<DominatingSet> {
    let mut in_set = to_mask(r, warm_start)?;
    // Outliers already in the warm start can never be undercovered.
    let policy = match outliers {
        OutlierPolicy::Error => OutlierPolicy::ForceInclude,
        other => other,
    };
    let req = Requirements::new(r, k, policy)?;
    if outliers == OutlierPolicy::Error {
        let stranded: Vec<VertexId> = (0..r.num_vertices())
            .filter(|&v| req.forced[v] && !in_set[v])
            .map(|v| r.id_of(v))
            .collect();
        if !stranded.is_empty() {
            return Err(Error::Outliers { k, outliers: stranded });
        }
    }
    for (v, &f) in req.forced.iter().enumerate() {
        in_set[v] |= f;
    }
    greedy_fill(r, k, &mut in_set, &req.exempt);
    minimize_mask(r, k, &mut in_set, &req.exempt);

    let mut set = DominatingSet::new(
        from_mask(r, &in_set),
        k,
        Provenance {
            algorithm: Algorithm::Greedy,
            degree_mode: DegreeMode::NotApplicable,
            seed: None,
            runs: 1,
        },
        true,
        Some(r.fingerprint()),
    );
    set.exempt = req.exempt_ids(r);
    Ok(set)
}
