use super::{check_with, coverage, from_mask, to_mask, DominatingSet};
use crate::error::{Error, Result};
use crate::reachability::ReachabilityGraph;
use crate::VertexId;

/// One pass of redundancy elimination over `in_set`, which must already be
/// k-dominating. Members are visited in a fixed order, ascending by the
/// number of neighbours outside the set (ties by index) as measured on
/// entry, and dropped whenever the remainder still dominates.
///
/// A member kept at some point stays non-removable: later removals only
/// lower coverage. One pass therefore yields a minimal set.
pub(crate) fn minimize_mask(r: &ReachabilityGraph, k: usize, in_set: &mut [bool], exempt: &[bool]) {
    let mut cov = coverage(r, in_set);
    let mut order: Vec<usize> = (0..r.num_vertices()).filter(|&v| in_set[v]).collect();
    order.sort_by_key(|&v| (r.degree(v) - cov[v], v));

    for v in order {
        let self_ok = exempt[v] || cov[v] >= k;
        let neighbours_ok = || {
            r.neighbors(v).iter().all(|&u| {
                let u = u as usize;
                in_set[u] || exempt[u] || cov[u] > k
            })
        };
        if self_ok && neighbours_ok() {
            in_set[v] = false;
            for &u in r.neighbors(v) {
                cov[u as usize] -= 1;
            }
        }
    }
}

/// Reduces a k-dominating set to a minimal one; the result carries the same
/// provenance with `minimal = true`.
pub fn reduce_to_minimal(r: &ReachabilityGraph, set: &DominatingSet) -> Result<DominatingSet> {
    let k = set.k;
    if k == 0 {
        return Err(Error::InvalidK(k));
    }
    let mut in_set = set.mask(r)?;
    let exempt = to_mask(r, &set.exempt)?;
    let check = check_with(r, &in_set, &exempt, |_| k);
    if !check.dominating {
        return Err(Error::NotDominating { k, violations: check.violations.len() });
    }
    minimize_mask(r, k, &mut in_set, &exempt);
    let mut out = set.clone();
    out.members = from_mask(r, &in_set);
    out.minimal = true;
    Ok(out)
}

/// Members whose individual removal leaves a k-dominating set, found by
/// re-checking domination from scratch for every single removal. Empty iff
/// the set is minimal.
pub fn redundant_members(
    r: &ReachabilityGraph,
    members: &[VertexId],
    k: usize,
    exempt: &[VertexId],
) -> Result<Vec<VertexId>> {
    let mut in_set = to_mask(r, members)?;
    let exempt = to_mask(r, exempt)?;
    let mut redundant = Vec::new();
    for v in 0..r.num_vertices() {
        if !in_set[v] {
            continue;
        }
        in_set[v] = false;
        if check_with(r, &in_set, &exempt, |_| k).dominating {
            redundant.push(r.id_of(v));
        }
        in_set[v] = true;
    }
    Ok(redundant)
}
