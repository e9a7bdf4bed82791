use super::{Algorithm, DegreeMode, DominatingSet, OutlierPolicy, Provenance, Requirements};
use crate::error::{Error, Result};
use crate::reachability::ReachabilityGraph;

/// Largest graph the exhaustive search accepts.
pub const EXACT_VERTEX_LIMIT: usize = 25;

/// Minimum k-dominating set by enumerating subsets in increasing size, and
/// lexicographically by vertex index within a size. The first hit is
/// returned. Sizes above `size_limit` are not tried.
pub fn exact_min_k_dominating(
    r: &ReachabilityGraph,
    k: usize,
    size_limit: usize,
) -> Result<DominatingSet> {
    let n = r.num_vertices();
    if n > EXACT_VERTEX_LIMIT {
        return Err(Error::GraphTooLarge { n, limit: EXACT_VERTEX_LIMIT });
    }
    Requirements::new(r, k, OutlierPolicy::Error)?;

    let adj: Vec<u32> = (0..n)
        .map(|v| r.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let dominates = |set: u32| {
        let outside = !set & full;
        (0..n)
            .filter(|&v| outside >> v & 1 == 1)
            .all(|v| (adj[v] & set).count_ones() as usize >= k)
    };

    for size in 0..=size_limit.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let set = idx.iter().fold(0u32, |m, &v| m | 1 << v);
            if dominates(set) {
                let members = idx.iter().map(|&v| r.id_of(v)).collect();
                return Ok(DominatingSet::new(
                    members,
                    k,
                    Provenance {
                        algorithm: Algorithm::Exact,
                        degree_mode: DegreeMode::NotApplicable,
                        seed: None,
                        runs: 1,
                    },
                    true,
                    Some(r.fingerprint()),
                ));
            }
            // next combination in lexicographic order
            let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Err(Error::NoSetWithinLimit { k, size_limit })
}
