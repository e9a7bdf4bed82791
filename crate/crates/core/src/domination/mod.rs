//! k-domination on reachability graphs.
//!
//! A set `X` is k-dominating when every vertex outside `X` has at least `k`
//! neighbours in `X`. Vertices listed as exempt (outliers under the
//! [`OutlierPolicy::Ignore`] policy) carry no requirement.

mod bounds;
mod exact;
mod greedy;
mod minimal;
mod randomized;

use serde::{Deserialize, Serialize};

pub use bounds::{
    bound_theorem1, bound_theorem2, ceil_alpha, compute_probability_p, ln_binomial, BoundReport,
};
pub use exact::{exact_min_k_dominating, EXACT_VERTEX_LIMIT};
pub use greedy::{greedy_k_dominating, greedy_k_dominating_with};
pub use minimal::{redundant_members, reduce_to_minimal};
pub use randomized::{
    best_of_runs, best_of_runs_with, greedy_extension_k_dominating, randomized_k_dominating,
    randomized_k_dominating_with, PhaseB, RandomizedOptions,
};

use crate::error::{Error, Result};
use crate::reachability::{GraphFingerprint, ReachabilityGraph};
use crate::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Randomized,
    Greedy,
    GreedyExtension,
    Exact,
    External,
}

/// Which degree statistic feeds the sampling probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMode {
    MinDegree,
    AvgDegree,
    NotApplicable,
}

/// What to do with vertices of degree below `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutlierPolicy {
    /// Refuse to run.
    #[default]
    Error,
    /// Put every outlier into the set up front.
    ForceInclude,
    /// Drop the domination requirement for outliers.
    Ignore,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub algorithm: Algorithm,
    pub degree_mode: DegreeMode,
    pub seed: Option<u64>,
    pub runs: usize,
}

impl Provenance {
    pub fn external() -> Self {
        Self {
            algorithm: Algorithm::External,
            degree_mode: DegreeMode::NotApplicable,
            seed: None,
            runs: 1,
        }
    }
}

/// A station set together with how it was produced and what it claims.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominatingSet {
    pub k: usize,
    /// Sorted, deduplicated vertex ids.
    pub members: Vec<VertexId>,
    pub provenance: Provenance,
    pub minimal: bool,
    pub graph_fingerprint: Option<GraphFingerprint>,
    /// Vertices excused from the domination requirement.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exempt: Vec<VertexId>,
}

impl DominatingSet {
    pub fn new(
        members: Vec<VertexId>,
        k: usize,
        provenance: Provenance,
        minimal: bool,
        graph_fingerprint: Option<GraphFingerprint>,
    ) -> Self {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        Self { k, members, provenance, minimal, graph_fingerprint, exempt: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Re-checks the set against `r`: fingerprint (when recorded), domination,
    /// and, if the set claims minimality, the one-removal condition.
    pub fn verify(&self, r: &ReachabilityGraph) -> Result<Verification> {
        if let Some(fp) = self.graph_fingerprint {
            if fp != r.fingerprint() {
                return Err(Error::FingerprintMismatch {
                    expected: r.fingerprint().to_string(),
                    found: fp.to_string(),
                });
            }
        }
        let check = check_k_domination(r, &self.members, self.k, &self.exempt)?;
        let redundant = if self.minimal && check.dominating {
            redundant_members(r, &self.members, self.k, &self.exempt)?
        } else {
            Vec::new()
        };
        Ok(Verification { check, redundant })
    }

    /// Membership mask over `r`'s vertex indices.
    pub(crate) fn mask(&self, r: &ReachabilityGraph) -> Result<Vec<bool>> {
        to_mask(r, &self.members)
    }
}

/// Result of a domination check. `violations` lists each failing vertex with
/// the number of neighbours it has in the set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominationCheck {
    pub dominating: bool,
    pub violations: Vec<(VertexId, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub check: DominationCheck,
    /// Members whose removal keeps the set dominating; empty for a truly
    /// minimal set.
    pub redundant: Vec<VertexId>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.check.dominating && self.redundant.is_empty()
    }
}

pub(crate) fn to_mask(r: &ReachabilityGraph, ids: &[VertexId]) -> Result<Vec<bool>> {
    let mut mask = vec![false; r.num_vertices()];
    for &id in ids {
        mask[r.require_index(id)?] = true;
    }
    Ok(mask)
}

pub(crate) fn from_mask(r: &ReachabilityGraph, mask: &[bool]) -> Vec<VertexId> {
    mask.iter()
        .enumerate()
        .filter(|(_, &inside)| inside)
        .map(|(v, _)| r.id_of(v))
        .collect()
}

/// `|N(v) ∩ set|` for every vertex.
pub(crate) fn coverage(r: &ReachabilityGraph, in_set: &[bool]) -> Vec<usize> {
    (0..r.num_vertices())
        .map(|v| r.neighbors(v).iter().filter(|&&u| in_set[u as usize]).count())
        .collect()
}

fn check_with<F: Fn(usize) -> usize>(
    r: &ReachabilityGraph,
    in_set: &[bool],
    exempt: &[bool],
    required: F,
) -> DominationCheck {
    let cov = coverage(r, in_set);
    let violations: Vec<(VertexId, usize)> = (0..r.num_vertices())
        .filter(|&v| !in_set[v] && !exempt[v] && cov[v] < required(v))
        .map(|v| (r.id_of(v), cov[v]))
        .collect();
    DominationCheck { dominating: violations.is_empty(), violations }
}

pub fn is_k_dominating(r: &ReachabilityGraph, members: &[VertexId], k: usize) -> Result<DominationCheck> {
    check_k_domination(r, members, k, &[])
}

/// [`is_k_dominating`] with some vertices excused from the requirement.
pub fn check_k_domination(
    r: &ReachabilityGraph,
    members: &[VertexId],
    k: usize,
    exempt: &[VertexId],
) -> Result<DominationCheck> {
    if k == 0 {
        return Err(Error::InvalidK(k));
    }
    let in_set = to_mask(r, members)?;
    let exempt = to_mask(r, exempt)?;
    Ok(check_with(r, &in_set, &exempt, |_| k))
}

/// Every vertex `v` outside the set needs at least `⌈alpha · deg(v)⌉`
/// neighbours inside it.
pub fn is_alpha_dominating(
    r: &ReachabilityGraph,
    members: &[VertexId],
    alpha: f64,
) -> Result<DominationCheck> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let in_set = to_mask(r, members)?;
    let exempt = vec![false; r.num_vertices()];
    Ok(check_with(r, &in_set, &exempt, |v| ceil_alpha(alpha, r.degree(v))))
}

/// Forced-in and exempt masks derived from an outlier policy.
pub(crate) struct Requirements {
    pub forced: Vec<bool>,
    pub exempt: Vec<bool>,
}

impl Requirements {
    pub(crate) fn new(r: &ReachabilityGraph, k: usize, policy: OutlierPolicy) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidK(k));
        }
        let n = r.num_vertices();
        let outliers: Vec<usize> = (0..n).filter(|&v| r.degree(v) < k).collect();
        let mut forced = vec![false; n];
        let mut exempt = vec![false; n];
        match policy {
            OutlierPolicy::Error if !outliers.is_empty() => {
                return Err(Error::Outliers {
                    k,
                    outliers: outliers.iter().map(|&v| r.id_of(v)).collect(),
                })
            }
            OutlierPolicy::Error => {}
            OutlierPolicy::ForceInclude => outliers.iter().for_each(|&v| forced[v] = true),
            OutlierPolicy::Ignore => outliers.iter().for_each(|&v| exempt[v] = true),
        }
        Ok(Self { forced, exempt })
    }

    pub(crate) fn exempt_ids(&self, r: &ReachabilityGraph) -> Vec<VertexId> {
        from_mask(r, &self.exempt)
    }

    /// Minimum degree over vertices that are neither forced nor exempt.
    pub(crate) fn min_regular_degree(&self, r: &ReachabilityGraph) -> Option<usize> {
        (0..r.num_vertices())
            .filter(|&v| !self.forced[v] && !self.exempt[v])
            .map(|v| r.degree(v))
            .min()
    }

    /// Average degree over vertices that are neither forced nor exempt.
    pub(crate) fn mean_regular_degree(&self, r: &ReachabilityGraph) -> Option<f64> {
        let (count, total) = (0..r.num_vertices())
            .filter(|&v| !self.forced[v] && !self.exempt[v])
            .fold((0usize, 0usize), |(c, t), v| (c + 1, t + r.degree(v)));
        (count > 0).then(|| total as f64 / count as f64)
    }
}


#[cfg(test)]
mod tests {
    use super::test_graphs::*;
    use super::*;

    #[test]
    fn whole_vertex_set_dominates() {
        let r = cycle(5);
        let all: Vec<_> = r.vertex_ids().to_vec();
        for k in 1..4 {
            let c = is_k_dominating(&r, &all, k).unwrap();
            assert!(c.dominating && c.violations.is_empty());
        }
    }

    #[test]
    fn two_vertices_doubly_dominate_k4() {
        assert!(is_k_dominating(&complete(4), &[1, 2], 2).unwrap().dominating);
    }

    #[test]
    fn single_vertex_on_c5() {
        // 1 is adjacent to 2 and 5; 3 and 4 see nothing
        let c = is_k_dominating(&cycle(5), &[1], 1).unwrap();
        assert!(!c.dominating);
        assert_eq!(c.violations, vec![(3, 0), (4, 0)]);
    }

    #[test]
    fn unknown_member_and_bad_k() {
        assert!(matches!(is_k_dominating(&cycle(5), &[9], 1), Err(Error::UnknownVertex(9))));
        assert!(matches!(is_k_dominating(&cycle(5), &[1], 0), Err(Error::InvalidK(0))));
    }

    #[test]
    fn alpha_one_with_complement_of_single_vertex() {
        let r = cycle(6);
        for v in 1..=6u64 {
            let rest: Vec<_> = (1..=6).filter(|&u| u != v).collect();
            assert!(is_alpha_dominating(&r, &rest, 1.0).unwrap().dominating);
        }
    }

    #[test]
    fn alpha_one_on_c4() {
        assert!(is_alpha_dominating(&cycle(4), &[1, 3], 1.0).unwrap().dominating);
        assert!(!is_alpha_dominating(&cycle(4), &[1, 2], 1.0).unwrap().dominating);
    }

    #[test]
    fn tiny_alpha_matches_one_domination() {
        let r = cycle(7);
        for mask in 0u32..(1 << 7) {
            let x: Vec<u64> = (0..7).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            assert_eq!(
                is_alpha_dominating(&r, &x, 1e-9).unwrap().dominating,
                is_k_dominating(&r, &x, 1).unwrap().dominating
            );
        }
    }

    #[test]
    fn alpha_range() {
        for a in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(is_alpha_dominating(&cycle(4), &[1], a), Err(Error::AlphaOutOfRange(_))));
        }
    }

    #[test]
    fn exempt_vertices_are_skipped() {
        let r = star(3);
        assert!(!is_k_dominating(&r, &[1], 2).unwrap().dominating);
        assert!(check_k_domination(&r, &[1], 2, &[2, 3, 4]).unwrap().dominating);
    }

    #[test]
    fn requirements_from_policy() {
        let r = star(3);
        assert!(matches!(Requirements::new(&r, 2, OutlierPolicy::Error), Err(Error::Outliers { .. })));
        let f = Requirements::new(&r, 2, OutlierPolicy::ForceInclude).unwrap();
        assert_eq!(f.forced, vec![false, true, true, true]);
        assert_eq!(f.min_regular_degree(&r), Some(3));
        let i = Requirements::new(&r, 2, OutlierPolicy::Ignore).unwrap();
        assert_eq!(i.exempt_ids(&r), vec![2, 3, 4]);
    }

    #[test]
    fn serialization_shape() {
        let set = DominatingSet::new(
            vec![3, 1, 3],
            2,
            Provenance {
                algorithm: Algorithm::GreedyExtension,
                degree_mode: DegreeMode::AvgDegree,
                seed: Some(7),
                runs: 1,
            },
            true,
            Some(GraphFingerprint { n: 4, m: 3, t_meters: 3000.0 }),
        );
        let v = serde_json::to_value(&set).unwrap();
        assert_eq!(v["members"], serde_json::json!([1, 3]));
        assert_eq!(v["provenance"]["algorithm"], "greedy-extension");
        assert_eq!(v["provenance"]["degree_mode"], "avg-degree");
        assert_eq!(v["graph_fingerprint"]["t_meters"], 3000.0);
        assert!(v.get("exempt").is_none());
        let back: DominatingSet = serde_json::from_value(v).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn verify_rejects_foreign_fingerprint() {
        let r = complete(4);
        let mut set = DominatingSet::new(vec![1, 2], 2, Provenance::external(), true, Some(r.fingerprint()));
        assert!(set.verify(&r).unwrap().passed());
        set.graph_fingerprint = Some(GraphFingerprint { n: 4, m: 99, t_meters: 1.0 });
        assert!(matches!(set.verify(&r), Err(Error::FingerprintMismatch { .. })));
    }
}
