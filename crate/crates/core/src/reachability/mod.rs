//! Reachability graphs: vertex `u` is adjacent to `v` iff the road-network
//! distance between them is at most the threshold.

mod cache;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{read_cache, write_cache, CACHE_MAGIC, CACHE_VERSION};

use crate::error::{Error, Result};
use crate::graph::{DijkstraScratch, RoadGraph};
use crate::VertexId;

/// Identity of the road graph and threshold a result was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphFingerprint {
    pub n: usize,
    pub m: usize,
    pub t_meters: f64,
}

impl std::fmt::Display for GraphFingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, m={}, t={}m)", self.n, self.m, self.t_meters)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

/// Unweighted simple graph over the road graph's vertex set, stored as
/// sorted neighbour arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct ReachabilityGraph {
    ids: Vec<VertexId>,
    threshold: f64,
    source_edges: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

/// Lower bounds on a sensible threshold derived from the road graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdBounds {
    /// Largest over vertices of the shortest incident edge; below this some
    /// vertex has no neighbour in the reachability graph.
    pub t_minmax: f64,
    /// Longest edge; at or above this every road neighbour stays adjacent.
    pub t_maxedge: f64,
}

pub fn threshold_lower_bounds(g: &RoadGraph) -> Result<ThresholdBounds> {
    let isolated = g.isolated_vertices();
    if !isolated.is_empty() || g.num_vertices() == 0 {
        return Err(Error::IsolatedVertices(isolated));
    }
    let t_minmax = (0..g.num_vertices())
        .map(|v| g.neighbors(v).map(|(_, w)| w).fold(f64::INFINITY, f64::min))
        .fold(f64::NEG_INFINITY, f64::max);
    let t_maxedge = g.max_edge_length().unwrap_or(0.0);
    Ok(ThresholdBounds { t_minmax, t_maxedge })
}

/// Runs one bounded search per vertex. Each pair is decided by the search
/// from its smaller endpoint, so the result is symmetric even where
/// floating-point sums along a path differ by direction. Parallel over
/// sources; output does not depend on the thread count.
pub fn build_reachability_graph(g: &RoadGraph, t: f64) -> Result<ReachabilityGraph> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidThreshold(t));
    }
    let n = g.num_vertices();
    let upper: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map_init(
            || DijkstraScratch::new(n),
            |scratch, u| {
                let mut found = Vec::new();
                scratch.run(g, u, t, |v, _| {
                    if v > u {
                        found.push(v as u32);
                    }
                });
                found.sort_unstable();
                found
            },
        )
        .collect();
    Ok(ReachabilityGraph::from_upper_lists(
        g.vertex_ids().to_vec(),
        t,
        g.num_edges(),
        &upper,
    ))
}

impl ReachabilityGraph {
    /// `upper[u]` holds the sorted neighbours `v > u` of `u`.
    fn from_upper_lists(
        ids: Vec<VertexId>,
        threshold: f64,
        source_edges: usize,
        upper: &[Vec<u32>],
    ) -> Self {
        let n = ids.len();
        let mut degree = vec![0usize; n];
        for (u, list) in upper.iter().enumerate() {
            degree[u] += list.len();
            for &v in list {
                degree[v as usize] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        // Sources in ascending order: every list receives its smaller
        // neighbours first, then its own larger ones, so lists stay sorted.
        for (u, list) in upper.iter().enumerate() {
            for &v in list {
                targets[fill[u]] = v;
                fill[u] += 1;
                targets[fill[v as usize]] = u as u32;
                fill[v as usize] += 1;
            }
        }
        Self { ids, threshold, source_edges, offsets, targets }
    }

    /// Builds a reachability-style graph directly from an unweighted edge
    /// list, for graphs that did not come from a road network. The
    /// fingerprint's `m` is the number of distinct edges.
    pub fn from_edges(
        ids: Vec<VertexId>,
        edges: &[(VertexId, VertexId)],
        threshold: f64,
    ) -> Result<Self> {
        let mut ids = ids;
        ids.sort_unstable();
        ids.dedup();
        let index = |id: VertexId| ids.binary_search(&id).map_err(|_| Error::UnknownVertex(id));
        let mut upper = vec![Vec::new(); ids.len()];
        for &(a, b) in edges {
            let (a, b) = (index(a)?, index(b)?);
            if a != b {
                upper[a.min(b)].push(a.max(b) as u32);
            }
        }
        let mut m = 0;
        for list in &mut upper {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Self::from_upper_lists(ids, threshold, m, &upper))
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn fingerprint(&self) -> GraphFingerprint {
        GraphFingerprint {
            n: self.num_vertices(),
            m: self.source_edges,
            t_meters: self.threshold,
        }
    }

    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub(crate) fn require_index(&self, id: VertexId) -> Result<usize> {
        self.index_of(id).ok_or(Error::UnknownVertex(id))
    }

    pub fn id_of(&self, index: usize) -> VertexId {
        self.ids[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.offsets[index + 1] - self.offsets[index]
    }

    /// Sorted neighbour indices of the vertex at `index`.
    pub fn neighbors(&self, index: usize) -> &[u32] {
        &self.targets[self.offsets[index]..self.offsets[index + 1]]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors(a).binary_search(&(b as u32)).is_ok()
    }

    /// Degrees in vertex-id order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.num_vertices()).map(|v| self.degree(v)).collect()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let n = self.num_vertices();
        let seq = self.degree_sequence();
        DegreeStats {
            min: seq.iter().copied().min().unwrap_or(0),
            max: seq.iter().copied().max().unwrap_or(0),
            mean: if n == 0 { 0.0 } else { self.targets.len() as f64 / n as f64 },
        }
    }

    /// Edges as id pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.num_vertices()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v as usize > u)
                .map(move |&v| (self.ids[u], self.ids[v as usize]))
        })
    }

    pub(crate) fn from_raw_parts(
        ids: Vec<VertexId>,
        threshold: f64,
        source_edges: usize,
        offsets: Vec<usize>,
        targets: Vec<u32>,
    ) -> Self {
        Self { ids, threshold, source_edges, offsets, targets }
    }
}

/// Vertices whose degree is below `k`; they cannot be k-dominated from
/// outside the set.
pub fn find_outliers(r: &ReachabilityGraph, k: usize) -> Result<Vec<VertexId>> {
    if k == 0 {
        return Err(Error::InvalidK(k));
    }
    Ok((0..r.num_vertices())
        .filter(|&v| r.degree(v) < k)
        .map(|v| r.id_of(v))
        .collect())
}
