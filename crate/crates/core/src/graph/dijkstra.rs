use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use super::RoadGraph;
use crate::error::{Error, Result};
use crate::VertexId;

/// Outcome of a single-pair query. `distance` is `None` when the target is
/// unreachable, in which case `path` is empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathResult {
    pub distance: Option<f64>,
    pub path: Vec<VertexId>,
}

impl PathResult {
    pub fn is_reachable(&self) -> bool {
        self.distance.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: u32,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, then on vertex index
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reusable buffers for repeated searches on the same graph. Only the
/// vertices touched by the previous search are reset.
#[derive(Debug)]
pub(crate) struct DijkstraScratch {
    dist: Vec<f64>,
    settled: Vec<bool>,
    touched: Vec<u32>,
    heap: BinaryHeap<HeapEntry>,
}

impl DijkstraScratch {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            dist: vec![f64::INFINITY; n],
            settled: vec![false; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v as usize] = f64::INFINITY;
            self.settled[v as usize] = false;
        }
        self.touched.clear();
        self.heap.clear();
    }

    /// Settles every vertex within `limit` of `source` (inclusive) and calls
    /// `visit(index, distance)` for each in settle order, source included.
    pub(crate) fn run<F: FnMut(usize, f64)>(
        &mut self,
        g: &RoadGraph,
        source: usize,
        limit: f64,
        mut visit: F,
    ) {
        self.reset();
        self.dist[source] = 0.0;
        self.touched.push(source as u32);
        self.heap.push(HeapEntry { dist: 0.0, vertex: source as u32 });
        while let Some(HeapEntry { dist, vertex }) = self.heap.pop() {
            let v = vertex as usize;
            if self.settled[v] {
                continue;
            }
            self.settled[v] = true;
            visit(v, dist);
            for (u, w) in g.neighbors(v) {
                let nd = dist + w;
                if nd <= limit && nd < self.dist[u] {
                    if self.dist[u].is_infinite() {
                        self.touched.push(u as u32);
                    }
                    self.dist[u] = nd;
                    self.heap.push(HeapEntry { dist: nd, vertex: u as u32 });
                }
            }
        }
    }
}

impl RoadGraph {
    /// Shortest-path distances from the vertex at `source` to every vertex,
    /// indexed densely; unreachable vertices get `f64::INFINITY`.
    pub fn distances_from_index(&self, source: usize) -> Vec<f64> {
        let mut out = vec![f64::INFINITY; self.num_vertices()];
        let mut scratch = DijkstraScratch::new(self.num_vertices());
        scratch.run(self, source, f64::INFINITY, |v, d| out[v] = d);
        out
    }

    /// Exact shortest path between two vertex ids.
    pub fn shortest_path(&self, s: VertexId, t: VertexId) -> Result<PathResult> {
        let source = self.require_index(s)?;
        let target = self.require_index(t)?;
        let n = self.num_vertices();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![u32::MAX; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(HeapEntry { dist: 0.0, vertex: source as u32 });
        while let Some(HeapEntry { dist: d, vertex }) = heap.pop() {
            let v = vertex as usize;
            if done[v] {
                continue;
            }
            done[v] = true;
            if v == target {
                break;
            }
            for (u, w) in self.neighbors(v) {
                let nd = d + w;
                if nd < dist[u] {
                    dist[u] = nd;
                    pred[u] = v as u32;
                    heap.push(HeapEntry { dist: nd, vertex: u as u32 });
                }
            }
        }
        if !done[target] {
            return Ok(PathResult { distance: None, path: Vec::new() });
        }
        let mut path = vec![self.id_of(target)];
        let mut cur = target;
        while cur != source {
            cur = pred[cur] as usize;
            path.push(self.id_of(cur));
        }
        path.reverse();
        Ok(PathResult { distance: Some(dist[target]), path })
    }

    /// All vertices other than `s` within shortest-path distance `t`
    /// (inclusive), with their distances, sorted by vertex id.
    pub fn bounded_dijkstra(&self, s: VertexId, t: f64) -> Result<Vec<(VertexId, f64)>> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::InvalidThreshold(t));
        }
        let source = self.require_index(s)?;
        let mut found = Vec::new();
        let mut scratch = DijkstraScratch::new(self.num_vertices());
        scratch.run(self, source, t, |v, d| {
            if v != source {
                found.push((v, d));
            }
        });
        found.sort_by_key(|p| p.0);
        Ok(found.into_iter().map(|(v, d)| (self.id_of(v), d)).collect())
    }
}
