//! Weighted undirected road graph.
//!
//! Vertices carry arbitrary nonnegative ids and `(lon, lat)` coordinates; the
//! coordinates are only used for export. Internally vertices are reindexed
//! densely in ascending id order, so index order and id order coincide.

mod dijkstra;
mod geojson;
mod io;

use std::collections::HashMap;

pub use dijkstra::PathResult;
pub(crate) use dijkstra::DijkstraScratch;
pub use geojson::export_geojson;
pub use io::{load_road_graph, load_road_graph_from_paths};

use crate::error::{Error, Result};
use crate::VertexId;

/// A declared vertex: id and coordinates in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub id: VertexId,
    pub lon: f64,
    pub lat: f64,
}

/// An edge as it appears in the input, length in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub length: f64,
}

/// Immutable road network: a simple undirected graph with positive edge
/// lengths, stored in compressed sparse row form.
#[derive(Debug, Clone)]
pub struct RoadGraph {
    ids: Vec<VertexId>,
    coords: Vec<(f64, f64)>,
    index: HashMap<VertexId, u32>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
    // (u, v, length) with u < v, sorted
    edges: Vec<(u32, u32, f64)>,
}

impl RoadGraph {
    /// Builds a graph, checking every invariant. Row numbers in errors are the
    /// 1-based positions in `vertices` and `edges` respectively.
    pub fn new(vertices: Vec<Vertex>, edges: &[Edge]) -> Result<Self> {
        let mut vertices = vertices;
        for (row, v) in vertices.iter().enumerate() {
            if !v.lon.is_finite() || !v.lat.is_finite() {
                return Err(Error::MalformedRow {
                    file: "nodes",
                    row: row + 1,
                    reason: "non-finite coordinate".into(),
                });
            }
        }
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by_key(|&i| vertices[i].id);
        for w in order.windows(2) {
            if vertices[w[0]].id == vertices[w[1]].id {
                return Err(Error::DuplicateVertex {
                    row: w[0].max(w[1]) + 1,
                    id: vertices[w[0]].id,
                });
            }
        }
        vertices.sort_by_key(|v| v.id);
        if vertices.len() > u32::MAX as usize {
            return Err(Error::MalformedRow {
                file: "nodes",
                row: vertices.len(),
                reason: "too many vertices".into(),
            });
        }

        let ids: Vec<VertexId> = vertices.iter().map(|v| v.id).collect();
        let coords = vertices.iter().map(|v| (v.lon, v.lat)).collect();
        let index: HashMap<VertexId, u32> =
            ids.iter().enumerate().map(|(i, &id)| (id, i as u32)).collect();

        let mut seen: HashMap<(u32, u32), f64> = HashMap::with_capacity(edges.len());
        let mut kept = Vec::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            let row = i + 1;
            let a = *index
                .get(&e.u)
                .ok_or(Error::UnknownEndpoint { row, id: e.u })?;
            let b = *index
                .get(&e.v)
                .ok_or(Error::UnknownEndpoint { row, id: e.v })?;
            if e.length.is_nan() || e.length <= 0.0 || e.length.is_infinite() {
                return Err(Error::NonPositiveLength { row, length: e.length });
            }
            if a == b {
                return Err(Error::SelfLoop { row, id: e.u });
            }
            let key = (a.min(b), a.max(b));
            match seen.get(&key) {
                Some(&prev) if prev == e.length => {}
                Some(&prev) => {
                    return Err(Error::ConflictingDuplicateEdge {
                        row,
                        u: e.u,
                        v: e.v,
                        first: prev,
                        second: e.length,
                    })
                }
                None => {
                    seen.insert(key, e.length);
                    kept.push((key.0, key.1, e.length));
                }
            }
        }
        kept.sort_by_key(|&(a, b, _)| (a, b));

        let n = ids.len();
        let mut degree = vec![0usize; n];
        for &(a, b, _) in &kept {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        let mut weights = vec![0f64; offsets[n]];
        for &(a, b, w) in &kept {
            for (x, y) in [(a, b), (b, a)] {
                let slot = fill[x as usize];
                targets[slot] = y;
                weights[slot] = w;
                fill[x as usize] += 1;
            }
        }
        // kept is sorted by (a, b), so each neighbour list is built in
        // ascending order already except for entries inserted as the `b` side.
        for v in 0..n {
            let range = offsets[v]..offsets[v + 1];
            let mut pairs: Vec<(u32, f64)> = targets[range.clone()]
                .iter()
                .copied()
                .zip(weights[range.clone()].iter().copied())
                .collect();
            pairs.sort_by_key(|p| p.0);
            for (slot, (t, w)) in range.zip(pairs) {
                targets[slot] = t;
                weights[slot] = w;
            }
        }

        Ok(Self {
            ids,
            coords,
            index,
            offsets,
            targets,
            weights,
            edges: kept,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Vertex ids in ascending order.
    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.index.contains_key(&id)
    }

    /// Dense index of a vertex id; index order equals ascending id order.
    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.index.get(&id).map(|&i| i as usize)
    }

    pub(crate) fn require_index(&self, id: VertexId) -> Result<usize> {
        self.index_of(id).ok_or(Error::UnknownVertex(id))
    }

    pub fn id_of(&self, index: usize) -> VertexId {
        self.ids[index]
    }

    /// `(lon, lat)` of the vertex at `index`.
    pub fn coords_of(&self, index: usize) -> (f64, f64) {
        self.coords[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.offsets[index + 1] - self.offsets[index]
    }

    /// Neighbours of the vertex at `index` as `(neighbour index, length)`,
    /// ascending by neighbour.
    pub fn neighbors(&self, index: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[index]..self.offsets[index + 1];
        self.targets[range.clone()]
            .iter()
            .zip(&self.weights[range])
            .map(|(&t, &w)| (t as usize, w))
    }

    /// Edges as `(u, v, length)` ids with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|&(a, b, length)| Edge {
            u: self.ids[a as usize],
            v: self.ids[b as usize],
            length,
        })
    }

    pub(crate) fn edge_indices(&self) -> &[(u32, u32, f64)] {
        &self.edges
    }

    /// Ids of vertices without incident edges.
    pub fn isolated_vertices(&self) -> Vec<VertexId> {
        (0..self.num_vertices())
            .filter(|&v| self.degree(v) == 0)
            .map(|v| self.ids[v])
            .collect()
    }

    pub fn max_edge_length(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.2).reduce(f64::max)
    }
}
