//! Graph generators and independent oracles shared by the integration tests.
//! Nothing in here calls into the code paths it is used to check.
#![allow(dead_code)]

use chargeplace::graph::{Edge, RoadGraph, Vertex};
use chargeplace::reachability::ReachabilityGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random road graph: a random spanning tree plus `extra` random chords,
/// integer lengths in `1..=max_len` so path sums are exact. Vertex ids are
/// scattered (`3 * i + 7`) to exercise reindexing.
pub fn random_road(rng: &mut ChaCha8Rng, n: usize, extra: usize, max_len: u32) -> RoadGraph {
    let id = |i: usize| (3 * i + 7) as u64;
    let vertices = (0..n)
        .map(|i| Vertex { id: id(i), lon: rng.gen_range(-1.0..1.0), lat: rng.gen_range(-1.0..1.0) })
        .collect();
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        seen.insert((u, v));
        edges.push(Edge { u: id(u), v: id(v), length: rng.gen_range(1..=max_len) as f64 });
    }
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let key = (a.min(b), a.max(b));
        if a != b && seen.insert(key) {
            edges.push(Edge { u: id(a), v: id(b), length: rng.gen_range(1..=max_len) as f64 });
        }
    }
    RoadGraph::new(vertices, &edges).unwrap()
}

/// `rows x cols` grid with uniform edge length; vertex id `r * cols + c`.
pub fn grid(rows: usize, cols: usize, length: f64) -> RoadGraph {
    let id = |r: usize, c: usize| (r * cols + c) as u64;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            vertices.push(Vertex { id: id(r, c), lon: c as f64 * 0.003, lat: r as f64 * 0.002 });
            if c + 1 < cols {
                edges.push(Edge { u: id(r, c), v: id(r, c + 1), length });
            }
            if r + 1 < rows {
                edges.push(Edge { u: id(r, c), v: id(r + 1, c), length });
            }
        }
    }
    RoadGraph::new(vertices, &edges).unwrap()
}

/// Dense adjacency matrix of lengths (INFINITY for no edge), by index.
pub fn weight_matrix(g: &RoadGraph) -> Vec<Vec<f64>> {
    let n = g.num_vertices();
    let mut w = vec![vec![f64::INFINITY; n]; n];
    for e in g.edges() {
        let (a, b) = (g.index_of(e.u).unwrap(), g.index_of(e.v).unwrap());
        w[a][b] = e.length;
        w[b][a] = e.length;
    }
    w
}

/// O(n^2) array Dijkstra from every vertex; no heap, no shared code.
pub fn all_pairs_dijkstra(g: &RoadGraph) -> Vec<Vec<f64>> {
    let w = weight_matrix(g);
    let n = w.len();
    (0..n)
        .map(|s| {
            let mut dist = vec![f64::INFINITY; n];
            let mut done = vec![false; n];
            dist[s] = 0.0;
            for _ in 0..n {
                let Some(v) = (0..n).filter(|&v| !done[v] && dist[v].is_finite()).min_by(|&a, &b| dist[a].total_cmp(&dist[b])) else {
                    break;
                };
                done[v] = true;
                for u in 0..n {
                    if w[v][u].is_finite() && dist[v] + w[v][u] < dist[u] {
                        dist[u] = dist[v] + w[v][u];
                    }
                }
            }
            dist
        })
        .collect()
}

/// Bellman-Ford from one source over the edge list.
pub fn bellman_ford(g: &RoadGraph, source: usize) -> Vec<f64> {
    let n = g.num_vertices();
    let edges: Vec<(usize, usize, f64)> = g
        .edges()
        .map(|e| (g.index_of(e.u).unwrap(), g.index_of(e.v).unwrap(), e.length))
        .collect();
    let mut dist = vec![f64::INFINITY; n];
    dist[source] = 0.0;
    for _ in 0..n {
        let mut changed = false;
        for &(a, b, l) in &edges {
            if dist[a] + l < dist[b] {
                dist[b] = dist[a] + l;
                changed = true;
            }
            if dist[b] + l < dist[a] {
                dist[a] = dist[b] + l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Erdős–Rényi graph as a reachability graph with ids `1..=n`.
pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> ReachabilityGraph {
    let mut edges = Vec::new();
    for a in 1..=n as u64 {
        for b in a + 1..=n as u64 {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    ReachabilityGraph::from_edges((1..=n as u64).collect(), &edges, 1.0).unwrap()
}

/// G(n, p) resampled until the minimum degree is at least `min_degree`.
pub fn gnp_min_degree(rng: &mut ChaCha8Rng, n: usize, p: f64, min_degree: usize) -> ReachabilityGraph {
    loop {
        let r = gnp(rng, n, p);
        if r.degree_stats().min >= min_degree {
            return r;
        }
    }
}

/// Adjacency bitmasks by index, from the edge iterator.
pub fn adjacency_masks(r: &ReachabilityGraph) -> Vec<u32> {
    let mut adj = vec![0u32; r.num_vertices()];
    for (a, b) in r.edges() {
        let (a, b) = (r.index_of(a).unwrap(), r.index_of(b).unwrap());
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    adj
}

/// Minimum k-dominating set size by scanning every subset.
pub fn brute_force_gamma_k(r: &ReachabilityGraph, k: usize) -> usize {
    let n = r.num_vertices();
    let adj = adjacency_masks(r);
    let mut best = n;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let ok = (0..n).all(|v| mask >> v & 1 == 1 || (adj[v] & mask).count_ones() as usize >= k);
        if ok {
            best = size;
        }
    }
    best
}

/// Domination check written against the edge iterator only.
pub fn naive_is_k_dominating(r: &ReachabilityGraph, members: &[u64], k: usize) -> bool {
    let inside: std::collections::HashSet<u64> = members.iter().copied().collect();
    let mut count: std::collections::HashMap<u64, usize> = Default::default();
    for (a, b) in r.edges() {
        if inside.contains(&a) {
            *count.entry(b).or_default() += 1;
        }
        if inside.contains(&b) {
            *count.entry(a).or_default() += 1;
        }
    }
    r.vertex_ids()
        .iter()
        .all(|v| inside.contains(v) || count.get(v).copied().unwrap_or(0) >= k)
}

/// Every single-member removal breaks domination.
pub fn is_minimal_by_removal(r: &ReachabilityGraph, members: &[u64], k: usize) -> bool {
    (0..members.len()).all(|i| {
        let rest: Vec<u64> = members.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        !naive_is_k_dominating(r, &rest, k)
    })
}
