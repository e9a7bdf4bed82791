//! Binary cache of a reachability graph.
//!
//! Layout, little-endian:
//!
//! ```text
//! magic    [u8; 4] = "KDRG"
//! version  u32
//! n        u64
//! m        u64     road edges of the source graph
//! t        f64     threshold in meters
//! n times: count u32, then `count` neighbour indices u32 (ascending)
//! ```
//!
//! Neighbour indices refer to vertices in ascending id order of the road
//! graph the cache is read against.

use std::io::{Read, Write};

use super::ReachabilityGraph;
use crate::error::{Error, Result};
use crate::graph::RoadGraph;

pub const CACHE_MAGIC: [u8; 4] = *b"KDRG";
pub const CACHE_VERSION: u32 = 1;

pub fn write_cache<W: Write>(r: &ReachabilityGraph, mut w: W) -> Result<()> {
    let fp = r.fingerprint();
    w.write_all(&CACHE_MAGIC)?;
    w.write_all(&CACHE_VERSION.to_le_bytes())?;
    w.write_all(&(fp.n as u64).to_le_bytes())?;
    w.write_all(&(fp.m as u64).to_le_bytes())?;
    w.write_all(&fp.t_meters.to_le_bytes())?;
    for v in 0..r.num_vertices() {
        let list = r.neighbors(v);
        w.write_all(&(list.len() as u32).to_le_bytes())?;
        for &u in list {
            w.write_all(&u.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)
        .map_err(|e| Error::Cache(format!("truncated: {e}")))?;
    Ok(buf)
}

/// Reads a cache written for `g` at threshold `t`. Any mismatch in
/// `(n, m, t)` is reported as [`Error::Cache`] so callers can rebuild.
pub fn read_cache<R: Read>(mut reader: R, g: &RoadGraph, t: f64) -> Result<ReachabilityGraph> {
    if read_array::<4, _>(&mut reader)? != CACHE_MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let version = u32::from_le_bytes(read_array(&mut reader)?);
    if version != CACHE_VERSION {
        return Err(Error::Cache(format!("unsupported version {version}")));
    }
    let n = u64::from_le_bytes(read_array(&mut reader)?) as usize;
    let m = u64::from_le_bytes(read_array(&mut reader)?) as usize;
    let ct = f64::from_le_bytes(read_array(&mut reader)?);
    if n != g.num_vertices() || m != g.num_edges() || ct.to_bits() != t.to_bits() {
        return Err(Error::Cache(format!(
            "stale: cache has (n={n}, m={m}, t={ct}), wanted (n={}, m={}, t={t})",
            g.num_vertices(),
            g.num_edges()
        )));
    }
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0usize);
    let mut targets = Vec::new();
    for v in 0..n {
        let count = u32::from_le_bytes(read_array(&mut reader)?) as usize;
        let start = targets.len();
        for _ in 0..count {
            let u = u32::from_le_bytes(read_array(&mut reader)?);
            if u as usize >= n || u as usize == v {
                return Err(Error::Cache(format!("vertex {v}: bad neighbour index {u}")));
            }
            targets.push(u);
        }
        if !targets[start..].windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Cache(format!("vertex {v}: neighbours not sorted")));
        }
        offsets.push(targets.len());
    }
    let mut rest = [0u8; 1];
    if reader.read(&mut rest)? != 0 {
        return Err(Error::Cache("trailing bytes".into()));
    }
    let graph =
        ReachabilityGraph::from_raw_parts(g.vertex_ids().to_vec(), t, m, offsets, targets);
    let symmetric = (0..n).all(|v| graph.neighbors(v).iter().all(|&u| graph.has_edge(u as usize, v)));
    if !symmetric {
        return Err(Error::Cache("adjacency not symmetric".into()));
    }
    Ok(graph)
}
