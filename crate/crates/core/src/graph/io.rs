use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use super::{Edge, RoadGraph, Vertex};
use crate::error::{Error, Result};
use crate::VertexId;

#[derive(Deserialize)]
struct NodeRow {
    id: VertexId,
    lon: f64,
    lat: f64,
}

#[derive(Deserialize)]
struct EdgeRow {
    u: VertexId,
    v: VertexId,
    length_m: f64,
}

fn read_rows<R: Read, T: for<'de> Deserialize<'de>>(
    doc: R,
    file: &'static str,
    header: &[&str],
) -> Result<Vec<T>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(doc);
    let found = reader.headers().map_err(|e| Error::MalformedRow {
        file,
        row: 0,
        reason: e.to_string(),
    })?;
    if found.iter().collect::<Vec<_>>() != header {
        return Err(Error::MalformedRow {
            file,
            row: 0,
            reason: format!("expected header `{}`", header.join(",")),
        });
    }
    reader
        .deserialize()
        .enumerate()
        .map(|(i, rec)| {
            rec.map_err(|e| Error::MalformedRow {
                file,
                row: i + 1,
                reason: e.to_string(),
            })
        })
        .collect()
}

/// Parses the node table (`id,lon,lat`) and edge table (`u,v,length_m`).
/// Row numbers in errors count data rows from 1, header excluded.
pub fn load_road_graph<N: Read, E: Read>(nodes_doc: N, edges_doc: E) -> Result<RoadGraph> {
    let nodes: Vec<NodeRow> = read_rows(nodes_doc, "nodes", &["id", "lon", "lat"])?;
    let edges: Vec<EdgeRow> = read_rows(edges_doc, "edges", &["u", "v", "length_m"])?;
    let vertices = nodes
        .into_iter()
        .map(|r| Vertex { id: r.id, lon: r.lon, lat: r.lat })
        .collect();
    let edges: Vec<Edge> = edges
        .into_iter()
        .map(|r| Edge { u: r.u, v: r.v, length: r.length_m })
        .collect();
    RoadGraph::new(vertices, &edges)
}

pub fn load_road_graph_from_paths(nodes: &Path, edges: &Path) -> Result<RoadGraph> {
    load_road_graph(File::open(nodes)?, File::open(edges)?)
}
