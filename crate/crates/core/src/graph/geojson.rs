use serde_json::{json, Value};

use super::RoadGraph;
use crate::domination::DominatingSet;
use crate::error::Result;

/// RFC 7946 FeatureCollection: one LineString per road edge and one Point per
/// station, coordinates as `[lon, lat]`.
pub fn export_geojson(g: &RoadGraph, stations: Option<&DominatingSet>) -> Result<Value> {
    let mut features = Vec::with_capacity(g.num_edges());
    for &(a, b, length) in g.edge_indices() {
        let (a, b) = (a as usize, b as usize);
        let (lon_a, lat_a) = g.coords_of(a);
        let (lon_b, lat_b) = g.coords_of(b);
        features.push(json!({
            "type": "Feature",
            "geometry": {
                "type": "LineString",
                "coordinates": [[lon_a, lat_a], [lon_b, lat_b]],
            },
            "properties": { "u": g.id_of(a), "v": g.id_of(b), "length_m": length },
        }));
    }
    if let Some(set) = stations {
        for &id in &set.members {
            let (lon, lat) = g.coords_of(g.require_index(id)?);
            features.push(json!({
                "type": "Feature",
                "geometry": { "type": "Point", "coordinates": [lon, lat] },
                "properties": { "id": id, "station": true },
            }));
        }
    }
    Ok(json!({ "type": "FeatureCollection", "features": features }))
}
