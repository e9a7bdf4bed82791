//! Evaluation of a station set on the road network: how many stations each
//! location can reach, the coverage multiplicity at a radius, and the extra
//! driving incurred when recharging en route.
//!
//! All distances here are road-network shortest-path distances.

use std::io::Write;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DijkstraScratch, RoadGraph};
use crate::VertexId;

/// Station counts within one radius, over all non-station vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceStats {
    pub distance_m: f64,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub min: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReachabilityStats {
    /// Number of non-station vertices the statistics are taken over.
    pub population: usize,
    pub by_distance: Vec<DistanceStats>,
}

fn station_mask(g: &RoadGraph, stations: &[VertexId]) -> Result<Vec<bool>> {
    if stations.is_empty() {
        return Err(Error::EmptyStationSet);
    }
    let mut mask = vec![false; g.num_vertices()];
    for &id in stations {
        mask[g.require_index(id)?] = true;
    }
    Ok(mask)
}

/// `counts[v * d + i]` = stations within `distances[i]` of `v`. One bounded
/// search per station, capped at the largest distance.
fn station_counts(g: &RoadGraph, is_station: &[bool], distances: &[f64]) -> Vec<u32> {
    let n = g.num_vertices();
    let d = distances.len();
    let Some(&radius) = distances.last() else {
        return Vec::new();
    };
    let stations: Vec<usize> = (0..n).filter(|&v| is_station[v]).collect();
    let mut counts = stations
        .par_iter()
        .fold(
            || (DijkstraScratch::new(n), vec![0u32; n * d]),
            |(mut scratch, mut acc), &x| {
                scratch.run(g, x, radius, |v, dist| {
                    let first = distances.partition_point(|&r| r < dist);
                    if first < d {
                        acc[v * d + first] += 1;
                    }
                });
                (scratch, acc)
            },
        )
        .map(|(_, acc)| acc)
        .reduce(
            || vec![0u32; n * d],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    for v in 0..n {
        for i in 1..d {
            counts[v * d + i] += counts[v * d + i - 1];
        }
    }
    counts
}

/// Mean, population std and min of the number of stations within each
/// distance, over vertices that are not stations. `distances` must be
/// ascending.
pub fn station_reachability_stats(
    g: &RoadGraph,
    stations: &[VertexId],
    distances: &[f64],
) -> Result<ReachabilityStats> {
    let is_station = station_mask(g, stations)?;
    if distances.iter().any(|d| d.is_nan() || *d < 0.0) || !distances.windows(2).all(|w| w[0] <= w[1]) {
        return Err(Error::UnsortedDistances);
    }
    let population: Vec<usize> = (0..g.num_vertices()).filter(|&v| !is_station[v]).collect();
    if population.is_empty() {
        return Err(Error::NoNonStationVertices);
    }
    let counts = station_counts(g, &is_station, distances);
    let d = distances.len();
    let size = population.len() as f64;
    let by_distance = distances
        .iter()
        .enumerate()
        .map(|(i, &distance_m)| {
            let values = population.iter().map(|&v| counts[v * d + i] as f64);
            let mean = values.clone().sum::<f64>() / size;
            let var = values.clone().map(|c| (c - mean).powi(2)).sum::<f64>() / size;
            let min = population.iter().map(|&v| counts[v * d + i]).min().unwrap() as usize;
            DistanceStats { distance_m, mean, std: var.sqrt(), min }
        })
        .collect();
    Ok(ReachabilityStats { population: population.len(), by_distance })
}

/// Largest `k` such that the stations are k-dominating in the reachability
/// graph at radius `q`: the minimum over non-station vertices of the number
/// of stations within `q`. With no non-station vertices this is the number
/// of stations.
pub fn coverage_multiplicity_at(g: &RoadGraph, stations: &[VertexId], q: f64) -> Result<usize> {
    if q.is_nan() || q < 0.0 {
        return Err(Error::InvalidThreshold(q));
    }
    match station_reachability_stats(g, stations, &[q]) {
        Ok(stats) => Ok(stats.by_distance[0].min),
        Err(Error::NoNonStationVertices) => Ok(station_mask(g, stations)?.iter().filter(|&&s| s).count()),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Infeasible {
    /// No station within the threshold of the source.
    NoCandidate,
    /// The destination cannot be reached from the source.
    Unreachable,
}

/// One recharging trip. The station, when present, is within the threshold
/// of the source and minimizes `d(s, x) + d(x, dest)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetourRecord {
    pub source: VertexId,
    pub dest: VertexId,
    pub station: Option<VertexId>,
    pub detour_m: Option<f64>,
    /// Stations within the threshold of the source.
    pub candidates: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infeasible: Option<Infeasible>,
}

impl DetourRecord {
    pub fn is_feasible(&self) -> bool {
        self.infeasible.is_none()
    }
}

fn detour_between(
    g: &RoadGraph,
    s: usize,
    dest: usize,
    is_station: &[bool],
    t: f64,
) -> DetourRecord {
    let from_source = g.distances_from_index(s);
    let from_dest = g.distances_from_index(dest);
    let mut record = DetourRecord {
        source: g.id_of(s),
        dest: g.id_of(dest),
        station: None,
        detour_m: None,
        candidates: 0,
        infeasible: None,
    };
    let mut best: Option<(f64, usize)> = None;
    for x in (0..g.num_vertices()).filter(|&x| is_station[x] && from_source[x] <= t) {
        record.candidates += 1;
        let via = from_source[x] + from_dest[x];
        if via.is_finite() && best.is_none_or(|(b, _)| via < b) {
            best = Some((via, x));
        }
    }
    let direct = from_source[dest];
    if direct.is_infinite() {
        record.infeasible = Some(Infeasible::Unreachable);
    } else if let Some((via, x)) = best {
        record.station = Some(g.id_of(x));
        record.detour_m = Some((via - direct).max(0.0));
    } else {
        record.infeasible = Some(Infeasible::NoCandidate);
    }
    record
}

/// Best recharging stop for a trip from `s` to `dest` among stations within
/// `t` of `s`; ties go to the smallest station id. A source that is itself a
/// station is a candidate at distance 0.
pub fn min_detour(
    g: &RoadGraph,
    s: VertexId,
    dest: VertexId,
    stations: &[VertexId],
    t: f64,
) -> Result<DetourRecord> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::InvalidThreshold(t));
    }
    let is_station = station_mask(g, stations)?;
    let (s, dest) = (g.require_index(s)?, g.require_index(dest)?);
    Ok(detour_between(g, s, dest, &is_station, t))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetourReport {
    /// Mean over feasible records; `None` if there are none.
    pub mean_m: Option<f64>,
    /// Sample standard deviation over feasible records (0 with fewer than two).
    pub std_m: f64,
    pub feasible_count: usize,
    pub infeasible_count: usize,
    pub records: Vec<DetourRecord>,
}

impl DetourReport {
    fn from_records(records: Vec<DetourRecord>) -> Self {
        let values: Vec<f64> = records.iter().filter_map(|r| r.detour_m).collect();
        let count = values.len();
        let mean_m = (count > 0).then(|| values.iter().sum::<f64>() / count as f64);
        let std_m = match mean_m {
            Some(mean) if count > 1 => {
                (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64).sqrt()
            }
            _ => 0.0,
        };
        Self {
            mean_m,
            std_m,
            feasible_count: count,
            infeasible_count: records.len() - count,
            records,
        }
    }
}

/// The ordered `(source, dest)` pairs, `source != dest`, sampled uniformly
/// without replacement. Pair `i` of `n(n-1)` maps to source `i / (n-1)` and
/// the `i % (n-1)`-th other vertex.
pub fn sample_pairs(g: &RoadGraph, pairs: usize, seed: u64) -> Result<Vec<(VertexId, VertexId)>> {
    let n = g.num_vertices();
    let available = n.saturating_mul(n.saturating_sub(1));
    if pairs > available {
        return Err(Error::TooFewPairs { requested: pairs, available });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(index::sample(&mut rng, available, pairs)
        .into_iter()
        .map(|i| {
            let s = i / (n - 1);
            let j = i % (n - 1);
            let dest = if j < s { j } else { j + 1 };
            (g.id_of(s), g.id_of(dest))
        })
        .collect())
}

/// Detours for `pairs` random trips. Records keep sample order; infeasible
/// trips are counted but excluded from the mean and std.
pub fn detour_experiment(
    g: &RoadGraph,
    stations: &[VertexId],
    t: f64,
    pairs: usize,
    seed: u64,
) -> Result<DetourReport> {
    if pairs == 0 {
        return Err(Error::TooFewPairs { requested: 0, available: 0 });
    }
    if t.is_nan() || t < 0.0 {
        return Err(Error::InvalidThreshold(t));
    }
    let is_station = station_mask(g, stations)?;
    let trips = sample_pairs(g, pairs, seed)?;
    let records = trips
        .par_iter()
        .map(|&(s, dest)| {
            let (s, dest) = (g.index_of(s).unwrap(), g.index_of(dest).unwrap());
            detour_between(g, s, dest, &is_station, t)
        })
        .collect();
    Ok(DetourReport::from_records(records))
}

/// Combined report written by the `evaluate` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub stats_by_distance: Vec<DistanceStats>,
    pub coverage_multiplicity: usize,
    pub detour: DetourReport,
}

/// CSV with header `source,dest,station,detour_m,candidates`; empty cells for
/// infeasible trips.
pub fn write_detour_csv<W: Write>(records: &[DetourRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["source", "dest", "station", "detour_m", "candidates"])
        .map_err(std::io::Error::from)?;
    for r in records {
        out.write_record([
            r.source.to_string(),
            r.dest.to_string(),
            r.station.map(|s| s.to_string()).unwrap_or_default(),
            r.detour_m.map(|d| d.to_string()).unwrap_or_default(),
            r.candidates.to_string(),
        ])
        .map_err(std::io::Error::from)?;
    }
    out.flush()?;
    Ok(())
}
