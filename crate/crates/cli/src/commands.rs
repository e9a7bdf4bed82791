use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chargeplace::domination::{
    best_of_runs_with, exact_min_k_dominating, greedy_extension_k_dominating,
    greedy_k_dominating_with, randomized_k_dominating_with, BoundReport, DegreeMode,
    DominatingSet, OutlierPolicy, RandomizedOptions,
};
use chargeplace::evaluation::{
    coverage_multiplicity_at, detour_experiment, station_reachability_stats, write_detour_csv,
    EvaluationReport,
};
use chargeplace::graph::{export_geojson, load_road_graph_from_paths, RoadGraph};
use chargeplace::reachability::{
    build_reachability_graph, read_cache, threshold_lower_bounds, write_cache, DegreeStats,
    GraphFingerprint, ReachabilityGraph, ThresholdBounds,
};
use serde::Serialize;
use serde_json::Value;

use crate::args::{Algo, Command, DominateArgs, GraphArgs, ReachArgs, TripArgs};
use crate::failure::{file_error, Failure};

type Result<T, E = Failure> = std::result::Result<T, E>;

/// Everything that determines an artifact's content. Thread count and output
/// paths are left out so they cannot change the bytes.
#[derive(Debug, Default, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub nodes: String,
    pub edges: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_meters: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algo: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<DegreeMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outlier_policy: Option<OutlierPolicy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase_b: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distances_m: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stations: Option<String>,
}

impl RunConfig {
    fn new(command: &'static str, graph: &GraphArgs) -> Self {
        Self {
            command,
            nodes: graph.nodes.display().to_string(),
            edges: graph.edges.display().to_string(),
            ..Default::default()
        }
    }
}

#[derive(Serialize)]
struct Artifact<'a, T: Serialize> {
    config: &'a RunConfig,
    fingerprint: GraphFingerprint,
    #[serde(flatten)]
    body: T,
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::BuildReach { graph, threshold, out } => {
            let t = threshold.meters();
            let mut config = RunConfig::new("build-reach", &graph);
            config.t_meters = Some(t);
            let g = load_graph(&graph)?;
            let r = build_reachability_graph(&g, t)?;
            let mut bytes = Vec::new();
            write_cache(&r, &mut bytes)?;
            fs::write(&out, bytes).map_err(file_error(&out))?;

            #[derive(Serialize)]
            struct Summary {
                degree_stats: DegreeStats,
                threshold_bounds: Option<ThresholdBounds>,
            }
            let summary = Summary { degree_stats: r.degree_stats(), threshold_bounds: threshold_lower_bounds(&g).ok() };
            emit_json(&Artifact { config: &config, fingerprint: r.fingerprint(), body: summary }, None)
        }
        Command::Dominate(args) => dominate(args),
        Command::Bounds { reach, k, alpha, out } => {
            let mut config = reach_config("bounds", &reach);
            config.k = Some(k);
            config.alpha = alpha;
            let (_, r) = load_reach(&reach)?;
            let report = BoundReport::compute(&r, k, alpha)?;
            emit_json(&Artifact { config: &config, fingerprint: r.fingerprint(), body: report }, out.as_deref())
        }
        Command::Evaluate { graph, threshold, trips, distances_km } => {
            let t = threshold.meters();
            let mut config = trip_config("evaluate", &graph, t, &trips);
            let distances_m: Vec<f64> = if distances_km.is_empty() {
                vec![t]
            } else {
                distances_km.iter().map(|d| d * 1000.0).collect()
            };
            config.distances_m = Some(distances_m.clone());
            let g = load_graph(&graph)?;
            let stations = load_stations(&trips.stations, &g)?;
            let stats = station_reachability_stats(&g, &stations.members, &distances_m)?;
            let report = EvaluationReport {
                stats_by_distance: stats.by_distance,
                coverage_multiplicity: coverage_multiplicity_at(&g, &stations.members, t)?,
                detour: detour_experiment(&g, &stations.members, t, trips.pairs, trips.seed)?,
            };
            write_csv(&trips, &report.detour.records)?;
            let fingerprint = road_fingerprint(&g, t);
            emit_json(&Artifact { config: &config, fingerprint, body: report }, trips.out.as_deref())
        }
        Command::Detour { graph, threshold, trips } => {
            let t = threshold.meters();
            let config = trip_config("detour", &graph, t, &trips);
            let g = load_graph(&graph)?;
            let stations = load_stations(&trips.stations, &g)?;
            let report = detour_experiment(&g, &stations.members, t, trips.pairs, trips.seed)?;
            write_csv(&trips, &report.records)?;
            let fingerprint = road_fingerprint(&g, t);
            emit_json(&Artifact { config: &config, fingerprint, body: report }, trips.out.as_deref())
        }
        Command::Export { graph, stations, out } => {
            let mut config = RunConfig::new("export", &graph);
            config.stations = stations.as_ref().map(|p| p.display().to_string());
            let g = load_graph(&graph)?;
            let set = stations.as_deref().map(|p| load_stations(p, &g)).transpose()?;
            let mut doc = export_geojson(&g, set.as_ref())?;
            // GeoJSON permits extra top-level members
            if let Value::Object(map) = &mut doc {
                map.insert("config".into(), serde_json::to_value(&config).map_err(chargeplace::Error::from)?);
                map.insert(
                    "fingerprint".into(),
                    serde_json::json!({
                        "n": g.num_vertices(),
                        "m": g.num_edges(),
                        "t_meters": set.as_ref().and_then(|s| s.graph_fingerprint).map(|f| f.t_meters),
                    }),
                );
            }
            emit_json(&doc, out.as_deref())
        }
        Command::Verify { graph, threshold, reach_cache, set } => {
            let stations = read_set(&set)?;
            let recorded = stations.graph_fingerprint.map(|f| f.t_meters);
            let t = threshold.meters().or(recorded).ok_or_else(|| {
                Failure::Usage("the set records no threshold; pass --t-km or --t-m".into())
            })?;
            let g = load_graph(&graph)?;
            let r = reachability(&g, t, reach_cache.as_deref())?;
            let verdict = verdict(&stations, &r)?;
            println!("{verdict}");
            if verdict.starts_with("PASS") {
                Ok(())
            } else {
                Err(Failure::Verify(verdict))
            }
        }
    }
}

fn dominate(args: DominateArgs) -> Result<()> {
    let DominateArgs { reach, k, algo, mode, seed, runs, outlier_policy, phase_b, verify, out } = args;
    let randomized = matches!(algo, Algo::Randomized | Algo::GreedyExtension);
    let mut config = reach_config("dominate", &reach);
    config.k = Some(k);
    config.algo = Some(match algo {
        Algo::Randomized => "randomized",
        Algo::Greedy => "greedy",
        Algo::GreedyExtension => "greedy-extension",
        Algo::Exact => "exact",
    });
    config.outlier_policy = outlier_policy.map(Into::into);
    if randomized {
        config.mode = Some(mode.into());
        config.seed = Some(seed);
        config.runs = Some(runs);
    }
    if algo == Algo::Randomized {
        config.phase_b = Some(match phase_b {
            crate::args::Repair::Sweep => "sweep",
            crate::args::Repair::Extension => "extension",
        });
    }
    if randomized && runs == 0 {
        return Err(chargeplace::Error::ZeroRuns.into());
    }

    let (_, r) = load_reach(&reach)?;
    let policy: OutlierPolicy = outlier_policy.map(Into::into).unwrap_or_default();
    let mode: DegreeMode = mode.into();
    let set = match algo {
        Algo::Randomized => {
            let opts = RandomizedOptions { phase_b: phase_b.into(), outliers: policy };
            if runs == 1 {
                randomized_k_dominating_with(&r, k, mode, seed, &opts)?
            } else {
                best_of_runs_with(&r, k, mode, runs, seed, &opts)?
            }
        }
        Algo::GreedyExtension => {
            let mut best: Option<DominatingSet> = None;
            for i in 0..runs as u64 {
                let set = greedy_extension_k_dominating(&r, k, mode, seed.wrapping_add(i), policy)?;
                if best.as_ref().is_none_or(|b| set.len() < b.len()) {
                    best = Some(set);
                }
            }
            let mut best = best.expect("runs > 0");
            best.provenance.runs = runs;
            best
        }
        Algo::Greedy => greedy_k_dominating_with(&r, k, &[], policy)?,
        Algo::Exact => exact_min_k_dominating(&r, k, r.num_vertices())?,
    };
    emit_json(&Artifact { config: &config, fingerprint: r.fingerprint(), body: &set }, out.as_deref())?;
    if verify {
        let verdict = verdict(&set, &r)?;
        eprintln!("{verdict}");
        if !verdict.starts_with("PASS") {
            return Err(Failure::Verify(verdict));
        }
    }
    Ok(())
}

fn verdict(set: &DominatingSet, r: &ReachabilityGraph) -> Result<String> {
    let v = set.verify(r)?;
    Ok(if v.passed() {
        format!("PASS k={} size={} minimal={}", set.k, set.len(), set.minimal)
    } else {
        format!(
            "FAIL k={} size={} violations={} redundant={}",
            set.k,
            set.len(),
            v.check.violations.len(),
            v.redundant.len()
        )
    })
}

fn reach_config(command: &'static str, reach: &ReachArgs) -> RunConfig {
    let mut config = RunConfig::new(command, &reach.graph);
    config.t_meters = Some(reach.threshold.meters());
    config
}

fn trip_config(command: &'static str, graph: &GraphArgs, t: f64, trips: &TripArgs) -> RunConfig {
    let mut config = RunConfig::new(command, graph);
    config.t_meters = Some(t);
    config.seed = Some(trips.seed);
    config.pairs = Some(trips.pairs);
    config.stations = Some(trips.stations.display().to_string());
    config
}

fn road_fingerprint(g: &RoadGraph, t: f64) -> GraphFingerprint {
    GraphFingerprint { n: g.num_vertices(), m: g.num_edges(), t_meters: t }
}

fn load_graph(graph: &GraphArgs) -> Result<RoadGraph> {
    for path in [&graph.nodes, &graph.edges] {
        fs::metadata(path).map_err(file_error(path))?;
    }
    Ok(load_road_graph_from_paths(&graph.nodes, &graph.edges)?)
}

fn load_reach(reach: &ReachArgs) -> Result<(RoadGraph, ReachabilityGraph)> {
    let g = load_graph(&reach.graph)?;
    let r = reachability(&g, reach.threshold.meters(), reach.reach_cache.as_deref())?;
    Ok((g, r))
}

fn reachability(g: &RoadGraph, t: f64, cache: Option<&Path>) -> Result<ReachabilityGraph> {
    match cache {
        Some(path) if path.exists() => {
            let bytes = fs::read(path).map_err(file_error(path))?;
            Ok(read_cache(bytes.as_slice(), g, t)?)
        }
        Some(path) => {
            let r = build_reachability_graph(g, t)?;
            let mut bytes = Vec::new();
            write_cache(&r, &mut bytes)?;
            fs::write(path, bytes).map_err(file_error(path))?;
            Ok(r)
        }
        None => Ok(build_reachability_graph(g, t)?),
    }
}

fn read_set(path: &Path) -> Result<DominatingSet> {
    let text = fs::read_to_string(path).map_err(file_error(path))?;
    Ok(serde_json::from_str(&text).map_err(chargeplace::Error::from)?)
}

/// A station set whose recorded graph size, if any, matches `g`.
fn load_stations(path: &Path, g: &RoadGraph) -> Result<DominatingSet> {
    let set = read_set(path)?;
    if let Some(fp) = set.graph_fingerprint {
        if (fp.n, fp.m) != (g.num_vertices(), g.num_edges()) {
            return Err(chargeplace::Error::FingerprintMismatch {
                expected: format!("(n={}, m={})", g.num_vertices(), g.num_edges()),
                found: fp.to_string(),
            }
            .into());
        }
    }
    Ok(set)
}

fn write_csv(trips: &TripArgs, records: &[chargeplace::evaluation::DetourRecord]) -> Result<()> {
    if let Some(path) = &trips.csv {
        let mut bytes = Vec::new();
        write_detour_csv(records, &mut bytes)?;
        fs::write(path, bytes).map_err(file_error(path))?;
    }
    Ok(())
}

/// Pretty JSON with a trailing newline, to `out` or stdout.
fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(chargeplace::Error::from)?;
    bytes.push(b'\n');
    match out {
        Some(path) => fs::write(path, bytes).map_err(file_error(path)),
        None => {
            let stdout = std::io::stdout();
            let path = PathBuf::from("<stdout>");
            let mut lock = stdout.lock();
            lock.write_all(&bytes).and_then(|_| lock.flush()).map_err(file_error(&path))
        }
    }
}
