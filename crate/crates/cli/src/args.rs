use std::path::PathBuf;

use chargeplace::domination::{DegreeMode, OutlierPolicy, PhaseB};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "chargeplace", version, about = "Charging-station placement on road networks via k-domination")]
pub struct Cli {
    /// Worker threads for the parallel stages (default: one per core).
    /// Outputs are identical for every value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the reachability graph and write its binary cache.
    BuildReach {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        threshold: Threshold,
        /// Cache file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute a k-dominating station set.
    Dominate(DominateArgs),
    /// Evaluate the expected-size bounds on the reachability graph.
    Bounds {
        #[command(flatten)]
        reach: ReachArgs,
        #[arg(long)]
        k: usize,
        /// Proportion for the alpha-domination bound.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Station counts by distance, coverage multiplicity and detours.
    Evaluate {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        threshold: Threshold,
        #[command(flatten)]
        trips: TripArgs,
        /// Comma-separated distances for the station counts, ascending
        /// (default: the threshold).
        #[arg(long, value_delimiter = ',')]
        distances_km: Vec<f64>,
    },
    /// Detour experiment over random trips.
    Detour {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        threshold: Threshold,
        #[command(flatten)]
        trips: TripArgs,
    },
    /// Road graph (and optionally stations) as GeoJSON.
    Export {
        #[command(flatten)]
        graph: GraphArgs,
        /// Station set JSON to include as points.
        #[arg(long)]
        stations: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a station set JSON against a graph; prints PASS or FAIL.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        threshold: OptThreshold,
        #[arg(long)]
        reach_cache: Option<PathBuf>,
        /// Station set JSON to check.
        #[arg(long)]
        set: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Vertex CSV with header `id,lon,lat`.
    #[arg(long)]
    pub nodes: PathBuf,
    /// Edge CSV with header `u,v,length_m`.
    #[arg(long)]
    pub edges: PathBuf,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Threshold {
    /// Reachability threshold in kilometres.
    #[arg(long, allow_negative_numbers = true)]
    pub t_km: Option<f64>,
    /// Reachability threshold in metres.
    #[arg(long, allow_negative_numbers = true)]
    pub t_m: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct OptThreshold {
    /// Threshold in kilometres (default: the one recorded in the set).
    #[arg(long, allow_negative_numbers = true)]
    pub t_km: Option<f64>,
    /// Threshold in metres (default: the one recorded in the set).
    #[arg(long, allow_negative_numbers = true)]
    pub t_m: Option<f64>,
}

impl Threshold {
    pub fn meters(&self) -> f64 {
        to_meters(self.t_km, self.t_m).expect("clap enforces one threshold flag")
    }
}

impl OptThreshold {
    pub fn meters(&self) -> Option<f64> {
        to_meters(self.t_km, self.t_m)
    }
}

fn to_meters(km: Option<f64>, m: Option<f64>) -> Option<f64> {
    km.map(|km| km * 1000.0).or(m)
}

#[derive(Debug, Args)]
pub struct ReachArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub threshold: Threshold,
    /// Reachability cache: read if present, otherwise built and written.
    #[arg(long)]
    pub reach_cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DominateArgs {
    #[command(flatten)]
    pub reach: ReachArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Algo::Randomized)]
    pub algo: Algo,
    /// Degree statistic that sets the sampling probability.
    #[arg(long, value_enum, default_value_t = Mode::MinDegree)]
    pub mode: Mode,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Independent runs (seeds `seed..seed+runs`); the smallest set is kept.
    /// Ignored by `greedy` and `exact`.
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    /// Treatment of vertices with fewer than k neighbours. Required when
    /// such vertices exist.
    #[arg(long, value_enum)]
    pub outlier_policy: Option<Policy>,
    /// Repair step after random sampling.
    #[arg(long, value_enum, default_value_t = Repair::Extension)]
    pub phase_b: Repair,
    /// Re-check the result and report PASS or FAIL on stderr.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TripArgs {
    /// Station set JSON.
    #[arg(long)]
    pub stations: PathBuf,
    /// Number of random (source, destination) trips.
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Per-trip CSV output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Randomized,
    Greedy,
    GreedyExtension,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    MinDegree,
    AvgDegree,
}

impl From<Mode> for DegreeMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::MinDegree => DegreeMode::MinDegree,
            Mode::AvgDegree => DegreeMode::AvgDegree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Error,
    ForceInclude,
    Ignore,
}

impl From<Policy> for OutlierPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Error => OutlierPolicy::Error,
            Policy::ForceInclude => OutlierPolicy::ForceInclude,
            Policy::Ignore => OutlierPolicy::Ignore,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Repair {
    Sweep,
    Extension,
}

impl From<Repair> for PhaseB {
    fn from(r: Repair) -> Self {
        match r {
            Repair::Sweep => PhaseB::Sweep,
            Repair::Extension => PhaseB::Extension,
        }
    }
}
