//! Charging-station placement on road networks.
//!
//! A road network is turned into a *reachability graph* in which two
//! locations are adjacent when the driving distance between them is within a
//! threshold. A k-dominating set of that graph is a set of station sites such
//! that every other location has at least `k` stations within the threshold.
//!
//! The crate is organised as
//!
//! - [`graph`]: the weighted road graph, CSV ingestion, shortest paths and
//!   GeoJSON export;
//! - [`reachability`]: threshold graphs, threshold lower bounds, outliers and
//!   the binary cache;
//! - [`domination`]: verification, the randomized, greedy and exact
//!   algorithms, minimal reduction, and the probabilistic upper bounds;
//! - [`evaluation`]: station-reachability statistics, coverage multiplicity
//!   and recharging-detour simulation.
//!
//! ```
//! use chargeplace::graph::load_road_graph;
//! use chargeplace::reachability::build_reachability_graph;
//! use chargeplace::domination::{greedy_k_dominating, is_k_dominating};
//!
//! let nodes = "id,lon,lat\n1,0,0\n2,0,0\n3,0,0\n4,0,0\n";
//! let edges = "u,v,length_m\n1,2,1000\n2,3,1000\n3,4,1000\n";
//! let road = load_road_graph(nodes.as_bytes(), edges.as_bytes()).unwrap();
//! let reach = build_reachability_graph(&road, 2000.0).unwrap();
//! let stations = greedy_k_dominating(&reach, 1, &[]).unwrap();
//! assert!(is_k_dominating(&reach, &stations.members, 1).unwrap().dominating);
//! ```

pub mod domination;
pub mod error;
pub mod evaluation;
pub mod graph;
pub mod reachability;

pub use error::{Error, Result};

/// External vertex identifier as it appears in input tables.
pub type VertexId = u64;

// Book chapters are compiled and run as doctests so the guide cannot drift
// from the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/road-graphs.md")]
    mod road_graphs {}
    #[doc = include_str!("../../../book/src/reachability.md")]
    mod reachability {}
    #[doc = include_str!("../../../book/src/k-domination.md")]
    mod k_domination {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
}
