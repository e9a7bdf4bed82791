//! Acceptance suite. Runs as a plain binary (`harness = false`) and prints one
//! PASS/FAIL line per criterion; exits nonzero if any criterion fails.
//!
//!     cargo test -p chargeplace --test acceptance

mod common;

use std::time::{Duration, Instant};

use chargeplace::domination::{
    best_of_runs, bound_theorem1, compute_probability_p, exact_min_k_dominating,
    greedy_extension_k_dominating, greedy_k_dominating, randomized_k_dominating,
    randomized_k_dominating_with, reduce_to_minimal, BoundReport, DegreeMode, DominatingSet,
    OutlierPolicy, PhaseB, Provenance, RandomizedOptions,
};
use chargeplace::evaluation::{
    detour_experiment, min_detour, station_reachability_stats, DetourReport,
};
use chargeplace::graph::RoadGraph;
use chargeplace::reachability::{build_reachability_graph, write_cache, ReachabilityGraph};
use common::*;
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "reachability oracle equivalence", budget: secs(60), run: reachability_oracle },
        Criterion { id: 2, name: "heuristics vs exact optimum", budget: secs(300), run: oracle_dominance },
        Criterion { id: 3, name: "mean randomized size within expectation bound", budget: secs(600), run: expectation_bound },
        Criterion { id: 4, name: "minimality of emitted sets", budget: secs(600), run: minimality },
        Criterion { id: 5, name: "bound formulas", budget: secs(60), run: bound_formulas },
        Criterion { id: 6, name: "detour properties", budget: secs(600), run: detour_properties },
        Criterion { id: 7, name: "grid trend reproduction", budget: secs(600), run: grid_trend },
        Criterion { id: 8, name: "determinism across threads and runs", budget: secs(600), run: determinism },
        Criterion { id: 9, name: "grid reachability build time", budget: secs(30), run: build_time },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => {
                Err(format!("{detail}; exceeded budget of {:.0}s", c.budget.as_secs_f64()))
            }
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{tag} [{}] {}: {detail} ({:.1}s)", c.id, c.name, elapsed.as_secs_f64());
        failed += outcome.is_err() as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn reachability_oracle() -> Outcome {
    let mut g_rng = rng(1001);
    let mut cases = 0;
    for graph in 0..50 {
        let n = g_rng.gen_range(2..=200);
        let extra = g_rng.gen_range(0..=2 * n);
        let g = random_road(&mut g_rng, n, extra, 100);
        let d = all_pairs_dijkstra(&g);
        let finite: Vec<f64> = d.iter().flatten().copied().filter(|x| *x > 0.0).collect();
        let diameter = finite.iter().copied().fold(0.0, f64::max);
        // include a realized distance so the inclusive boundary is exercised
        let realized = finite[g_rng.gen_range(0..finite.len())];
        let thresholds = [1.0, diameter * 0.1, realized, diameter * 0.5, diameter];
        for t in thresholds {
            let t = t.max(1e-9);
            let r = build_reachability_graph(&g, t).map_err(|e| e.to_string())?;
            let mut expected = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if d[a][b] <= t {
                        expected.push((g.id_of(a), g.id_of(b)));
                    }
                }
            }
            let got: Vec<_> = r.edges().collect();
            ensure(got == expected, || {
                format!("graph {graph} (n={n}) t={t}: {} edges vs oracle {}", got.len(), expected.len())
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} graph/threshold cases, 0 mismatches"))
}

fn oracle_dominance() -> Outcome {
    let mut g_rng = rng(2002);
    let mut checked = 0;
    for k in 1..=3usize {
        for graph in 0..200 {
            let n = g_rng.gen_range(k + 2..=12);
            let p = g_rng.gen_range(0.35..0.9);
            let r = gnp_min_degree(&mut g_rng, n, p, k);
            let exact = exact_min_k_dominating(&r, k, n).map_err(|e| e.to_string())?;
            let brute = brute_force_gamma_k(&r, k);
            ensure(exact.len() == brute, || {
                format!("k={k} graph {graph}: exact {} vs enumeration {brute}", exact.len())
            })?;
            ensure(naive_is_k_dominating(&r, &exact.members, k), || {
                format!("k={k} graph {graph}: exact set is not {k}-dominating")
            })?;
            let seed = g_rng.gen();
            let sets = [
                ("randomized/min-degree", randomized_k_dominating(&r, k, DegreeMode::MinDegree, seed)),
                ("randomized/avg-degree", randomized_k_dominating(&r, k, DegreeMode::AvgDegree, seed)),
                ("greedy", greedy_k_dominating(&r, k, &[])),
                (
                    "greedy-extension",
                    greedy_extension_k_dominating(&r, k, DegreeMode::MinDegree, seed, OutlierPolicy::Error),
                ),
            ];
            for (name, set) in sets {
                let set = set.map_err(|e| format!("k={k} graph {graph} {name}: {e}"))?;
                ensure(naive_is_k_dominating(&r, &set.members, k), || {
                    format!("k={k} graph {graph}: {name} set is not {k}-dominating")
                })?;
                ensure(set.len() >= exact.len(), || {
                    format!("k={k} graph {graph}: {name} size {} below optimum {}", set.len(), exact.len())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("600 graphs, {checked} heuristic sets valid and no smaller than the optimum"))
}

fn expectation_bound() -> Outcome {
    let mut g_rng = rng(3003);
    let mut worst_ratio: f64 = 0.0;
    let mut flagged = Vec::new();
    for graph in 0..10 {
        let p = g_rng.gen_range(0.03..0.1);
        let r = gnp_min_degree(&mut g_rng, 200, p, 2);
        let delta = r.degree_stats().min;
        for k in 1..=2usize {
            let bound = bound_theorem1(200, delta, k).map_err(|e| e.to_string())?;
            let mut total = 0usize;
            for seed in 0..100 {
                let set = randomized_k_dominating(&r, k, DegreeMode::MinDegree, seed).map_err(|e| e.to_string())?;
                ensure(naive_is_k_dominating(&r, &set.members, k), || {
                    format!("graph {graph} k={k} seed {seed}: invalid set")
                })?;
                total += set.len();
            }
            let mean = total as f64 / 100.0;
            ensure(mean <= bound, || {
                format!("graph {graph} k={k} delta={delta}: mean {mean:.2} exceeds bound {bound:.2}")
            })?;
            let ratio = mean / bound;
            worst_ratio = worst_ratio.max(ratio);
            if ratio >= 0.99 {
                flagged.push(format!("graph {graph} k={k}"));
            }
        }
    }
    let flags = if flagged.is_empty() {
        "none within 1% of the bound".to_string()
    } else {
        format!("within 1% of the bound: {}", flagged.join(", "))
    };
    Ok(format!("20 graph/k cases, max mean/bound {worst_ratio:.3}; {flags}"))
}

fn road_instance(g_rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> ReachabilityGraph {
    let g = random_road(g_rng, n, n, 30);
    let t = g_rng.gen_range(20.0..90.0);
    build_reachability_graph(&g, t).unwrap()
}

fn minimality() -> Outcome {
    let mut g_rng = rng(4004);
    let mut sets_checked = 0;
    for instance in 0..100 {
        let n = g_rng.gen_range(5..=100);
        let k = g_rng.gen_range(1..=3usize);
        let seed: u64 = g_rng.gen();
        let (r, policy) = if instance % 2 == 0 {
            let p = g_rng.gen_range(0.05f64..0.5).max(4.0 / n as f64);
            (gnp_min_degree(&mut g_rng, n, p.min(1.0), k), OutlierPolicy::Error)
        } else {
            (road_instance(&mut g_rng, n), OutlierPolicy::ForceInclude)
        };
        let opts = |phase_b| RandomizedOptions { phase_b, outliers: policy };
        let mut sets: Vec<(&str, DominatingSet)> = Vec::new();
        let mut push = |name, set: chargeplace::Result<DominatingSet>| -> Result<(), String> {
            sets.push((name, set.map_err(|e| format!("instance {instance} {name}: {e}"))?));
            Ok(())
        };
        for mode in [DegreeMode::MinDegree, DegreeMode::AvgDegree] {
            push("randomized/extension", randomized_k_dominating_with(&r, k, mode, seed, &opts(PhaseB::Extension)))?;
            push("randomized/sweep", randomized_k_dominating_with(&r, k, mode, seed, &opts(PhaseB::Sweep)))?;
            push("greedy-extension", greedy_extension_k_dominating(&r, k, mode, seed, policy))?;
        }
        push("greedy", chargeplace::domination::greedy_k_dominating_with(&r, k, &[], policy))?;
        if policy == OutlierPolicy::Error {
            push("best-of-runs", best_of_runs(&r, k, DegreeMode::AvgDegree, 5, seed))?;
            let everything = DominatingSet::new(r.vertex_ids().to_vec(), k, Provenance::external(), false, None);
            push("reduced", reduce_to_minimal(&r, &everything))?;
        }
        for (name, set) in &sets {
            ensure(set.minimal, || format!("instance {instance}: {name} not flagged minimal"))?;
            ensure(naive_is_k_dominating(&r, &set.members, k), || {
                format!("instance {instance}: {name} set is not {k}-dominating")
            })?;
            ensure(is_minimal_by_removal(&r, &set.members, k), || {
                format!("instance {instance} (n={n}, k={k}): {name} set has a removable member")
            })?;
            sets_checked += 1;
        }
    }
    Ok(format!("100 instances, {sets_checked} sets, 0 removable members"))
}

fn bound_formulas() -> Outcome {
    let t1 = bound_theorem1(10, 3, 1).map_err(|e| e.to_string())?;
    ensure((t1 - 5.2752).abs() <= 1e-3, || format!("bound(10, 3, 1) = {t1}"))?;
    let p = compute_probability_p(5.0, 2).map_err(|e| e.to_string())?;
    ensure((p - 0.55279).abs() <= 1e-4, || format!("p(5, 2) = {p}"))?;

    fn binomial(n: u64, r: u64) -> u128 {
        (1..=r as u128).fold(1u128, |acc, i| acc * (n as u128 - r as u128 + i) / i)
    }
    let mut worst: f64 = 0.0;
    for delta in 1..=30u64 {
        for k in 1..=delta as usize {
            let dp = (delta - k as u64 + 1) as f64;
            let b = binomial(delta, k as u64 - 1) as f64;
            let direct_p = 1.0 - 1.0 / (b * (1.0 + dp)).powf(1.0 / dp);
            let direct_bound = (1.0 - dp / (b.powf(1.0 / dp) * (1.0 + dp).powf(1.0 + 1.0 / dp))) * 1000.0;
            let p = compute_probability_p(delta as f64, k).map_err(|e| e.to_string())?;
            let bound = bound_theorem1(1000, delta as usize, k).map_err(|e| e.to_string())?;
            let rel_p = ((p - direct_p) / direct_p).abs();
            let rel_b = ((bound - direct_bound) / direct_bound).abs();
            worst = worst.max(rel_p).max(rel_b);
            ensure(rel_p <= 1e-12 && rel_b <= 1e-12, || {
                format!("delta={delta} k={k}: relative gaps p {rel_p:e}, bound {rel_b:e}")
            })?;
        }
    }
    Ok(format!("bound(10,3,1) = {t1:.6}, p(5,2) = {p:.6}, max log/direct gap {worst:.1e} over delta <= 30"))
}

fn detour_properties() -> Outcome {
    let mut g_rng = rng(6006);
    let (mut feasible, mut nested, mut constructed) = (0usize, 0usize, 0usize);
    for graph in 0..50 {
        let n = g_rng.gen_range(15..=80);
        let g = random_road(&mut g_rng, n, n / 2, 40);
        let t = g_rng.gen_range(10.0..120.0);
        let mut ids = g.vertex_ids().to_vec();
        let pair_seed: u64 = g_rng.gen();

        ids.shuffle(&mut g_rng);
        let report = detour_experiment(&g, &ids[..1 + n / 6], t, 100, pair_seed).map_err(|e| e.to_string())?;
        for rec in report.records.iter().filter(|r| r.is_feasible()) {
            ensure(rec.detour_m.unwrap() >= 0.0, || format!("graph {graph}: negative detour {rec:?}"))?;
            feasible += 1;
        }

        for pair in 0..20 {
            ids.shuffle(&mut g_rng);
            let small_len = g_rng.gen_range(1..n);
            let large_len = g_rng.gen_range(small_len..=n);
            let small = detour_experiment(&g, &ids[..small_len], t, 100, pair_seed).map_err(|e| e.to_string())?;
            let large = detour_experiment(&g, &ids[..large_len], t, 100, pair_seed).map_err(|e| e.to_string())?;
            check_superset(&small, &large).map_err(|e| format!("graph {graph} nested pair {pair}: {e}"))?;
            nested += 1;
        }

        for _ in 0..5 {
            let s = ids[g_rng.gen_range(0..n)];
            let dest = ids[g_rng.gen_range(0..n)];
            let path = g.shortest_path(s, dest).map_err(|e| e.to_string())?.path;
            let c = path[g_rng.gen_range(0..path.len())];
            let d_sc = g.shortest_path(s, c).map_err(|e| e.to_string())?.distance.unwrap();
            let mut stations = vec![c];
            stations.extend(ids.iter().take(g_rng.gen_range(0..n / 3)).copied());
            let rec = min_detour(&g, s, dest, &stations, t.max(d_sc)).map_err(|e| e.to_string())?;
            ensure(rec.detour_m == Some(0.0), || {
                format!("graph {graph}: station {c} on a shortest path {s}->{dest} gave {rec:?}")
            })?;
            constructed += 1;
        }
    }
    Ok(format!(
        "{feasible} feasible detours >= 0, {nested} nested set pairs monotone, {constructed} on-path cases zero"
    ))
}

fn check_superset(small: &DetourReport, large: &DetourReport) -> Result<(), String> {
    for (a, b) in small.records.iter().zip(&large.records) {
        ensure((a.source, a.dest) == (b.source, b.dest), || "pair order differs".to_string())?;
        ensure(b.candidates >= a.candidates, || format!("fewer candidates in superset: {a:?} vs {b:?}"))?;
        if let Some(da) = a.detour_m {
            ensure(b.detour_m.is_some_and(|db| db <= da), || format!("superset detour larger: {a:?} vs {b:?}"))?;
        }
    }
    Ok(())
}

fn grid_trend() -> Outcome {
    let g = grid(60, 60, 250.0);
    let t = 3000.0;
    let r = build_reachability_graph(&g, t).map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    let mut means = Vec::new();
    for k in [1usize, 2, 4] {
        let set = best_of_runs(&r, k, DegreeMode::AvgDegree, 10, 0).map_err(|e| e.to_string())?;
        let stats = station_reachability_stats(&g, &set.members, &[t]).map_err(|e| e.to_string())?;
        let min = stats.by_distance[0].min;
        ensure(min >= k, || format!("k={k}: min stations within t is {min}"))?;
        let report = detour_experiment(&g, &set.members, t, 200, 7).map_err(|e| e.to_string())?;
        let mean = report.mean_m.ok_or_else(|| format!("k={k}: no feasible detours"))?;
        summary.push(format!("k={k}: |X|={} min={min} detour={mean:.0}m", set.len()));
        means.push(mean);
    }
    ensure(means.windows(2).all(|w| w[1] <= w[0]), || format!("mean detour increases with k: {}", summary.join(", ")))?;
    Ok(summary.join(", "))
}

fn pipeline_json(g: &RoadGraph) -> Vec<u8> {
    let r = build_reachability_graph(g, 120.0).unwrap();
    let mut cache = Vec::new();
    write_cache(&r, &mut cache).unwrap();
    let set = best_of_runs(&r, 2, DegreeMode::AvgDegree, 16, 42).unwrap();
    let greedy = greedy_k_dominating(&r, 2, &[]).unwrap();
    let bounds = BoundReport::compute(&r, 2, Some(0.3)).unwrap();
    let stats = station_reachability_stats(g, &set.members, &[60.0, 120.0, 240.0]).unwrap();
    let detour = detour_experiment(g, &set.members, 120.0, 300, 9).unwrap();
    let mut out = serde_json::to_vec(&(set, greedy, bounds, stats, detour)).unwrap();
    out.extend(cache);
    out
}

fn determinism() -> Outcome {
    let g = random_road(&mut rng(8008), 400, 500, 40);
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get()).max(4);
    let mut outputs = Vec::new();
    for workers in [1, threads, 1, threads] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| e.to_string())?;
        outputs.push(pool.install(|| pipeline_json(&g)));
    }
    ensure(outputs.windows(2).all(|w| w[0] == w[1]), || "artifacts differ between runs".to_string())?;
    Ok(format!("4 runs (1 and {threads} threads), {} identical bytes each", outputs[0].len()))
}

fn build_time() -> Outcome {
    let g = grid(60, 60, 250.0);
    let start = Instant::now();
    let r = build_reachability_graph(&g, 3000.0).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let stats = r.degree_stats();
    ensure(elapsed < secs(30), || format!("build took {:.1}s", elapsed.as_secs_f64()))?;
    Ok(format!(
        "n={} edges={} degree min/mean/max {}/{:.0}/{} built in {:.2}s",
        r.num_vertices(),
        r.num_edges(),
        stats.min,
        stats.mean,
        stats.max,
        elapsed.as_secs_f64()
    ))
}
