use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Map, Value};
use shortwide::baseline::{all_distances, AllDistances};
use shortwide::bottleneck::{complexity_probe, one_to_all_bottleneck, reconstruct_path, ProbeSize};
use shortwide::ensembles::{run_ensemble, EnsembleSpec, MultiplicityModel, RunOptions};
use shortwide::neuro::{
    consensus_time_bound, gap_junction_capacity, parallel_capacity, BoundInput, ChannelModel,
};
use shortwide::oracle::{oracle_all_pairs, oracle_distances, Optimum};
use shortwide::stats::{fit_gamma, DistanceDistribution, GammaFitOptions, LocationMode};
use shortwide::{
    fixtures, parse_edge_list, AllPairsStrategy, DistanceKind, NodeId, WeightMode, WeightedGraph,
};

use crate::cli::{
    BenchArgs, Command, DistancesArgs, EnsembleArgs, FitArgs, FormatArg, ModelArg, NeuroArgs,
    OracleArgs,
};

/// A command's JSON summary plus the files it writes, as `(relative path, contents)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub summary: Value,
    pub files: Vec<(String, String)>,
}

impl Output {
    fn new(summary: Value) -> Self {
        Self {
            summary,
            files: Vec::new(),
        }
    }

    pub fn summary_text(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("JSON values serialize") + "\n"
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, contents) in &self.files {
            let path = dir.join(name);
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
            }
            fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        }
        let path = dir.join("summary.json");
        fs::write(&path, self.summary_text()).with_context(|| format!("writing {}", path.display()))
    }
}

/// Runs one analysis command. `self-test` is handled by the caller.
pub fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Distances(a) => distances(a),
        Command::Survival(a) => survival(a),
        Command::Fit(a) => fit(a),
        Command::Ensemble(a) => ensemble(a),
        Command::Neuro(a) => neuro(a),
        Command::Oracle(a) => oracle(a),
        Command::Bench(a) => bench(a),
        Command::SelfTest(_) => bail!("self-test is not an analysis command"),
    }
}

pub fn load_graph(input: &str, mode: WeightMode) -> Result<WeightedGraph> {
    if let Some(name) = input.strip_prefix("fixture:") {
        let names: Vec<&str> = fixtures::GRAPHS.iter().map(|(n, _)| *n).collect();
        return fixtures::graph(name)
            .ok_or_else(|| anyhow!("unknown fixture `{name}`; available: {}", names.join(", ")));
    }
    let text = fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
    parse_edge_list(&text, mode).with_context(|| format!("parsing {input}"))
}

fn load_values(input: &str) -> Result<Vec<f64>> {
    if input == "fixture:gamma" {
        return Ok(fixtures::gamma_sample());
    }
    let text = fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line
            .parse()
            .with_context(|| format!("{input}:{}: not a number: {line:?}", i + 1))?;
        out.push(v);
    }
    Ok(out)
}

fn check_threshold(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        bail!("threshold must lie in (0, 1), got {t}")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphInfo {
    pub nodes: usize,
    pub edges: usize,
    pub components: usize,
    pub giant_nodes: usize,
    pub giant_edges: usize,
    pub distinct_weights: usize,
    /// Pairs in different components of the full graph.
    pub unreachable_pairs: usize,
    pub analyzed: &'static str,
}

pub struct Analysis {
    pub info: GraphInfo,
    pub graph: WeightedGraph,
    pub all: AllDistances,
}

pub fn analyze(g: &WeightedGraph, whole_graph: bool, strategy: AllPairsStrategy) -> Result<Analysis> {
    let parts = g.components();
    let sizes = parts.sizes();
    let giant = g.giant_component()?;
    let pairs = |k: usize| k * k.saturating_sub(1) / 2;
    let reachable: usize = sizes.iter().map(|&s| pairs(s)).sum();
    let info = GraphInfo {
        nodes: g.node_count(),
        edges: g.edge_count(),
        components: parts.count(),
        giant_nodes: giant.node_count(),
        giant_edges: giant.edge_count(),
        distinct_weights: g.distinct_weight_count(),
        unreachable_pairs: pairs(g.node_count()) - reachable,
        analyzed: if whole_graph { "whole_graph" } else { "giant_component" },
    };
    let graph = if whole_graph { g.clone() } else { giant };
    if graph.node_count() < 2 {
        bail!("the analyzed graph has {} node(s); no node pairs to analyze", graph.node_count());
    }
    let all = all_distances(&graph, strategy);
    Ok(Analysis { info, graph, all })
}

fn kind_map<T: Serialize>(items: impl IntoIterator<Item = (DistanceKind, T)>) -> Value {
    let mut m = Map::new();
    for (k, v) in items {
        m.insert(k.as_str().to_string(), serde_json::to_value(v).expect("serializable"));
    }
    Value::Object(m)
}

fn strategy_name(s: AllPairsStrategy) -> &'static str {
    match s {
        AllPairsStrategy::ParallelSssp => "parallel_sssp",
        AllPairsStrategy::LabelsetFw => "labelset_fw",
    }
}

fn distances(a: &DistancesArgs) -> Result<Output> {
    check_threshold(a.threshold)?;
    let g = load_graph(&a.graph.input, a.graph.mode.into())?;
    let strategy = a.graph.strategy.into();
    let an = analyze(&g, a.graph.whole_graph, strategy)
        .with_context(|| format!("analyzing {}", a.graph.input))?;
    let mut per_kind = Vec::new();
    for kind in DistanceKind::ALL {
        let d = DistanceDistribution::from_matrix(an.all.matrix(kind));
        per_kind.push((kind, d.summary(a.threshold)?));
    }
    let mut out = Output::new(json!({
        "command": "distances",
        "input": a.graph.input,
        "mode": WeightMode::from(a.graph.mode),
        "strategy": strategy_name(strategy),
        "threshold": a.threshold,
        "graph": an.info,
        "distances": kind_map(per_kind),
    }));
    match a.format {
        FormatArg::Csv => {
            for kind in DistanceKind::ALL {
                out.files
                    .push((format!("{}.csv", kind.as_str()), an.all.matrix(kind).to_csv(&an.graph)));
            }
        }
        FormatArg::Json => {
            let mut m = Map::new();
            m.insert("nodes".into(), json!(an.graph.names()));
            for kind in DistanceKind::ALL {
                let mat = an.all.matrix(kind);
                let rows: Vec<_> = (0..mat.size()).map(|i| mat.row(i).to_vec()).collect();
                m.insert(kind.as_str().into(), serde_json::to_value(rows)?);
            }
            out.files.push(("matrices.json".into(), serde_json::to_string(&m)? + "\n"));
        }
    }
    Ok(out)
}

/// Largest violation of `S_low(x) <= S_high(x)` over the support of both curves.
fn survival_excess(low: &DistanceDistribution, high: &DistanceDistribution) -> f64 {
    let (Ok(sl), Ok(sh)) = (low.survival(), high.survival()) else {
        return 0.0;
    };
    sl.points
        .iter()
        .chain(&sh.points)
        .map(|&(x, _)| sl.at(x) - sh.at(x))
        .fold(0.0, f64::max)
}

fn survival(a: &DistancesArgs) -> Result<Output> {
    check_threshold(a.threshold)?;
    let g = load_graph(&a.graph.input, a.graph.mode.into())?;
    let strategy = a.graph.strategy.into();
    let an = analyze(&g, a.graph.whole_graph, strategy)
        .with_context(|| format!("analyzing {}", a.graph.input))?;
    let dist = |k| DistanceDistribution::from_matrix(an.all.matrix(k));
    let (geo, wei, bot) = (
        dist(DistanceKind::Geodesic),
        dist(DistanceKind::Weighted),
        dist(DistanceKind::Bottleneck),
    );
    // Pairwise d_W <= d_B, and d_B <= d_G when every weight is at most 1,
    // carry over to the survival curves pointwise.
    let weighted_excess = survival_excess(&wei, &bot);
    if weighted_excess > 0.0 {
        bail!("weighted survival exceeds bottleneck survival by {weighted_excess}");
    }
    let unit_bounded = an.graph.max_weight().is_some_and(|w| w <= 1.0);
    if unit_bounded {
        let e = survival_excess(&bot, &geo);
        if e > 0.0 {
            bail!("bottleneck survival exceeds geodesic survival by {e}");
        }
    }
    let mut out = Output::new(Value::Null);
    let mut curves = Vec::new();
    for kind in DistanceKind::ALL {
        let curve = dist(kind).survival()?;
        match a.format {
            FormatArg::Csv => out
                .files
                .push((format!("survival_{}.csv", kind.as_str()), curve.to_csv())),
            FormatArg::Json => {}
        }
        curves.push((kind, curve));
    }
    if a.format == FormatArg::Json {
        let m = kind_map(curves.iter().map(|(k, c)| (*k, &c.points)));
        out.files.push(("survival.json".into(), serde_json::to_string(&m)? + "\n"));
    }
    out.summary = json!({
        "command": "survival",
        "input": a.graph.input,
        "mode": WeightMode::from(a.graph.mode),
        "strategy": strategy_name(strategy),
        "graph": an.info,
        "points": kind_map(curves.iter().map(|(k, c)| (*k, c.points.len()))),
        "checks": {
            "weighted_within_bottleneck": true,
            "bottleneck_within_geodesic": if unit_bounded { json!(true) } else { Value::Null },
        },
    });
    Ok(out)
}

fn fit(a: &FitArgs) -> Result<Output> {
    let opts = GammaFitOptions {
        location: a.location.map_or(LocationMode::Grid, LocationMode::Fixed),
        bins: a.bins,
        ..Default::default()
    };
    let mut fits = Map::new();
    let summary = if let Some(values) = &a.values {
        let d = DistanceDistribution::from_values(load_values(values)?);
        let f = fit_gamma(&d, &opts).with_context(|| format!("fitting {values}"))?;
        fits.insert("sample".into(), serde_json::to_value(f)?);
        json!({ "command": "fit", "values": values, "fits": fits })
    } else {
        let input = a.input.as_deref().expect("clap requires input or values");
        let g = load_graph(input, a.mode.into())?;
        let an = analyze(&g, a.whole_graph, a.strategy.into())
            .with_context(|| format!("analyzing {input}"))?;
        let kinds: Vec<DistanceKind> = if a.kinds.is_empty() {
            DistanceKind::LENGTHS.to_vec()
        } else {
            a.kinds.iter().map(|&k| k.into()).collect()
        };
        for kind in kinds {
            let d = DistanceDistribution::from_matrix(an.all.matrix(kind));
            let f = fit_gamma(&d, &opts)
                .with_context(|| format!("fitting {} distances of {input}", kind.as_str()))?;
            fits.insert(kind.as_str().into(), serde_json::to_value(f)?);
        }
        json!({
            "command": "fit",
            "input": input,
            "mode": WeightMode::from(a.mode),
            "graph": an.info,
            "fits": fits,
        })
    };
    Ok(Output::new(summary))
}

fn ensemble(a: &EnsembleArgs) -> Result<Output> {
    check_threshold(a.threshold)?;
    let reference = a
        .reference
        .as_deref()
        .map(|r| load_graph(r, a.mode.into()))
        .transpose()?;
    let kind = match a.model {
        ModelArg::Er => shortwide::ensembles::EnsembleKind::ErdosRenyi {
            nodes: a.nodes,
            p: a.p,
        },
        ModelArg::DegreeMatched => shortwide::ensembles::EnsembleKind::DegreeMatched {
            reference: reference
                .clone()
                .ok_or_else(|| anyhow!("--model degree-matched needs --reference"))?,
        },
    };
    let multiplicity = match (&reference, a.multiplicity_from_reference) {
        (Some(r), true) => MultiplicityModel::from_graph(r),
        _ => MultiplicityModel::PowerLaw {
            exponent: a.exponent,
            max: a.max_multiplicity,
        },
    };
    let spec = EnsembleSpec {
        kind,
        multiplicity,
        seed: a.seed,
    };
    let strategy: AllPairsStrategy = a.strategy.into();
    let run = run_ensemble(
        &spec,
        a.samples,
        &RunOptions {
            threshold: a.threshold,
            strategy,
            analyze_limit: a.analyze,
        },
    )?;
    let mut out = Output::new(Value::Null);
    for kind in DistanceKind::ALL {
        if let Some(curve) = run.aggregate_survival(kind) {
            out.files
                .push((format!("aggregate_survival_{}.csv", kind.as_str()), curve.to_csv()));
        }
        for s in run.analyzed() {
            if let Ok(curve) = s.distribution(kind).survival() {
                out.files.push((
                    format!("samples/{:04}_{}.csv", s.index, kind.as_str()),
                    curve.to_csv(),
                ));
            }
        }
    }
    let mut summary = serde_json::to_value(run.summary())?;
    summary["command"] = json!("ensemble");
    summary["strategy"] = json!(strategy_name(strategy));
    if let Some(r) = &reference {
        let an = analyze(r, false, strategy)?;
        let mut verdict = Map::new();
        for kind in DistanceKind::ALL {
            let d = DistanceDistribution::from_matrix(an.all.matrix(kind));
            let reference_de = d.effective_diameter(a.threshold).ok();
            let median = run.median_effective_diameter(kind);
            verdict.insert(
                kind.as_str().into(),
                json!({
                    "reference_effective_diameter": reference_de,
                    "ensemble_median_effective_diameter": median,
                    "ensemble_below_reference": match (median, reference_de) {
                        (Some(m), Some(r)) => json!(m < r),
                        _ => Value::Null,
                    },
                }),
            );
        }
        summary["reference"] = json!({ "input": a.reference, "graph": an.info });
        summary["comparison"] = Value::Object(verdict);
    }
    out.summary = summary;
    Ok(out)
}

fn neuro(a: &NeuroArgs) -> Result<Output> {
    let bandwidth = match a.refractory_ms {
        Some(r) if r > 0.0 => 1000.0 / r,
        Some(r) => bail!("refractory period must be positive, got {r} ms"),
        None => a.bandwidth,
    };
    let model = ChannelModel {
        resistance: a.resistance,
        temperature: a.temperature,
        bandwidth,
        v0: a.v0,
        v1: a.v1,
        ..Default::default()
    };
    let cap = gap_junction_capacity(&model)?;
    let link = parallel_capacity(&cap, a.junctions)?;
    let bound = consensus_time_bound(&BoundInput {
        effective_diameter: a.diameter,
        message_bits: a.message_bits,
        capacity: link,
    })?;
    Ok(Output::new(json!({
        "command": "neuro",
        "input": {
            "model": model,
            "refractory_ms": a.refractory_ms,
            "effective_diameter": a.diameter,
            "diameter_kind": DistanceKind::from(a.diameter_kind).as_str(),
            "message_bits": a.message_bits,
            "junctions": a.junctions,
        },
        "noise_rms": cap.noise_rms,
        "snr": cap.snr,
        "bits_per_use": cap.bits_per_use,
        "bits_per_second": cap.bits_per_second,
        "seconds_per_bit": cap.seconds_per_bit,
        "link_bits_per_second": link,
        "bound_seconds": bound,
        "bound_ms": bound * 1000.0,
    })))
}

fn node_names(g: &WeightedGraph, path: &[NodeId]) -> Vec<String> {
    path.iter().map(|&u| g.name(u).to_string()).collect()
}

fn optimum_json(g: &WeightedGraph, o: &Optimum) -> Value {
    json!({
        "value": o.value,
        "paths": o.paths.iter().map(|p| node_names(g, p)).collect::<Vec<_>>(),
    })
}

fn oracle(a: &OracleArgs) -> Result<Output> {
    let g = load_graph(&a.input, a.mode.into())?;
    let lookup = |name: &str| {
        g.node_by_name(name)
            .ok_or_else(|| anyhow!("node `{name}` is not in {}", a.input))
    };
    if let (Some(s), Some(t)) = (&a.source, &a.target) {
        let (s, t) = (lookup(s)?, lookup(t)?);
        let r = oracle_distances(&g, s, t, a.max_nodes)?;
        let search = one_to_all_bottleneck(&g, s)?;
        let found = search.distance(t);
        let path = reconstruct_path(&search, t).ok().map(|p| node_names(&g, &p));
        let agree = found == r.bottleneck.value;
        let summary = json!({
            "command": "oracle",
            "input": a.input,
            "source": g.name(s),
            "target": g.name(t),
            "simple_paths": r.path_count,
            "geodesic": optimum_json(&g, &r.geodesic),
            "weighted": optimum_json(&g, &r.weighted),
            "bottleneck": optimum_json(&g, &r.bottleneck),
            "minimax_width": optimum_json(&g, &r.minimax_width),
            "search": { "bottleneck": found, "path": path },
            "agree": agree,
        });
        if !agree {
            bail!("search disagrees with enumeration: {summary}");
        }
        return Ok(Output::new(summary));
    }
    let truth = oracle_all_pairs(&g, a.max_nodes)?;
    let mut mismatches = Vec::new();
    for strategy in [AllPairsStrategy::ParallelSssp, AllPairsStrategy::LabelsetFw] {
        let got = all_distances(&g, strategy);
        for kind in DistanceKind::ALL {
            for i in g.nodes() {
                for j in g.nodes() {
                    let (x, y) = (got.matrix(kind).get(i.0, j.0), truth.matrix(kind).get(i.0, j.0));
                    if x != y {
                        mismatches.push(json!({
                            "strategy": strategy_name(strategy),
                            "kind": kind.as_str(),
                            "source": g.name(i),
                            "target": g.name(j),
                            "search": x,
                            "oracle": y,
                        }));
                    }
                }
            }
        }
    }
    let n = g.node_count();
    let summary = json!({
        "command": "oracle",
        "input": a.input,
        "nodes": n,
        "ordered_pairs": n * n,
        "strategies": ["parallel_sssp", "labelset_fw"],
        "mismatches": mismatches,
        "agree": mismatches.is_empty(),
    });
    if !mismatches.is_empty() {
        bail!("search disagrees with enumeration: {summary}");
    }
    Ok(Output::new(summary))
}

pub fn parse_sizes(s: &str) -> Result<Vec<ProbeSize>> {
    s.split(',')
        .map(|part| {
            let f: Vec<&str> = part.trim().split(':').collect();
            let num = |i: usize| -> Result<usize> {
                f.get(i)
                    .ok_or_else(|| anyhow!("size `{part}` must be nodes:edges:distinct_weights"))?
                    .parse()
                    .with_context(|| format!("size `{part}`"))
            };
            if f.len() != 3 {
                bail!("size `{part}` must be nodes:edges:distinct_weights");
            }
            let size = ProbeSize {
                nodes: num(0)?,
                edges: num(1)?,
                distinct_weights: num(2)?,
            };
            if size.nodes < 2 || size.distinct_weights < 1 {
                bail!("size `{part}` needs at least 2 nodes and 1 weight level");
            }
            Ok(size)
        })
        .collect()
}

fn bench(a: &BenchArgs) -> Result<Output> {
    let rows = complexity_probe(&parse_sizes(&a.sizes)?, a.seed);
    let mut out = Output::new(json!({ "command": "bench", "seed": a.seed, "rows": rows }));
    if a.format == FormatArg::Csv {
        let mut csv = String::from("nodes,edges,distinct_weights,algorithm,seconds,max_label_set\n");
        for r in &rows {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{}",
                r.nodes, r.edges, r.distinct_weights, r.algorithm, r.seconds, r.max_label_set
            );
        }
        out.files.push(("bench.csv".into(), csv));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_parse() {
        let s = parse_sizes("10:20:3, 5:4:1").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].nodes, s[0].edges, s[0].distinct_weights), (10, 20, 3));
        assert!(parse_sizes("10:20").is_err());
        assert!(parse_sizes("1:0:1").is_err());
        assert!(parse_sizes("a:b:c").is_err());
    }

    #[test]
    fn survival_excess_detects_crossing() {
        let low = DistanceDistribution::from_values([1.0, 2.0]);
        let high = DistanceDistribution::from_values([1.0, 3.0]);
        assert_eq!(survival_excess(&low, &high), 0.0);
        assert_eq!(survival_excess(&high, &low), 0.5);
    }

    #[test]
    fn unknown_fixture_lists_names() {
        let err = load_graph("fixture:nope", WeightMode::Weights).unwrap_err().to_string();
        assert!(err.contains("triangle"), "{err}");
    }
}
