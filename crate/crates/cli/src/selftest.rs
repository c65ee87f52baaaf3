use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use shortwide::baseline::all_distances;
use shortwide::bottleneck::reconstruct_path;
use shortwide::ensembles::{run_ensemble, sample, EnsembleSpec, MultiplicityModel, RunOptions};
use shortwide::fixtures::{
    all_graphs, gamma_sample, graph, random_suite, substructure_nodes, WeightRegime,
};
use shortwide::labels::bottleneck_product;
use shortwide::neuro::{
    consensus_time_bound, gap_junction_capacity, thermal_noise_rms, verify_hub_and_spoke,
    BoundInput, ChannelModel,
};
use shortwide::oracle::{oracle_all_pairs, DEFAULT_MAX_NODES};
use shortwide::stats::{fit_gamma, DistanceDistribution, GammaFitOptions};
use shortwide::{
    one_to_all_bottleneck, parse_edge_list, AllPairsStrategy, Distance, DistanceKind, WeightMode,
    WeightedGraph,
};

use crate::cli::{Cli, Command};
use crate::commands::{execute, Output};

/// Seed of the random graph suite used by the oracle and property checks.
pub const SUITE_SEED: u64 = 2024;
/// Graphs per weight regime in the random suite.
pub const SUITE_PER_REGIME: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub outcome: Outcome,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn line(&self, timings: bool) -> String {
        let mut s = format!("criterion {}: {} {}", self.id, self.outcome, self.title);
        if !self.detail.is_empty() {
            s += &format!(" ({})", self.detail);
        }
        if timings {
            s += &format!(" [{:.2}s]", self.seconds);
        }
        s
    }
}

/// What a check returns: `Ok(detail)` passes, `Err` fails, `Skipped` skips.
enum Check {
    Done(Result<String>),
    Skipped(String),
}

fn run(id: u32, title: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Check) -> CriterionReport {
    let start = Instant::now();
    let res = f();
    let elapsed = start.elapsed();
    let (outcome, detail) = match res {
        Check::Skipped(why) => (Outcome::Skip, why),
        Check::Done(Err(e)) => (Outcome::Fail, format!("{e:#}")),
        Check::Done(Ok(d)) => match limit {
            Some(l) if elapsed > l => (
                Outcome::Fail,
                format!("{d}; took {:.1}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
            ),
            _ => (Outcome::Pass, d),
        },
    };
    CriterionReport {
        id,
        title,
        outcome,
        detail,
        seconds: elapsed.as_secs_f64(),
    }
}

fn done(r: Result<String>) -> Check {
    Check::Done(r)
}

pub const TITLES: [&str; 12] = [
    "oracle equivalence on random graphs",
    "weighted <= bottleneck <= geodesic orderings",
    "optimal path with a non-optimal prefix",
    "label frontier bounded by distinct weights",
    "gap-junction channel reference numbers",
    "consensus time bounds",
    "hub-and-spoke trees minimize diameter",
    "quantiles and effective diameter",
    "gamma fit recovery",
    "random ensemble sanity",
    "connectome and network datasets",
    "deterministic command output",
];

/// Runs criteria 1-12 in order. Criterion 11 is skipped without `data`.
pub fn run_all(data: Option<&Path>) -> Vec<CriterionReport> {
    (1..=12).map(|id| run_one(id, data)).collect()
}

pub fn run_one(id: u32, data: Option<&Path>) -> CriterionReport {
    let title = TITLES[(id - 1) as usize];
    let secs = |s| Some(Duration::from_secs(s));
    match id {
        1 => run(id, title, secs(60), || done(oracle_equivalence())),
        2 => run(id, title, None, || done(orderings())),
        3 => run(id, title, None, || done(substructure())),
        4 => run(id, title, None, || done(frontier_bound())),
        5 => run(id, title, secs(1), || done(channel_reference())),
        6 => run(id, title, None, || done(time_bounds())),
        7 => run(id, title, secs(60), || done(hub_and_spoke())),
        8 => run(id, title, None, || done(quantiles())),
        9 => run(id, title, secs(5), || done(gamma_recovery())),
        10 => run(id, title, secs(300), || done(ensemble_sanity())),
        11 => run(id, title, None, || match data {
            None => Check::Skipped("no data directory given".into()),
            Some(dir) => datasets(dir),
        }),
        12 => run(id, title, None, || done(determinism())),
        _ => panic!("no criterion {id}"),
    }
}

fn suite() -> Vec<(WeightRegime, WeightedGraph)> {
    random_suite(SUITE_PER_REGIME, SUITE_SEED)
}

fn oracle_equivalence() -> Result<String> {
    let graphs = suite();
    let mut pairs = 0;
    for (g_idx, (_, g)) in graphs.iter().enumerate() {
        let truth = oracle_all_pairs(g, DEFAULT_MAX_NODES)?;
        for strategy in [AllPairsStrategy::ParallelSssp, AllPairsStrategy::LabelsetFw] {
            let got = all_distances(g, strategy);
            for kind in DistanceKind::ALL {
                for i in 0..g.node_count() {
                    for j in 0..g.node_count() {
                        let (a, b) = (got.matrix(kind).get(i, j), truth.matrix(kind).get(i, j));
                        if a != b {
                            bail!(
                                "graph {g_idx}, {strategy:?}, {} ({i},{j}): {a:?} vs oracle {b:?}",
                                kind.as_str()
                            );
                        }
                    }
                }
            }
        }
        pairs += g.node_count() * g.node_count();
    }
    Ok(format!("{} graphs, {pairs} ordered pairs, 2 strategies", graphs.len()))
}

fn property_graphs() -> Vec<WeightedGraph> {
    let mut gs: Vec<_> = all_graphs().into_iter().map(|(_, g)| g).collect();
    gs.extend(suite().into_iter().map(|(_, g)| g));
    gs
}

fn orderings() -> Result<String> {
    let graphs = property_graphs();
    let (mut checked_w, mut checked_g) = (0, 0);
    for (idx, g) in graphs.iter().enumerate() {
        let all = all_distances(g, AllPairsStrategy::default());
        let unit_bounded = g.max_weight().is_some_and(|w| w <= 1.0);
        for (i, j, db) in all.bottleneck.upper_pairs() {
            let dw = all.weighted.get(i, j);
            if dw.total_cmp(&db).is_gt() {
                bail!("graph {idx} ({i},{j}): d_W {dw:?} > d_B {db:?}");
            }
            checked_w += 1;
            if unit_bounded {
                let dg = all.geodesic.get(i, j);
                if db.total_cmp(&dg).is_gt() {
                    bail!("graph {idx} ({i},{j}): d_B {db:?} > d_G {dg:?}");
                }
                checked_g += 1;
            }
        }
    }
    Ok(format!(
        "{} graphs, {checked_w} pairs for d_W <= d_B, {checked_g} for d_B <= d_G",
        graphs.len()
    ))
}

fn substructure() -> Result<String> {
    let g = graph("substructure").ok_or_else(|| anyhow!("fixture missing"))?;
    let [s, x, _, t] = substructure_nodes(&g);
    let r = one_to_all_bottleneck(&g, s)?;
    if r.distance(x) != Distance::Finite(2.0) {
        bail!("d_B(s,x) = {:?}, expected 2", r.distance(x));
    }
    let path = reconstruct_path(&r, t)?;
    let pos = path
        .iter()
        .position(|&u| u == x)
        .ok_or_else(|| anyhow!("optimal s->t path {path:?} avoids x"))?;
    let prefix = &path[..=pos];
    let width = prefix
        .windows(2)
        .map(|e| g.weight(e[0], e[1]).expect("path edges exist"))
        .fold(0.0, f64::max);
    let cost = bottleneck_product(prefix.len() as u32 - 1, width);
    if cost != 3.0 {
        bail!("s->x prefix costs {cost}, expected 3");
    }
    Ok(format!("d_B(s,x) = 2, d_B(s,t) = {}, prefix cost 3", r.distance(t).as_f64()))
}

fn frontier_bound() -> Result<String> {
    let mut runs = 0;
    let mut peak = 0;
    for (idx, (_, g)) in suite().iter().enumerate() {
        let w = g.distinct_weight_count();
        for s in g.nodes() {
            let r = one_to_all_bottleneck(g, s)?;
            let m = r.max_label_set_len().max(r.peak_frontier);
            if m > w {
                bail!("graph {idx}, source {s}: frontier {m} > W = {w}");
            }
            peak = peak.max(m);
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, largest frontier {peak}"))
}

fn within(value: f64, target: f64, rel: f64) -> bool {
    (value / target - 1.0).abs() <= rel
}

fn channel_reference() -> Result<String> {
    let model = ChannelModel::default();
    let noise = thermal_noise_rms(&model)?;
    let r = gap_junction_capacity(&model)?;
    if !within(noise, 3.74e-4, 0.005) {
        bail!("noise {noise:e} V not within 0.5% of 3.74e-4");
    }
    if !within(r.snr, 2.2e3, 0.01) {
        bail!("SNR {} not within 1% of 2.2e3", r.snr);
    }
    if r.bits_per_use < 0.999 {
        bail!("bits per use {} < 0.999", r.bits_per_use);
    }
    if !within(r.bits_per_second, 1700.0, 0.002) {
        bail!("capacity {} bits/s not within 0.2% of 1700", r.bits_per_second);
    }
    Ok(format!(
        "noise {noise:.4e} V, SNR {:.1}, {:.6} bits/use, {:.2} bits/s",
        r.snr, r.bits_per_use, r.bits_per_second
    ))
}

fn time_bounds() -> Result<String> {
    let mut parts = Vec::new();
    for (d, m, c, want) in [
        (7.0, 10.0, 1700.0, 0.041),
        (2.0, 10.0, 1700.0, 0.012),
        (7.0, 10.0, 1000.0, 0.070),
    ] {
        let t = consensus_time_bound(&BoundInput {
            effective_diameter: d,
            message_bits: m,
            capacity: c,
        })?;
        if !within(t, want, 0.02) {
            bail!("bound({d}, {m}, {c}) = {t} s, expected {want} within 2%");
        }
        parts.push(format!("{:.1} ms", t * 1000.0));
    }
    Ok(parts.join(", "))
}

fn hub_and_spoke() -> Result<String> {
    let mut parts = Vec::new();
    for n in 3..=8 {
        let r = verify_hub_and_spoke(n)?;
        if r.min_diameter != 2 || !r.confirms() {
            bail!("n = {n}: {r:?}");
        }
        parts.push(format!("n={n}: {} trees", r.trees));
    }
    Ok(parts.join(", "))
}

fn quantiles() -> Result<String> {
    let d = DistanceDistribution::from_values((1..=20).map(f64::from));
    let cases: [(&DistanceDistribution, f64, f64); 3] = [(&d, 0.95, 19.0), (&d, 0.951, 20.0), (&d, 0.05, 1.0)];
    for (dist, p, want) in cases {
        let q = dist.quantile(p)?;
        if q != want {
            bail!("Q({p}) = {q}, expected {want}");
        }
    }
    let small = DistanceDistribution::from_values([1.0, 2.0, 2.0, 5.0]);
    for (p, want) in [(0.25, 1.0), (0.5, 2.0), (0.75, 2.0), (0.76, 5.0)] {
        let q = small.quantile(p)?;
        if q != want {
            bail!("Q({p}) of [1,2,2,5] = {q}, expected {want}");
        }
    }
    let constant = DistanceDistribution::from_values([3.0; 3]);
    if constant.quantile(0.5)? != 3.0 {
        bail!("constant sample quantile");
    }
    if d.quantile(0.0).is_ok() || d.quantile(1.0).is_ok() {
        bail!("quantile accepted p outside (0, 1)");
    }
    let mut checked = 0;
    for (name, g) in all_graphs() {
        let all = all_distances(&g, AllPairsStrategy::default());
        for kind in DistanceKind::ALL {
            let dist = DistanceDistribution::from_matrix(all.matrix(kind));
            let de = dist.effective_diameter(0.95)?;
            let dm = dist.diameter()?.value;
            if de > dm {
                bail!("{name} {}: D_e {de} > D {dm}", kind.as_str());
            }
            checked += 1;
        }
    }
    Ok(format!("Q(0.95) of 1..20 = 19, D_e <= D on {checked} fixture distributions"))
}

fn gamma_recovery() -> Result<String> {
    let d = DistanceDistribution::from_values(gamma_sample());
    let f = fit_gamma(&d, &GammaFitOptions::default())?;
    if !within(f.shape, 2.0, 0.05) || !within(f.scale, 3.0, 0.05) {
        bail!("shape {}, scale {} not within 5% of (2, 3)", f.shape, f.scale);
    }
    Ok(format!(
        "n = {}, shape {:.4}, location {}, scale {:.4}",
        f.samples, f.shape, f.location, f.scale
    ))
}

fn ensemble_sanity() -> Result<String> {
    let spec = EnsembleSpec::erdos_renyi(279, 0.0133, 0);
    let run = run_ensemble(
        &spec,
        100,
        &RunOptions {
            analyze_limit: Some(20),
            ..Default::default()
        },
    )?;
    let edges: Vec<f64> = run.samples.iter().map(|s| s.edges as f64).collect();
    let n = edges.len() as f64;
    let mean = edges.iter().sum::<f64>() / n;
    let sd = (edges.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let se = sd / n.sqrt();
    if (mean - 514.0).abs() > 3.0 * se {
        bail!("mean edge count {mean:.2} is more than 3 SE ({se:.2}) from 514");
    }
    let median = run
        .median_effective_diameter(DistanceKind::Bottleneck)
        .ok_or_else(|| anyhow!("no analyzed samples"))?;

    let reference = graph("synthetic50").ok_or_else(|| anyhow!("fixture missing"))?;
    let want = reference.degree_sequence();
    let dm = EnsembleSpec::degree_matched(reference, 0);
    let mut swaps = 0;
    for idx in 0..20 {
        let s = sample(&dm, idx)?;
        if s.graph.degree_sequence() != want {
            bail!("degree-matched sample {idx} changed the degree sequence");
        }
        swaps += s.rewire.map_or(0, |r| r.performed);
    }
    Ok(format!(
        "mean edges {mean:.2} (SE {se:.2}), median bottleneck D_e {median}, 20 degree-matched samples ({swaps} swaps) keep degrees"
    ))
}

const ICON_TABLE: [(&str, f64, f64); 8] = [
    ("us_airports", 0.27, 0.64),
    ("chennai_bus", 0.54, 0.22),
    ("mumbai_bus", 0.41, 0.23),
    ("author_collaborations", 0.83, 0.32),
    ("free_ranging_dogs", 0.67, 0.40),
    ("game_of_thrones", 0.55, 0.18),
    ("resting_fmri", 0.61, 0.19),
    ("brain_coactivation", 368.63, 0.02),
];

/// Tolerance around "roughly 6" for the random-graph ensemble median.
pub const ER_MEDIAN_TOLERANCE: f64 = 1.0;

fn read_graph(path: &Path, mode: WeightMode) -> Result<WeightedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text, mode).with_context(|| format!("parsing {}", path.display()))
}

fn datasets(dir: &Path) -> Check {
    let elegans = dir.join("celegans.edges");
    let icon = dir.join("icon");
    if !elegans.is_file() && !icon.is_dir() {
        return Check::Skipped(format!(
            "neither {} nor {} exists",
            elegans.display(),
            icon.display()
        ));
    }
    let mut parts = Vec::new();
    let mut failures = Vec::new();
    if elegans.is_file() {
        match connectome(&elegans) {
            Ok(d) => parts.push(d),
            Err(e) => failures.push(format!("{e:#}")),
        }
    } else {
        parts.push("celegans.edges absent".into());
    }
    if icon.is_dir() {
        for (name, shape, scale) in ICON_TABLE {
            let path = icon.join(format!("{name}.edges"));
            if !path.is_file() {
                parts.push(format!("{name} absent"));
                continue;
            }
            match icon_fit(&path, shape, scale) {
                Ok(d) => parts.push(format!("{name}: {d}")),
                Err(e) => failures.push(format!("{name}: {e:#}")),
            }
        }
    }
    if failures.is_empty() {
        done(Ok(parts.join("; ")))
    } else {
        done(Err(anyhow!("{}", failures.join("; "))))
    }
}

fn connectome(path: &Path) -> Result<String> {
    let g = read_graph(path, WeightMode::Multiplicities)?;
    let giant = g.giant_component()?;
    let all = all_distances(&giant, AllPairsStrategy::default());
    let geo = DistanceDistribution::from_matrix(&all.geodesic);
    let bot = DistanceDistribution::from_matrix(&all.bottleneck);
    let mean = geo.mean()?;
    let de = bot.effective_diameter(0.95)?;
    let mut errors = Vec::new();
    if giant.node_count() != 248 {
        errors.push(format!("giant component has {} nodes, expected 248", giant.node_count()));
    }
    if (mean - 4.52).abs() > 0.02 {
        errors.push(format!("mean geodesic {mean:.3}, expected 4.52 +- 0.02"));
    }
    if !(6.0..=7.0).contains(&de) {
        errors.push(format!("bottleneck D_e {de}, expected in [6, 7]"));
    }
    let opts = RunOptions::default();
    let er = run_ensemble(&EnsembleSpec::erdos_renyi(279, 0.0133, 0), 100, &opts)?;
    let dm = run_ensemble(
        &EnsembleSpec {
            multiplicity: MultiplicityModel::from_graph(&g),
            ..EnsembleSpec::degree_matched(g.clone(), 0)
        },
        100,
        &opts,
    )?;
    let er_med = er
        .median_effective_diameter(DistanceKind::Bottleneck)
        .ok_or_else(|| anyhow!("empty random ensemble"))?;
    let dm_med = dm
        .median_effective_diameter(DistanceKind::Bottleneck)
        .ok_or_else(|| anyhow!("empty degree-matched ensemble"))?;
    if dm_med >= 5.0 {
        errors.push(format!("degree-matched median {dm_med}, expected < 5"));
    }
    if (er_med - 6.0).abs() > ER_MEDIAN_TOLERANCE {
        errors.push(format!("random-graph median {er_med}, expected about 6"));
    }
    if !(dm_med < er_med && er_med < de) {
        errors.push(format!("ordering {dm_med} < {er_med} < {de} does not hold"));
    }
    if !errors.is_empty() {
        bail!("{}", errors.join("; "));
    }
    Ok(format!(
        "giant {} nodes, mean geodesic {mean:.3}, bottleneck D_e {de}, medians degree-matched {dm_med} < random {er_med}",
        giant.node_count()
    ))
}

fn icon_fit(path: &Path, shape: f64, scale: f64) -> Result<String> {
    let g = read_graph(path, WeightMode::Weights)?;
    let giant = g.giant_component()?;
    let all = all_distances(&giant, AllPairsStrategy::default());
    let d = DistanceDistribution::from_matrix(&all.bottleneck);
    let f = fit_gamma(&d, &GammaFitOptions::default())?;
    if !within(f.shape, shape, 0.1) || !within(f.scale, scale, 0.1) {
        bail!(
            "shape {:.3}, scale {:.3} not within 10% of ({shape}, {scale})",
            f.shape,
            f.scale
        );
    }
    Ok(format!("shape {:.3}, scale {:.3}", f.shape, f.scale))
}

/// Command lines exercised by the determinism check.
pub const DETERMINISM_COMMANDS: [&str; 10] = [
    "distances fixture:synthetic50",
    "distances fixture:triangle --format json --strategy labelset-fw",
    "survival fixture:synthetic50",
    "fit fixture:synthetic50",
    "fit --values fixture:gamma",
    "ensemble --model er --nodes 60 --p 0.08 --samples 6 --seed 11",
    "ensemble --model degree-matched --reference fixture:synthetic50 --samples 4 --seed 5 --multiplicity-from-reference",
    "neuro --refractory-ms 1",
    "oracle fixture:substructure",
    "oracle fixture:substructure --source s --target t",
];

pub fn parse_command(line: &str) -> Result<Command> {
    let args = std::iter::once("shortwide").chain(line.split_whitespace());
    let cli = Cli::try_parse_from(args).map_err(|e| anyhow!("{e}"))?;
    cli.command.ok_or_else(|| anyhow!("no command in `{line}`"))
}

/// Every regular file under `dir`, keyed by relative path.
pub fn read_tree(dir: &Path) -> Result<BTreeMap<PathBuf, Vec<u8>>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).with_context(|| format!("listing {}", d.display()))? {
            let path = entry?.path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).expect("under dir").to_path_buf();
                out.insert(rel, fs::read(&path)?);
            }
        }
    }
    Ok(out)
}

fn determinism() -> Result<String> {
    let mut files = 0;
    for line in DETERMINISM_COMMANDS {
        let cmd = parse_command(line)?;
        let mut outputs: Vec<(String, BTreeMap<PathBuf, Vec<u8>>)> = Vec::new();
        for _ in 0..2 {
            let out: Output = execute(&cmd).with_context(|| format!("`{line}`"))?;
            let dir = tempfile::tempdir()?;
            out.write_to(dir.path())?;
            outputs.push((out.summary_text(), read_tree(dir.path())?));
        }
        if outputs[0] != outputs[1] {
            bail!("`{line}` differs between runs");
        }
        files += outputs[0].1.len();
    }
    Ok(format!(
        "{} commands, {files} files identical across two runs",
        DETERMINISM_COMMANDS.len()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_lines() {
        let r = CriterionReport {
            id: 3,
            title: "x",
            outcome: Outcome::Skip,
            detail: "why".into(),
            seconds: 1.5,
        };
        assert_eq!(r.line(false), "criterion 3: SKIP x (why)");
        assert_eq!(r.line(true), "criterion 3: SKIP x (why) [1.50s]");
    }

    #[test]
    fn missing_data_dir_skips() {
        let dir = tempfile::tempdir().unwrap();
        let r = run_one(11, Some(dir.path()));
        assert_eq!(r.outcome, Outcome::Skip);
        assert_eq!(run_one(11, None).outcome, Outcome::Skip);
    }

    #[test]
    fn determinism_commands_parse() {
        for line in DETERMINISM_COMMANDS {
            parse_command(line).unwrap();
        }
    }
}
