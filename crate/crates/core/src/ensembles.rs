//! Null-model ensembles: weighted Erdős–Rényi graphs and degree-preserving
//! rewirings of a reference graph, with edge multiplicities `m` stored as
//! weights `1/m`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::baseline::all_distances;
use crate::bottleneck::AllPairsStrategy;
use crate::distance::DistanceKind;
use crate::graph::{GraphError, WeightedGraph};
use crate::stats::{DistanceDistribution, SurvivalCurve};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnsembleError {
    #[error("invalid ensemble spec: {0}")]
    InvalidSpec(String),
    #[error("reference graph has {0} edges; rewiring needs at least 2")]
    TooSparse(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Successful double-edge swaps per reference edge.
pub const SWAPS_PER_EDGE: usize = 10;
/// Attempts allowed per requested swap before rewiring stops early.
pub const ATTEMPTS_PER_SWAP: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub enum EnsembleKind {
    ErdosRenyi { nodes: usize, p: f64 },
    DegreeMatched { reference: WeightedGraph },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "source")]
pub enum MultiplicityModel {
    /// `P(m) ∝ m^-exponent` on `1..=max`.
    PowerLaw { exponent: f64, max: u32 },
    /// Observed `(multiplicity, count)` pairs.
    Empirical { counts: Vec<(u32, u64)> },
}

impl Default for MultiplicityModel {
    fn default() -> Self {
        Self::PowerLaw {
            exponent: 2.76,
            max: 50,
        }
    }
}

impl MultiplicityModel {
    /// Histogram of `round(1 / w)` over the edges of a graph weighted by
    /// inverse multiplicity.
    pub fn from_graph(g: &WeightedGraph) -> Self {
        let mut counts = std::collections::BTreeMap::new();
        for (_, _, w) in g.edges() {
            *counts.entry((1.0 / w).round().max(1.0) as u32).or_insert(0u64) += 1;
        }
        Self::Empirical {
            counts: counts.into_iter().collect(),
        }
    }

    pub fn source(&self) -> &'static str {
        match self {
            Self::PowerLaw { .. } => "power_law",
            Self::Empirical { .. } => "empirical",
        }
    }
}

/// Inverse-cdf sampler over a finite multiplicity support.
#[derive(Debug, Clone)]
pub struct MultiplicitySampler {
    values: Vec<u32>,
    cdf: Vec<f64>,
}

impl MultiplicitySampler {
    pub fn new(model: &MultiplicityModel) -> Result<Self, EnsembleError> {
        let invalid = |s: &str| Err(EnsembleError::InvalidSpec(s.to_string()));
        let (values, weights): (Vec<u32>, Vec<f64>) = match model {
            MultiplicityModel::PowerLaw { exponent, max } => {
                if !(*exponent > 1.0 && exponent.is_finite()) {
                    return invalid("multiplicity exponent must exceed 1");
                }
                if *max == 0 {
                    return invalid("multiplicity cutoff must be at least 1");
                }
                (1..=*max).map(|m| (m, f64::from(m).powf(-exponent))).unzip()
            }
            MultiplicityModel::Empirical { counts } => {
                if counts.iter().any(|&(m, _)| m == 0) {
                    return invalid("multiplicities must be at least 1");
                }
                counts
                    .iter()
                    .filter(|&&(_, c)| c > 0)
                    .map(|&(m, c)| (m, c as f64))
                    .unzip()
            }
        };
        let total: f64 = weights.iter().sum();
        if values.is_empty() || total <= 0.0 {
            return invalid("multiplicity histogram is empty");
        }
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = weights
            .iter()
            .map(|w| {
                acc += w;
                acc / total
            })
            .collect();
        *cdf.last_mut().expect("non-empty") = 1.0;
        Ok(Self { values, cdf })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.random();
        let idx = self.cdf.partition_point(|&c| c <= u).min(self.values.len() - 1);
        self.values[idx]
    }

    /// `(multiplicity, probability)` over the support.
    pub fn probabilities(&self) -> Vec<(u32, f64)> {
        let mut prev = 0.0;
        self.values
            .iter()
            .zip(&self.cdf)
            .map(|(&m, &c)| {
                let p = c - prev;
                prev = c;
                (m, p)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub multiplicity: MultiplicityModel,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn erdos_renyi(nodes: usize, p: f64, seed: u64) -> Self {
        Self {
            kind: EnsembleKind::ErdosRenyi { nodes, p },
            multiplicity: MultiplicityModel::default(),
            seed,
        }
    }

    pub fn degree_matched(reference: WeightedGraph, seed: u64) -> Self {
        Self {
            kind: EnsembleKind::DegreeMatched { reference },
            multiplicity: MultiplicityModel::default(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<MultiplicitySampler, EnsembleError> {
        match &self.kind {
            EnsembleKind::ErdosRenyi { nodes, p } => {
                if *nodes == 0 {
                    return Err(EnsembleError::InvalidSpec("node count must be positive".into()));
                }
                if !(*p > 0.0 && *p < 1.0) {
                    return Err(EnsembleError::InvalidSpec(format!(
                        "connection probability must lie in (0, 1), got {p}"
                    )));
                }
            }
            EnsembleKind::DegreeMatched { reference } => {
                if reference.edge_count() < 2 {
                    return Err(EnsembleError::TooSparse(reference.edge_count()));
                }
            }
        }
        MultiplicitySampler::new(&self.multiplicity)
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            EnsembleKind::ErdosRenyi { .. } => "erdos_renyi",
            EnsembleKind::DegreeMatched { .. } => "degree_matched",
        }
    }
}

/// Generator for sample `index`: the seed picks the key, the index the stream,
/// so samples are independent of evaluation order.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RewireStats {
    pub target: usize,
    pub performed: usize,
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub graph: WeightedGraph,
    pub rewire: Option<RewireStats>,
}

/// Draws sample `index` of the ensemble.
pub fn sample(spec: &EnsembleSpec, index: u64) -> Result<Sample, EnsembleError> {
    let sampler = spec.validate()?;
    let mut rng = sample_rng(spec.seed, index);
    match &spec.kind {
        EnsembleKind::ErdosRenyi { nodes, p } => Ok(Sample {
            graph: sample_er_weighted(*nodes, *p, &sampler, &mut rng)?,
            rewire: None,
        }),
        EnsembleKind::DegreeMatched { reference } => {
            let (graph, stats) = sample_degree_matched(reference, &sampler, &mut rng)?;
            Ok(Sample {
                graph,
                rewire: Some(stats),
            })
        }
    }
}

/// Each unordered pair joined independently with probability `p`.
pub fn sample_er_weighted<R: Rng + ?Sized>(
    nodes: usize,
    p: f64,
    sampler: &MultiplicitySampler,
    rng: &mut R,
) -> Result<WeightedGraph, EnsembleError> {
    let mut edges = Vec::new();
    for i in 0..nodes {
        for j in i + 1..nodes {
            if rng.random_bool(p) {
                edges.push((i, j, 1.0 / f64::from(sampler.sample(rng))));
            }
        }
    }
    Ok(WeightedGraph::from_edges(nodes, edges)?)
}

/// Degree-preserving rewiring of `reference` by double-edge swaps, then fresh
/// multiplicities. Node names carry over.
pub fn sample_degree_matched<R: Rng + ?Sized>(
    reference: &WeightedGraph,
    sampler: &MultiplicitySampler,
    rng: &mut R,
) -> Result<(WeightedGraph, RewireStats), EnsembleError> {
    let (edges, stats) = rewire(reference, SWAPS_PER_EDGE, rng)?;
    let weighted = edges
        .into_iter()
        .map(|(u, v)| (u, v, 1.0 / f64::from(sampler.sample(rng))));
    let g = WeightedGraph::from_named_edges(reference.names().to_vec(), weighted)?;
    Ok((g, stats))
}

/// Performs `swaps_per_edge * |E|` successful swaps `(a,b),(c,d) -> (a,d),(c,b)`,
/// rejecting self-loops and parallel edges. Stops after
/// `ATTEMPTS_PER_SWAP` attempts per requested swap.
pub fn rewire<R: Rng + ?Sized>(
    reference: &WeightedGraph,
    swaps_per_edge: usize,
    rng: &mut R,
) -> Result<(Vec<(usize, usize)>, RewireStats), EnsembleError> {
    let m = reference.edge_count();
    if m < 2 {
        return Err(EnsembleError::TooSparse(m));
    }
    let key = |u: usize, v: usize| (u.min(v), u.max(v));
    let mut edges: Vec<(usize, usize)> = reference.edges().map(|(u, v, _)| (u.0, v.0)).collect();
    let mut present: HashSet<(usize, usize)> = edges.iter().map(|&(u, v)| key(u, v)).collect();
    let target = swaps_per_edge * m;
    let cap = target.saturating_mul(ATTEMPTS_PER_SWAP);
    let (mut performed, mut attempts) = (0, 0);
    while performed < target && attempts < cap {
        attempts += 1;
        let i = rng.random_range(0..m);
        let j = rng.random_range(0..m - 1);
        let j = if j >= i { j + 1 } else { j };
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.random_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if a == d || c == b || present.contains(&key(a, d)) || present.contains(&key(c, b)) {
            continue;
        }
        present.remove(&key(a, b));
        present.remove(&key(c, d));
        present.insert(key(a, d));
        present.insert(key(c, b));
        edges[i] = (a, d);
        edges[j] = (c, b);
        performed += 1;
    }
    Ok((
        edges,
        RewireStats {
            target,
            performed,
            attempts,
        },
    ))
}

/// Per-sample measurements on the sample's giant component.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleResult {
    pub index: u64,
    pub nodes: usize,
    pub edges: usize,
    pub giant_nodes: usize,
    pub giant_edges: usize,
    pub rewire: Option<RewireStats>,
    /// In `DistanceKind::ALL` order.
    pub distributions: Vec<DistanceDistribution>,
}

impl SampleResult {
    pub fn distribution(&self, kind: DistanceKind) -> &DistanceDistribution {
        &self.distributions[kind_index(kind)]
    }

    pub fn effective_diameter(&self, kind: DistanceKind, threshold: f64) -> Option<f64> {
        self.distribution(kind).effective_diameter(threshold).ok()
    }
}

fn kind_index(kind: DistanceKind) -> usize {
    DistanceKind::ALL
        .iter()
        .position(|&k| k == kind)
        .expect("listed kind")
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleRun {
    pub kind: &'static str,
    pub multiplicity: MultiplicityModel,
    pub seed: u64,
    pub threshold: f64,
    pub samples: Vec<SampleResult>,
}

/// Options for [`run_ensemble`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub threshold: f64,
    pub strategy: AllPairsStrategy,
    /// Samples beyond this count are generated but get no distance analysis.
    pub analyze_limit: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            threshold: crate::stats::DEFAULT_THRESHOLD,
            strategy: AllPairsStrategy::default(),
            analyze_limit: None,
        }
    }
}

/// Generates `samples` graphs in parallel and measures the all-pairs distance
/// distributions of each giant component.
pub fn run_ensemble(
    spec: &EnsembleSpec,
    samples: usize,
    opts: &RunOptions,
) -> Result<EnsembleRun, EnsembleError> {
    if samples == 0 {
        return Err(EnsembleError::InvalidSpec("sample count must be positive".into()));
    }
    if !(opts.threshold > 0.0 && opts.threshold < 1.0) {
        return Err(EnsembleError::InvalidSpec(format!(
            "threshold must lie in (0, 1), got {}",
            opts.threshold
        )));
    }
    spec.validate()?;
    let analyzed = opts.analyze_limit.unwrap_or(samples).min(samples);
    let results: Result<Vec<SampleResult>, EnsembleError> = (0..samples as u64)
        .into_par_iter()
        .map(|index| {
            let s = sample(spec, index)?;
            let giant = s.graph.giant_component()?;
            let distributions = if (index as usize) < analyzed {
                let all = all_distances(&giant, opts.strategy);
                DistanceKind::ALL
                    .iter()
                    .map(|&k| DistanceDistribution::from_matrix(all.matrix(k)))
                    .collect()
            } else {
                Vec::new()
            };
            Ok(SampleResult {
                index,
                nodes: s.graph.node_count(),
                edges: s.graph.edge_count(),
                giant_nodes: giant.node_count(),
                giant_edges: giant.edge_count(),
                rewire: s.rewire,
                distributions,
            })
        })
        .collect();
    Ok(EnsembleRun {
        kind: spec.kind_name(),
        multiplicity: spec.multiplicity.clone(),
        seed: spec.seed,
        threshold: opts.threshold,
        samples: results?,
    })
}

impl EnsembleRun {
    pub fn analyzed(&self) -> impl Iterator<Item = &SampleResult> {
        self.samples.iter().filter(|s| !s.distributions.is_empty())
    }

    /// All analyzed samples' distances of one kind, pooled.
    pub fn pooled(&self, kind: DistanceKind) -> DistanceDistribution {
        DistanceDistribution::from_values(
            self.analyzed()
                .flat_map(|s| s.distribution(kind).values().iter().copied()),
        )
    }

    pub fn aggregate_survival(&self, kind: DistanceKind) -> Option<SurvivalCurve> {
        self.pooled(kind).survival().ok()
    }

    pub fn effective_diameters(&self, kind: DistanceKind) -> Vec<Option<f64>> {
        self.analyzed()
            .map(|s| s.effective_diameter(kind, self.threshold))
            .collect()
    }

    /// Lower median of the defined per-sample effective diameters.
    pub fn median_effective_diameter(&self, kind: DistanceKind) -> Option<f64> {
        let mut v: Vec<f64> = self.effective_diameters(kind).into_iter().flatten().collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        Some(v[(v.len() - 1) / 2])
    }

    pub fn mean_edges(&self) -> f64 {
        self.samples.iter().map(|s| s.edges as f64).sum::<f64>() / self.samples.len() as f64
    }

    pub fn summary(&self) -> EnsembleSummary {
        let per_kind = |f: &dyn Fn(DistanceKind) -> Option<f64>| {
            DistanceKind::ALL
                .iter()
                .map(|&k| (k.as_str().to_string(), f(k)))
                .collect()
        };
        EnsembleSummary {
            kind: self.kind,
            multiplicity_source: self.multiplicity.source(),
            multiplicity: self.multiplicity.clone(),
            seed: self.seed,
            threshold: self.threshold,
            samples: self.samples.len(),
            analyzed: self.analyzed().count(),
            mean_edges: self.mean_edges(),
            median_effective_diameter: per_kind(&|k| self.median_effective_diameter(k)),
            per_sample: self
                .samples
                .iter()
                .map(|s| SampleSummary {
                    index: s.index,
                    nodes: s.nodes,
                    edges: s.edges,
                    giant_nodes: s.giant_nodes,
                    giant_edges: s.giant_edges,
                    rewire: s.rewire,
                    effective_diameter: if s.distributions.is_empty() {
                        Vec::new()
                    } else {
                        per_kind(&|k| s.effective_diameter(k, self.threshold))
                    },
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSummary {
    pub index: u64,
    pub nodes: usize,
    pub edges: usize,
    pub giant_nodes: usize,
    pub giant_edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rewire: Option<RewireStats>,
    pub effective_diameter: Vec<(String, Option<f64>)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub kind: &'static str,
    pub multiplicity_source: &'static str,
    pub multiplicity: MultiplicityModel,
    pub seed: u64,
    pub threshold: f64,
    pub samples: usize,
    pub analyzed: usize,
    pub mean_edges: f64,
    pub median_effective_diameter: Vec<(String, Option<f64>)>,
    pub per_sample: Vec<SampleSummary>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    fn star(leaves: usize) -> WeightedGraph {
        WeightedGraph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i, 1.0))).unwrap()
    }

    #[test]
    fn er_edge_count_matches_binomial_mean() {
        let spec = EnsembleSpec::erdos_renyi(279, 0.0133, 7);
        let sampler = spec.validate().unwrap();
        let counts: Vec<f64> = (0..100)
            .map(|i| {
                let mut rng = sample_rng(7, i);
                sample_er_weighted(279, 0.0133, &sampler, &mut rng).unwrap().edge_count() as f64
            })
            .collect();
        let pairs: f64 = 279.0 * 278.0 / 2.0;
        // The rounded p puts the binomial mean at 515.8 rather than 514.
        assert!((pairs * 0.0133 - 514.0).abs() < 2.0);
        let sd = (pairs * 0.0133 * (1.0 - 0.0133)).sqrt();
        let mean = counts.iter().sum::<f64>() / 100.0;
        assert!((mean - 514.0).abs() < 3.0 * sd / 10.0, "mean {mean}");
    }

    #[test]
    fn power_law_histogram_matches() {
        let sampler = MultiplicitySampler::new(&MultiplicityModel::default()).unwrap();
        let mut rng = sample_rng(1, 0);
        let draws = 100_000;
        let mut hist = vec![0u64; 51];
        for _ in 0..draws {
            hist[sampler.sample(&mut rng) as usize] += 1;
        }
        assert_eq!(hist[0], 0);
        // Probabilities recomputed from the definition, pooling sparse tails.
        let z: f64 = (1..=50).map(|m| f64::from(m).powf(-2.76)).sum();
        let mut stat = 0.0;
        let mut cells = 0;
        let (mut obs_tail, mut exp_tail) = (0.0, 0.0);
        for m in 1..=50u32 {
            let e = draws as f64 * f64::from(m).powf(-2.76) / z;
            let o = hist[m as usize] as f64;
            if e >= 20.0 {
                stat += (o - e).powi(2) / e;
                cells += 1;
            } else {
                obs_tail += o;
                exp_tail += e;
            }
        }
        stat += (obs_tail - exp_tail).powi(2) / exp_tail;
        cells += 1;
        let crit = ChiSquared::new(f64::from(cells - 1)).unwrap().inverse_cdf(0.999);
        assert!(stat < crit, "chi-square {stat} vs {crit}");
        let probs = sampler.probabilities();
        assert!((probs[0].1 - 1.0 / z).abs() < 1e-12);
    }

    #[test]
    fn empirical_multiplicities() {
        let g = WeightedGraph::from_edges(4, [(0, 1, 1.0), (1, 2, 0.5), (2, 3, 0.5)]).unwrap();
        let model = MultiplicityModel::from_graph(&g);
        assert_eq!(
            model,
            MultiplicityModel::Empirical {
                counts: vec![(1, 1), (2, 2)]
            }
        );
        let s = MultiplicitySampler::new(&model).unwrap();
        let mut rng = sample_rng(0, 0);
        for _ in 0..100 {
            assert!([1, 2].contains(&s.sample(&mut rng)));
        }
        assert!(MultiplicitySampler::new(&MultiplicityModel::Empirical { counts: vec![] }).is_err());
    }

    #[test]
    fn degree_sequence_preserved() {
        let mut rng = sample_rng(3, 0);
        let reference = sample_er_weighted(
            60,
            0.08,
            &MultiplicitySampler::new(&MultiplicityModel::default()).unwrap(),
            &mut rng,
        )
        .unwrap();
        let spec = EnsembleSpec::degree_matched(reference.clone(), 11);
        for i in 0..5 {
            let s = sample(&spec, i).unwrap();
            assert_eq!(s.graph.degree_sequence(), reference.degree_sequence());
            let stats = s.rewire.unwrap();
            assert_eq!(stats.performed, stats.target);
            assert!(s.graph.edges().all(|(_, _, w)| w <= 1.0));
        }
        assert_ne!(sample(&spec, 0).unwrap().graph, reference);
    }

    #[test]
    fn star_admits_no_swaps() {
        let g = star(4);
        let mut rng = sample_rng(0, 0);
        let (edges, stats) = rewire(&g, SWAPS_PER_EDGE, &mut rng).unwrap();
        assert_eq!(stats.performed, 0);
        assert_eq!(stats.attempts, 40 * ATTEMPTS_PER_SWAP);
        let mut got: Vec<_> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        got.sort();
        assert_eq!(got, vec![(0, 1), (0, 2), (0, 3), (0, 4)]);
        let single = WeightedGraph::from_edges(2, [(0, 1, 1.0)]).unwrap();
        assert_eq!(rewire(&single, 10, &mut rng).unwrap_err(), EnsembleError::TooSparse(1));
    }

    #[test]
    fn spec_validation() {
        assert!(EnsembleSpec::erdos_renyi(10, 0.0, 1).validate().is_err());
        assert!(EnsembleSpec::erdos_renyi(10, 1.0, 1).validate().is_err());
        assert!(EnsembleSpec::erdos_renyi(0, 0.5, 1).validate().is_err());
        let mut s = EnsembleSpec::erdos_renyi(10, 0.5, 1);
        s.multiplicity = MultiplicityModel::PowerLaw {
            exponent: 1.0,
            max: 50,
        };
        assert!(s.validate().is_err());
    }

    #[test]
    fn tiny_probability_gives_tiny_giant() {
        let spec = EnsembleSpec::erdos_renyi(50, 1e-9, 5);
        let run = run_ensemble(&spec, 3, &RunOptions::default()).unwrap();
        for s in &run.samples {
            assert_eq!(s.edges, 0);
            assert_eq!(s.giant_nodes, 1);
            assert_eq!(s.effective_diameter(DistanceKind::Bottleneck, 0.95), None);
        }
    }

    #[test]
    fn runs_are_reproducible_and_order_free() {
        let spec = EnsembleSpec::erdos_renyi(40, 0.1, 42);
        let a = run_ensemble(&spec, 4, &RunOptions::default()).unwrap();
        let b = run_ensemble(&spec, 4, &RunOptions::default()).unwrap();
        assert_eq!(a, b);
        // Sample 3 alone matches sample 3 of the batch.
        assert_eq!(sample(&spec, 3).unwrap().graph.edge_count(), a.samples[3].edges);
        for s in a.analyzed() {
            let g = s.distribution(DistanceKind::Geodesic);
            let b = s.distribution(DistanceKind::Bottleneck);
            assert_eq!(g.len(), s.giant_nodes * (s.giant_nodes - 1) / 2);
            assert_eq!(b.len(), g.len());
        }
        let limited = run_ensemble(
            &spec,
            4,
            &RunOptions {
                analyze_limit: Some(2),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(limited.analyzed().count(), 2);
        assert_eq!(limited.samples[3].edges, a.samples[3].edges);
        let summary = serde_json::to_string(&a.summary()).unwrap();
        assert_eq!(summary, serde_json::to_string(&b.summary()).unwrap());
    }
}
