//! Bottleneck ("short and wide") distances: the minimum over paths of
//! `hops * widest edge`.
//!
//! Subpaths of optimal paths need not be optimal here, so a single distance per
//! node is not enough. Both algorithms keep, per node (or node pair), the full
//! Pareto frontier of `(hops, max_width)` labels:
//!
//! * [`one_to_all_bottleneck`] is a label-setting search that settles
//!   `(node, label)` entries in increasing order of their product.
//! * [`all_pairs_bottleneck`] either repeats that search from every source in
//!   parallel, or runs the label-set Floyd-Warshall recurrence
//!   ([`node_insertion`] followed by [`maximize_labels`] for every pivot).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::{Distance, DistanceMatrix};
use crate::graph::{NodeId, WeightedGraph};
use crate::labels::{insert_nondominated, Label, LabelSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("source node {0} is not in the graph")]
    InvalidSource(usize),
    #[error("node {0} is not in the graph")]
    InvalidTarget(usize),
    #[error("node {0} is unreachable from the source")]
    Unreachable(usize),
}

/// Final label frontiers of a one-to-all search.
#[derive(Debug, Clone, PartialEq)]
pub struct OneToAllResult {
    pub source: NodeId,
    /// Frontier per node. `pred_label` of each label indexes into the frontier of
    /// its `pred` node.
    pub label_sets: Vec<LabelSet>,
    /// Largest frontier held by any node at any point of the search.
    pub peak_frontier: usize,
    /// Number of `(node, label)` entries settled.
    pub settled: usize,
}

impl OneToAllResult {
    pub fn distance(&self, t: NodeId) -> Distance {
        self.label_sets[t.0].min_product().into()
    }

    pub fn distances(&self) -> Vec<Distance> {
        self.label_sets.iter().map(|s| s.min_product().into()).collect()
    }

    pub fn max_label_set_len(&self) -> usize {
        self.label_sets.iter().map(LabelSet::len).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EntryState {
    Open,
    Settled,
    Pruned,
}

#[derive(Debug, Clone, Copy)]
struct QueueEntry {
    product: f64,
    node: usize,
    slot: usize,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    // Reversed so `BinaryHeap` pops the smallest product, then node, then slot.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .product
            .total_cmp(&self.product)
            .then(other.node.cmp(&self.node))
            .then(other.slot.cmp(&self.slot))
    }
}
impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bottleneck distances from `source` to every node, with the full label frontier
/// at each node.
pub fn one_to_all_bottleneck(
    g: &WeightedGraph,
    source: NodeId,
) -> Result<OneToAllResult, PathError> {
    if !g.contains(source) {
        return Err(PathError::InvalidSource(source.0));
    }
    let n = g.node_count();
    // Every label ever created at a node lives in its arena; `frontier` holds the
    // currently non-dominated ones together with their arena slots.
    let mut arena: Vec<Vec<(Label, EntryState)>> = vec![Vec::new(); n];
    let mut frontier: Vec<Vec<(Label, usize)>> = vec![Vec::new(); n];
    let mut heap = BinaryHeap::new();
    let mut peak = 1;
    let mut settled = 0;

    arena[source.0].push((Label::source(), EntryState::Open));
    frontier[source.0].push((Label::source(), 0));
    heap.push(QueueEntry {
        product: 0.0,
        node: source.0,
        slot: 0,
    });

    while let Some(QueueEntry { node: i, slot, .. }) = heap.pop() {
        if arena[i][slot].1 != EntryState::Open {
            continue;
        }
        arena[i][slot].1 = EntryState::Settled;
        settled += 1;
        let current = arena[i][slot].0;

        for &(j, w) in g.neighbors(NodeId(i)) {
            let j = j.0;
            let candidate = current.extend(w).with_pred(NodeId(i), Some(slot));
            let new_slot = arena[j].len();
            let mut pruned = Vec::new();
            let inserted = insert_nondominated(
                &mut frontier[j],
                (candidate, new_slot),
                |e| &e.0,
                |e| pruned.push(e.1),
            );
            if !inserted {
                continue;
            }
            for s in pruned {
                // A dominating label has a strictly smaller product, and every
                // new label is larger than everything already settled.
                debug_assert_eq!(arena[j][s].1, EntryState::Open);
                arena[j][s].1 = EntryState::Pruned;
            }
            arena[j].push((candidate, EntryState::Open));
            peak = peak.max(frontier[j].len());
            heap.push(QueueEntry {
                product: candidate.product,
                node: j,
                slot: new_slot,
            });
        }
    }

    Ok(finish_one_to_all(source, arena, frontier, peak, settled))
}

fn finish_one_to_all(
    source: NodeId,
    arena: Vec<Vec<(Label, EntryState)>>,
    frontier: Vec<Vec<(Label, usize)>>,
    peak: usize,
    settled: usize,
) -> OneToAllResult {
    let n = arena.len();
    // Order each frontier by width and remember where every arena slot landed.
    let mut position: Vec<Vec<usize>> = arena.iter().map(|a| vec![usize::MAX; a.len()]).collect();
    let mut ordered: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (node, entries) in frontier.into_iter().enumerate() {
        let mut slots: Vec<usize> = entries.into_iter().map(|(_, s)| s).collect();
        slots.sort_by(|&a, &b| arena[node][a].0.max_width.total_cmp(&arena[node][b].0.max_width));
        for (pos, &s) in slots.iter().enumerate() {
            position[node][s] = pos;
        }
        ordered.push(slots);
    }
    let label_sets = ordered
        .iter()
        .enumerate()
        .map(|(node, slots)| {
            let labels = slots
                .iter()
                .map(|&s| {
                    let (mut label, state) = arena[node][s];
                    debug_assert_eq!(state, EntryState::Settled);
                    if let (Some(p), Some(ps)) = (label.pred, label.pred_label) {
                        let pos = position[p.0][ps];
                        debug_assert_ne!(pos, usize::MAX, "predecessor label left the frontier");
                        label.pred_label = Some(pos);
                    }
                    label
                })
                .collect();
            LabelSet::from_frontier(labels)
        })
        .collect();
    OneToAllResult {
        source,
        label_sets,
        peak_frontier: peak,
        settled,
    }
}

/// The node sequence of the bottleneck-optimal path from the search source to `t`.
pub fn reconstruct_path(result: &OneToAllResult, t: NodeId) -> Result<Vec<NodeId>, PathError> {
    let set = result
        .label_sets
        .get(t.0)
        .ok_or(PathError::InvalidTarget(t.0))?;
    let best = set.best_index().ok_or(PathError::Unreachable(t.0))?;
    reconstruct_from_label(result, t, best)
}

/// The path summarized by label `index` of node `t`'s frontier.
pub fn reconstruct_from_label(
    result: &OneToAllResult,
    t: NodeId,
    index: usize,
) -> Result<Vec<NodeId>, PathError> {
    let mut path = vec![t];
    let mut node = t;
    let mut label = *result.label_sets[t.0]
        .get(index)
        .ok_or(PathError::Unreachable(t.0))?;
    while let (Some(p), Some(pi)) = (label.pred, label.pred_label) {
        path.push(p);
        node = p;
        label = result.label_sets[p.0].labels()[pi];
    }
    debug_assert_eq!(node, result.source);
    path.reverse();
    Ok(path)
}

/// Which all-pairs algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AllPairsStrategy {
    /// Label-set Floyd-Warshall over every pivot.
    LabelsetFw,
    /// One-to-all search from every source, sources run in parallel.
    #[default]
    ParallelSssp,
}

/// All-pairs bottleneck distances with the final frontier of every ordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AllPairsResult {
    pub distances: DistanceMatrix,
    label_sets: Vec<LabelSet>,
    /// Largest per-node frontier seen (for the parallel strategy, over all searches).
    pub peak_frontier: usize,
}

impl AllPairsResult {
    pub fn label_set(&self, i: NodeId, j: NodeId) -> &LabelSet {
        &self.label_sets[i.0 * self.distances.size() + j.0]
    }

    pub fn max_label_set_len(&self) -> usize {
        self.label_sets.iter().map(LabelSet::len).max().unwrap_or(0)
    }
}

pub fn all_pairs_bottleneck(g: &WeightedGraph, strategy: AllPairsStrategy) -> AllPairsResult {
    match strategy {
        AllPairsStrategy::LabelsetFw => labelset_floyd_warshall(g),
        AllPairsStrategy::ParallelSssp => parallel_sssp(g),
    }
}

fn parallel_sssp(g: &WeightedGraph) -> AllPairsResult {
    let runs: Vec<OneToAllResult> = g
        .nodes()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| one_to_all_bottleneck(g, s).expect("source drawn from the graph"))
        .collect();
    let peak_frontier = runs.iter().map(|r| r.peak_frontier).max().unwrap_or(0);
    let distances = DistanceMatrix::from_rows(runs.iter().map(OneToAllResult::distances).collect());
    let label_sets = runs.into_iter().flat_map(|r| r.label_sets).collect();
    AllPairsResult {
        distances,
        label_sets,
        peak_frontier,
    }
}

fn labelset_floyd_warshall(g: &WeightedGraph) -> AllPairsResult {
    let n = g.node_count();
    let mut table: Vec<Vec<Label>> = vec![Vec::new(); n * n];
    for i in 0..n {
        table[i * n + i] = vec![Label::source()];
    }
    for (u, v, w) in g.edges() {
        table[u.0 * n + v.0] = vec![Label::new(1, w).with_pred(u, None)];
        table[v.0 * n + u.0] = vec![Label::new(1, w).with_pred(v, None)];
    }
    let mut peak = usize::from(n > 0);
    for k in 0..n {
        for i in 0..n {
            if i == k || table[i * n + k].is_empty() {
                continue;
            }
            for j in 0..n {
                if j == k || j == i || table[k * n + j].is_empty() {
                    continue;
                }
                let inserted = node_insertion(&table[i * n + k], &table[k * n + j]);
                let merged = maximize_labels(&table[i * n + j], &inserted);
                peak = peak.max(merged.len());
                table[i * n + j] = merged;
            }
        }
    }
    let mut distances = DistanceMatrix::new(n);
    let label_sets: Vec<LabelSet> = table.into_iter().map(LabelSet::from_frontier).collect();
    for i in 0..n {
        for j in 0..n {
            distances.set(i, j, label_sets[i * n + j].min_product().into());
        }
    }
    AllPairsResult {
        distances,
        label_sets,
        peak_frontier: peak,
    }
}

/// Combines the frontiers of `i -> k` and `k -> j` into candidate labels for
/// `i -> j` through `k`. Walks both lists from their widest end, always
/// narrowing the list that holds the current bottleneck. Output is sorted by
/// ascending width.
pub fn node_insertion(ik: &[Label], kj: &[Label]) -> Vec<Label> {
    let mut out = Vec::with_capacity(ik.len().min(kj.len()) * 2);
    let (mut p, mut q) = (ik.len(), kj.len());
    while p > 0 && q > 0 {
        let a = &ik[p - 1];
        let b = &kj[q - 1];
        let mut label = Label::new(a.hops + b.hops, a.max_width.max(b.max_width));
        // The node before `j` on the joined path is the one before `j` on `k -> j`.
        label.pred = b.pred;
        out.push(label);
        match a.max_width.total_cmp(&b.max_width) {
            Ordering::Equal => {
                p -= 1;
                q -= 1;
            }
            Ordering::Greater => p -= 1,
            Ordering::Less => q -= 1,
        }
    }
    out.reverse();
    out
}

/// Merges the current `i -> j` frontier with inserted candidates, both sorted
/// by ascending width, keeping a label only when its hop count beats every
/// label already kept. Ties in width prefer the current label unless the
/// candidate has strictly fewer hops.
pub fn maximize_labels(current: &[Label], inserted: &[Label]) -> Vec<Label> {
    let mut out = Vec::with_capacity(current.len() + inserted.len());
    let mut best_hops = u32::MAX;
    let (mut p, mut q) = (0, 0);
    let mut keep = |l: &Label, best: &mut u32| {
        if l.hops < *best {
            out.push(*l);
            *best = l.hops;
        }
    };
    while p < current.len() && q < inserted.len() {
        let a = &current[p];
        let b = &inserted[q];
        match a.max_width.total_cmp(&b.max_width) {
            Ordering::Less => {
                keep(a, &mut best_hops);
                p += 1;
            }
            Ordering::Greater => {
                keep(b, &mut best_hops);
                q += 1;
            }
            Ordering::Equal => {
                if a.hops <= b.hops {
                    keep(a, &mut best_hops);
                } else {
                    keep(b, &mut best_hops);
                }
                p += 1;
                q += 1;
            }
        }
    }
    for l in current[p..].iter().chain(&inserted[q..]) {
        keep(l, &mut best_hops);
    }
    out
}

/// One size point for [`complexity_probe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSize {
    pub nodes: usize,
    pub edges: usize,
    pub distinct_weights: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub nodes: usize,
    pub edges: usize,
    pub distinct_weights: usize,
    pub algorithm: String,
    pub seconds: f64,
    pub max_label_set: usize,
}

/// A connected random graph with exactly `edges` edges whose weights take
/// exactly `distinct_weights` values `l / W`, `l = 1..=W`.
pub fn probe_graph(size: ProbeSize, seed: u64) -> WeightedGraph {
    let ProbeSize {
        nodes: n,
        edges: m,
        distinct_weights: levels,
    } = size;
    assert!(n >= 2 && levels >= 1);
    let max_edges = n * (n - 1) / 2;
    let m = m.clamp(n - 1, max_edges);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut pairs = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let u = order[i];
        let v = order[rng.random_range(0..i)];
        pairs.insert((u.min(v), u.max(v)));
        edges.push((u, v));
    }
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && pairs.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    let weighted = edges.into_iter().enumerate().map(|(e, (u, v))| {
        let level = if e < levels {
            e + 1
        } else {
            rng.random_range(1..=levels)
        };
        (u, v, level as f64 / levels as f64)
    });
    WeightedGraph::from_edges(n, weighted).expect("generated edges are valid")
}

/// Wall-clock timings of one one-to-all search and both all-pairs strategies on
/// synthetic graphs. Informational only; timings are not deterministic.
pub fn complexity_probe(sizes: &[ProbeSize], seed: u64) -> Vec<ProbeRow> {
    let mut rows = Vec::new();
    for (idx, &size) in sizes.iter().enumerate() {
        let g = probe_graph(size, seed.wrapping_add(idx as u64));
        let row = |algorithm: &str, seconds: f64, max_label_set: usize| ProbeRow {
            nodes: g.node_count(),
            edges: g.edge_count(),
            distinct_weights: g.distinct_weight_count(),
            algorithm: algorithm.to_string(),
            seconds,
            max_label_set,
        };

        let t = Instant::now();
        let single = one_to_all_bottleneck(&g, NodeId(0)).expect("node 0 exists");
        rows.push(row("one_to_all", t.elapsed().as_secs_f64(), single.peak_frontier));

        for (name, strategy) in [
            ("parallel_sssp", AllPairsStrategy::ParallelSssp),
            ("labelset_fw", AllPairsStrategy::LabelsetFw),
        ] {
            let t = Instant::now();
            let res = all_pairs_bottleneck(&g, strategy);
            rows.push(row(name, t.elapsed().as_secs_f64(), res.peak_frontier));
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> WeightedGraph {
        WeightedGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    /// s=0, x=1, a=2, t=3.
    fn substructure() -> WeightedGraph {
        graph(4, &[(0, 1, 3.0), (0, 2, 1.0), (2, 1, 1.0), (1, 3, 3.0)])
    }

    #[test]
    fn path_graph_unit_weights() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        let r = one_to_all_bottleneck(&g, NodeId(0)).unwrap();
        assert_eq!(r.distance(NodeId(2)), Distance::Finite(2.0));
        assert_eq!(r.distance(NodeId(0)), Distance::Finite(0.0));
        assert_eq!(
            reconstruct_path(&r, NodeId(2)).unwrap(),
            vec![NodeId(0), NodeId(1), NodeId(2)]
        );
        assert_eq!(reconstruct_path(&r, NodeId(0)).unwrap(), vec![NodeId(0)]);
    }

    #[test]
    fn triangle_prefers_two_narrow_hops() {
        // a=0, b=1, c=2
        let g = graph(3, &[(0, 1, 5.0), (0, 2, 1.0), (2, 1, 1.0)]);
        let r = one_to_all_bottleneck(&g, NodeId(0)).unwrap();
        assert_eq!(r.distance(NodeId(1)), Distance::Finite(2.0));
        assert_eq!(
            reconstruct_path(&r, NodeId(1)).unwrap(),
            vec![NodeId(0), NodeId(2), NodeId(1)]
        );
        // The direct edge stays on the frontier: 1 hop at width 5 is not dominated.
        assert_eq!(r.label_sets[1].len(), 2);
    }

    #[test]
    fn substructure_violation() {
        let g = substructure();
        let r = one_to_all_bottleneck(&g, NodeId(0)).unwrap();
        assert_eq!(r.distance(NodeId(1)), Distance::Finite(2.0));
        assert_eq!(r.distance(NodeId(3)), Distance::Finite(6.0));
        assert_eq!(
            reconstruct_path(&r, NodeId(3)).unwrap(),
            vec![NodeId(0), NodeId(1), NodeId(3)]
        );
        assert_eq!(
            reconstruct_path(&r, NodeId(1)).unwrap(),
            vec![NodeId(0), NodeId(2), NodeId(1)]
        );
    }

    #[test]
    fn unreachable_and_invalid() {
        let g = graph(3, &[(0, 1, 1.0)]);
        let r = one_to_all_bottleneck(&g, NodeId(0)).unwrap();
        assert_eq!(r.distance(NodeId(2)), Distance::Unreachable);
        assert!(r.label_sets[2].is_empty());
        assert_eq!(reconstruct_path(&r, NodeId(2)), Err(PathError::Unreachable(2)));
        assert_eq!(reconstruct_path(&r, NodeId(9)), Err(PathError::InvalidTarget(9)));
        assert_eq!(
            one_to_all_bottleneck(&g, NodeId(3)).unwrap_err(),
            PathError::InvalidSource(3)
        );
    }

    #[test]
    fn star_all_pairs() {
        let g = graph(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]);
        for strategy in [AllPairsStrategy::LabelsetFw, AllPairsStrategy::ParallelSssp] {
            let r = all_pairs_bottleneck(&g, strategy);
            for i in 1..4 {
                assert_eq!(r.distances.get(0, i), Distance::Finite(1.0));
                for j in 1..4 {
                    let want = if i == j { 0.0 } else { 2.0 };
                    assert_eq!(r.distances.get(i, j), Distance::Finite(want));
                }
            }
        }
    }

    #[test]
    fn substructure_all_pairs_both_strategies() {
        let g = substructure();
        let fw = all_pairs_bottleneck(&g, AllPairsStrategy::LabelsetFw);
        let ss = all_pairs_bottleneck(&g, AllPairsStrategy::ParallelSssp);
        assert_eq!(fw.distances, ss.distances);
        assert_eq!(fw.distances.get(0, 3), Distance::Finite(6.0));
        assert_eq!(fw.distances.get(0, 1), Distance::Finite(2.0));
        assert_eq!(fw.distances.get(0, 2), Distance::Finite(1.0));
        // a -> t: a-x-t is 2 hops at width 3; a-s-x-t is 3 hops at width 3.
        assert_eq!(fw.distances.get(2, 3), Distance::Finite(6.0));
        assert!(fw.distances.is_symmetric());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    fw.label_set(NodeId(i), NodeId(j)).len(),
                    ss.label_set(NodeId(i), NodeId(j)).len()
                );
            }
        }
    }

    #[test]
    fn node_insertion_walks_bottlenecks() {
        let ik = [Label::new(3, 0.25), Label::new(1, 1.0)];
        let kj = [Label::new(2, 0.5), Label::new(1, 0.75)];
        let got: Vec<(u32, f64)> = node_insertion(&ik, &kj)
            .iter()
            .map(|l| (l.hops, l.max_width))
            .collect();
        // (1,1.0)+(1,0.75) -> (2,1.0); drop ik's widest -> (3,0.25)+(1,0.75) -> (4,0.75);
        // kj narrows -> (3,0.25)+(2,0.5) -> (5,0.5); kj exhausted.
        assert_eq!(got, vec![(5, 0.5), (4, 0.75), (2, 1.0)]);
    }

    #[test]
    fn maximize_labels_filters_by_hops() {
        let cur = [Label::new(4, 0.5), Label::new(2, 1.0)];
        let ins = [Label::new(5, 0.25), Label::new(3, 0.5), Label::new(2, 0.75)];
        let got: Vec<(u32, f64)> = maximize_labels(&cur, &ins)
            .iter()
            .map(|l| (l.hops, l.max_width))
            .collect();
        assert_eq!(got, vec![(5, 0.25), (3, 0.5), (2, 0.75)]);
    }

    #[test]
    fn probe_graph_shape() {
        let size = ProbeSize {
            nodes: 30,
            edges: 60,
            distinct_weights: 4,
        };
        let g = probe_graph(size, 7);
        assert_eq!(g.edge_count(), 60);
        assert_eq!(g.distinct_weight_count(), 4);
        assert!(g.is_connected());
        let rows = complexity_probe(&[size], 7);
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.max_label_set <= 4));
    }
}
