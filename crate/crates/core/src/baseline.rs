//! Classical distances used for comparison with the bottleneck distance:
//! hop count, total weight, and minimax width (the widest-path value).

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::bottleneck::{all_pairs_bottleneck, AllPairsStrategy, PathError};
use crate::distance::{Distance, DistanceKind, DistanceMatrix};
use crate::graph::{NodeId, WeightedGraph};

/// Breadth-first hop counts from `s`; `None` for unreachable nodes.
pub fn geodesic_all(g: &WeightedGraph, s: NodeId) -> Result<Vec<Option<u32>>, PathError> {
    if !g.contains(s) {
        return Err(PathError::InvalidSource(s.0));
    }
    let mut dist = vec![None; g.node_count()];
    dist[s.0] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let next = dist[u.0].map(|d| d + 1);
        for &(v, _) in g.neighbors(u) {
            if dist[v.0].is_none() {
                dist[v.0] = next;
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

#[derive(Clone, Copy, PartialEq)]
struct Key(f64);
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Dijkstra distances from `s` by total edge weight.
pub fn weighted_all(g: &WeightedGraph, s: NodeId) -> Result<Vec<Distance>, PathError> {
    if !g.contains(s) {
        return Err(PathError::InvalidSource(s.0));
    }
    let mut dist = vec![f64::INFINITY; g.node_count()];
    let mut done = vec![false; g.node_count()];
    let mut heap = BinaryHeap::new();
    dist[s.0] = 0.0;
    heap.push(Reverse((Key(0.0), s.0)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(v, w) in g.neighbors(NodeId(u)) {
            let nd = d + w;
            if nd < dist[v.0] {
                dist[v.0] = nd;
                heap.push(Reverse((Key(nd), v.0)));
            }
        }
    }
    Ok(dist
        .into_iter()
        .map(|d| if d.is_finite() { Distance::Finite(d) } else { Distance::Unreachable })
        .collect())
}

/// Minimax widths from `s` together with a predecessor tree whose paths realize
/// them. Among equally narrow paths the tree prefers fewer hops.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxTree {
    pub source: NodeId,
    pub width: Vec<Distance>,
    pub hops: Vec<Option<u32>>,
    pub pred: Vec<Option<NodeId>>,
}

impl MinimaxTree {
    pub fn path(&self, t: NodeId) -> Result<Vec<NodeId>, PathError> {
        if t.0 >= self.width.len() {
            return Err(PathError::InvalidTarget(t.0));
        }
        if !self.width[t.0].is_finite() {
            return Err(PathError::Unreachable(t.0));
        }
        let mut path = vec![t];
        let mut cur = t;
        while let Some(p) = self.pred[cur.0] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Ok(path)
    }
}

pub fn minimax_tree(g: &WeightedGraph, s: NodeId) -> Result<MinimaxTree, PathError> {
    if !g.contains(s) {
        return Err(PathError::InvalidSource(s.0));
    }
    let n = g.node_count();
    // Lexicographic key (width, hops); the trivial path at `s` has width 0.
    let mut best: Vec<Option<(f64, u32)>> = vec![None; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    best[s.0] = Some((0.0, 0));
    heap.push(Reverse((Key(0.0), 0u32, s.0)));
    while let Some(Reverse((Key(width), hops, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(v, w) in g.neighbors(NodeId(u)) {
            let cand = (width.max(w), hops + 1);
            let better = match best[v.0] {
                None => true,
                Some((bw, bh)) => {
                    cand.0.total_cmp(&bw).then(cand.1.cmp(&bh)) == Ordering::Less
                }
            };
            if better && !done[v.0] {
                best[v.0] = Some(cand);
                pred[v.0] = Some(NodeId(u));
                heap.push(Reverse((Key(cand.0), cand.1, v.0)));
            }
        }
    }
    Ok(MinimaxTree {
        source: s,
        width: best.iter().map(|b| b.map(|(w, _)| w).into()).collect(),
        hops: best.iter().map(|b| b.map(|(_, h)| h)).collect(),
        pred,
    })
}

/// For every node, the smallest achievable maximum edge weight on a path from `s`.
pub fn minimax_width_all(g: &WeightedGraph, s: NodeId) -> Result<Vec<Distance>, PathError> {
    minimax_tree(g, s).map(|t| t.width)
}

/// All four distances between one pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceRecord {
    pub source: NodeId,
    pub target: NodeId,
    pub geodesic: Distance,
    pub weighted: Distance,
    pub bottleneck: Distance,
    pub minimax_width: Distance,
}

/// All-pairs matrices for the four distance notions.
#[derive(Debug, Clone, PartialEq)]
pub struct AllDistances {
    pub geodesic: DistanceMatrix,
    pub weighted: DistanceMatrix,
    pub bottleneck: DistanceMatrix,
    pub minimax_width: DistanceMatrix,
}

impl AllDistances {
    pub fn matrix(&self, kind: DistanceKind) -> &DistanceMatrix {
        match kind {
            DistanceKind::Geodesic => &self.geodesic,
            DistanceKind::Weighted => &self.weighted,
            DistanceKind::Bottleneck => &self.bottleneck,
            DistanceKind::MinimaxWidth => &self.minimax_width,
        }
    }

    pub fn record(&self, s: NodeId, t: NodeId) -> DistanceRecord {
        DistanceRecord {
            source: s,
            target: t,
            geodesic: self.geodesic.get(s.0, t.0),
            weighted: self.weighted.get(s.0, t.0),
            bottleneck: self.bottleneck.get(s.0, t.0),
            minimax_width: self.minimax_width.get(s.0, t.0),
        }
    }

    pub fn size(&self) -> usize {
        self.geodesic.size()
    }
}

pub fn geodesic_matrix(g: &WeightedGraph) -> DistanceMatrix {
    per_source(g, |s| {
        geodesic_all(g, s)
            .expect("source drawn from the graph")
            .into_iter()
            .map(|d| d.map(f64::from).into())
            .collect()
    })
}

pub fn weighted_matrix(g: &WeightedGraph) -> DistanceMatrix {
    per_source(g, |s| weighted_all(g, s).expect("source drawn from the graph"))
}

pub fn minimax_matrix(g: &WeightedGraph) -> DistanceMatrix {
    per_source(g, |s| minimax_width_all(g, s).expect("source drawn from the graph"))
}

fn per_source<F>(g: &WeightedGraph, row: F) -> DistanceMatrix
where
    F: Fn(NodeId) -> Vec<Distance> + Sync + Send,
{
    let rows = g
        .nodes()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(row)
        .collect();
    DistanceMatrix::from_rows(rows)
}

/// Computes all four all-pairs matrices.
pub fn all_distances(g: &WeightedGraph, strategy: AllPairsStrategy) -> AllDistances {
    AllDistances {
        geodesic: geodesic_matrix(g),
        weighted: weighted_matrix(g),
        bottleneck: all_pairs_bottleneck(g, strategy).distances,
        minimax_width: minimax_matrix(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, [(0, 1, 5.0), (0, 2, 1.0), (2, 1, 1.0)]).unwrap()
    }

    #[test]
    fn geodesic_path_and_isolated() {
        let g = WeightedGraph::from_edges(4, [(0, 1, 0.5), (1, 2, 0.25)]).unwrap();
        assert_eq!(
            geodesic_all(&g, NodeId(0)).unwrap(),
            vec![Some(0), Some(1), Some(2), None]
        );
        assert!(geodesic_all(&g, NodeId(4)).is_err());
    }

    #[test]
    fn weighted_triangle() {
        let d = weighted_all(&triangle(), NodeId(0)).unwrap();
        assert_eq!(d[1], Distance::Finite(2.0));
    }

    #[test]
    fn weighted_substructure() {
        let g = WeightedGraph::from_edges(4, [(0, 1, 3.0), (0, 2, 1.0), (2, 1, 1.0), (1, 3, 3.0)])
            .unwrap();
        assert_eq!(weighted_all(&g, NodeId(0)).unwrap()[3], Distance::Finite(5.0));
    }

    #[test]
    fn unit_weights_weighted_equals_geodesic() {
        let g = WeightedGraph::from_edges(5, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 4, 1.0)])
            .unwrap();
        let all = all_distances(&g, AllPairsStrategy::ParallelSssp);
        assert_eq!(all.geodesic, all.weighted);
        assert_eq!(all.geodesic, all.bottleneck);
    }

    #[test]
    fn minimax_avoids_wide_edge() {
        let t = minimax_tree(&triangle(), NodeId(0)).unwrap();
        assert_eq!(t.width[1], Distance::Finite(1.0));
        assert_eq!(t.path(NodeId(1)).unwrap(), vec![NodeId(0), NodeId(2), NodeId(1)]);
        let single = WeightedGraph::from_edges(2, [(0, 1, 0.25)]).unwrap();
        assert_eq!(minimax_width_all(&single, NodeId(0)).unwrap()[1], Distance::Finite(0.25));
    }

    #[test]
    fn minimax_tie_prefers_fewer_hops() {
        // 0-1-2-3 all width 1, plus 0-3 width 1: direct edge wins the tie.
        let g = WeightedGraph::from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)])
            .unwrap();
        let t = minimax_tree(&g, NodeId(0)).unwrap();
        assert_eq!(t.path(NodeId(3)).unwrap(), vec![NodeId(0), NodeId(3)]);
        assert_eq!(t.hops[2], Some(2));
    }

    #[test]
    fn unreachability_agrees() {
        let g = WeightedGraph::from_edges(4, [(0, 1, 0.5), (2, 3, 1.0)]).unwrap();
        let all = all_distances(&g, AllPairsStrategy::LabelsetFw);
        for (i, j, d) in all.geodesic.upper_pairs() {
            for kind in DistanceKind::ALL {
                assert_eq!(all.matrix(kind).get(i, j).is_finite(), d.is_finite());
            }
        }
        let r = all.record(NodeId(0), NodeId(1));
        assert_eq!(r.bottleneck, Distance::Finite(0.5));
        assert_eq!(r.minimax_width, Distance::Finite(0.5));
    }
}
