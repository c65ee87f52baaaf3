//! Ground truth by exhaustive enumeration of simple paths.
//!
//! Exponential in the worst case; intended for graphs of a dozen nodes. Every
//! distance is evaluated literally from the enumerated paths, sharing nothing
//! with the search algorithms beyond the graph itself.

use serde::Serialize;
use thiserror::Error;

use crate::baseline::AllDistances;
use crate::distance::{Distance, DistanceMatrix};
use crate::graph::{NodeId, WeightedGraph};
use crate::labels::bottleneck_product;

pub const DEFAULT_MAX_NODES: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {nodes} nodes, above the enumeration limit of {limit}")]
    TooLarge { nodes: usize, limit: usize },
    #[error("node {0} is not in the graph")]
    UnknownNode(usize),
}

fn guard(g: &WeightedGraph, max_nodes: usize) -> Result<(), OracleError> {
    if g.node_count() > max_nodes {
        Err(OracleError::TooLarge {
            nodes: g.node_count(),
            limit: max_nodes,
        })
    } else {
        Ok(())
    }
}

fn check(g: &WeightedGraph, u: NodeId) -> Result<(), OracleError> {
    if g.contains(u) {
        Ok(())
    } else {
        Err(OracleError::UnknownNode(u.0))
    }
}

/// Summary of the path currently on the DFS stack.
#[derive(Debug, Clone, Copy)]
struct PathSummary {
    hops: u32,
    max_width: f64,
    total: f64,
}

/// Depth-first enumeration of every simple path starting at `s`, including the
/// trivial path `[s]`. The visitor sees the node stack and its summary.
fn for_each_simple_path<F>(g: &WeightedGraph, s: NodeId, visit: &mut F)
where
    F: FnMut(&[NodeId], PathSummary),
{
    fn rec<F: FnMut(&[NodeId], PathSummary)>(
        g: &WeightedGraph,
        stack: &mut Vec<NodeId>,
        on_path: &mut [bool],
        summary: PathSummary,
        visit: &mut F,
    ) {
        visit(stack, summary);
        let u = *stack.last().expect("stack starts with the source");
        for &(v, w) in g.neighbors(u) {
            if on_path[v.0] {
                continue;
            }
            on_path[v.0] = true;
            stack.push(v);
            let next = PathSummary {
                hops: summary.hops + 1,
                max_width: summary.max_width.max(w),
                total: summary.total + w,
            };
            rec(g, stack, on_path, next, visit);
            stack.pop();
            on_path[v.0] = false;
        }
    }
    let mut on_path = vec![false; g.node_count()];
    on_path[s.0] = true;
    let mut stack = vec![s];
    let start = PathSummary {
        hops: 0,
        max_width: 0.0,
        total: 0.0,
    };
    rec(g, &mut stack, &mut on_path, start, visit);
}

/// Every simple `s -> t` path exactly once, in DFS order over adjacency lists.
pub fn enumerate_simple_paths(
    g: &WeightedGraph,
    s: NodeId,
    t: NodeId,
    max_nodes: usize,
) -> Result<Vec<Vec<NodeId>>, OracleError> {
    guard(g, max_nodes)?;
    check(g, s)?;
    check(g, t)?;
    let mut paths = Vec::new();
    for_each_simple_path(g, s, &mut |stack, _| {
        if stack.last() == Some(&t) {
            paths.push(stack.to_vec());
        }
    });
    Ok(paths)
}

/// Number of simple paths from `s` to `t` by dynamic programming over visited
/// subsets. Independent of the DFS enumeration order; used to cross-check it.
pub fn count_simple_paths(g: &WeightedGraph, s: NodeId, t: NodeId) -> u64 {
    let n = g.node_count();
    assert!(n <= 20, "subset DP is limited to 20 nodes");
    if s == t {
        return 1;
    }
    // ways[mask * n + v]: simple paths from s visiting exactly `mask`, ending at v.
    let mut ways = vec![0u64; (1usize << n) * n];
    ways[(1 << s.0) * n + s.0] = 1;
    let mut total = 0;
    for mask in 1usize..(1 << n) {
        if mask & (1 << s.0) == 0 {
            continue;
        }
        for v in 0..n {
            let here = ways[mask * n + v];
            if here == 0 {
                continue;
            }
            if v == t.0 {
                total += here;
                continue;
            }
            for &(u, _) in g.neighbors(NodeId(v)) {
                if mask & (1 << u.0) == 0 {
                    ways[(mask | 1 << u.0) * n + u.0] += here;
                }
            }
        }
    }
    total
}

/// Optimal value of one distance notion and every path attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Optimum {
    pub value: Distance,
    pub paths: Vec<Vec<NodeId>>,
}

impl Optimum {
    fn empty() -> Self {
        Self {
            value: Distance::Unreachable,
            paths: Vec::new(),
        }
    }

    fn offer(&mut self, value: f64, path: &[NodeId]) {
        match self.value {
            Distance::Finite(best) if value > best => {}
            Distance::Finite(best) if value == best => self.paths.push(path.to_vec()),
            _ => {
                self.value = Distance::Finite(value);
                self.paths = vec![path.to_vec()];
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub source: NodeId,
    pub target: NodeId,
    pub geodesic: Optimum,
    pub weighted: Optimum,
    pub bottleneck: Optimum,
    pub minimax_width: Optimum,
    pub path_count: u64,
}

/// All four distances between `s` and `t`, evaluated over every simple path.
pub fn oracle_distances(
    g: &WeightedGraph,
    s: NodeId,
    t: NodeId,
    max_nodes: usize,
) -> Result<OracleResult, OracleError> {
    guard(g, max_nodes)?;
    check(g, s)?;
    check(g, t)?;
    let mut res = OracleResult {
        source: s,
        target: t,
        geodesic: Optimum::empty(),
        weighted: Optimum::empty(),
        bottleneck: Optimum::empty(),
        minimax_width: Optimum::empty(),
        path_count: 0,
    };
    for_each_simple_path(g, s, &mut |stack, p| {
        if stack.last() != Some(&t) {
            return;
        }
        res.path_count += 1;
        res.geodesic.offer(f64::from(p.hops), stack);
        res.weighted.offer(p.total, stack);
        res.bottleneck.offer(bottleneck_product(p.hops, p.max_width), stack);
        res.minimax_width.offer(p.max_width, stack);
    });
    Ok(res)
}

/// All-pairs matrices for the four notions by enumeration from every source.
pub fn oracle_all_pairs(g: &WeightedGraph, max_nodes: usize) -> Result<AllDistances, OracleError> {
    guard(g, max_nodes)?;
    let n = g.node_count();
    let mut out = AllDistances {
        geodesic: DistanceMatrix::new(n),
        weighted: DistanceMatrix::new(n),
        bottleneck: DistanceMatrix::new(n),
        minimax_width: DistanceMatrix::new(n),
    };
    let lower = |m: &mut DistanceMatrix, i: usize, j: usize, v: f64| {
        if v < m.get(i, j).as_f64() {
            m.set(i, j, Distance::Finite(v));
        }
    };
    for s in g.nodes() {
        for_each_simple_path(g, s, &mut |stack, p| {
            let t = stack.last().expect("non-empty").0;
            lower(&mut out.geodesic, s.0, t, f64::from(p.hops));
            lower(&mut out.weighted, s.0, t, p.total);
            lower(&mut out.bottleneck, s.0, t, bottleneck_product(p.hops, p.max_width));
            lower(&mut out.minimax_width, s.0, t, p.max_width);
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[usize]) -> Vec<NodeId> {
        v.iter().copied().map(NodeId).collect()
    }

    #[test]
    fn triangle_paths() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 5.0), (0, 2, 1.0), (2, 1, 1.0)]).unwrap();
        let mut paths = enumerate_simple_paths(&g, NodeId(0), NodeId(1), DEFAULT_MAX_NODES).unwrap();
        paths.sort();
        assert_eq!(paths, vec![ids(&[0, 1]), ids(&[0, 2, 1])]);
    }

    #[test]
    fn k4_adjacent_pair_has_five_paths() {
        let edges = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j, 1.0)));
        let g = WeightedGraph::from_edges(4, edges).unwrap();
        let paths = enumerate_simple_paths(&g, NodeId(0), NodeId(1), DEFAULT_MAX_NODES).unwrap();
        assert_eq!(paths.len(), 5);
        assert_eq!(count_simple_paths(&g, NodeId(0), NodeId(1)), 5);
    }

    #[test]
    fn disconnected_pair_has_no_paths() {
        let g = WeightedGraph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(enumerate_simple_paths(&g, NodeId(0), NodeId(3), 14).unwrap().is_empty());
        let r = oracle_distances(&g, NodeId(0), NodeId(3), 14).unwrap();
        assert_eq!(r.bottleneck.value, Distance::Unreachable);
        assert_eq!(r.path_count, 0);
    }

    #[test]
    fn substructure_optimum() {
        let g = WeightedGraph::from_edges(4, [(0, 1, 3.0), (0, 2, 1.0), (2, 1, 1.0), (1, 3, 3.0)])
            .unwrap();
        let r = oracle_distances(&g, NodeId(0), NodeId(3), 14).unwrap();
        assert_eq!(r.bottleneck.value, Distance::Finite(6.0));
        assert_eq!(r.bottleneck.paths, vec![ids(&[0, 1, 3])]);
        assert_eq!(r.weighted.value, Distance::Finite(5.0));
    }

    #[test]
    fn star_leaf_pair_and_self_pair() {
        let g = WeightedGraph::from_edges(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        let r = oracle_distances(&g, NodeId(1), NodeId(2), 14).unwrap();
        for opt in [&r.geodesic, &r.weighted, &r.bottleneck] {
            assert_eq!(opt.value, Distance::Finite(2.0));
        }
        let r = oracle_distances(&g, NodeId(2), NodeId(2), 14).unwrap();
        assert_eq!(r.path_count, 1);
        assert_eq!(r.bottleneck.value, Distance::Finite(0.0));
        assert_eq!(r.bottleneck.paths, vec![ids(&[2])]);
    }

    #[test]
    fn size_guard() {
        let g = WeightedGraph::from_edges(15, (0..14).map(|i| (i, i + 1, 1.0))).unwrap();
        assert_eq!(
            oracle_distances(&g, NodeId(0), NodeId(1), DEFAULT_MAX_NODES).unwrap_err(),
            OracleError::TooLarge { nodes: 15, limit: 14 }
        );
        assert!(oracle_distances(&g, NodeId(0), NodeId(14), 15).is_ok());
        assert_eq!(
            oracle_distances(&g, NodeId(0), NodeId(20), 15).unwrap_err(),
            OracleError::UnknownNode(20)
        );
    }
}
