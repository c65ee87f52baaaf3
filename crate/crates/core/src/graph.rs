//! Undirected weighted graphs: edge-list ingestion, connectivity and
//! giant-component extraction.
//!
//! Nodes are dense indices assigned in order of first appearance in the input;
//! the original identifiers are kept in a name table so results can be written
//! back in the user's vocabulary.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense node index into a [`WeightedGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How the third column of an edge list is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    /// The value is the edge weight itself.
    #[default]
    Weights,
    /// The value is a positive integer multiplicity `m`; the stored weight is `1/m`
    /// ("inverse gap junctions" for connectome inputs).
    Multiplicities,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: edge value must be positive, got {value}")]
    NonPositive { line: usize, value: String },
    #[error("line {line}: duplicate edge {u} -- {v}")]
    DuplicateEdge { line: usize, u: String, v: String },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: String },
    #[error("edge {u} -- {v}: {reason}")]
    InvalidEdge { u: usize, v: usize, reason: String },
    #[error("graph has no nodes")]
    Empty,
    #[error("node {0} is not in the graph")]
    UnknownNode(usize),
}

/// An immutable undirected graph with strictly positive, finite edge weights.
///
/// Invariants: every edge appears in both endpoint adjacency lists with the same
/// weight, there are no self-loops and at most one edge per unordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    names: Vec<String>,
    adjacency: Vec<Vec<(NodeId, f64)>>,
    edge_count: usize,
}

impl WeightedGraph {
    /// Builds a graph with nodes named `"0"`, `"1"`, ... from `(u, v, w)` triples.
    pub fn from_edges(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, GraphError> {
        let names = (0..node_count).map(|i| i.to_string()).collect();
        Self::from_named_edges(names, edges)
    }

    pub fn from_named_edges(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, GraphError> {
        let n = names.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        let mut edge_count = 0;
        for (u, v, w) in edges {
            let invalid = |reason: &str| GraphError::InvalidEdge {
                u,
                v,
                reason: reason.to_string(),
            };
            if u >= n || v >= n {
                return Err(invalid("endpoint out of range"));
            }
            if u == v {
                return Err(invalid("self-loop"));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(invalid("weight must be positive and finite"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(invalid("duplicate edge"));
            }
            adjacency[u].push((NodeId(v), w));
            adjacency[v].push((NodeId(u), w));
            edge_count += 1;
        }
        Ok(Self {
            names,
            adjacency,
            edge_count,
        })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, f64)] {
        &self.adjacency[u.0]
    }

    #[inline]
    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u.0].len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId)
    }

    pub fn name(&self, u: NodeId) -> &str {
        &self.names[u.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|n| n == name).map(NodeId)
    }

    pub fn contains(&self, u: NodeId) -> bool {
        u.0 < self.node_count()
    }

    pub fn check_node(&self, u: NodeId) -> Result<(), GraphError> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(u.0))
        }
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        self.adjacency[u.0]
            .iter()
            .find(|&&(x, _)| x == v)
            .map(|&(_, w)| w)
    }

    /// Each undirected edge once, as `(u, v, w)` with `u < v`, ordered by `u` then adjacency order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .filter(move |&&(v, _)| u < v.0)
                .map(move |&(v, w)| (NodeId(u), v, w))
        })
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_weight(&self) -> Option<f64> {
        self.edges().map(|(_, _, w)| w).reduce(f64::max)
    }

    /// Number of distinct edge weights `W`, compared by exact numeric equality.
    pub fn distinct_weight_count(&self) -> usize {
        self.edges()
            .map(|(_, _, w)| w.to_bits())
            .collect::<HashSet<_>>()
            .len()
    }

    /// Connected components, largest first.
    pub fn components(&self) -> ComponentPartition {
        let n = self.node_count();
        let mut raw = vec![usize::MAX; n];
        let mut members: Vec<Vec<NodeId>> = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if raw[start] != usize::MAX {
                continue;
            }
            let id = members.len();
            let mut comp = vec![NodeId(start)];
            raw[start] = id;
            queue.push_back(NodeId(start));
            while let Some(u) = queue.pop_front() {
                for &(v, _) in self.neighbors(u) {
                    if raw[v.0] == usize::MAX {
                        raw[v.0] = id;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            members.push(comp);
        }
        // Components were discovered in order of their smallest node, so a stable
        // sort by size keeps the smallest-node tie rule.
        let mut order: Vec<usize> = (0..members.len()).collect();
        order.sort_by(|&a, &b| members[b].len().cmp(&members[a].len()));
        let mut relabel = vec![0; members.len()];
        for (new_id, &old) in order.iter().enumerate() {
            relabel[old] = new_id;
        }
        let component_of = raw.into_iter().map(|c| relabel[c]).collect();
        let members = order.into_iter().map(|i| std::mem::take(&mut members[i])).collect();
        ComponentPartition {
            component_of,
            members,
        }
    }

    /// The induced subgraph of the largest connected component. Ties go to the
    /// component containing the smallest node index.
    pub fn giant_component(&self) -> Result<WeightedGraph, GraphError> {
        if self.node_count() == 0 {
            return Err(GraphError::Empty);
        }
        let parts = self.components();
        Ok(self.induced_subgraph(&parts.members[0]))
    }

    /// Induced subgraph on `nodes` (in the given order); names are carried over.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> WeightedGraph {
        let mut index = vec![usize::MAX; self.node_count()];
        for (i, &u) in nodes.iter().enumerate() {
            index[u.0] = i;
        }
        let names = nodes.iter().map(|&u| self.names[u.0].clone()).collect();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        let mut edge_count = 0;
        for (i, &u) in nodes.iter().enumerate() {
            for &(v, w) in self.neighbors(u) {
                let j = index[v.0];
                if j != usize::MAX {
                    adjacency[i].push((NodeId(j), w));
                    if i < j {
                        edge_count += 1;
                    }
                }
            }
        }
        WeightedGraph {
            names,
            adjacency,
            edge_count,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() <= 1 || self.components().members.len() == 1
    }
}

/// Connected-component labelling. Component `0` is the giant component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub component_of: Vec<usize>,
    /// Members of each component (ascending node order), components sorted by size descending.
    pub members: Vec<Vec<NodeId>>,
}

impl ComponentPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }
}

/// Parses a whitespace- or comma-separated `u v value` edge list. `#` starts a comment.
pub fn parse_edge_list(text: &str, mode: WeightMode) -> Result<WeightedGraph, GraphError> {
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 3 {
            return Err(GraphError::Malformed {
                line,
                reason: format!("expected 3 fields `u v value`, found {}", tokens.len()),
            });
        }
        let (a, b, value) = (tokens[0], tokens[1], tokens[2]);
        let weight = match mode {
            WeightMode::Weights => {
                let w: f64 = value.parse().map_err(|_| GraphError::Malformed {
                    line,
                    reason: format!("cannot parse weight `{value}`"),
                })?;
                if !w.is_finite() || w <= 0.0 {
                    return Err(GraphError::NonPositive {
                        line,
                        value: value.to_string(),
                    });
                }
                w
            }
            WeightMode::Multiplicities => {
                let m: i64 = value.parse().map_err(|_| GraphError::Malformed {
                    line,
                    reason: format!("multiplicity `{value}` is not an integer"),
                })?;
                if m <= 0 {
                    return Err(GraphError::NonPositive {
                        line,
                        value: value.to_string(),
                    });
                }
                1.0 / m as f64
            }
        };
        if a == b {
            return Err(GraphError::SelfLoop {
                line,
                node: a.to_string(),
            });
        }
        let mut intern = |name: &str| -> usize {
            *ids.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        let u = intern(a);
        let v = intern(b);
        if seen.insert((u.min(v), u.max(v)), line).is_some() {
            return Err(GraphError::DuplicateEdge {
                line,
                u: a.to_string(),
                v: b.to_string(),
            });
        }
        edges.push((u, v, weight));
    }
    WeightedGraph::from_named_edges(names, edges)
}

/// Writes the graph as a weights-mode edge list that [`parse_edge_list`] reads
/// back bit-exactly. Isolated nodes cannot be represented and are dropped.
pub fn to_edge_list(g: &WeightedGraph) -> String {
    let mut out = String::new();
    for (u, v, w) in g.edges() {
        // `{}` on f64 prints the shortest representation that round-trips.
        let _ = writeln!(out, "{} {} {}", g.name(u), g.name(v), w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_weights() {
        let g = parse_edge_list("a b 1\nb c 0.5", WeightMode::Weights).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        let b = g.node_by_name("b").unwrap();
        let c = g.node_by_name("c").unwrap();
        assert_eq!(g.weight(b, c), Some(0.5));
        assert_eq!(g.weight(c, b), Some(0.5));
    }

    #[test]
    fn parses_multiplicities() {
        let g = parse_edge_list("n1 n2 4", WeightMode::Multiplicities).unwrap();
        assert_eq!(g.weight(NodeId(0), NodeId(1)), Some(0.25));
    }

    #[test]
    fn comments_commas_and_blank_lines() {
        let text = "# header\n\na,b,1\nb, c  2 # trailing\n   \n";
        let g = parse_edge_list(text, WeightMode::Weights).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.names(), &["a", "b", "c"]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_edge_list("a b 1\na b 2", WeightMode::Weights),
            Err(GraphError::DuplicateEdge { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("a b 1\nb a 2", WeightMode::Weights),
            Err(GraphError::DuplicateEdge { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("a a 1", WeightMode::Weights),
            Err(GraphError::SelfLoop { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("a b 0", WeightMode::Weights),
            Err(GraphError::NonPositive { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("a b -1", WeightMode::Weights),
            Err(GraphError::NonPositive { .. })
        ));
        assert!(matches!(
            parse_edge_list("x y 1\na b", WeightMode::Weights),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("a b 1.5", WeightMode::Multiplicities),
            Err(GraphError::Malformed { .. })
        ));
        assert!(matches!(
            parse_edge_list("a b 0", WeightMode::Multiplicities),
            Err(GraphError::NonPositive { .. })
        ));
        assert!(matches!(
            parse_edge_list("a b inf", WeightMode::Weights),
            Err(GraphError::NonPositive { .. })
        ));
    }

    #[test]
    fn giant_component_tie_goes_to_smallest_node() {
        let g = WeightedGraph::from_edges(
            6,
            [(3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0), (0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)],
        )
        .unwrap();
        let parts = g.components();
        assert_eq!(parts.sizes(), vec![3, 3]);
        assert_eq!(parts.members[0], vec![NodeId(0), NodeId(1), NodeId(2)]);
        let giant = g.giant_component().unwrap();
        assert_eq!(giant.names(), &["0", "1", "2"]);
        assert_eq!(giant.edge_count(), 3);
    }

    #[test]
    fn giant_component_drops_isolated_node() {
        let g =
            WeightedGraph::from_edges(6, [(1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 5, 0.5)])
                .unwrap();
        let giant = g.giant_component().unwrap();
        assert_eq!(giant.node_count(), 5);
        assert_eq!(giant.edge_count(), 4);
        assert!(giant.is_connected());
        assert_eq!(giant.names(), &["1", "2", "3", "4", "5"]);
        assert_eq!(g.components().component_of[0], 1);
    }

    #[test]
    fn empty_graph_has_no_giant() {
        let g = WeightedGraph::from_edges(0, []).unwrap();
        assert_eq!(g.giant_component(), Err(GraphError::Empty));
    }

    #[test]
    fn distinct_weights() {
        let unit = WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(unit.distinct_weight_count(), 1);
        let g = WeightedGraph::from_edges(
            5,
            [(0, 1, 1.0), (1, 2, 0.5), (2, 3, 0.5), (3, 4, 0.25)],
        )
        .unwrap();
        assert_eq!(g.distinct_weight_count(), 3);
        assert!(g.distinct_weight_count() <= g.edge_count());
    }

    #[test]
    fn from_edges_validates() {
        assert!(WeightedGraph::from_edges(2, [(0, 1, f64::NAN)]).is_err());
        assert!(WeightedGraph::from_edges(2, [(0, 2, 1.0)]).is_err());
        assert!(WeightedGraph::from_edges(2, [(0, 1, 1.0), (1, 0, 1.0)]).is_err());
    }
}
