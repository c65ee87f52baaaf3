//! Small bundled graphs and samples with known answers.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::distance::{Distance, DistanceKind};
use crate::graph::{parse_edge_list, NodeId, WeightMode, WeightedGraph};

pub const TRIANGLE: &str = include_str!("../fixtures/triangle.edges");
pub const STAR: &str = include_str!("../fixtures/star.edges");
pub const PATH: &str = include_str!("../fixtures/path.edges");
pub const SUBSTRUCTURE: &str = include_str!("../fixtures/substructure.edges");
pub const SYNTHETIC50: &str = include_str!("../fixtures/synthetic50.edges");
pub const SYNTHETIC50_ANSWERS: &str = include_str!("../fixtures/synthetic50.answers.csv");
pub const GAMMA_SAMPLE: &str = include_str!("../fixtures/gamma_2_0_3.txt");

/// Bundled graphs by name.
pub const GRAPHS: [(&str, &str); 5] = [
    ("triangle", TRIANGLE),
    ("star", STAR),
    ("path", PATH),
    ("substructure", SUBSTRUCTURE),
    ("synthetic50", SYNTHETIC50),
];

pub fn graph(name: &str) -> Option<WeightedGraph> {
    GRAPHS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_edge_list(text, WeightMode::Weights).expect("bundled fixture parses"))
}

pub fn all_graphs() -> Vec<(&'static str, WeightedGraph)> {
    GRAPHS
        .iter()
        .map(|(n, t)| (*n, parse_edge_list(t, WeightMode::Weights).expect("bundled fixture parses")))
        .collect()
}

/// Node lookup in the four-node substructure fixture.
pub fn substructure_nodes(g: &WeightedGraph) -> [NodeId; 4] {
    ["s", "x", "a", "t"].map(|n| g.node_by_name(n).expect("fixture node"))
}

/// Draws from gamma(shape 2, location 0, scale 3).
pub fn gamma_sample() -> Vec<f64> {
    GAMMA_SAMPLE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.trim().parse().expect("numeric sample line"))
        .collect()
}

/// One row of frozen all-pairs answers for the 50-node fixture. Node names are
/// the integers `0..50`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrozenPair {
    pub source: usize,
    pub target: usize,
    pub geodesic: f64,
    pub weighted: f64,
    pub bottleneck: f64,
    pub minimax_width: f64,
}

impl FrozenPair {
    pub fn get(&self, kind: DistanceKind) -> Distance {
        Distance::Finite(match kind {
            DistanceKind::Geodesic => self.geodesic,
            DistanceKind::Weighted => self.weighted,
            DistanceKind::Bottleneck => self.bottleneck,
            DistanceKind::MinimaxWidth => self.minimax_width,
        })
    }
}

pub fn synthetic50_answers() -> Vec<FrozenPair> {
    SYNTHETIC50_ANSWERS
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let num = |i: usize| f[i].parse::<f64>().expect("numeric answer");
            FrozenPair {
                source: f[0].parse().expect("node index"),
                target: f[1].parse().expect("node index"),
                geodesic: num(2),
                weighted: num(3),
                bottleneck: num(4),
                minimax_width: num(5),
            }
        })
        .collect()
}

/// Edge weights for random test graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightRegime {
    /// Uniform over `{0.25, 0.5, 1}`.
    Discrete,
    /// Uniform on `(0, 1]`.
    Continuous,
}

/// A connected graph on `n` nodes: a random spanning tree plus each remaining
/// pair with probability `density`.
pub fn random_connected_graph<R: Rng + ?Sized>(
    n: usize,
    density: f64,
    regime: WeightRegime,
    rng: &mut R,
) -> WeightedGraph {
    let weight = |rng: &mut R| match regime {
        WeightRegime::Discrete => *[0.25, 0.5, 1.0].choose(rng).expect("non-empty"),
        WeightRegime::Continuous => 1.0 - rng.random::<f64>(),
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut joined = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for i in 1..n {
        let (u, v) = (order[i], order[rng.random_range(0..i)]);
        joined[u][v] = true;
        joined[v][u] = true;
        edges.push((u, v, weight(rng)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !joined[u][v] && rng.random_bool(density) {
                edges.push((u, v, weight(rng)));
            }
        }
    }
    WeightedGraph::from_edges(n, edges).expect("generated edges are valid")
}

/// `per_regime` connected graphs with 2 to 10 nodes for each weight regime,
/// reproducible from `seed`.
pub fn random_suite(per_regime: usize, seed: u64) -> Vec<(WeightRegime, WeightedGraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(2 * per_regime);
    for regime in [WeightRegime::Discrete, WeightRegime::Continuous] {
        for _ in 0..per_regime {
            let n = rng.random_range(2..=10);
            let density = rng.random_range(0.0..0.6);
            out.push((regime, random_connected_graph(n, density, regime, &mut rng)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        let gs = all_graphs();
        assert_eq!(gs.len(), GRAPHS.len());
        assert_eq!(graph("synthetic50").unwrap().node_count(), 50);
        assert_eq!(graph("synthetic50").unwrap().edge_count(), 55);
        assert!(graph("nope").is_none());
        assert_eq!(gamma_sample().len(), 10_000);
        assert_eq!(synthetic50_answers().len(), 50 * 49 / 2);
        let g = graph("substructure").unwrap();
        assert_eq!(substructure_nodes(&g).len(), 4);
    }

    #[test]
    fn suite_is_connected_and_reproducible() {
        let a = random_suite(30, 9);
        assert_eq!(a.len(), 60);
        assert!(a.iter().all(|(_, g)| g.is_connected()));
        assert!(a.iter().all(|(_, g)| g.edges().all(|(_, _, w)| w > 0.0 && w <= 1.0)));
        assert_eq!(a, random_suite(30, 9));
    }
}
