use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shortwide::baseline::{all_distances, AllDistances};
use shortwide::fixtures::{random_connected_graph, random_suite, WeightRegime};
use shortwide::oracle::{oracle_all_pairs, DEFAULT_MAX_NODES};
use shortwide::{all_pairs_bottleneck, AllPairsStrategy, DistanceKind, WeightedGraph};

fn assert_matches_oracle(g: &WeightedGraph, computed: &AllDistances, oracle: &AllDistances) {
    for kind in DistanceKind::ALL {
        let (c, o) = (computed.matrix(kind), oracle.matrix(kind));
        for i in 0..g.node_count() {
            for j in 0..g.node_count() {
                assert_eq!(c.get(i, j), o.get(i, j), "{} ({i},{j}) on {g:?}", kind.as_str());
            }
        }
    }
}

#[test]
fn both_strategies_match_enumeration_on_random_suite() {
    let suite = random_suite(60, 2024);
    assert!(suite.len() >= 100);
    for (_, g) in &suite {
        let oracle = oracle_all_pairs(g, DEFAULT_MAX_NODES).unwrap();
        for strategy in [AllPairsStrategy::ParallelSssp, AllPairsStrategy::LabelsetFw] {
            assert_matches_oracle(g, &all_distances(g, strategy), &oracle);
        }
    }
}

#[test]
fn disconnected_graphs_match_enumeration() {
    let g = WeightedGraph::from_edges(
        7,
        [(0, 1, 0.5), (1, 2, 0.25), (0, 2, 1.0), (3, 4, 0.75), (4, 5, 0.3)],
    )
    .unwrap();
    let oracle = oracle_all_pairs(&g, DEFAULT_MAX_NODES).unwrap();
    for strategy in [AllPairsStrategy::ParallelSssp, AllPairsStrategy::LabelsetFw] {
        assert_matches_oracle(&g, &all_distances(&g, strategy), &oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strategies_agree_with_oracle(
        seed in any::<u64>(),
        n in 2usize..=9,
        density in 0.0f64..0.7,
        continuous in any::<bool>(),
    ) {
        let regime = if continuous { WeightRegime::Continuous } else { WeightRegime::Discrete };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected_graph(n, density, regime, &mut rng);
        let oracle = oracle_all_pairs(&g, DEFAULT_MAX_NODES).unwrap();
        let fw = all_pairs_bottleneck(&g, AllPairsStrategy::LabelsetFw);
        let sssp = all_pairs_bottleneck(&g, AllPairsStrategy::ParallelSssp);
        prop_assert_eq!(&fw.distances, &oracle.bottleneck);
        prop_assert_eq!(&sssp.distances, &oracle.bottleneck);
    }
}
