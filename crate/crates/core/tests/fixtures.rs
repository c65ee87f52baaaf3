use shortwide::baseline::all_distances;
use shortwide::bottleneck::reconstruct_path;
use shortwide::fixtures::{
    gamma_sample, graph, substructure_nodes, synthetic50_answers,
};
use shortwide::stats::{fit_gamma, DistanceDistribution, GammaFitOptions};
use shortwide::{one_to_all_bottleneck, AllPairsStrategy, Distance, DistanceKind};

#[test]
fn substructure_prefix_is_not_optimal() {
    let g = graph("substructure").unwrap();
    let [s, x, _a, t] = substructure_nodes(&g);
    let r = one_to_all_bottleneck(&g, s).unwrap();
    assert_eq!(r.distance(x), Distance::Finite(2.0));
    assert_eq!(r.distance(t), Distance::Finite(6.0));
    let path = reconstruct_path(&r, t).unwrap();
    assert_eq!(path, vec![s, x, t]);
    // The s -> x prefix of the optimal s -> t path is the direct edge, cost 1 * 3.
    assert_eq!(g.weight(s, x), Some(3.0));
    assert!(3.0 > r.distance(x).as_f64());
}

#[test]
fn synthetic50_matches_frozen_answers() {
    let g = graph("synthetic50").unwrap();
    let answers = synthetic50_answers();
    for strategy in [AllPairsStrategy::ParallelSssp, AllPairsStrategy::LabelsetFw] {
        let all = all_distances(&g, strategy);
        for a in &answers {
            let i = g.node_by_name(&a.source.to_string()).unwrap();
            let j = g.node_by_name(&a.target.to_string()).unwrap();
            for kind in DistanceKind::ALL {
                assert_eq!(
                    all.matrix(kind).get(i.0, j.0),
                    a.get(kind),
                    "{} {}-{}",
                    kind.as_str(),
                    a.source,
                    a.target
                );
            }
        }
    }
}

#[test]
fn triangle_and_star() {
    let tri = graph("triangle").unwrap();
    let a = tri.node_by_name("a").unwrap();
    let b = tri.node_by_name("b").unwrap();
    let r = one_to_all_bottleneck(&tri, a).unwrap();
    assert_eq!(r.distance(b), Distance::Finite(2.0));
    // (1 hop, width 5) and (2 hops, width 1) are incomparable.
    assert_eq!(r.label_sets[b.0].len(), 2);

    let star = graph("star").unwrap();
    let all = all_distances(&star, AllPairsStrategy::LabelsetFw);
    let d = DistanceDistribution::from_matrix(&all.bottleneck);
    assert_eq!(d.diameter().unwrap().value, 2.0);
    assert_eq!(d.len(), 10);
}

#[test]
fn gamma_fixture_recovery() {
    let d = DistanceDistribution::from_values(gamma_sample());
    let fit = fit_gamma(&d, &GammaFitOptions::default()).unwrap();
    assert!((fit.shape / 2.0 - 1.0).abs() <= 0.05, "{fit:?}");
    assert!((fit.scale / 3.0 - 1.0).abs() <= 0.05, "{fit:?}");
    assert_eq!(fit.location, 0.0);
}
