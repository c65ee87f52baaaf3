use std::collections::HashSet;

use shortwide::baseline::all_distances;
use shortwide::bottleneck::{reconstruct_from_label, reconstruct_path};
use shortwide::fixtures::{all_graphs, random_suite};
use shortwide::labels::bottleneck_product;
use shortwide::oracle::{enumerate_simple_paths, DEFAULT_MAX_NODES};
use shortwide::stats::DistanceDistribution;
use shortwide::{
    all_pairs_bottleneck, consolidate, one_to_all_bottleneck, AllPairsStrategy, Distance, Label,
    NodeId, WeightedGraph,
};

fn test_graphs() -> Vec<WeightedGraph> {
    let mut gs: Vec<WeightedGraph> = all_graphs().into_iter().map(|(_, g)| g).collect();
    gs.extend(random_suite(60, 77).into_iter().map(|(_, g)| g));
    gs
}

/// `(hops, max width)` of each prefix of `path`.
fn prefix_labels(g: &WeightedGraph, path: &[NodeId]) -> Vec<(u32, f64)> {
    let mut out: Vec<(u32, f64)> = vec![(0, 0.0)];
    for (k, pair) in path.windows(2).enumerate() {
        let w = g.weight(pair[0], pair[1]).expect("consecutive nodes are adjacent");
        out.push((k as u32 + 1, out[k].1.max(w)));
    }
    out
}

#[test]
fn weighted_at_most_bottleneck_everywhere() {
    for g in test_graphs() {
        let all = all_distances(&g, AllPairsStrategy::default());
        for (i, j, db) in all.bottleneck.upper_pairs() {
            let dw = all.weighted.get(i, j);
            assert_eq!(dw.is_finite(), db.is_finite());
            if let (Some(w), Some(b)) = (dw.value(), db.value()) {
                assert!(w <= b, "d_W {w} > d_B {b} at ({i},{j})");
            }
        }
    }
}

#[test]
fn bottleneck_at_most_geodesic_when_weights_at_most_one() {
    for g in test_graphs() {
        if g.max_weight().is_some_and(|w| w > 1.0) {
            continue;
        }
        let all = all_distances(&g, AllPairsStrategy::default());
        for (i, j, db) in all.bottleneck.upper_pairs() {
            if let (Some(b), Some(h)) = (db.value(), all.geodesic.get(i, j).value()) {
                assert!(b <= h, "d_B {b} > d_G {h} at ({i},{j})");
            }
        }
    }
}

#[test]
fn frontier_never_exceeds_distinct_weight_count() {
    for g in test_graphs() {
        let w = g.distinct_weight_count();
        for s in g.nodes() {
            let r = one_to_all_bottleneck(&g, s).unwrap();
            assert!(r.max_label_set_len() <= w);
            assert!(r.peak_frontier <= w);
        }
        let fw = all_pairs_bottleneck(&g, AllPairsStrategy::LabelsetFw);
        assert!(fw.max_label_set_len() <= w);
    }
}

#[test]
fn label_sets_equal_pareto_frontier_of_simple_paths() {
    for (_, g) in random_suite(25, 5) {
        let fw = all_pairs_bottleneck(&g, AllPairsStrategy::LabelsetFw);
        for s in g.nodes() {
            let r = one_to_all_bottleneck(&g, s).unwrap();
            for t in g.nodes() {
                if s == t {
                    continue;
                }
                let paths = enumerate_simple_paths(&g, s, t, DEFAULT_MAX_NODES).unwrap();
                let candidates = paths.iter().map(|p| {
                    let (h, w) = *prefix_labels(&g, p).last().unwrap();
                    Label::new(h, w)
                });
                let expected: Vec<(u32, u64)> = consolidate(candidates)
                    .iter()
                    .map(|l| (l.hops, l.max_width.to_bits()))
                    .collect();
                let key = |l: &Label| (l.hops, l.max_width.to_bits());
                let got: Vec<_> = r.label_sets[t.0].iter().map(key).collect();
                assert_eq!(got, expected, "one-to-all frontier {s}->{t}");
                let got_fw: Vec<_> = fw.label_set(s, t).iter().map(key).collect();
                assert_eq!(got_fw, expected, "all-pairs frontier {s}->{t}");
            }
        }
    }
}

#[test]
fn reconstructed_paths_are_simple_monotone_and_optimal() {
    for g in test_graphs() {
        for s in g.nodes() {
            let r = one_to_all_bottleneck(&g, s).unwrap();
            for t in g.nodes() {
                let Distance::Finite(d) = r.distance(t) else {
                    assert!(reconstruct_path(&r, t).is_err());
                    continue;
                };
                let path = reconstruct_path(&r, t).unwrap();
                assert_eq!(path.first(), Some(&s));
                assert_eq!(path.last(), Some(&t));
                let distinct: HashSet<_> = path.iter().collect();
                assert_eq!(distinct.len(), path.len(), "cycle in {path:?}");
                let labels = prefix_labels(&g, &path);
                for pair in labels.windows(2) {
                    assert!(pair[0].0 <= pair[1].0 && pair[0].1 <= pair[1].1);
                }
                let (h, w) = *labels.last().unwrap();
                assert_eq!(bottleneck_product(h, w), d);
                // Every frontier label names a real path with exactly its criteria.
                for (idx, l) in r.label_sets[t.0].iter().enumerate() {
                    let p = reconstruct_from_label(&r, t, idx).unwrap();
                    let &(h, w) = prefix_labels(&g, &p).last().unwrap();
                    assert_eq!((h, w), (l.hops, l.max_width));
                }
            }
        }
    }
}

#[test]
fn effective_diameter_at_most_diameter_on_fixtures() {
    for (name, g) in all_graphs() {
        let all = all_distances(&g, AllPairsStrategy::default());
        for kind in shortwide::DistanceKind::ALL {
            let d = DistanceDistribution::from_matrix(all.matrix(kind));
            let de = d.effective_diameter(0.95).unwrap();
            assert!(de <= d.diameter().unwrap().value, "{name} {}", kind.as_str());
        }
    }
}
