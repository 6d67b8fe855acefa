use std::collections::BTreeSet;

use acquaintance::ac_one::{random_matching, structure_audit};
use acquaintance::bounds::full_report;
use acquaintance::dynamics::{is_witness, parse_strategy, simulate, validate_matching, write_strategy, Matching};
use acquaintance::exact::exact_ac;
use acquaintance::graph::{is_simple_path, long_path, parse_graph, write_graph, Graph, Tree, Vertex};
use acquaintance::hardness::{plant_equicolorable, reduce};
use acquaintance::strategies::{
    ac_upper_general, best_strategy, dfs_baseline, path_strategy, route_on_tree, RoutingTask,
};
use proptest::prelude::*;

/// Connected graph: a random recursive tree plus extra edges.
fn connected(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
            (Just(n), parents, proptest::collection::vec(any::<bool>(), n * n))
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(Vertex, Vertex)> = parents.iter().enumerate().map(|(i, &p)| (i + 1, p)).collect();
            for u in 0..n {
                for v in u + 1..n {
                    if extra[u * n + v] && !edges.contains(&(v, u)) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, edges).unwrap()
        })
}

fn tree(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| (1..n).map(|i| 0..i).collect::<Vec<_>>())
        .prop_map(|parents| {
            let n = parents.len() + 1;
            Graph::new(n, parents.iter().enumerate().map(|(i, &p)| (i + 1, p))).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matching_is_normalised(pairs in proptest::collection::vec((0usize..20, 0usize..20), 0..8)) {
        let m = Matching::new(pairs.clone());
        let flipped = Matching::new(pairs.iter().rev().map(|&(a, b)| (b, a)));
        prop_assert_eq!(&m, &flipped);
        prop_assert!(m.pairs().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(m.pairs().iter().all(|&(a, b)| a <= b));
        prop_assert_eq!(Matching::new(m.pairs().to_vec()), m);
    }

    #[test]
    fn graph_text_round_trip(g in connected(12)) {
        let back = parse_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn baseline_witness_round_trips_and_reverses(g in connected(12)) {
        let s = dfs_baseline(&g).unwrap();
        prop_assert!(is_witness(&g, &s));
        prop_assert!(is_witness(&g, &s.reverse()));
        let (back, _) = parse_strategy(&write_strategy(&s, None), &g).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn general_and_best_strategies_verify(g in connected(16)) {
        let general = ac_upper_general(&g).unwrap();
        prop_assert!(is_witness(&g, &general.strategy));
        let best = best_strategy(&g).unwrap();
        prop_assert!(is_witness(&g, &best.strategy));
        prop_assert!(best.strategy.len() <= general.strategy.len());
    }

    #[test]
    fn tree_routing_envelope(
        g in tree(30),
        picks in proptest::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 1..8),
        root in any::<prop::sample::Index>(),
    ) {
        let n = g.n();
        let sources: Vec<Vertex> = picks.iter().map(|p| p.0.index(n)).collect::<BTreeSet<_>>().into_iter().collect();
        let mut targets: Vec<Vertex> = picks.iter().map(|p| p.1.index(n)).collect::<BTreeSet<_>>().into_iter().collect();
        targets.truncate(sources.len());
        let mut fill = 0;
        while targets.len() < sources.len() {
            if !targets.contains(&fill) {
                targets.push(fill);
            }
            fill += 1;
        }
        let task = RoutingTask { tree: Tree::new(g.clone(), root.index(n)).unwrap(), sources: sources.clone(), targets: targets.clone() };
        let s = route_on_tree(&task).unwrap();
        prop_assert!(s.len() <= task.ell() + 2 * (task.k() - 1));
        let end = simulate(&g, &s).unwrap().final_placement;
        let landed: BTreeSet<Vertex> = (0..n).filter(|&v| sources.contains(&end[v])).collect();
        prop_assert_eq!(landed, targets.into_iter().collect::<BTreeSet<_>>());
    }

    #[test]
    fn bounds_never_exceed_exact(g in connected(6)) {
        let exact = exact_ac(&g, 8).unwrap().value().unwrap();
        let report = full_report(&g).unwrap();
        prop_assert!(report.best_lower <= exact);
        if exact <= 1 {
            prop_assert!(structure_audit(&g, None).unwrap().passed());
        }
    }

    #[test]
    fn random_matchings_are_matchings(g in connected(14), seed in any::<u64>(), keep in any::<u16>()) {
        let u: Vec<Vertex> = (0..g.n()).filter(|&v| keep >> (v % 16) & 1 == 1).collect();
        let m = random_matching(&g, &u, seed);
        prop_assert!(validate_matching(&g, &m).is_ok());
        prop_assert!(m.pairs().iter().all(|&(a, b)| u.contains(&a) || u.contains(&b)));
    }

    #[test]
    fn long_paths_are_simple(g in connected(20), seed in any::<u64>()) {
        let p = long_path(&g, 2_000, seed);
        prop_assert!(!p.is_empty());
        prop_assert!(is_simple_path(&g, &p));
    }

    #[test]
    fn strategy_reversal_undoes_placement(n in 2usize..30) {
        let s = path_strategy(n);
        let g = Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap();
        let there_and_back = s.concat(&s.reverse());
        let end = simulate(&g, &there_and_back).unwrap().final_placement;
        prop_assert!(end.iter().enumerate().all(|(v, &a)| v == a));
    }
}

#[test]
fn reduction_graph_structure() {
    for seed in 0..10 {
        let cg = plant_equicolorable(6, 3, 0.5, seed).unwrap();
        let g = cg.graph();
        let (h, w) = reduce(&cg, 2).unwrap();
        assert_eq!(h.n(), 18);
        assert!(is_witness(&h, &w));
        for u in 0..h.n() {
            for v in u + 1..h.n() {
                let expected = match (u < 6, v < 6) {
                    (true, true) => !g.has_edge(u, v),
                    (true, false) => true,
                    // blocks of n / K = 2 vertices are independent
                    _ => (u - 6) / 2 != (v - 6) / 2,
                };
                assert_eq!(h.has_edge(u, v), expected, "seed {seed} pair ({u}, {v})");
            }
        }
    }
}
