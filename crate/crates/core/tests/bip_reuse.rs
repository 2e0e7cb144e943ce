mod common;

use common::{random_graph, random_weights};
use embedreuse::bench::gen_weights;
use embedreuse::bip::{build_constraints, solve_bip};
use embedreuse::graph::{brute_force_mwis, generate_family, FamilySpec};
use embedreuse::WeightedGraph;

#[test]
fn one_constraint_set_serves_every_assignment() {
    for seed in 0..20 {
        let g = random_graph(14, 0.3, seed);
        let cs = build_constraints(&g);
        for w in gen_weights(g.n(), 10, seed) {
            let oracle = brute_force_mwis(&WeightedGraph::new(g.clone(), w.clone()).unwrap()).unwrap();
            let sol = solve_bip(&cs, &w).unwrap();
            assert!((sol.value - oracle.weight).abs() < 1e-9);
            assert!(cs.is_feasible(&sol.vertices));
        }
    }
}

#[test]
fn clique_value_is_the_heaviest_vertex() {
    let g = generate_family(FamilySpec::Complete { n: 8 }).unwrap();
    let cs = build_constraints(&g);
    for w in gen_weights(8, 100, 5) {
        let max = w.iter().copied().fold(0.0, f64::max);
        assert_eq!(solve_bip(&cs, &w).unwrap().value, max);
    }
}

#[test]
fn edgeless_value_is_the_total() {
    let g = embedreuse::Graph::edgeless(12).unwrap();
    let cs = build_constraints(&g);
    let w = random_weights(12, 8);
    let total: f64 = w.iter().sum();
    assert!((solve_bip(&cs, &w).unwrap().value - total).abs() < 1e-12);
}

#[test]
fn larger_sparse_graphs_finish() {
    let g = random_graph(60, 0.1, 1);
    let cs = build_constraints(&g);
    for w in gen_weights(60, 3, 2) {
        let sol = solve_bip(&cs, &w).unwrap();
        assert!(cs.is_feasible(&sol.vertices));
    }
}
