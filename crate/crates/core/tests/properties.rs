use std::collections::BTreeMap;

use proptest::prelude::*;

use linforest::coloring::{is_good, restrict};
use linforest::families::{random_lists, random_medial, random_planar_girth6, random_sparse_girth6};
use linforest::oracle::{self, Mode, Property, Query, SearchOptions};
use linforest::paths::check_face_structure;
use linforest::reducer::{augment_to_maximal, solve, solve_with, SolverOptions};
use linforest::{io, ListAssignment, PlanarGraph, Vertex};

fn uniform(g: &PlanarGraph) -> ListAssignment {
    ListAssignment::uniform(g, &[0, 1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_output_is_good_and_on_lists(n in 6usize..600, seed in any::<u64>(), adversarial in any::<bool>()) {
        let g = random_planar_girth6(n, seed).unwrap();
        let lists = if adversarial { random_lists(&g, 5, seed).unwrap() } else { uniform(&g) };
        for threshold in [0, 14] {
            let s = solve_with(&g, &lists, SolverOptions { threshold, ..SolverOptions::default() }).unwrap();
            prop_assert!(s.coloring.respects(&g, &lists));
            prop_assert!(is_good(&g, &s.coloring, 14).unwrap());
        }
    }

    #[test]
    fn medial_graphs_solve(base in 4usize..40, chords in 0usize..300, seed in any::<u64>()) {
        let g = random_medial(base, chords, seed).unwrap();
        let lists = random_lists(&g, 3, seed).unwrap();
        let s = solve_with(&g, &lists, SolverOptions { threshold: 0, ..SolverOptions::default() }).unwrap();
        prop_assert!(is_good(&g, &s.coloring, 14).unwrap());
        prop_assert_eq!(s.report.extensions_checked, s.report.configurations.iter().sum::<usize>());
    }

    #[test]
    fn augmentation_keeps_girth_and_restricts_soundly(base in 4usize..30, seed in any::<u64>()) {
        let g = random_medial(base, 0, seed).unwrap();
        let aug = augment_to_maximal(&g).unwrap();
        prop_assert!(aug.girth().unwrap() >= 6);
        prop_assert!(check_face_structure(&aug).is_ok());
        for (u, v) in g.edges() {
            prop_assert!(aug.has_edge(u, v));
        }
        let c = solve(&aug, &uniform(&aug)).unwrap();
        prop_assert!(is_good(&g, &restrict(&c, &g), 14).unwrap());
    }

    #[test]
    fn deletion_keeps_ids_and_girth(n in 6usize..200, seed in any::<u64>(), k in 1usize..20) {
        let g = random_planar_girth6(n, seed).unwrap();
        let gone: Vec<Vertex> = g.vertices().step_by(k).collect();
        let h = g.delete_vertices(&gone).unwrap();
        prop_assert!(h.check_invariants().is_ok());
        prop_assert_eq!(h.vertex_count(), g.vertex_count() - gone.len());
        for v in h.vertices() {
            prop_assert!(g.contains(v));
        }
        prop_assert!(h.girth().is_none_or(|x| x >= g.girth().unwrap_or(usize::MAX)));
    }

    #[test]
    fn graph_json_round_trips(n in 6usize..300, seed in any::<u64>()) {
        let g = random_planar_girth6(n, seed).unwrap();
        let text = io::graph_to_json(&g, &BTreeMap::new());
        let back = io::graph_from_json(&text).unwrap().graph;
        prop_assert!(back.same_embedding(&g));
        prop_assert_eq!(io::graph_to_json(&back, &BTreeMap::new()), text);
    }

    #[test]
    fn pruning_does_not_change_existence(n in 1usize..=10, seed in any::<u64>(), k in 1usize..4, which in 0usize..4) {
        let g = random_sparse_girth6(n, seed).unwrap();
        let lists = if seed % 2 == 0 { uniform(&g) } else { random_lists(&g, 3, seed).unwrap() };
        let property = match which {
            0 => Property::Good { max_len: k - 1 },
            1 => Property::PkFree { k: k + 1 },
            2 => Property::Fragmented { k },
            _ => Property::Defective { k: k - 1 },
        };
        let q = Query { property, mode: Mode::Exists };
        let pruned = oracle::search(&g, &lists, q, SearchOptions::default()).unwrap();
        let plain = oracle::search(&g, &lists, q, SearchOptions { unpruned: true, ..SearchOptions::default() }).unwrap();
        prop_assert_eq!(pruned.witness.is_some(), plain.witness.is_some());
        if let Some(w) = &pruned.witness {
            prop_assert!(property.holds(&g, w).unwrap());
            prop_assert!(w.respects(&g, &lists));
        }
    }
}
