use num_bigint::BigInt;
use proptest::prelude::*;

use nullcore::analysis::{classify_vertices, core_split, is_slim, kernel_basis, nullity};
use nullcore::graph::{
    gen_random_bipartite, gen_random_graph, gen_random_tree, parse_edge_list, to_edge_list,
    SeededRng,
};
use nullcore::minimal_config::{bipartite_parity_check, is_minimal_configuration};
use nullcore::perturbation::{apply_and_report, candidate_edges};
use nullcore::trees::{
    cfvr_perfect_matching, inverse_subdivision, is_mc_tree, pendant_pair_check,
    subdivision_char_poly_identity, tree_nullity_identity,
};
use nullcore::{Graph, IntMatrix};

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, w)| (perm[u], perm[w])).collect();
    Graph::from_edges(g.n(), &edges).unwrap()
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = SeededRng::new(seed);
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.below(i as u64 + 1) as usize);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_trees_are_trees_and_reproducible(n in 1usize..40, seed: u64) {
        let t = gen_random_tree(n, seed).unwrap();
        prop_assert!(t.is_tree());
        prop_assert_eq!(t, gen_random_tree(n, seed).unwrap());
    }

    #[test]
    fn edge_list_round_trips(n in 1usize..12, seed: u64) {
        let g = gen_random_graph(n, 1, 2, seed).unwrap();
        prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn kernel_vectors_are_annihilated(n in 1usize..11, seed: u64) {
        let g = gen_random_graph(n, 1, 3, seed).unwrap();
        let a = g.adjacency_matrix::<BigInt>();
        let k = kernel_basis(&g);
        prop_assert_eq!(k.nullity(), nullity(&g));
        prop_assert_eq!(k.nullity() + a.rank(), n);
        for v in k.vectors() {
            prop_assert!(a.annihilates(v));
        }
        // fixed-width scalars give the same rank
        prop_assert_eq!(g.adjacency_matrix::<i64>().rank(), a.rank());
    }

    #[test]
    fn relabelling_permutes_the_nullspace(n in 1usize..10, seed: u64, pseed: u64) {
        let g = gen_random_graph(n, 1, 3, seed).unwrap();
        let perm = shuffled(n, pseed);
        let h = relabel(&g, &perm);
        let (kg, sg) = core_split(&g);
        let (kh, sh) = core_split(&h);
        let mut moved: Vec<usize> = sg.cv.iter().map(|&v| perm[v]).collect();
        moved.sort_unstable();
        prop_assert_eq!(moved, sh.cv);
        // the moved kernel vectors are independent, annihilated by the
        // relabelled graph and as many as its nullity, so they span its kernel
        prop_assert_eq!(kg.nullity(), kh.nullity());
        let ah = h.adjacency_matrix::<BigInt>();
        let moved: Vec<Vec<BigInt>> = kg
            .vectors()
            .iter()
            .map(|v| {
                let mut x = vec![BigInt::from(0); n];
                for (i, e) in v.iter().enumerate() {
                    x[perm[i]] = e.clone();
                }
                x
            })
            .collect();
        for x in &moved {
            prop_assert!(ah.annihilates(x));
        }
        if !moved.is_empty() {
            prop_assert_eq!(IntMatrix::from_rows(moved).unwrap().rank(), kh.nullity());
        }
    }

    #[test]
    fn bipartite_rank_doubles(n1 in 1usize..7, n2 in 0usize..7, seed: u64) {
        let g = gen_random_bipartite(n1, n2, 1, 2, seed).unwrap();
        let p = bipartite_parity_check(&g).unwrap();
        prop_assert!(p.holds());
        prop_assert_eq!(p.nullity, nullity(&g));
    }

    #[test]
    fn tree_invariants(n in 1usize..16, seed: u64) {
        let t = gen_random_tree(n, seed).unwrap();
        prop_assert!(tree_nullity_identity(&t).unwrap().all_equal);
        let part = classify_vertices(&t);
        prop_assert!(part.independent_cv);
        if part.nullity > 0 {
            for w in t.end_vertices() {
                let c = pendant_pair_check(&t, w).unwrap();
                prop_assert!(c.nullity_preserved && c.types_preserved);
            }
            prop_assert!(cfvr_perfect_matching(&t).unwrap().is_some());
        }
        prop_assert!(is_mc_tree(&t).unwrap().characterizations_agree());
    }

    #[test]
    fn subdivision_round_trips(n in 1usize..13, seed: u64) {
        let t = gen_random_tree(n, seed).unwrap();
        let (s, prov) = t.subdivision().unwrap();
        let (back, back_prov) = inverse_subdivision(&s).unwrap().unwrap();
        prop_assert_eq!(&back, &t);
        for v in 0..n {
            prop_assert_eq!(prov.source_vertex(back_prov.source_vertex(v).unwrap()), Some(v));
        }
        prop_assert!(is_minimal_configuration(&s).is_mc);
        prop_assert!(is_slim(&s));
    }

    #[test]
    fn subdivision_char_poly_on_connected_graphs(n in 1usize..7, seed: u64) {
        let g = gen_random_graph(n, 2, 3, seed).unwrap();
        prop_assume!(g.is_connected());
        prop_assert!(subdivision_char_poly_identity(&g).unwrap());
    }

    #[test]
    fn minimal_configurations_are_connected(n in 2usize..9, seed: u64) {
        let g = gen_random_graph(n, 1, 3, seed).unwrap();
        if is_minimal_configuration(&g).is_mc {
            prop_assert!(g.is_connected());
        }
    }

    #[test]
    fn tree_perturbation_reports_are_consistent(n in 1usize..10, seed: u64) {
        let t = gen_random_tree(n, seed).unwrap();
        for e in candidate_edges(&t) {
            let r = apply_and_report(&t, &e).unwrap();
            prop_assert!(r.consistent(), "{:?}", r.to_json());
            if r.preserved.nullspace {
                prop_assert!(r.preserved.cv_set);
            }
        }
    }
}
