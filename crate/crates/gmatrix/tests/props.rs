//! Structural invariants under randomized inputs.

mod common;

use proptest::prelude::*;

use gmatrix::google::{pagerank, GoogleOperator, RankTable};
use gmatrix::graph::{build_graph, transpose, NodeId};
use gmatrix::io::{read_edges, write_edge_file};
use gmatrix::rank::{density_grid, kendall_distance, restrict_common, theta_scores, Ranking};

/// Node count plus an arbitrary (possibly duplicated, self-looping) edge list.
fn graph_input() -> impl Strategy<Value = (usize, Vec<(NodeId, NodeId)>)> {
    (2usize..40).prop_flat_map(|n| {
        let edge = (0..n as NodeId, 0..n as NodeId);
        (Just(n), prop::collection::vec(edge, 0..200))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<u32>> {
    Just(n).prop_perturb(move |n, mut rng| {
        let mut ranks: Vec<u32> = (1..=n as u32).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            ranks.swap(i, j);
        }
        ranks
    })
}

proptest! {
    #[test]
    fn transpose_swaps_degrees_and_is_an_involution((n, edges) in graph_input()) {
        let g = build_graph(n, edges).unwrap();
        let t = transpose(&g);
        prop_assert_eq!(t.edge_count(), g.edge_count());
        for node in 0..n as NodeId {
            prop_assert_eq!(t.out_degree(node), g.in_degree(node));
            prop_assert_eq!(t.in_degree(node), g.out_degree(node));
        }
        prop_assert_eq!(transpose(&t), g);
    }

    #[test]
    fn edge_file_round_trip_reproduces_the_graph((n, edges) in graph_input()) {
        let g = build_graph(n, edges).unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        write_edge_file(&g, file.path()).unwrap();
        let (read_back, n_seen) = read_edges(file.path()).unwrap();
        // The file cannot carry trailing isolated nodes, so rebuild with the
        // original count.
        prop_assert!(n_seen <= n);
        let g2 = build_graph(n, read_back).unwrap();
        prop_assert_eq!(g2, g);
    }

    #[test]
    fn apply_preserves_total_mass((n, edges) in graph_input(), raw in prop::collection::vec(0.001f64..1.0, 40)) {
        let g = build_graph(n, edges).unwrap();
        let op = GoogleOperator::new(&g, 0.85).unwrap();
        let total: f64 = raw[..n].iter().sum();
        let v: Vec<f64> = raw[..n].iter().map(|x| x / total).collect();
        let out = op.apply(&v).unwrap();
        let sum: f64 = out.iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-13);
    }

    #[test]
    fn pagerank_is_a_fixed_point_with_floor((n, edges) in graph_input()) {
        let g = build_graph(n, edges).unwrap();
        let op = GoogleOperator::new(&g, 0.85).unwrap();
        let (p, _, report) = pagerank(&g, 0.85, 1e-12, 2000).unwrap();
        prop_assert!(report.converged);
        let applied = op.apply(&p.values).unwrap();
        let drift: f64 = applied.iter().zip(&p.values).map(|(a, b)| (a - b).abs()).sum();
        prop_assert!(drift <= 1e-11);
        let floor = 0.15 / n as f64;
        for &v in &p.values {
            prop_assert!(v >= floor * (1.0 - 1e-12));
        }
    }

    #[test]
    fn rank_table_is_a_bijection_sorted_by_probability(probs in prop::collection::vec(0.0f64..1.0, 1..60)) {
        let table = RankTable::from_probabilities(&probs);
        let order = table.order();
        for (k, &node) in order.iter().enumerate() {
            prop_assert_eq!(table.rank_of(node) as usize, k + 1);
        }
        for pair in order.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            prop_assert!(probs[a as usize] >= probs[b as usize]);
            if probs[a as usize] == probs[b as usize] {
                prop_assert!(a < b);
            }
        }
    }

    #[test]
    fn kendall_is_symmetric_and_matches_the_literal_sum(
        r1 in prop::collection::vec(1u32..20, 2..80),
        r2 in prop::collection::vec(1u32..20, 2..80),
    ) {
        let n = r1.len().min(r2.len());
        let (a, b) = (&r1[..n], &r2[..n]);
        let d = kendall_distance(a, b).unwrap();
        prop_assert_eq!(d, kendall_distance(b, a).unwrap());
        prop_assert!((d - common::kendall_literal(a, b)).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&d));
    }

    #[test]
    fn theta_ignores_edition_order(
        (p1, p2, p3) in (3usize..12).prop_flat_map(|n| (permutation(n), permutation(n), permutation(n)))
    ) {
        let names: Vec<String> = (0..p1.len()).map(|i| format!("n{i}")).collect();
        let mk = |code: &str, ranks: &[u32]| {
            Ranking::permutation(code, names.clone(), ranks.to_vec()).unwrap()
        };
        let forward = theta_scores(&[mk("A", &p1), mk("B", &p2), mk("C", &p3)]).unwrap();
        let shuffled = theta_scores(&[mk("C", &p3), mk("A", &p1), mk("B", &p2)]).unwrap();
        prop_assert_eq!(forward, shuffled);
    }

    #[test]
    fn restriction_preserves_relative_order(
        ranks_a in permutation(12),
        ranks_b in permutation(9),
    ) {
        let ents_a: Vec<String> = (0..12).map(|i| format!("e{i}")).collect();
        let ents_b: Vec<String> = (3..12).map(|i| format!("e{i}")).collect();
        let a = Ranking::permutation("A", ents_a, ranks_a).unwrap();
        let b = Ranking::permutation("B", ents_b, ranks_b).unwrap();
        let (ra, rb) = restrict_common(&a, &b).unwrap();
        prop_assert_eq!(ra.entities.clone(), rb.entities.clone());
        let find = |r: &Ranking, e: &str| {
            r.ranks[r.entities.iter().position(|x| x == e).unwrap()]
        };
        for i in 0..ra.len() {
            for j in (i + 1)..ra.len() {
                let (ei, ej) = (&ra.entities[i], &ra.entities[j]);
                prop_assert_eq!(
                    ra.ranks[i].cmp(&ra.ranks[j]),
                    find(&a, ei).cmp(&find(&a, ej))
                );
                prop_assert_eq!(
                    rb.ranks[i].cmp(&rb.ranks[j]),
                    find(&b, ei).cmp(&find(&b, ej))
                );
            }
        }
    }

    #[test]
    fn density_grid_partitions_the_nodes(probs in prop::collection::vec(0.0f64..1.0, 2..400)) {
        let pr = RankTable::from_probabilities(&probs);
        let reversed: Vec<f64> = probs.iter().map(|p| 1.0 - p).collect();
        let cr = RankTable::from_probabilities(&reversed);
        let grid = density_grid(&pr, &cr).unwrap();
        prop_assert_eq!(grid.total(), probs.len() as u64);
    }
}
