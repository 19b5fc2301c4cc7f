//! Sign-sensitive checks: the signed correspondence between mixed Dodgson
//! polynomials and spanning-forest polynomials for three edges at a common
//! vertex, and the two-level rearrangement identity on the three-edge
//! auxiliary configuration.

use gpforest::forest;
use gpforest::graph::{self, Graph};
use gpforest::identities;
use gpforest::kirchhoff;
use gpforest::rng::SplitMix64;

/// The augmented graph with three leading edges at the first marked vertex:
/// edge 1 out to the second, edge 2 in from the third, edge 3 out to the
/// fourth.
fn augmented(g: &Graph) -> Graph {
    let m = g.marked();
    g.augment_front(&[(m[0], m[1]), (m[2], m[0]), (m[0], m[3])])
        .unwrap()
}

#[test]
fn signed_pair_check_on_augmented_k5() {
    // k5 keeps vertex 5 unmarked, so the removed vertex stays clear of all
    // edge endpoints for every pair.
    let h = augmented(&graph::complete(5));
    assert_eq!(h.removed_vertex(), 5);
    for (i, j, k) in [
        (1, 2, 3),
        (2, 1, 3),
        (1, 3, 2),
        (3, 1, 2),
        (2, 3, 1),
        (3, 2, 1),
    ] {
        assert!(
            kirchhoff::dodgson_signed_pair_check(&h, i, j, k).unwrap(),
            "pair ({i},{j},{k})"
        );
    }
}

#[test]
fn signed_pair_check_on_augmented_k4() {
    // All four vertices are marked, so the removed vertex must be the
    // outer endpoint of the third edge, pair by pair.
    let h = augmented(&graph::complete(4));
    // Edge endpoints at vertex 1: w1 = 2 (edge 1), w2 = 3 (edge 2), w3 = 4.
    for (i, j, k, removed) in [
        (1, 2, 3, 4),
        (2, 1, 3, 4),
        (1, 3, 2, 3),
        (3, 1, 2, 3),
        (2, 3, 1, 2),
        (3, 2, 1, 2),
    ] {
        let h = h.with_removed_vertex(removed).unwrap();
        assert!(
            kirchhoff::dodgson_signed_pair_check(&h, i, j, k).unwrap(),
            "pair ({i},{j},{k})"
        );
    }
}

#[test]
fn signed_pair_check_rejects_bad_removed_vertex() {
    let h = augmented(&graph::complete(4)).with_removed_vertex(1).unwrap();
    assert!(kirchhoff::dodgson_signed_pair_check(&h, 1, 2, 3).is_err());
}

#[test]
fn mixed_dodgson_on_the_triangle_is_a_signed_unit() {
    // Edges 1 and 2 of the triangle share vertex 2 with opposite
    // orientations there, and the two-row identity forces the square of
    // psi^{1,2} to be 1, so the value is the sign alone. Zeroing the third
    // variable changes nothing.
    let g = graph::triangle();
    let d11 = kirchhoff::dodgson(&g, &[1], &[1], &[]).unwrap();
    let d22 = kirchhoff::dodgson(&g, &[2], &[2], &[]).unwrap();
    let dboth = kirchhoff::dodgson(&g, &[1, 2], &[1, 2], &[]).unwrap();
    let d12 = kirchhoff::dodgson(&g, &[1], &[2], &[3]).unwrap();
    assert_eq!(d11.mul(&d22).sub(&kirchhoff::psi(&g).mul(&dboth)), d12.mul(&d12));
    assert_eq!(d12, gpforest::poly::Polynomial::constant(-1));
}

/// Star on a center with three leaves plus a path closing the leaves, with
/// seeded random orientations everywhere.
fn star_with_closed_leaves(seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut orient = |a: usize, b: usize| if rng.bool() { (a, b) } else { (b, a) };
    let edges = vec![
        orient(1, 2),
        orient(1, 3),
        orient(1, 4),
        orient(2, 3),
        orient(3, 4),
    ];
    Graph::new(4, edges, vec![], None).unwrap()
}

#[test]
fn signed_pair_check_on_random_orientations() {
    for seed in 0..50 {
        let g = star_with_closed_leaves(seed);
        // Edges 1,2,3 meet at vertex 1 with outer endpoints 2,3,4; the
        // removed vertex must be the third leaf for each pair.
        for (i, j, k, removed) in [(1, 2, 3, 4), (1, 3, 2, 3), (2, 3, 1, 2)] {
            let g = g.with_removed_vertex(removed).unwrap();
            assert!(
                kirchhoff::dodgson_signed_pair_check(&g, i, j, k).unwrap(),
                "seed {seed}, pair ({i},{j},{k})"
            );
        }
    }
}

#[test]
fn signed_pair_check_on_star_with_leaf_triangle() {
    // A full triangle closing the leaves instead of a path.
    let g = Graph::new(
        4,
        vec![(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (4, 2)],
        vec![],
        None,
    )
    .unwrap();
    for (i, j, k, removed) in [(1, 2, 3, 4), (1, 3, 2, 3), (2, 3, 1, 2)] {
        let g = g.with_removed_vertex(removed).unwrap();
        assert!(
            kirchhoff::dodgson_signed_pair_check(&g, i, j, k).unwrap(),
            "pair ({i},{j},{k})"
        );
    }
}

#[test]
fn forest_expansion_check_on_random_orientations() {
    for seed in 0..50 {
        let g = star_with_closed_leaves(seed).with_removed_vertex(4).unwrap();
        assert!(
            forest::forest_expansion_of_dodgson_check(&g, 1, 2).unwrap(),
            "seed {seed}"
        );
        assert!(
            forest::forest_expansion_of_dodgson_check(&g, 2, 1).unwrap(),
            "seed {seed} swapped"
        );
    }
}

#[test]
fn forest_expansion_check_on_augmented_graphs() {
    for base in [graph::complete(4), graph::complete(5)] {
        let h = augmented(&base);
        let h = if h.marked().contains(&h.removed_vertex()) {
            h.with_removed_vertex(4).unwrap()
        } else {
            h
        };
        assert!(forest::forest_expansion_of_dodgson_check(&h, 1, 2).unwrap());
    }
}

#[test]
fn orientation_flip_negates_the_dodgson_polynomial() {
    let g = star_with_closed_leaves(3).with_removed_vertex(4).unwrap();
    let flipped = {
        let mut edges = g.edges().to_vec();
        edges[0] = (edges[0].1, edges[0].0);
        Graph::new(4, edges, vec![], Some(4)).unwrap()
    };
    // The signed relation holds on both, so the polynomial itself flips.
    assert!(forest::forest_expansion_of_dodgson_check(&g, 1, 2).unwrap());
    assert!(forest::forest_expansion_of_dodgson_check(&flipped, 1, 2).unwrap());
    let d = kirchhoff::dodgson(&g, &[1], &[2], &[]).unwrap();
    let d_flipped = kirchhoff::dodgson(&flipped, &[1], &[2], &[]).unwrap();
    assert!(!d.is_zero());
    assert_eq!(d_flipped, d.neg());
}

/// The three-edge configuration driving the quadratic A/B identities: a
/// graph with four marked vertices and leading edges 1 to the fourth,
/// 2 to the second and 3 to the third marked vertex, all at the first.
fn abx_graph(g: &Graph) -> Graph {
    let m = g.marked();
    g.augment_front(&[(m[0], m[3]), (m[0], m[1]), (m[0], m[2])])
        .unwrap()
}

#[test]
fn eq23_on_the_abx_configuration() {
    for base in [graph::complete(4), graph::complete(5)] {
        let h = abx_graph(&base);
        let r = identities::check_eq23(&h, &[], &[2], 2, 3, 1).unwrap();
        assert!(r.passed, "{}", r.line());
    }
}

#[test]
fn classical_dodgson_psi_form_on_wheel_pairs() {
    let g = graph::wheel(5);
    let mut rng = SplitMix64::new(0x95);
    for _ in 0..30 {
        let pair = rng.sample_distinct(g.edge_count(), 2);
        let (e1, e2) = (pair[0] + 1, pair[1] + 1);
        let reports = identities::check_classical_dodgson(&g, e1, e2).unwrap();
        let psi_form = reports
            .iter()
            .find(|r| r.check.starts_with("classical_dodgson_psi"))
            .unwrap();
        assert!(psi_form.passed, "{}", psi_form.line());
    }
}

#[test]
fn eq23_on_random_tuples() {
    let mut rng = SplitMix64::new(0xe923);
    for g in [graph::complete(4), graph::complete(5)] {
        let e = g.edge_count();
        let mut done = 0;
        while done < 10 {
            let xab = rng.sample_distinct(e, 3);
            let (x, a, b) = (xab[0] + 1, xab[1] + 1, xab[2] + 1);
            let isize = rng.below(2) as usize;
            let pool_i: Vec<usize> = (1..=e)
                .filter(|v| ![x, a, b].contains(v))
                .collect();
            let i_set: Vec<usize> = rng
                .sample_distinct(pool_i.len(), isize)
                .into_iter()
                .map(|p| pool_i[p])
                .collect();
            let pool_j: Vec<usize> = (1..=e)
                .filter(|v| !i_set.contains(v) && *v != b && *v != x)
                .collect();
            if pool_j.len() < isize + 1 {
                continue;
            }
            let j_set: Vec<usize> = rng
                .sample_distinct(pool_j.len(), isize + 1)
                .into_iter()
                .map(|p| pool_j[p])
                .collect();
            let r = identities::check_eq23(&g, &i_set, &j_set, a, b, x).unwrap();
            assert!(r.passed, "{}", r.line());
            done += 1;
        }
    }
}
