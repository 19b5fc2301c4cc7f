//! Deletion/contraction relations between Dodgson polynomials and graph
//! surgery, index realignment across surgeries, and a rational spot-check
//! of the determinant against the Laplacian (Schur complement) route.

mod common;

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use gpforest::graph::{self, Graph};
use gpforest::kirchhoff;
use gpforest::linalg::RationalMatrix;
use gpforest::poly::{Polynomial, VarId};
use gpforest::rng::SplitMix64;

/// Renames the edge variables of a polynomial on `g.delete(e)` back to the
/// original indices of `g`.
fn undelete_vars(p: &Polynomial, deleted: usize) -> Polynomial {
    p.rename_vars(|v| match v {
        VarId::Edge(i) if i as usize >= deleted => VarId::Edge(i + 1),
        other => other,
    })
}

#[test]
fn dodgson_diagonal_is_deletion() {
    for g in [graph::complete(4), graph::wheel(4)] {
        for e in 1..=g.edge_count() {
            let Ok(deleted) = g.delete(e) else { continue };
            let direct = kirchhoff::dodgson(&g, &[e], &[e], &[]).unwrap();
            let via_surgery = undelete_vars(&kirchhoff::psi(&deleted), e);
            assert_eq!(direct, via_surgery, "edge {e} of {g}");
        }
    }
}

#[test]
fn zeroed_variable_is_contraction() {
    for g in [graph::complete(4), graph::wheel(4), graph::triangle()] {
        for e in 1..=g.edge_count() {
            let zeroed: BTreeSet<VarId> = [VarId::edge(e)].into_iter().collect();
            let direct = kirchhoff::psi(&g).substitute_zero(&zeroed);
            let c = g.contract(e).unwrap();
            let mut via_surgery = kirchhoff::psi(&c.graph).rename_vars(|v| match v {
                VarId::Edge(new_idx) => {
                    let old = c
                        .edge_map
                        .iter()
                        .position(|&m| m == Some(new_idx as usize))
                        .expect("edge map covers survivors")
                        + 1;
                    VarId::edge(old)
                }
                other => other,
            });
            // Edges dropped as self-loops multiply every spanning tree
            // complement.
            for &looped in &c.dropped_loops {
                via_surgery = via_surgery.mul(&Polynomial::edge_var(looped));
            }
            assert_eq!(direct, via_surgery, "edge {e} of {g}");
        }
    }
}

#[test]
fn contraction_with_parallel_edges_keeps_loop_factor() {
    // Two vertices joined by three parallel edges: contracting edge 1
    // drops edges 2 and 3 as loops.
    let g = Graph::new(2, vec![(1, 2), (2, 1), (1, 2)], vec![], None).unwrap();
    let c = g.contract(1).unwrap();
    assert_eq!(c.dropped_loops, vec![2, 3]);
    let zeroed: BTreeSet<VarId> = [VarId::edge(1)].into_iter().collect();
    let expected = kirchhoff::psi(&g).substitute_zero(&zeroed);
    assert_eq!(
        expected,
        Polynomial::edge_var(2).mul(&Polynomial::edge_var(3))
    );
}

#[test]
fn delete_then_contract_commutes_on_disjoint_edges() {
    let g = graph::complete(4);
    // Edges 1=(1,2) and 6=(3,4) are disjoint.
    let route_a = {
        let d = g.delete(6).unwrap();
        let c = d.contract(1).unwrap();
        kirchhoff::psi(&c.graph)
    };
    let route_b = {
        let c = g.contract(1).unwrap();
        let new_6 = c.edge_map[5].unwrap();
        let d = c.graph.delete(new_6).unwrap();
        kirchhoff::psi(&d)
    };
    // Both routes leave the four survivors 2,3,4,5 in the same relative
    // order, so the polynomials agree without realignment.
    assert_eq!(route_a, route_b);
}

/// Determinant of a dense rational matrix by plain Gaussian elimination
/// (test-only; independent of the fraction-free path).
fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for r in k + 1..n {
            let factor = &m[r][k] / &pivot;
            let pivot_row = m[k].clone();
            for (c, pv) in pivot_row.iter().enumerate().skip(k) {
                let sub = &factor * pv;
                m[r][c] -= sub;
            }
        }
    }
    det
}

#[test]
fn laplacian_route_matches_psi_at_rational_points() {
    // psi(alpha) = (prod alpha_e) * det(E diag(1/alpha) E^T) at any point
    // with nonzero coordinates: the Schur complement of the variable block.
    let mut rng = SplitMix64::new(0x5c0d);
    for g in [graph::complete(4), graph::complete(5), graph::wheel(4)] {
        let psi = kirchhoff::psi(&g);
        let inc = g.incidence_matrix();
        let rows = inc.len();
        for _ in 0..20 {
            let alphas: Vec<BigRational> = (0..g.edge_count())
                .map(|_| {
                    BigRational::new(
                        (rng.below(9) as i64 + 1).into(),
                        (rng.below(4) as i64 + 1).into(),
                    )
                })
                .collect();
            let mut lap = vec![vec![BigRational::zero(); rows]; rows];
            for (r, row_r) in inc.iter().enumerate() {
                for (c, row_c) in inc.iter().enumerate() {
                    for (j, alpha) in alphas.iter().enumerate() {
                        if row_r[j] != 0 && row_c[j] != 0 {
                            let term = BigRational::from_integer(
                                (row_r[j] * row_c[j]).into(),
                            ) / alpha;
                            lap[r][c] += term;
                        }
                    }
                }
            }
            let product = alphas
                .iter()
                .fold(BigRational::one(), |acc, a| acc * a);
            let schur = product * rational_det(lap);
            let env: BTreeMap<VarId, BigRational> = alphas
                .iter()
                .enumerate()
                .map(|(j, a)| (VarId::edge(j + 1), a.clone()))
                .collect();
            assert_eq!(schur, psi.eval_rational(&env).unwrap(), "{g}");
        }
    }
}

#[test]
fn psi_matches_enumeration_on_multigraphs() {
    // Parallel edges are first-class citizens of the matrix route too.
    let g = Graph::new(3, vec![(1, 2), (2, 1), (2, 3), (3, 1), (1, 3)], vec![], None).unwrap();
    assert_eq!(kirchhoff::psi(&g), common::psi_by_enumeration(&g));
}

#[test]
fn incidence_matrix_of_k4_has_rank_three() {
    let g = graph::complete(4);
    let m = RationalMatrix::from_int_rows(&g.incidence_matrix());
    assert_eq!(m.rank(), 3);
}

#[test]
fn k4_counts() {
    let g = graph::complete(4);
    // 16 spanning trees; evaluating psi at all-ones counts them.
    let env: BTreeMap<VarId, BigRational> = (1..=6)
        .map(|j| (VarId::edge(j), BigRational::one()))
        .collect();
    assert_eq!(
        kirchhoff::psi(&g).eval_rational(&env).unwrap(),
        BigRational::from_integer(16.into())
    );
    assert_eq!(common::tree_count(&g), 16);
    // Deleting an edge leaves 8 of them.
    assert_eq!(common::tree_count(&g.delete(1).unwrap()), 8);
}
