//! The block matrix of a graph, fraction-free determinants and Dodgson
//! polynomials.
//!
//! For a graph with e edges and v vertices the matrix has the block form
//!
//! ```text
//!     [ diag(a1..ae)   E^T ]
//!     [    -E           0  ]
//! ```
//!
//! where E is the signed incidence matrix with the removed vertex's row
//! deleted, so the matrix is square of size e + v - 1. Its determinant is
//! the Kirchhoff polynomial; determinants of row/column-deleted submatrices
//! with some edge variables zeroed are the Dodgson polynomials. Signs of
//! Dodgson polynomials depend on the edge order, the orientation and the
//! removed vertex, all of which are pinned by the inputs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::forest;
use crate::graph::Graph;
use crate::poly::Polynomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KirchhoffError {
    #[error("row and column sets must have equal size (|I| = {rows}, |J| = {cols})")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("edge index {0} out of range")]
    InvalidEdgeIndex(usize),
    #[error("duplicate edge index {0}")]
    DuplicateEdgeIndex(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Dense square matrix of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    entries: Vec<Vec<Polynomial>>,
    provenance: Option<Provenance>,
}

/// Where a matrix came from, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub graph: String,
    pub removed_rows: Vec<usize>,
    pub removed_cols: Vec<usize>,
    pub zeroed: Vec<usize>,
}

impl PolyMatrix {
    pub fn from_entries(entries: Vec<Vec<Polynomial>>) -> PolyMatrix {
        let ncols = entries.first().map_or(0, |r| r.len());
        assert!(entries.iter().all(|r| r.len() == ncols), "ragged rows");
        PolyMatrix {
            entries,
            provenance: None,
        }
    }

    pub fn size(&self) -> (usize, usize) {
        let rows = self.entries.len();
        (rows, self.entries.first().map_or(0, |r| r.len()))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// Submatrix with the given 0-based rows and columns removed.
    pub fn without(&self, rows: &BTreeSet<usize>, cols: &BTreeSet<usize>) -> PolyMatrix {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| !rows.contains(i))
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| !cols.contains(j))
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        PolyMatrix {
            entries,
            provenance: None,
        }
    }

    /// Exact determinant: direct expansion up to 3x3 (entries may be huge
    /// polynomials there, and expansion avoids divisions), fraction-free
    /// (Bareiss) elimination beyond.
    ///
    /// Pivots are the first structurally nonzero entries in column order;
    /// row swaps are tracked for the sign. Every division is exact in the
    /// polynomial ring; a remainder would mean a pivoting bug and panics.
    pub fn det(&self) -> Polynomial {
        let (rows, cols) = self.size();
        assert_eq!(rows, cols, "determinant of a non-square matrix");
        let n = rows;
        if n == 0 {
            return Polynomial::one();
        }
        let a = &self.entries;
        if n == 1 {
            return a[0][0].clone();
        }
        if n == 2 {
            return a[0][0].mul(&a[1][1]).sub(&a[0][1].mul(&a[1][0]));
        }
        if n == 3 {
            let m00 = a[1][1].mul(&a[2][2]).sub(&a[1][2].mul(&a[2][1]));
            let m01 = a[1][0].mul(&a[2][2]).sub(&a[1][2].mul(&a[2][0]));
            let m02 = a[1][0].mul(&a[2][1]).sub(&a[1][1].mul(&a[2][0]));
            return a[0][0]
                .mul(&m00)
                .sub(&a[0][1].mul(&m01))
                .add(&a[0][2].mul(&m02));
        }
        let mut a = self.entries.clone();
        let mut negate = false;
        let mut prev = Polynomial::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Polynomial::zero();
                };
                a.swap(k, r);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num
                        .exact_div(&prev)
                        .expect("Bareiss division is exact");
                }
                a[i][k] = Polynomial::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            det.neg()
        } else {
            det
        }
    }
}

/// The block matrix of a graph: top-left diagonal of edge variables,
/// top-right the transposed reduced incidence matrix, bottom-left its
/// negative, bottom-right zero.
pub fn build_m(g: &Graph) -> PolyMatrix {
    let e = g.edge_count();
    let inc = g.incidence_matrix();
    let vrows = inc.len();
    let n = e + vrows;
    let mut entries = vec![vec![Polynomial::zero(); n]; n];
    for (i, row) in entries.iter_mut().enumerate().take(e) {
        row[i] = Polynomial::edge_var(i + 1);
    }
    for (r, inc_row) in inc.iter().enumerate() {
        for (j, &s) in inc_row.iter().enumerate() {
            if s != 0 {
                entries[j][e + r] = Polynomial::constant(s);
                entries[e + r][j] = Polynomial::constant(-s);
            }
        }
    }
    PolyMatrix {
        entries,
        provenance: Some(Provenance {
            graph: g.to_string(),
            removed_rows: Vec::new(),
            removed_cols: Vec::new(),
            zeroed: Vec::new(),
        }),
    }
}

/// Kirchhoff polynomial via the matrix determinant.
pub fn psi(g: &Graph) -> Polynomial {
    build_m(g).det()
}

fn edge_set(g: &Graph, idx: &[usize]) -> Result<BTreeSet<usize>, KirchhoffError> {
    let mut set = BTreeSet::new();
    for &i in idx {
        if i == 0 || i > g.edge_count() {
            return Err(KirchhoffError::InvalidEdgeIndex(i));
        }
        if !set.insert(i) {
            return Err(KirchhoffError::DuplicateEdgeIndex(i));
        }
    }
    Ok(set)
}

/// Dodgson polynomial: determinant of the graph matrix with the rows of
/// edge set I and the columns of edge set J removed and the edge variables
/// of K set to zero. With everything empty this is the Kirchhoff
/// polynomial itself.
pub fn dodgson(
    g: &Graph,
    i_rows: &[usize],
    j_cols: &[usize],
    k_zeroed: &[usize],
) -> Result<Polynomial, KirchhoffError> {
    let i_set = edge_set(g, i_rows)?;
    let j_set = edge_set(g, j_cols)?;
    let k_set = edge_set(g, k_zeroed)?;
    if i_set.len() != j_set.len() {
        return Err(KirchhoffError::SizeMismatch {
            rows: i_set.len(),
            cols: j_set.len(),
        });
    }
    let mut m = build_m(g);
    // Edge variables appear only on the diagonal, so zeroing a variable is
    // zeroing its diagonal entry.
    for &k in &k_set {
        m.entries[k - 1][k - 1] = Polynomial::zero();
    }
    let rows: BTreeSet<usize> = i_set.iter().map(|&i| i - 1).collect();
    let cols: BTreeSet<usize> = j_set.iter().map(|&j| j - 1).collect();
    let minor = PolyMatrix {
        provenance: Some(Provenance {
            graph: g.to_string(),
            removed_rows: i_set.iter().copied().collect(),
            removed_cols: j_set.iter().copied().collect(),
            zeroed: k_set.iter().copied().collect(),
        }),
        ..m.without(&rows, &cols)
    };
    Ok(minor.det())
}

/// The common vertex of two edges and their other endpoints, if the edges
/// share exactly one vertex.
pub fn shared_vertex(g: &Graph, i: usize, j: usize) -> Option<(usize, usize, usize)> {
    let (ti, hi) = g.endpoints(i);
    let (tj, hj) = g.endpoints(j);
    let mut common = None;
    for a in [ti, hi] {
        for b in [tj, hj] {
            if a == b {
                if common.is_some() {
                    return None; // parallel edges
                }
                common = Some(a);
            }
        }
    }
    let v = common?;
    let wi = if ti == v { hi } else { ti };
    let wj = if tj == v { hj } else { tj };
    Some((v, wi, wj))
}

/// +1 when both edges point into or both out of `v`, -1 otherwise.
pub fn orientation_sign(g: &Graph, v: usize, i: usize, j: usize) -> i64 {
    let into = |e: usize| g.endpoints(e).1 == v;
    if into(i) == into(j) {
        1
    } else {
        -1
    }
}

/// Checks the signed relation between a mixed Dodgson polynomial and a
/// three-part spanning-forest polynomial, for edges 1, 2, 3 sharing a
/// vertex: with {i,j,k} = {1,2,3},
///
/// ```text
///   dodgson({i},{j},{k}) = eps(i,j) * (-1)^(i-j+1) * Phi({v},{wi,wj},{wk})
/// ```
///
/// where the forest polynomial is taken over the graph without edges
/// 1, 2, 3.
pub fn dodgson_signed_pair_check(
    g: &Graph,
    i: usize,
    j: usize,
    k: usize,
) -> Result<bool, KirchhoffError> {
    let mut seen: Vec<usize> = vec![i, j, k];
    seen.sort_unstable();
    if seen != [1, 2, 3] {
        return Err(KirchhoffError::PreconditionViolated(format!(
            "indices must be 1, 2, 3 in some order, got ({i},{j},{k})"
        )));
    }
    let (v, wi, wj) = shared_vertex(g, i, j).ok_or_else(|| {
        KirchhoffError::PreconditionViolated(format!(
            "edges {i} and {j} must share exactly one vertex"
        ))
    })?;
    let (vk, wik, _) = shared_vertex(g, i, k).ok_or_else(|| {
        KirchhoffError::PreconditionViolated(format!(
            "edges {i} and {k} must share exactly one vertex"
        ))
    })?;
    if vk != v || wik != wi {
        return Err(KirchhoffError::PreconditionViolated(
            "edges 1, 2, 3 must have a common vertex".into(),
        ));
    }
    let (tk, hk) = g.endpoints(k);
    let wk = if tk == v { hk } else { tk };
    if wi == wj || wi == wk || wj == wk {
        return Err(KirchhoffError::PreconditionViolated(
            "the outer endpoints must be distinct".into(),
        ));
    }
    let x = g.removed_vertex();
    if x == v || x == wi || x == wj {
        return Err(KirchhoffError::PreconditionViolated(format!(
            "removed vertex {x} must avoid the common vertex and the endpoints of edges {i}, {j}"
        )));
    }
    let lhs = dodgson(g, &[i], &[j], &[k])?;
    let parts = vec![vec![v], vec![wi, wj], vec![wk]];
    let excluded: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
    let phi = forest::phi_of_parts_excluding(g, &parts, &excluded);
    let sign = orientation_sign(g, v, i, j) * pow_neg_one(i as i64 - j as i64 + 1);
    Ok(lhs == phi.scale(sign))
}

pub(crate) fn pow_neg_one(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    #[test]
    fn single_edge_matrix() {
        let g = Graph::new(2, vec![(1, 2)], vec![], Some(2)).unwrap();
        let m = build_m(&g);
        assert_eq!(m.size(), (2, 2));
        assert_eq!(m.entry(0, 0), &Polynomial::edge_var(1));
        assert_eq!(m.entry(0, 1), &Polynomial::one());
        assert_eq!(m.entry(1, 0), &Polynomial::constant(-1));
        assert!(m.entry(1, 1).is_zero());
        assert_eq!(m.det(), Polynomial::one());
    }

    #[test]
    fn triangle_matrix_shape() {
        let g = graph::triangle();
        let m = build_m(&g);
        assert_eq!(m.size(), (5, 5));
        for i in 0..3 {
            assert_eq!(m.entry(i, i), &Polynomial::edge_var(i + 1));
            for j in 0..3 {
                if i != j {
                    assert!(m.entry(i, j).is_zero());
                }
            }
        }
        for i in 3..5 {
            for j in 3..5 {
                assert!(m.entry(i, j).is_zero());
            }
        }
    }

    #[test]
    fn triangle_psi() {
        let g = graph::triangle();
        let expected = Polynomial::edge_var(1)
            .add(&Polynomial::edge_var(2))
            .add(&Polynomial::edge_var(3));
        assert_eq!(psi(&g), expected);
    }

    #[test]
    fn zero_matrix_det_is_zero() {
        let m = PolyMatrix::from_entries(vec![vec![Polynomial::zero(); 3]; 3]);
        assert!(m.det().is_zero());
    }

    #[test]
    fn empty_matrix_det_is_one() {
        let m = PolyMatrix::from_entries(Vec::new());
        assert_eq!(m.det(), Polynomial::one());
    }

    #[test]
    fn row_swap_flips_sign() {
        let m = PolyMatrix::from_entries(vec![
            vec![Polynomial::zero(), Polynomial::one()],
            vec![Polynomial::one(), Polynomial::zero()],
        ]);
        assert_eq!(m.det(), Polynomial::constant(-1));
    }

    #[test]
    fn psi_independent_of_removed_vertex() {
        let g = graph::complete(4);
        let reference = psi(&g);
        for r in 1..=4 {
            assert_eq!(psi(&g.with_removed_vertex(r).unwrap()), reference);
        }
    }

    #[test]
    fn dodgson_deletion_relation_on_triangle() {
        // psi^{1,1} is psi of the triangle with edge 1 deleted: the 2-edge
        // path has a single spanning tree with empty complement.
        let g = graph::triangle();
        let d = dodgson(&g, &[1], &[1], &[]).unwrap();
        assert_eq!(d, Polynomial::one());
        let path = g.delete(1).unwrap();
        assert_eq!(d, psi(&path));
    }

    #[test]
    fn dodgson_contraction_relation_on_triangle() {
        // Zeroing an edge variable contracts: the two parallel survivors
        // each form a spanning tree with a one-edge complement.
        let g = graph::triangle();
        let d = dodgson(&g, &[], &[], &[1]).unwrap();
        assert_eq!(
            d,
            Polynomial::edge_var(2).add(&Polynomial::edge_var(3))
        );
    }

    #[test]
    fn dodgson_rejects_size_mismatch() {
        let g = graph::triangle();
        assert_eq!(
            dodgson(&g, &[1, 2], &[1], &[]).unwrap_err(),
            KirchhoffError::SizeMismatch { rows: 2, cols: 1 }
        );
        assert!(matches!(
            dodgson(&g, &[9], &[1], &[]).unwrap_err(),
            KirchhoffError::InvalidEdgeIndex(9)
        ));
    }

    #[test]
    fn dodgson_row_column_symmetry() {
        let g = graph::complete(4);
        for (i, j) in [(1, 2), (2, 5), (3, 6)] {
            assert_eq!(
                dodgson(&g, &[i], &[j], &[]).unwrap(),
                dodgson(&g, &[j], &[i], &[]).unwrap()
            );
        }
    }

    #[test]
    fn psi_of_everything_removed_is_one_term() {
        // All rows and columns removed from a single-edge graph: 0x0 minor.
        let g = Graph::new(2, vec![(1, 2)], vec![], Some(2)).unwrap();
        let m = build_m(&g);
        let all: BTreeSet<usize> = (0..2).collect();
        assert_eq!(m.without(&all, &all).det(), Polynomial::one());
    }

    #[test]
    fn shared_vertex_and_orientation() {
        let g = Graph::new(4, vec![(1, 2), (3, 1), (1, 4), (2, 3), (3, 4)], vec![], None)
            .unwrap();
        assert_eq!(shared_vertex(&g, 1, 2), Some((1, 2, 3)));
        assert_eq!(shared_vertex(&g, 1, 3), Some((1, 2, 4)));
        assert_eq!(shared_vertex(&g, 1, 5), None);
        // Edge 1 leaves vertex 1, edge 2 enters it.
        assert_eq!(orientation_sign(&g, 1, 1, 2), -1);
        assert_eq!(orientation_sign(&g, 1, 1, 3), 1);
    }
}
