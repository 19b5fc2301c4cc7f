//! Linear-system search for quadratic spanning-forest identities with n
//! marked vertices.
//!
//! The ansatz takes every product of a left pattern (by default the
//! partitions of the marked vertices into n-1 parts) with a right pattern
//! (partitions into 2 parts) and solves
//!
//! ```text
//!   sum x_st (left_s)(right_t) = (1,1,...,1)(1,2,...,n)
//! ```
//!
//! for the constants, one exact linear equation per monomial, over one or
//! more graphs stacked together. A single graph can leave spurious degrees
//! of freedom, so the default graph set pairs the complete graph on n
//! vertices with the one on n+1. The affine solution space is reported
//! exactly: particular solution, kernel basis, dimension.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::forest::{self, ForestError, ForestPattern};
use crate::graph::{Graph, GraphError};
use crate::identities::{CoefficientTable, VerificationReport};
use crate::linalg::{self, AffineSolutionSpace, LinAlgError, RationalMatrix};
use crate::poly::{Monomial, Polynomial};
use crate::rng::SplitMix64;

#[derive(Debug, Error)]
pub enum DiscoveryError {
    #[error("need at least 2 marked vertices, got {0}")]
    TooFewMarked(usize),
    #[error("graph {graph} carries {got} marked vertices, ansatz needs {expected}")]
    WrongMarkedCount {
        graph: String,
        expected: usize,
        got: usize,
    },
    #[error("pattern {pattern} has length {got}, ansatz needs {expected}")]
    PatternLength {
        pattern: String,
        expected: usize,
        got: usize,
    },
    #[error("no graphs given")]
    NoGraphs,
    #[error("the ansatz admits no identity on the given graphs")]
    Inconsistent,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// All set partitions of {1..n} into exactly `parts` blocks, as normalized
/// patterns in lexicographic order (restricted growth strings).
pub fn partitions_into(n: usize, parts: usize) -> Vec<ForestPattern> {
    let mut out = Vec::new();
    let mut codes = vec![0u8; n];
    fn rec(codes: &mut Vec<u8>, pos: usize, max: u8, parts: u8, out: &mut Vec<ForestPattern>) {
        if pos == codes.len() {
            if max == parts {
                out.push(ForestPattern::from_codes(codes));
            }
            return;
        }
        // Unused blocks must still fit in the remaining positions.
        let remaining = (codes.len() - pos) as u8;
        for c in 1..=(max + 1).min(parts) {
            let new_max = max.max(c);
            if parts - new_max < remaining {
                codes[pos] = c;
                rec(codes, pos + 1, new_max, parts, out);
            }
        }
    }
    if parts == 0 || parts > n {
        return out;
    }
    rec(&mut codes, 0, 0, parts as u8, &mut out);
    out
}

/// The products to try and the target of the search.
#[derive(Debug, Clone)]
pub struct Ansatz {
    marked_count: usize,
    left_patterns: Vec<ForestPattern>,
    right_patterns: Vec<ForestPattern>,
}

impl Ansatz {
    /// Left factors are partitions into n-1 parts, right factors partitions
    /// into 2 parts, mirroring the four-vertex catalogue.
    pub fn standard(n: usize) -> Result<Ansatz, DiscoveryError> {
        if n < 2 {
            return Err(DiscoveryError::TooFewMarked(n));
        }
        Ok(Ansatz {
            marked_count: n,
            left_patterns: partitions_into(n, n - 1),
            right_patterns: partitions_into(n, 2),
        })
    }

    /// Fully custom pattern lists over n marked vertices.
    pub fn with_patterns(
        n: usize,
        left: Vec<ForestPattern>,
        right: Vec<ForestPattern>,
    ) -> Result<Ansatz, DiscoveryError> {
        if n < 2 {
            return Err(DiscoveryError::TooFewMarked(n));
        }
        for p in left.iter().chain(&right) {
            if p.len() != n {
                return Err(DiscoveryError::PatternLength {
                    pattern: p.to_string(),
                    expected: n,
                    got: p.len(),
                });
            }
        }
        Ok(Ansatz {
            marked_count: n,
            left_patterns: left,
            right_patterns: right,
        })
    }

    pub fn marked_count(&self) -> usize {
        self.marked_count
    }

    pub fn left_patterns(&self) -> &[ForestPattern] {
        &self.left_patterns
    }

    pub fn right_patterns(&self) -> &[ForestPattern] {
        &self.right_patterns
    }

    pub fn unknown_count(&self) -> usize {
        self.left_patterns.len() * self.right_patterns.len()
    }

    /// Column of the product (left, right), if both patterns are present.
    pub fn column_of(&self, left: &ForestPattern, right: &ForestPattern) -> Option<usize> {
        let s = self.left_patterns.iter().position(|p| p == left)?;
        let t = self.right_patterns.iter().position(|p| p == right)?;
        Some(s * self.right_patterns.len() + t)
    }
}

/// One equation per monomial of any product or of the target: the unknown
/// (s,t) column holds that monomial's coefficient in (left_s)(right_t),
/// the right side the target's coefficient.
pub fn build_system(
    g: &Graph,
    ansatz: &Ansatz,
) -> Result<(RationalMatrix, Vec<BigRational>), DiscoveryError> {
    let n = ansatz.marked_count;
    if g.marked().len() != n {
        return Err(DiscoveryError::WrongMarkedCount {
            graph: g.to_string(),
            expected: n,
            got: g.marked().len(),
        });
    }
    let left: Vec<Polynomial> = ansatz
        .left_patterns
        .iter()
        .map(|p| forest::phi_pattern(g, p))
        .collect::<Result<_, _>>()?;
    let right: Vec<Polynomial> = ansatz
        .right_patterns
        .iter()
        .map(|p| forest::phi_pattern(g, p))
        .collect::<Result<_, _>>()?;
    let target = forest::phi_pattern(g, &forest::ones_pattern(n))?
        .mul(&forest::phi_pattern(g, &forest::distinct_pattern(n))?);

    // Scatter product coefficients into per-monomial sparse rows; columns
    // arrive in increasing order because the products are visited that way.
    let mut rows: BTreeMap<Monomial, Vec<(usize, BigRational)>> = BTreeMap::new();
    for (s, lp) in left.iter().enumerate() {
        for (t, rp) in right.iter().enumerate() {
            let col = s * right.len() + t;
            let product = lp.mul(rp);
            for (m, c) in product.terms() {
                rows.entry(m.clone())
                    .or_default()
                    .push((col, BigRational::from_integer(c.clone())));
            }
        }
    }
    let mut rhs_map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (m, c) in target.terms() {
        rows.entry(m.clone()).or_default();
        rhs_map.insert(m.clone(), c.clone());
    }
    let mut matrix = RationalMatrix::new(ansatz.unknown_count());
    let mut b = Vec::with_capacity(rows.len());
    for (m, row) in rows {
        matrix.push_sparse_row(row);
        b.push(
            rhs_map
                .remove(&m)
                .map(BigRational::from_integer)
                .unwrap_or_else(BigRational::zero),
        );
    }
    Ok((matrix, b))
}

/// Exact affine solution space of the search, with everything needed to
/// re-check membership of candidate coefficient vectors.
#[derive(Debug, Clone)]
pub struct DiscoveryResult {
    pub ansatz: Ansatz,
    pub solution: AffineSolutionSpace,
    pub graphs: Vec<String>,
    pub equations_per_graph: Vec<usize>,
    pub stacked_matrix: RationalMatrix,
    pub stacked_rhs: Vec<BigRational>,
}

impl DiscoveryResult {
    pub fn dimension(&self) -> usize {
        self.solution.dimension()
    }

    /// True iff the 42-vector (or general s-major vector) satisfies every
    /// stacked equation.
    pub fn satisfied_by(&self, v: &[BigRational]) -> bool {
        match self.stacked_matrix.mul_vec(v) {
            Ok(prod) => prod == self.stacked_rhs,
            Err(_) => false,
        }
    }

    /// The identity at the particular solution, in pattern notation.
    pub fn render_identity(&self) -> String {
        let n = self.ansatz.marked_count;
        let mut out = format!(
            "({})({}) = ",
            forest::ones_pattern(n),
            forest::distinct_pattern(n)
        );
        let particular = match &self.solution.particular {
            Some(p) => p,
            None => {
                out.push_str("<inconsistent>");
                return out;
            }
        };
        let mut first = true;
        for (s, lp) in self.ansatz.left_patterns.iter().enumerate() {
            for (t, rp) in self.ansatz.right_patterns.iter().enumerate() {
                let c = &particular[s * self.ansatz.right_patterns.len() + t];
                if c.is_zero() {
                    continue;
                }
                if !first {
                    out.push_str(" + ");
                }
                first = false;
                out.push_str(&format!("{c}*({lp})({rp})"));
            }
        }
        if first {
            out.push('0');
        }
        out
    }

    /// Machine-readable dump: particular solution and kernel basis as
    /// rational strings, plus the ansatz and provenance.
    pub fn render_dump(&self) -> String {
        let pats = |ps: &[ForestPattern]| {
            ps.iter()
                .map(|p| format!("\"{p}\""))
                .collect::<Vec<_>>()
                .join(",")
        };
        let vec_str = |v: &[BigRational]| {
            v.iter()
                .map(|r| format!("\"{r}\""))
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = String::from("{");
        out.push_str(&format!("\"marked\":{},", self.ansatz.marked_count));
        out.push_str(&format!(
            "\"left_patterns\":[{}],",
            pats(&self.ansatz.left_patterns)
        ));
        out.push_str(&format!(
            "\"right_patterns\":[{}],",
            pats(&self.ansatz.right_patterns)
        ));
        out.push_str(&format!(
            "\"graphs\":[{}],",
            self.graphs
                .iter()
                .map(|l| format!("\"{l}\""))
                .collect::<Vec<_>>()
                .join(",")
        ));
        out.push_str(&format!(
            "\"equations\":[{}],",
            self.equations_per_graph
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
        out.push_str(&format!("\"unknowns\":{},", self.ansatz.unknown_count()));
        out.push_str(&format!("\"dimension\":{},", self.dimension()));
        match &self.solution.particular {
            Some(p) => out.push_str(&format!("\"particular\":[{}],", vec_str(p))),
            None => out.push_str("\"particular\":null,"),
        }
        out.push_str(&format!(
            "\"kernel_basis\":[{}]",
            self.solution
                .kernel_basis
                .iter()
                .map(|v| format!("[{}]", vec_str(v)))
                .collect::<Vec<_>>()
                .join(",")
        ));
        out.push('}');
        out
    }
}

/// Builds the system on every graph, stacks them and solves exactly.
pub fn discover(graphs: &[Graph], ansatz: &Ansatz) -> Result<DiscoveryResult, DiscoveryError> {
    if graphs.is_empty() {
        return Err(DiscoveryError::NoGraphs);
    }
    let mut systems = Vec::with_capacity(graphs.len());
    let mut labels = Vec::with_capacity(graphs.len());
    let mut counts = Vec::with_capacity(graphs.len());
    for g in graphs {
        let (a, b) = build_system(g, ansatz)?;
        labels.push(g.to_string());
        counts.push(a.nrows());
        systems.push((a, b));
    }
    let (stacked_matrix, stacked_rhs) = linalg::stack_systems(&systems)?;
    let solution = linalg::solve_affine(&stacked_matrix, &stacked_rhs)?;
    if solution.particular.is_none() {
        return Err(DiscoveryError::Inconsistent);
    }
    Ok(DiscoveryResult {
        ansatz: ansatz.clone(),
        solution,
        graphs: labels,
        equations_per_graph: counts,
        stacked_matrix,
        stacked_rhs,
    })
}

/// The default graph pair for an n-vertex search: complete graphs on n and
/// n+1 vertices, marked at their first n vertices.
pub fn default_graphs(n: usize) -> Result<Vec<Graph>, DiscoveryError> {
    if n < 2 {
        return Err(DiscoveryError::TooFewMarked(n));
    }
    let marked: Vec<usize> = (1..=n).collect();
    Ok(vec![
        crate::graph::complete(n).with_marked(marked.clone())?,
        crate::graph::complete(n + 1).with_marked(marked)?,
    ])
}

/// The coefficient table evaluated at `x`, permuted into the ansatz's
/// column order. None when the ansatz does not carry the catalogue
/// patterns (custom pattern lists or n != 4).
pub fn table_coordinates(
    ansatz: &Ansatz,
    table: &CoefficientTable,
    x: &[BigRational; 8],
) -> Option<Vec<BigRational>> {
    if ansatz.marked_count != 4 {
        return None;
    }
    let flat = table.flatten_at(x);
    let mut v = vec![BigRational::zero(); ansatz.unknown_count()];
    for s in 1..=6 {
        for t in 1..=7 {
            let col = ansatz.column_of(&forest::a_pattern(s), &forest::b_pattern(t))?;
            v[col] = flat[(s - 1) * 7 + (t - 1)].clone();
        }
    }
    Some(v)
}

/// True iff the coefficient table evaluated at `x` lies in the discovered
/// solution space (n = 4 ansatz with the catalogue patterns).
pub fn verify_membership(
    result: &DiscoveryResult,
    table: &CoefficientTable,
    x: &[BigRational; 8],
) -> bool {
    match table_coordinates(&result.ansatz, table, x) {
        Some(v) => result.satisfied_by(&v),
        None => false,
    }
}

/// Membership reports for the verify suite: the table's coefficient family
/// must satisfy the graph's discovery system at x = 0, at the second
/// collapsed point, and at random rational points.
pub fn membership_reports(
    g: &Graph,
    seed: u64,
    random_points: usize,
) -> Result<Vec<VerificationReport>, DiscoveryError> {
    let started = Instant::now();
    let ansatz = Ansatz::standard(4)?;
    let result = discover(std::slice::from_ref(g), &ansatz)?;
    let table = CoefficientTable::standard();
    let mut out = Vec::new();
    let mut push = |name: String, ok: bool, started: Instant| {
        out.push(VerificationReport {
            check: name,
            graph: g.to_string(),
            passed: ok,
            residual: if ok {
                Polynomial::zero()
            } else {
                Polynomial::one()
            },
            millis: started.elapsed().as_millis(),
        });
    };
    let zero: [BigRational; 8] = std::array::from_fn(|_| BigRational::zero());
    push(
        "discovery_membership_x0".into(),
        verify_membership(&result, &table, &zero),
        started,
    );
    let started = Instant::now();
    let emp2: [BigRational; 8] = std::array::from_fn(|i| {
        BigRational::from_integer(crate::identities::EMP2_POINT[i].into())
    });
    push(
        "discovery_membership_emp2".into(),
        verify_membership(&result, &table, &emp2),
        started,
    );
    let mut rng = SplitMix64::new(seed ^ 0x6d656d);
    for k in 0..random_points {
        let started = Instant::now();
        let x: [BigRational; 8] = std::array::from_fn(|_| random_rational(&mut rng));
        push(
            format!("discovery_membership_rand{}", k + 1),
            verify_membership(&result, &table, &x),
            started,
        );
    }
    Ok(out)
}

pub fn random_rational(rng: &mut SplitMix64) -> BigRational {
    let numer = rng.below(19) as i64 - 9;
    let denom = rng.below(4) as i64 + 1;
    BigRational::new(numer.into(), denom.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_into(4, 3).len(), 6);
        assert_eq!(partitions_into(4, 2).len(), 7);
        assert_eq!(partitions_into(4, 1).len(), 1);
        assert_eq!(partitions_into(4, 4).len(), 1);
        assert_eq!(partitions_into(5, 4).len(), 10);
        assert_eq!(partitions_into(5, 2).len(), 15);
        assert_eq!(partitions_into(6, 2).len(), 31);
        assert!(partitions_into(3, 4).is_empty());
    }

    #[test]
    fn standard_ansatz_sizes() {
        assert_eq!(Ansatz::standard(2).unwrap().unknown_count(), 1);
        assert_eq!(Ansatz::standard(3).unwrap().unknown_count(), 9);
        assert_eq!(Ansatz::standard(4).unwrap().unknown_count(), 42);
        assert!(Ansatz::standard(1).is_err());
    }

    #[test]
    fn a_patterns_enumerate_in_catalogue_order() {
        let left = partitions_into(4, 3);
        for (s, pat) in left.iter().enumerate() {
            assert_eq!(pat, &forest::a_pattern(s + 1));
        }
    }

    #[test]
    fn k4_system_has_42_columns() {
        let g = graph::complete(4);
        let ansatz = Ansatz::standard(4).unwrap();
        let (a, b) = build_system(&g, &ansatz).unwrap();
        assert_eq!(a.ncols(), 42);
        assert_eq!(a.nrows(), b.len());
        assert!(a.nrows() > 42);
    }

    #[test]
    fn two_marked_vertices_have_unique_solution() {
        let g = graph::triangle().with_marked(vec![1, 2]).unwrap();
        let ansatz = Ansatz::standard(2).unwrap();
        let result = discover(&[g], &ansatz).unwrap();
        assert_eq!(result.dimension(), 0);
        let p = result.solution.particular.as_ref().unwrap();
        assert_eq!(p, &vec![BigRational::from_integer(1.into())]);
        assert!(result.render_identity().contains("(1,1)(1,2)"));
    }

    #[test]
    fn six_marked_vertices_have_dimension_24() {
        let marked: Vec<usize> = (1..=6).collect();
        let k6 = graph::complete(6).with_marked(marked.clone()).unwrap();
        let w6 = graph::wheel(6).with_marked(marked).unwrap();
        let result = discover(&[k6, w6], &Ansatz::standard(6).unwrap()).unwrap();
        assert_eq!(result.ansatz.unknown_count(), 465);
        assert_eq!(result.dimension(), 24);
    }

    #[test]
    fn stacking_more_graphs_never_raises_dimension() {
        let ansatz = Ansatz::standard(4).unwrap();
        let k4 = graph::complete(4);
        let k5 = graph::complete(5);
        let single = discover(std::slice::from_ref(&k4), &ansatz).unwrap();
        let pair = discover(&[k4, k5], &ansatz).unwrap();
        assert!(single.dimension() >= pair.dimension());
        assert_eq!(pair.dimension(), 8);
    }

    #[test]
    fn three_marked_on_k4_and_wheel() {
        let marked = vec![1, 2, 3];
        let k4 = graph::complete(4).with_marked(marked.clone()).unwrap();
        let w4 = graph::wheel(4).with_marked(marked).unwrap();
        let result = discover(&[k4, w4], &Ansatz::standard(3).unwrap()).unwrap();
        assert_eq!(result.dimension(), 3);
    }

    #[test]
    fn wrong_marked_count_rejected() {
        let g = graph::complete(4); // 4 marked
        let ansatz = Ansatz::standard(3).unwrap();
        assert!(matches!(
            build_system(&g, &ansatz),
            Err(DiscoveryError::WrongMarkedCount { .. })
        ));
    }

    #[test]
    fn dump_is_wellformed() {
        let g = graph::triangle().with_marked(vec![1, 2]).unwrap();
        let result = discover(&[g], &Ansatz::standard(2).unwrap()).unwrap();
        let dump = result.render_dump();
        assert!(dump.starts_with('{') && dump.ends_with('}'));
        assert!(dump.contains("\"dimension\":0"));
        assert!(dump.contains("\"particular\":[\"1\"]"));
    }
}
