//! Exact rational linear algebra: reduced row echelon form, kernels and
//! affine solution spaces.
//!
//! Matrices hold arbitrary-precision rationals, always in lowest terms
//! (`BigRational` normalizes on construction). Rows are stored sparsely;
//! elimination keeps a fully reduced pivot basis, so feeding a system in
//! row by row costs little even when the equation count is much larger
//! than the unknown count. Pivoting is deterministic (first nonzero), so
//! solution bases are reproducible.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

type SparseRow = Vec<(usize, BigRational)>;

/// Rectangular matrix of rationals in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl RationalMatrix {
    pub fn new(ncols: usize) -> Self {
        RationalMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(rows: Vec<Vec<BigRational>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = RationalMatrix::new(ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            m.push_dense_row(row);
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        RationalMatrix::from_dense(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::new(n);
        for i in 0..n {
            m.rows.push(vec![(i, BigRational::one())]);
        }
        m
    }

    pub fn push_dense_row(&mut self, row: Vec<BigRational>) {
        self.rows.push(
            row.into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        );
    }

    /// Sparse row of (column, value) pairs; must be sorted by column.
    pub fn push_sparse_row(&mut self, row: SparseRow) {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(row.iter().all(|(c, v)| *c < self.ncols && !v.is_zero()));
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|k| self.rows[i][k].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![BigRational::zero(); self.ncols];
                for &(c, ref v) in row {
                    d[c] = v.clone();
                }
                d
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns, in column order.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut red = Reducer::new(self.ncols);
        for row in &self.rows {
            red.insert(row.clone());
        }
        let pivot_cols: Vec<usize> = red.pivots.keys().copied().collect();
        let mut out = RationalMatrix::new(self.ncols);
        for row in red.pivots.values() {
            out.rows.push(row.clone());
        }
        while out.rows.len() < self.rows.len() {
            out.rows.push(Vec::new());
        }
        (out, pivot_cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Vertical concatenation; all parts must agree on the unknown count.
    pub fn stack(parts: &[&RationalMatrix]) -> Result<RationalMatrix, LinAlgError> {
        let ncols = parts
            .first()
            .map(|m| m.ncols)
            .ok_or_else(|| LinAlgError::DimensionMismatch("empty stack".into()))?;
        let mut out = RationalMatrix::new(ncols);
        for m in parts {
            if m.ncols != ncols {
                return Err(LinAlgError::DimensionMismatch(format!(
                    "cannot stack {} columns onto {ncols}",
                    m.ncols
                )));
            }
            out.rows.extend(m.rows.iter().cloned());
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, LinAlgError> {
        if v.len() != self.ncols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.ncols
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(c, ref val)| val * &v[c])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect())
    }
}

/// Particular solution plus kernel basis of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSpace {
    /// None when the system is inconsistent.
    pub particular: Option<Vec<BigRational>>,
    pub kernel_basis: Vec<Vec<BigRational>>,
}

impl AffineSolutionSpace {
    pub fn dimension(&self) -> usize {
        self.kernel_basis.len()
    }
}

/// Solves `A x = b` exactly.
pub fn solve_affine(
    a: &RationalMatrix,
    b: &[BigRational],
) -> Result<AffineSolutionSpace, LinAlgError> {
    if b.len() != a.nrows() {
        return Err(LinAlgError::DimensionMismatch(format!(
            "{} equations but {} right-hand sides",
            a.nrows(),
            b.len()
        )));
    }
    let n = a.ncols;
    // Eliminate on the augmented matrix; a pivot in the b column marks
    // inconsistency.
    let mut red = Reducer::new(n + 1);
    for (row, rhs) in a.rows.iter().zip(b) {
        let mut aug = row.clone();
        if !rhs.is_zero() {
            aug.push((n, rhs.clone()));
        }
        red.insert(aug);
    }
    let inconsistent = red.pivots.contains_key(&n);
    let pivot_cols: Vec<usize> = red.pivots.keys().copied().filter(|&c| c < n).collect();
    let particular = if inconsistent {
        None
    } else {
        let mut x = vec![BigRational::zero(); n];
        for (&pc, row) in &red.pivots {
            for &(c, ref v) in row {
                if c == n {
                    x[pc] = v.clone();
                }
            }
        }
        Some(x)
    };
    let mut kernel_basis = Vec::new();
    for f in 0..n {
        if pivot_cols.binary_search(&f).is_ok() {
            continue;
        }
        let mut v = vec![BigRational::zero(); n];
        v[f] = BigRational::one();
        for (&pc, row) in &red.pivots {
            if pc >= n {
                continue;
            }
            for &(c, ref val) in row {
                if c == f {
                    v[pc] = -val.clone();
                }
            }
        }
        kernel_basis.push(v);
    }
    Ok(AffineSolutionSpace {
        particular,
        kernel_basis,
    })
}

/// Stacks systems over the same unknowns into one.
pub fn stack_systems(
    systems: &[(RationalMatrix, Vec<BigRational>)],
) -> Result<(RationalMatrix, Vec<BigRational>), LinAlgError> {
    let mats: Vec<&RationalMatrix> = systems.iter().map(|(a, _)| a).collect();
    let a = RationalMatrix::stack(&mats)?;
    let mut b = Vec::with_capacity(a.nrows());
    for (_, rhs) in systems {
        b.extend(rhs.iter().cloned());
    }
    Ok((a, b))
}

/// Incrementally maintained fully-reduced pivot basis.
struct Reducer {
    ncols: usize,
    /// pivot column -> normalized row (leading 1 at the pivot column,
    /// remaining entries only at non-pivot columns).
    pivots: BTreeMap<usize, SparseRow>,
}

impl Reducer {
    fn new(ncols: usize) -> Self {
        Reducer {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let reduced = self.reduce(row);
        let (lead_col, lead_val) = reduced.first()?.clone();
        // Normalize to a leading 1.
        let normalized: SparseRow = reduced
            .into_iter()
            .map(|(c, v)| (c, v / &lead_val))
            .collect();
        // Keep existing pivot rows reduced against the new pivot.
        for prow in self.pivots.values_mut() {
            let Ok(k) = prow.binary_search_by_key(&lead_col, |&(c, _)| c) else {
                continue;
            };
            let coef = prow[k].1.clone();
            *prow = sub_scaled(prow, &normalized, &coef);
        }
        self.pivots.insert(lead_col, normalized);
        Some(lead_col)
    }

    /// Fully reduces a row against the current pivot basis. Subtracting a
    /// pivot row only introduces entries to the right of its pivot, so one
    /// ascending sweep suffices.
    fn reduce(&self, row: SparseRow) -> SparseRow {
        let mut work: BTreeMap<usize, BigRational> = row.into_iter().collect();
        let mut cursor = 0;
        while let Some((&c, _)) = work.range(cursor..).next() {
            cursor = c + 1;
            let Some(prow) = self.pivots.get(&c) else {
                continue;
            };
            let coef = work.remove(&c).expect("entry present");
            for &(pc, ref pv) in &prow[1..] {
                let e = work.entry(pc).or_insert_with(BigRational::zero);
                *e -= &coef * pv;
                if e.is_zero() {
                    work.remove(&pc);
                }
            }
        }
        debug_assert!(work.keys().all(|&c| c < self.ncols));
        work.into_iter().collect()
    }
}

/// row - coef * other, both sorted sparse rows.
fn sub_scaled(row: &SparseRow, other: &SparseRow, coef: &BigRational) -> SparseRow {
    let mut work: BTreeMap<usize, BigRational> = row.iter().cloned().collect();
    for &(c, ref v) in other {
        let e = work.entry(c).or_insert_with(BigRational::zero);
        *e -= coef * v;
        if e.is_zero() {
            work.remove(&c);
        }
    }
    work.into_iter().collect()
}
