//! Spanning-forest polynomials by exhaustive enumeration, dash-notation
//! patterns, and the A/B/P catalogue on four marked vertices.
//!
//! For a set partition P of some of the vertices, the forest polynomial
//! sums, over spanning forests with exactly one tree per part and each part
//! contained in its tree, the product of the edge variables *not* in the
//! forest. Enumeration walks edge subsets of the forest size with a
//! union-find for cycle pruning, so only acyclic candidates are visited.
//!
//! Patterns are the positional dash notation over the marked vertices:
//! `1,-,2,2` puts the first and the third/fourth marked vertices in
//! different trees and leaves the second unconstrained. Equal codes share a
//! tree; a dash vertex may land anywhere, which expands into a sum over
//! full partitions.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::kirchhoff::{self, KirchhoffError};
use crate::poly::{Monomial, Polynomial, VarId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("expected exactly {expected} marked vertices, got {got}")]
    WrongMarkedCount { expected: usize, got: usize },
    #[error("pattern length {pattern} does not match {marked} marked vertices")]
    LengthMismatch { pattern: usize, marked: usize },
    #[error("partition vertex {0} is not marked")]
    PartNotMarked(usize),
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("invalid pattern: {0}")]
    BadPattern(String),
    #[error(transparent)]
    Kirchhoff(#[from] KirchhoffError),
}

/// Disjoint nonempty vertex sets; parts are ordered by smallest element,
/// members sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SetPartition {
    parts: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(parts: Vec<Vec<usize>>) -> Result<SetPartition, ForestError> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(parts.len());
        for part in parts {
            if part.is_empty() {
                return Err(ForestError::BadPartition("empty part".into()));
            }
            let mut p = part;
            p.sort_unstable();
            p.dedup();
            for &v in &p {
                if !seen.insert(v) {
                    return Err(ForestError::BadPartition(format!(
                        "vertex {v} appears in two parts"
                    )));
                }
            }
            normalized.push(p);
        }
        normalized.sort_by_key(|p| p[0]);
        Ok(SetPartition { parts: normalized })
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{{")?;
            for (j, v) in part.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Positional dash-notation pattern, normalized so integer codes are
/// 1, 2, ... in order of first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ForestPattern {
    codes: Vec<Option<u8>>,
}

impl ForestPattern {
    pub fn new(codes: Vec<Option<u8>>) -> ForestPattern {
        let mut relabel: Vec<u8> = Vec::new();
        let normalized = codes
            .into_iter()
            .map(|c| {
                c.map(|c| match relabel.iter().position(|&r| r == c) {
                    Some(i) => i as u8 + 1,
                    None => {
                        relabel.push(c);
                        relabel.len() as u8
                    }
                })
            })
            .collect();
        ForestPattern { codes: normalized }
    }

    pub fn from_codes(codes: &[u8]) -> ForestPattern {
        ForestPattern::new(codes.iter().map(|&c| Some(c)).collect())
    }

    /// Parses comma-separated codes with `-` for a dash, e.g. `1,-,2,2`.
    pub fn parse(text: &str) -> Result<ForestPattern, ForestError> {
        let mut codes = Vec::new();
        for tok in text.split(',') {
            let tok = tok.trim();
            if tok == "-" {
                codes.push(None);
            } else {
                let c: u8 = tok.parse().map_err(|_| {
                    ForestError::BadPattern(format!("bad code `{tok}` in `{text}`"))
                })?;
                if c == 0 {
                    return Err(ForestError::BadPattern(format!(
                        "codes are 1-based in `{text}`"
                    )));
                }
                codes.push(Some(c));
            }
        }
        if codes.is_empty() {
            return Err(ForestError::BadPattern("empty pattern".into()));
        }
        Ok(ForestPattern::new(codes))
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[Option<u8>] {
        &self.codes
    }

    pub fn part_count(&self) -> usize {
        self.codes.iter().flatten().copied().max().unwrap_or(0) as usize
    }

    pub fn has_dash(&self) -> bool {
        self.codes.iter().any(|c| c.is_none())
    }

    /// All full patterns obtained by assigning every dash vertex to every
    /// existing part, deduplicated, in pattern order.
    pub fn expand(&self) -> Vec<ForestPattern> {
        let k = self.part_count();
        let dash_positions: Vec<usize> = self
            .codes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| i)
            .collect();
        if dash_positions.is_empty() {
            return vec![self.clone()];
        }
        if k == 0 {
            return Vec::new();
        }
        let mut out = BTreeSet::new();
        let mut choice = vec![0usize; dash_positions.len()];
        loop {
            let mut codes = self.codes.clone();
            for (d, &pos) in dash_positions.iter().enumerate() {
                codes[pos] = Some(choice[d] as u8 + 1);
            }
            out.insert(ForestPattern::new(codes));
            // Next assignment in mixed radix k.
            let mut d = 0;
            loop {
                if d == choice.len() {
                    return out.into_iter().collect();
                }
                choice[d] += 1;
                if choice[d] < k {
                    break;
                }
                choice[d] = 0;
                d += 1;
            }
        }
    }

    /// The partition of the marked vertices whose position code is an
    /// integer; dash positions are simply not covered.
    pub fn to_partition(&self, marked: &[usize]) -> Result<SetPartition, ForestError> {
        if self.codes.len() != marked.len() {
            return Err(ForestError::LengthMismatch {
                pattern: self.codes.len(),
                marked: marked.len(),
            });
        }
        let k = self.part_count();
        let mut parts = vec![Vec::new(); k];
        for (i, c) in self.codes.iter().enumerate() {
            if let Some(c) = c {
                parts[*c as usize - 1].push(marked[i]);
            }
        }
        SetPartition::new(parts)
    }
}

impl fmt::Display for ForestPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.codes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match c {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "-")?,
            }
        }
        Ok(())
    }
}

/// Union-find over vertices with rollback, no path compression.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    joins: Vec<(usize, usize)>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..=n).collect(),
            size: vec![1; n + 1],
            joins: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Joins the components; false (and no change) when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.joins.push((rb, ra));
        true
    }

    fn undo(&mut self) {
        let (child, root) = self.joins.pop().expect("nothing to undo");
        self.parent[child] = child;
        self.size[root] -= self.size[child];
    }
}

/// Core enumerator: spanning-forest polynomial of `g` with the edges in
/// `excluded` unusable and contributing no variables, over the given parts.
/// Variables keep their indices in `g`.
pub(crate) fn phi_of_parts_excluding(
    g: &Graph,
    parts: &[Vec<usize>],
    excluded: &BTreeSet<usize>,
) -> Polynomial {
    let v = g.vertex_count();
    let k = parts.len();
    if k > v {
        return Polynomial::zero();
    }
    let needed = v - k;
    let usable: Vec<usize> = (1..=g.edge_count())
        .filter(|e| !excluded.contains(e))
        .collect();
    if usable.len() < needed {
        return Polynomial::zero();
    }
    let mut dsu = Dsu::new(v);
    let mut chosen = vec![false; usable.len()];
    let mut acc = Polynomial::zero();
    enumerate(
        g, parts, &usable, needed, 0, 0, &mut dsu, &mut chosen, &mut acc,
    );
    acc
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    g: &Graph,
    parts: &[Vec<usize>],
    usable: &[usize],
    needed: usize,
    pos: usize,
    taken: usize,
    dsu: &mut Dsu,
    chosen: &mut [bool],
    acc: &mut Polynomial,
) {
    if taken == needed {
        if compatible(parts, dsu) {
            let pairs: Vec<(VarId, u32)> = usable
                .iter()
                .zip(chosen.iter())
                .filter(|(_, &c)| !c)
                .map(|(&e, _)| (VarId::edge(e), 1))
                .collect();
            *acc = acc.add(&Polynomial::term(1, Monomial::from_pairs(&pairs)));
        }
        return;
    }
    if usable.len() - pos < needed - taken {
        return;
    }
    let (t, h) = g.endpoints(usable[pos]);
    if dsu.union(t, h) {
        chosen[pos] = true;
        enumerate(g, parts, usable, needed, pos + 1, taken + 1, dsu, chosen, acc);
        chosen[pos] = false;
        dsu.undo();
    }
    enumerate(g, parts, usable, needed, pos + 1, taken, dsu, chosen, acc);
}

/// Each part inside one tree, distinct parts in distinct trees. With
/// exactly |parts| components this makes the part-to-tree map a bijection.
fn compatible(parts: &[Vec<usize>], dsu: &Dsu) -> bool {
    let mut roots = Vec::with_capacity(parts.len());
    for part in parts {
        let r = dsu.find(part[0]);
        if part[1..].iter().any(|&v| dsu.find(v) != r) {
            return false;
        }
        if roots.contains(&r) {
            return false;
        }
        roots.push(r);
    }
    true
}

/// Spanning-forest polynomial for a partition of marked vertices.
pub fn phi(g: &Graph, partition: &SetPartition) -> Result<Polynomial, ForestError> {
    for part in partition.parts() {
        for &v in part {
            if !g.marked().contains(&v) {
                return Err(ForestError::PartNotMarked(v));
            }
        }
    }
    Ok(phi_of_parts_excluding(g, partition.parts(), &BTreeSet::new()))
}

/// Expansion of a dash pattern into full patterns.
pub fn expand_pattern(pattern: &ForestPattern) -> Vec<ForestPattern> {
    pattern.expand()
}

/// Forest polynomial of a pattern over the graph's marked vertices: the sum
/// of `phi` over the pattern's expansion.
pub fn phi_pattern(g: &Graph, pattern: &ForestPattern) -> Result<Polynomial, ForestError> {
    if pattern.len() != g.marked().len() {
        return Err(ForestError::LengthMismatch {
            pattern: pattern.len(),
            marked: g.marked().len(),
        });
    }
    let mut acc = Polynomial::zero();
    for full in pattern.expand() {
        let partition = full.to_partition(g.marked())?;
        acc = acc.add(&phi(g, &partition)?);
    }
    Ok(acc)
}

/// The A patterns of the four-vertex catalogue: the six three-part
/// partitions in lexicographic order.
pub const A_PATTERNS: [[u8; 4]; 6] = [
    [1, 1, 2, 3],
    [1, 2, 1, 3],
    [1, 2, 2, 3],
    [1, 2, 3, 1],
    [1, 2, 3, 2],
    [1, 2, 3, 3],
];

/// The B patterns: the seven two-part partitions, in catalogue order.
pub const B_PATTERNS: [[u8; 4]; 7] = [
    [1, 1, 1, 2],
    [1, 1, 2, 1],
    [1, 2, 1, 1],
    [1, 2, 2, 2],
    [1, 1, 2, 2],
    [1, 2, 1, 2],
    [1, 2, 2, 1],
];

pub fn a_pattern(s: usize) -> ForestPattern {
    ForestPattern::from_codes(&A_PATTERNS[s - 1])
}

pub fn b_pattern(t: usize) -> ForestPattern {
    ForestPattern::from_codes(&B_PATTERNS[t - 1])
}

pub fn p_pattern() -> ForestPattern {
    ForestPattern::from_codes(&[1, 1, 1, 1])
}

/// Pattern (1,1,...,1): all marked vertices in one tree.
pub fn ones_pattern(n: usize) -> ForestPattern {
    ForestPattern::from_codes(&vec![1; n])
}

/// Pattern (1,2,...,n): all marked vertices in distinct trees.
pub fn distinct_pattern(n: usize) -> ForestPattern {
    let codes: Vec<u8> = (1..=n as u8).collect();
    ForestPattern::from_codes(&codes)
}

/// The fourteen catalogue polynomials on four marked vertices.
#[derive(Debug, Clone)]
pub struct Catalogue {
    pub a: [Polynomial; 6],
    pub b: [Polynomial; 7],
    pub p: Polynomial,
}

impl Catalogue {
    pub fn a(&self, s: usize) -> &Polynomial {
        &self.a[s - 1]
    }

    pub fn b(&self, t: usize) -> &Polynomial {
        &self.b[t - 1]
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    /// Name/polynomial view in catalogue order A1..A6, B1..B7, P.
    pub fn entries(&self) -> Vec<(String, &Polynomial)> {
        let mut out = Vec::with_capacity(14);
        for (i, p) in self.a.iter().enumerate() {
            out.push((format!("A{}", i + 1), p));
        }
        for (i, p) in self.b.iter().enumerate() {
            out.push((format!("B{}", i + 1), p));
        }
        out.push(("P".into(), &self.p));
        out
    }
}

/// Computes all catalogue polynomials; the graph must have exactly four
/// marked vertices.
pub fn catalogue(g: &Graph) -> Result<Catalogue, ForestError> {
    if g.marked().len() != 4 {
        return Err(ForestError::WrongMarkedCount {
            expected: 4,
            got: g.marked().len(),
        });
    }
    let poly_of = |codes: &[u8; 4]| -> Result<Polynomial, ForestError> {
        phi_pattern(g, &ForestPattern::from_codes(codes))
    };
    Ok(Catalogue {
        a: [
            poly_of(&A_PATTERNS[0])?,
            poly_of(&A_PATTERNS[1])?,
            poly_of(&A_PATTERNS[2])?,
            poly_of(&A_PATTERNS[3])?,
            poly_of(&A_PATTERNS[4])?,
            poly_of(&A_PATTERNS[5])?,
        ],
        b: [
            poly_of(&B_PATTERNS[0])?,
            poly_of(&B_PATTERNS[1])?,
            poly_of(&B_PATTERNS[2])?,
            poly_of(&B_PATTERNS[3])?,
            poly_of(&B_PATTERNS[4])?,
            poly_of(&B_PATTERNS[5])?,
            poly_of(&B_PATTERNS[6])?,
        ],
        p: poly_of(&[1, 1, 1, 1])?,
    })
}

/// Checks the signed expansion of a one-row, one-column Dodgson polynomial
/// into a two-part forest polynomial for edges 1 and 2 sharing a vertex:
///
/// ```text
///   dodgson({1},{2}) = eps(1,2) * Phi({v},{w1,w2})
/// ```
///
/// over the graph without edges 1 and 2.
pub fn forest_expansion_of_dodgson_check(
    g: &Graph,
    i: usize,
    j: usize,
) -> Result<bool, ForestError> {
    let mut seen = [i, j];
    seen.sort_unstable();
    if seen != [1, 2] {
        return Err(KirchhoffError::PreconditionViolated(format!(
            "indices must be 1 and 2 in some order, got ({i},{j})"
        ))
        .into());
    }
    let (v, wi, wj) = kirchhoff::shared_vertex(g, i, j).ok_or_else(|| {
        KirchhoffError::PreconditionViolated(
            "edges 1 and 2 must share exactly one vertex".into(),
        )
    })?;
    if wi == wj {
        return Err(KirchhoffError::PreconditionViolated(
            "outer endpoints must be distinct".into(),
        )
        .into());
    }
    let x = g.removed_vertex();
    if x == v || x == wi || x == wj {
        return Err(KirchhoffError::PreconditionViolated(format!(
            "removed vertex {x} must avoid the shared vertex and outer endpoints"
        ))
        .into());
    }
    let lhs = kirchhoff::dodgson(g, &[i], &[j], &[])?;
    let excluded: BTreeSet<usize> = [1, 2].into_iter().collect();
    let parts = vec![vec![v], vec![wi, wj]];
    let rhs = phi_of_parts_excluding(g, &parts, &excluded);
    let sign = kirchhoff::orientation_sign(g, v, i, j);
    Ok(lhs == rhs.scale(sign))
}
