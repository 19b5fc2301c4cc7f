//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! Variables are indexed: edge variables `a1, a2, ...` follow the positions
//! of edges in a graph's edge list, auxiliary variables `x1, x2, ...` occupy
//! a disjoint range. Monomials are sorted exponent vectors ordered by
//! graded-lexicographic comparison, so the term map of a polynomial is a
//! canonical form: two polynomials are equal iff their term maps are
//! identical. All coefficients are `BigInt`; determinant intermediates
//! overflow 64 bits already on moderate graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A polynomial variable: either an edge variable or an auxiliary one.
///
/// Indices are 1-based to match edge positions in a graph's edge list.
/// Edge variables order before auxiliary variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Edge(u32),
    Aux(u32),
}

impl VarId {
    pub fn edge(i: usize) -> Self {
        VarId::Edge(i as u32)
    }

    pub fn aux(i: usize) -> Self {
        VarId::Aux(i as u32)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Edge(i) => write!(f, "a{i}"),
            VarId::Aux(i) => write!(f, "x{i}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("non-exact division: leading term {lead} is not divisible by {divisor}")]
    NonExactDivision { lead: String, divisor: String },
    #[error("polynomial has degree > 1 in {var}")]
    DegreeTooHigh { var: VarId },
    #[error("no value assigned to {var}")]
    MissingAssignment { var: VarId },
}

/// Exponent vector of a monomial: sorted by variable, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from (variable, exponent) pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_pairs(pairs: &[(VarId, u32)]) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for &(v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial {
            exps: map.into_iter().collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent_of(&self, v: VarId) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn contains_any(&self, vars: &BTreeSet<VarId>) -> bool {
        self.exps.iter().any(|(v, _)| vars.contains(v))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                std::cmp::Ordering::Less => {
                    exps.push(self.exps[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    exps.push(other.exps[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    exps.push((self.exps[i].0, self.exps[i].1 + other.exps[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps }
    }

    /// Quotient monomial, or None if some exponent of `other` exceeds ours.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            let oe = if j < other.exps.len() && other.exps[j].0 == v {
                let oe = other.exps[j].1;
                j += 1;
                oe
            } else {
                0
            };
            if oe > e {
                return None;
            }
            if e - oe > 0 {
                exps.push((v, e - oe));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial { exps })
    }
}

impl Ord for Monomial {
    /// Graded-lexicographic order: first by total degree, ties broken
    /// lexicographically with earlier variables weighing more.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                // A positive exponent where the other side has run out of
                // variables means the other side's exponent is 0 there.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        // self has a positive exponent on an earlier variable
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with `BigInt` coefficients.
///
/// Immutable value: all operations return fresh polynomials. The term map
/// stores no zero coefficients, so structural equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn var(v: VarId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigInt::one());
        Polynomial { terms }
    }

    pub fn edge_var(i: usize) -> Self {
        Polynomial::var(VarId::edge(i))
    }

    pub fn aux_var(i: usize) -> Self {
        Polynomial::var(VarId::aux(i))
    }

    pub fn term<T: Into<BigInt>>(coeff: T, monomial: Monomial) -> Self {
        let c = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I, T>(iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, T)>,
        T: Into<BigInt>,
    {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c.into());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading (graded-lex greatest) term.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent_of(v))
            .max()
            .unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        // Iterate the smaller operand outside.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Polynomial::zero();
        for (ms, cs) in &small.terms {
            for (ml, cl) in &large.terms {
                out.add_term(ms.mul(ml), cs * cl);
            }
        }
        out
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> Polynomial {
        let c = c.into();
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * &c))
                .collect(),
        }
    }

    /// Exact division in the integer polynomial ring.
    ///
    /// Long division by leading terms under graded-lex order; any remainder
    /// is a hard error, signalling a pivoting bug in fraction-free
    /// elimination rather than a recoverable condition.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (dm, dc) = divisor.leading_term().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(dm).ok_or_else(|| PolyError::NonExactDivision {
                lead: format!("{}", Polynomial::term(rc.clone(), rm.clone())),
                divisor: format!("{}", Polynomial::term(dc.clone(), dm.clone())),
            })?;
            let (qc, r) = num_integer_div_rem(rc, dc);
            if !r.is_zero() {
                return Err(PolyError::NonExactDivision {
                    lead: format!("{}", Polynomial::term(rc.clone(), rm.clone())),
                    divisor: format!("{}", Polynomial::term(dc.clone(), dm.clone())),
                });
            }
            let t = Polynomial::term(qc, qm);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Ok(quot)
    }

    /// Drops every term that contains any of the given variables.
    pub fn substitute_zero(&self, vars: &BTreeSet<VarId>) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.contains_any(vars))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// For `p` of degree <= 1 in `v`, the polynomial `q` with
    /// `p = q*v + (p with v -> 0)`.
    pub fn coefficient_of(&self, v: VarId) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            match m.exponent_of(v) {
                0 => {}
                1 => {
                    let stripped = Monomial {
                        exps: m
                            .exps
                            .iter()
                            .copied()
                            .filter(|&(w, _)| w != v)
                            .collect(),
                    };
                    out.add_term(stripped, c.clone());
                }
                _ => return Err(PolyError::DegreeTooHigh { var: v }),
            }
        }
        Ok(out)
    }

    /// Exact rational evaluation; every variable of `self` must be assigned.
    pub fn eval_rational(
        &self,
        assignment: &BTreeMap<VarId, BigRational>,
    ) -> Result<BigRational, PolyError> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut val = BigRational::from_integer(c.clone());
            for &(v, e) in m.exponents() {
                let x = assignment
                    .get(&v)
                    .ok_or(PolyError::MissingAssignment { var: v })?;
                for _ in 0..e {
                    val *= x;
                }
            }
            acc += val;
        }
        Ok(acc)
    }

    /// Applies a variable map, merging exponents on collision.
    pub fn rename_vars(&self, f: impl Fn(VarId) -> VarId) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let pairs: Vec<(VarId, u32)> =
                m.exponents().iter().map(|&(v, e)| (f(v), e)).collect();
            out.add_term(Monomial::from_pairs(&pairs), c.clone());
        }
        out
    }

    /// True when every variable appears with degree <= 1 everywhere.
    pub fn is_multilinear(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.exponents().iter().all(|&(_, e)| e <= 1))
    }

    /// Structured rendering: a JSON list of terms in descending graded-lex
    /// order, each `{"coeff": "<int>", "exponents": {"<var>": e, ...}}`.
    pub fn render_structured(&self) -> String {
        let mut out = String::from("[");
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("{{\"coeff\":\"{c}\",\"exponents\":{{"));
            for (j, &(v, e)) in m.exponents().iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&format!("\"{v}\":{e}"));
            }
            out.push_str("}}");
        }
        out.push(']');
        out
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

impl fmt::Display for Polynomial {
    /// Canonical text rendering: terms in descending graded-lex order,
    /// e.g. `a1*a2 - 2*a3^2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                for (j, &(v, e)) in m.exponents().iter().enumerate() {
                    if j > 0 {
                        write!(f, "*")?;
                    }
                    if e == 1 {
                        write!(f, "{v}")?;
                    } else {
                        write!(f, "{v}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize) -> Polynomial {
        Polynomial::edge_var(i)
    }

    fn x(i: usize) -> Polynomial {
        Polynomial::aux_var(i)
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = a(1);
        assert!(p.add(&p.neg()).is_zero());
    }

    #[test]
    fn coefficients_merge() {
        let p = a(1).add(&a(2));
        let q = p.add(&a(2));
        assert_eq!(q, a(1).add(&a(2).scale(2)));
        assert_eq!(format!("{q}"), "a1 + 2*a2");
    }

    #[test]
    fn add_zero_is_identity() {
        let psi_triangle = a(1).add(&a(2)).add(&a(3));
        assert_eq!(psi_triangle.add(&Polynomial::zero()), psi_triangle);
    }

    #[test]
    fn mul_squares_variables() {
        let p = a(1).mul(&a(1));
        assert_eq!(format!("{p}"), "a1^2");
        assert_eq!(p.degree_in(VarId::edge(1)), 2);
    }

    #[test]
    fn difference_of_squares() {
        let p = a(1).add(&a(2)).mul(&a(1).sub(&a(2)));
        assert_eq!(p, a(1).mul(&a(1)).sub(&a(2).mul(&a(2))));
        assert_eq!(format!("{p}"), "a1^2 - a2^2");
    }

    #[test]
    fn exact_div_difference_of_squares() {
        let p = a(1).mul(&a(1)).sub(&a(2).mul(&a(2)));
        let q = a(1).sub(&a(2));
        assert_eq!(p.exact_div(&q).unwrap(), a(1).add(&a(2)));
    }

    #[test]
    fn exact_div_by_unit() {
        let p = a(1).add(&a(2).scale(3));
        assert_eq!(p.exact_div(&Polynomial::one()).unwrap(), p);
    }

    #[test]
    fn exact_div_remainder_is_error() {
        let p = a(1).add(&Polynomial::one());
        let err = p.exact_div(&a(2)).unwrap_err();
        assert!(matches!(err, PolyError::NonExactDivision { .. }));
        assert_eq!(
            p.exact_div(&Polynomial::zero()).unwrap_err(),
            PolyError::DivisionByZero
        );
    }

    #[test]
    fn substitute_zero_drops_terms() {
        let p = a(1).add(&a(2)).add(&a(3));
        let s: BTreeSet<VarId> = [VarId::edge(1)].into_iter().collect();
        assert_eq!(p.substitute_zero(&s), a(2).add(&a(3)));
        let prod = a(1).mul(&a(2));
        assert!(prod.substitute_zero(&s).is_zero());
    }

    #[test]
    fn substitute_zero_composes() {
        let p = a(1).mul(&a(2)).add(&a(2).mul(&a(3))).add(&a(3));
        let s: BTreeSet<VarId> = [VarId::edge(1)].into_iter().collect();
        let t: BTreeSet<VarId> = [VarId::edge(2)].into_iter().collect();
        let st: BTreeSet<VarId> = s.union(&t).copied().collect();
        assert_eq!(
            p.substitute_zero(&st),
            p.substitute_zero(&s).substitute_zero(&t)
        );
    }

    #[test]
    fn coefficient_of_linear_var() {
        let p = x(1).mul(&a(2)).add(&a(3));
        assert_eq!(p.coefficient_of(VarId::aux(1)).unwrap(), a(2));
        assert!(a(2)
            .add(&a(3))
            .coefficient_of(VarId::aux(1))
            .unwrap()
            .is_zero());
        let sq = x(1).mul(&x(1));
        assert!(matches!(
            sq.coefficient_of(VarId::aux(1)),
            Err(PolyError::DegreeTooHigh { .. })
        ));
    }

    #[test]
    fn eval_rational_basics() {
        let p = a(1).add(&a(2));
        let mut env = BTreeMap::new();
        env.insert(VarId::edge(1), BigRational::from_integer(1.into()));
        env.insert(VarId::edge(2), BigRational::from_integer(2.into()));
        assert_eq!(
            p.eval_rational(&env).unwrap(),
            BigRational::from_integer(3.into())
        );
        assert!(Polynomial::zero()
            .eval_rational(&BTreeMap::new())
            .unwrap()
            .is_zero());
        assert!(matches!(
            p.eval_rational(&BTreeMap::new()),
            Err(PolyError::MissingAssignment { .. })
        ));
    }

    #[test]
    fn canonical_form_ignores_construction_order() {
        assert_eq!(a(1).add(&a(2)), a(2).add(&a(1)));
        assert!(a(1).sub(&a(1)).is_zero());
    }

    #[test]
    fn graded_lex_display_order() {
        let p = a(3).add(&a(1)).add(&a(2).mul(&a(3)));
        assert_eq!(format!("{p}"), "a2*a3 + a1 + a3");
    }

    #[test]
    fn aux_vars_order_after_edge_vars() {
        let p = x(1).add(&a(5));
        assert_eq!(format!("{p}"), "a5 + x1");
    }

    #[test]
    fn structured_rendering_shape() {
        let p = a(1).mul(&a(2)).sub(&Polynomial::constant(2));
        assert_eq!(
            p.render_structured(),
            "[{\"coeff\":\"1\",\"exponents\":{\"a1\":1,\"a2\":1}},{\"coeff\":\"-2\",\"exponents\":{}}]"
        );
    }

    #[test]
    fn rename_vars_merges_collisions() {
        let p = a(1).mul(&a(2));
        let q = p.rename_vars(|_| VarId::edge(7));
        assert_eq!(format!("{q}"), "a7^2");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = Polynomial> {
            // Up to 6 terms in up to 4 variables with small exponents.
            proptest::collection::vec(
                (
                    proptest::collection::vec((1u32..5, 1u32..3), 0..4),
                    -6i64..7,
                ),
                0..6,
            )
            .prop_map(|terms| {
                Polynomial::from_terms(terms.into_iter().map(|(vars, c)| {
                    let pairs: Vec<(VarId, u32)> = vars
                        .into_iter()
                        .map(|(v, e)| (VarId::Edge(v), e))
                        .collect();
                    (Monomial::from_pairs(&pairs), c)
                }))
            })
        }

        proptest! {
            #[test]
            fn add_commutes(p in arb_poly(), q in arb_poly()) {
                prop_assert_eq!(p.add(&q), q.add(&p));
            }

            #[test]
            fn mul_commutes(p in arb_poly(), q in arb_poly()) {
                prop_assert_eq!(p.mul(&q), q.mul(&p));
            }

            #[test]
            fn add_associates(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
            }

            #[test]
            fn mul_associates(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            }

            #[test]
            fn mul_distributes(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
                prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
            }

            #[test]
            fn exact_div_inverts_mul(p in arb_poly(), q in arb_poly()) {
                prop_assume!(!q.is_zero());
                prop_assert_eq!(p.mul(&q).exact_div(&q).unwrap(), p);
            }

            #[test]
            fn eval_is_ring_homomorphism(p in arb_poly(), q in arb_poly()) {
                let mut env = BTreeMap::new();
                for i in 1..5u32 {
                    env.insert(
                        VarId::Edge(i),
                        BigRational::new((i as i64 + 1).into(), (2 * i as i64 + 1).into()),
                    );
                }
                let (ep, eq) = (p.eval_rational(&env).unwrap(), q.eval_rational(&env).unwrap());
                prop_assert_eq!(p.add(&q).eval_rational(&env).unwrap(), &ep + &eq);
                prop_assert_eq!(p.mul(&q).eval_rational(&env).unwrap(), &ep * &eq);
            }
        }
    }
}
