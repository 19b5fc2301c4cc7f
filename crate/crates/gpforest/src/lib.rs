//! Exact symbolic engine for graph polynomials.
//!
//! The crate computes Kirchhoff polynomials, Dodgson polynomials and
//! spanning-forest polynomials of a graph with exact integer arithmetic,
//! verifies quadratic identities between them as exact polynomial
//! identities, and searches for new identities of that shape by solving
//! exact rational linear systems over families of graphs.
//!
//! Module map:
//!
//! - [`poly`] — sparse multivariate polynomials over arbitrary-precision
//!   integers, with rational evaluation.
//! - [`graph`] — graphs with ordered oriented edges, marked vertices,
//!   deletion/contraction, built-in families and a text format.
//! - [`kirchhoff`] — the block matrix of a graph, fraction-free
//!   determinants, and Dodgson polynomials.
//! - [`forest`] — spanning-forest polynomials by enumeration, dash-notation
//!   patterns and the A/B/P catalogue on four marked vertices.
//! - [`linalg`] — exact rational row reduction, kernels and affine
//!   solution spaces.
//! - [`identities`] — the identity checks and the coefficient table of the
//!   four-vertex quadratic identity family.
//! - [`discovery`] — the linear-system search for quadratic identities with
//!   n marked vertices.

pub mod discovery;
pub mod forest;
pub mod graph;
pub mod identities;
pub mod kirchhoff;
pub mod linalg;
pub mod poly;
pub mod rng;

pub use graph::Graph;
pub use poly::{Polynomial, VarId};
