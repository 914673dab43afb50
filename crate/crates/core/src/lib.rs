//! Exact computer algebra for constant-term identities.
//!
//! The crate computes constant terms of multivariate Laurent polynomials and
//! of rational functions with the standard denominator
//! `prod (1 - x_i) * prod (1 - x_i x_j)`, always over arbitrary-precision
//! rationals. On top of the raw engines it implements:
//!
//! - a partial-fraction reduction that rewrites a constant term in `2k`
//!   variables as a constant term in `k` variables ([`reduction`]),
//! - sums of full-rank minors of binomial-coefficient matrices and their
//!   single-determinant reductions ([`minors`]),
//! - closed forms and multi-route verification for a family of classical
//!   identities: the TSSCPP/ASM product, Zeilberger's prized constant
//!   terms, the Morris identity and Macdonald's BC constant term
//!   ([`identities`]),
//! - truncated Laurent series and Jacobi's change-of-variable formula for
//!   the Catalan substitution ([`analytic`]).
//!
//! Everything is exact: no floating point, no modular shortcuts. Equality
//! of two routes means equality of `BigRational` values or of canonical
//! sparse polynomials.

pub mod analytic;
pub mod ctcore;
pub mod exact;
pub mod identities;
pub mod laurent;
pub mod minors;
pub mod reduction;

pub use exact::{BigInt, BigRat};
pub use laurent::{MultiLaurent, TruncLaurent};
