//! Exact combinatorics of point sets and polynomials in the projective plane
//! `PG(2,q)`.
//!
//! The crate computes, over small finite fields:
//!
//! * intersection distributions of point sets (how many lines meet a set in
//!   exactly `i` points) and of polynomials (how many pairs `(a,b)` leave
//!   `f(x) - ax - b` with exactly `i` roots),
//! * multiplicity distributions of the value multisets `{f(x) - cx}`,
//! * value sets, permutation directions and o-polynomial tests,
//! * closed-form predictions for six families of power mappings, each
//!   verifiable against brute force,
//! * Kakeya sets of the affine plane via their dual `(q+2)`-point sets,
//! * arcs, maximal arcs, non-hitting-index bounds and the exhaustive
//!   non-hitting spectrum for tiny orders.
//!
//! Everything is exact integer arithmetic; no floating point is involved.

pub mod error;
pub mod extremal;
pub mod formulas;
pub mod gf;
pub mod kakeya;
pub mod plane;
pub mod polyset;
pub mod tables;

pub use error::Error;
pub use gf::{FieldCtx, FieldElem};
pub use plane::{Distribution, Plane, PointSet, ProjLine, ProjPoint};
pub use polyset::FieldPoly;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
