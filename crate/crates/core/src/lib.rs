//! Certificate-producing feasibility analysis for binary linear codes with
//! prescribed weight sets, plus the surface-geometry computations that turn
//! those refutations into statements about even node sets on sextics.
//!
//! The crate is layered:
//!
//! - [`rat`], [`combin`]: exact rational arithmetic, binomials, Krawtchouk
//!   polynomials, and the MacWilliams transform;
//! - [`lp`]: an exact two-phase simplex over rationals whose every outcome
//!   carries an independently checkable certificate;
//! - [`spec`]: the vocabulary of code specifications `[n, k, J]` with forced
//!   weights and pinned counts;
//! - [`gate`]: the Delsarte feasibility gate with integer tightening;
//! - [`bounds`], [`reductions`]: classical bounds and structural reductions
//!   between specs;
//! - [`expr`]: checked arithmetic expressions for the small pigeonhole
//!   computations proofs quote;
//! - [`prover`]: proof scripts, their runner, the solver-free log checker,
//!   and the bundled length-66 nonexistence argument;
//! - [`geometry`]: invariants of even node sets on nodal sextic surfaces;
//! - [`census`]: brute-force enumeration of small codes, cross-checking the
//!   analytic machinery against ground truth.

pub mod bounds;
pub mod census;
pub mod combin;
pub mod expr;
pub mod gate;
pub mod geometry;
pub mod lp;
pub mod prover;
pub mod rat;
pub mod reductions;
pub mod spec;
