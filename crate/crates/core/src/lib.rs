//! Pseudohermitian invariants of three-dimensional CR manifolds: structure
//! equations, pointwise positivity tests, discrete operators on the Heisenberg
//! nilmanifold, the curvature-torsion flow and soliton diagnostics.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod exterior;
pub mod flow;
pub mod heisenberg;
pub mod numeric;
pub mod pointwise;
pub mod report;
pub mod selftest;
pub mod soliton;
