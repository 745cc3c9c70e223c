//! Harish Chandra series solutions of Macdonald's system of q-difference
//! equations.
//!
//! The crate is organised bottom-up:
//!
//! - [`qcore`]: scalar q-special functions (infinite products, q-Gamma,
//!   theta functions, the bracket `[v]`, contraction kernels, basic
//!   hypergeometric series).
//! - [`operators`]: the commuting Macdonald operators `D^m`, their
//!   eigenvalues, numeric and polynomial application, and pointwise
//!   operator identities.
//! - [`hcseries`]: the coefficient recursion for the `n!` Harish Chandra
//!   solutions, their evaluation, leading coefficients and residue-sum
//!   oracles for the associated contour integrals.
//! - [`continuation`]: connection formulas between asymptotic zones,
//!   braiding matrices and Boltzmann weights.
//! - [`macpoly`]: Macdonald polynomials, both the terminating two-variable
//!   family and a triangular construction for general `n`.

// Negated comparisons are used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod continuation;
pub mod error;
pub mod hcseries;
pub mod macpoly;
pub mod operators;
pub mod qcore;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
