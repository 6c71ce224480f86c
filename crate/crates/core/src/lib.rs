//! Hadamard matrices, quantum Latin squares and unitary error bases, built by
//! composing biunitaries and checked against their defining equations.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex matrices, trace inner products, unitarity up to
//!   a scalar, and axis regrouping.
//! - [`structures`]: the validated structure types, their verifiers and the
//!   standard generators (Fourier matrices, cyclic Latin squares, shift-and-clock
//!   bases).
//! - [`biunitarity`]: verification reports and the rotated (matrix) form of each
//!   structure's conditions, including the horizontal scalar `λ`.
//! - [`constructions`]: every composite construction, written as its index
//!   formula.
//! - [`equivalence`]: Hadamard dephasing and equivalence search, basis
//!   normalization, and the two obstructions that separate an error basis from
//!   nice and shift-and-multiply bases.
//! - [`reproduction`]: the eight-dimensional error basis built from four small
//!   inputs, compared against a shipped fixture.
//! - [`io`]: the JSON interchange format.

pub mod biunitarity;
pub mod closure;
pub mod constructions;
pub mod equivalence;
pub mod error;
pub mod io;
pub mod linalg;
pub mod reproduction;
pub mod samples;
pub mod structures;

pub use biunitarity::BiunitaryReport;
pub use error::{Error, Result};
pub use linalg::{CMatrix, Tolerance, C64};
pub use structures::{
    Candidate, ControlledFamily, HadamardMatrix, LatinSquare, QuantumLatinSquare, UnitaryErrorBasis,
};
