//! Multi-pointed non-commutative deformations of simple collections of
//! quiver representations.
//!
//! The crate computes iterated universal extension towers of a simple
//! collection `{F_i}` in the category of finite-dimensional representations
//! of a quiver with relations, extracts `End(F⁽ᴺ⁾)` as an r-pointed Artin
//! algebra and checks the homological identities such towers satisfy. All
//! arithmetic is exact (ℚ or 𝔽_p).
//!
//! Module map:
//! - [`linalg`]: exact scalars, dense matrices, row reduction.
//! - [`quiver`]: quivers with relations, representations, morphisms.
//! - [`homext`]: Hom and Ext¹ spaces, extensions, universal and common extensions.
//! - [`tower`]: simplicity checks, universal extension towers, custom sequences.
//! - [`artin`]: endomorphism algebras as r-pointed Artin algebras and their invariants.
//! - [`problem`], [`report`], [`commands`]: problem files, reports and the commands behind the CLI.

pub mod artin;
pub mod commands;
pub mod homext;
pub mod linalg;
pub mod problem;
pub mod quiver;
pub mod report;
pub mod tower;

pub use linalg::{Field, LinalgError, Matrix, Scalar};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid quiver: {0}")]
    Quiver(String),
    #[error("invalid representation: {0}")]
    Representation(String),
    #[error("objects are defined over different quivers with relations")]
    QuiverMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
