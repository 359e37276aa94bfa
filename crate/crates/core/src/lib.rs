//! Binary constant weight codes built from constant dimension subspace codes.
//!
//! The pipeline: a finite field [`FieldContext`], a code of `k`-dimensional
//! subspaces ([`ConstantDimensionCode`]), and [`fdtw::construct`], which turns
//! every coset of every subspace into a word of length `q^n` and weight `q^k`.
//! [`codec`] maps messages to words and corrects errors, [`bounds`] gives the
//! exact bounds the constructions are measured against, and [`verify`]
//! checks distances, Steiner properties and optical orthogonal codes.

pub mod bounds;
pub mod cdc;
pub mod codec;
pub mod error;
pub mod fdtw;
pub mod field;
pub mod format;
pub mod prime;
pub mod subspace;
pub mod verify;

pub use cdc::{ConstantDimensionCode, LiftedRankConstruction, Provenance};
pub use codec::{correct, decode, encode, CorrectionFailure, InfoWord};
pub use error::{Error, Result};
pub use fdtw::{construct, shorten, ConstantWeightCode, CwWord};
pub use field::{FieldContext, FieldElement};
pub use subspace::Subspace;
