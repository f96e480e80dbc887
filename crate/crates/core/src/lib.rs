//! Exact q-series computations for affine sl2: fusion-product characters,
//! restricted and unrestricted Kostka polynomials, graded characters of
//! integrable modules, and coset branching functions computed three ways.
//!
//! All values are [`Series`] over a generic exact coefficient ring; the crate
//! root fixes the usual choice of arbitrary-precision integers.

pub mod affine;
pub mod branching;
pub mod error;
pub mod fusion;
pub mod kostka;
pub mod qseries;
pub mod scalar;

mod poly;

pub use affine::{AffineLabel, BivariateCharacter, ComponentCache};
pub use branching::{CosetSpec, FermionicData, Method, Normalization};
pub use error::{Error, Result};
pub use fusion::{Composition, fusion_char, fusion_char_exact, unrestricted_kostka};
pub use kostka::RestrictedKostkaQuery;
pub use qseries::{ExactRational, Mismatch, OrderJson, Series, SeriesJson};
pub use scalar::Coeff;

/// Series with arbitrary-precision integer coefficients.
pub type QSeries = Series<num_bigint::BigInt>;
/// Series with 128-bit coefficients, for small fast experiments.
pub type QSeries128 = Series<i128>;
