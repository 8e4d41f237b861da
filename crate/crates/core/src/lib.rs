//! Exact computation of derivations on twisted forms of finite-dimensional
//! algebras over the differential field `Q(t)`.
//!
//! A form `B` of a `Q`-algebra `A` is presented by a matrix `P⁻¹` over a
//! finite Galois extension `E/F` whose rows express the descended basis in
//! terms of `A`'s basis. The derivations of `B` extending `d/dt` form an
//! affine space of matrices; [`extend`] computes it from the Lie algebra of
//! `A ⊗ E` and checks it against a direct Leibniz solve over `F`.

pub mod algebra;
pub mod cli;
pub mod derlie;
pub mod descent;
pub mod dfield;
pub mod error;
pub mod exactla;
pub mod extend;

pub use error::{Error, Result};
