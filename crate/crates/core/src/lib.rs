//! Exact, finite models of the two classical constructions of the
//! equivariant norm (transversal-then-indexed-product and
//! smash-power-then-wreath-pullback), together with the category theory
//! they are built from: finite groups and wreath products, finite
//! categories and functors, covering categories and Grothendieck
//! constructions, and indexed tensor products over pluggable finite
//! symmetric monoidal categories.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line driver live in the companion `normmap` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
#[macro_use]
extern crate std;

pub mod comparison;
pub mod covering;
pub mod diagram;
pub mod error;
pub mod fincat;
pub mod grothendieck;
pub mod group;
pub mod indexing;
pub mod groupoid;
pub mod monoidal;
pub mod natiso;
pub mod norms;
pub mod random;
pub mod suite;
pub mod wreath;

pub use error::{Error, Result};
