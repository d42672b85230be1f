//! Exact verification of Hom-Lie coalgebras, coderivation pairs and the
//! constructions relating them.
//!
//! Every structure is stored by its rational structure constants in a fixed
//! basis, and every axiom is decided by exact matrix equality. Tensor powers
//! of a base space are flattened lexicographically (row-major), so the basis
//! tensor `e_i ⊗ e_j` of an `n`-dimensional space sits at index `i * n + j`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod constructions;
pub mod duality;
mod error;
pub mod linear;
mod scalar;
pub mod solver;
pub mod structures;

pub use crate::error::{Error, Result};
pub use crate::linear::{LinMap, TensorSpace};
pub use crate::scalar::{int, parse_scalar, ratio, Scalar};
pub use crate::structures::{
    AlgebraFlavor, Bundle, CheckReport, CoDerComodule, CoDerPair, CoalgebraFlavor, Comodule,
    DerPair, EndoOp, HomAlgebra, HomCoalgebra, ModuleData, Representation, RotaBaxterData, Side,
    Witness,
};
