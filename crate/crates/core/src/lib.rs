//! Exact representation theory of the semisimple extension
//! `g = (s ⊗ Λ(ξ)) ⋊ ⟨∂_ξ, ξ∂_ξ⟩` of the Takiff superalgebra of a simple Lie
//! algebra `s`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is computed with
//! exact integers and rationals:
//!
//! - [`rootsys`]: root data for all simple types, Weyl group helpers.
//! - [`charring`]: formal characters, Freudenthal, decomposition, plethysm.
//! - [`dmap`]: Chevalley bases, explicit modules and the contraction maps
//!   `Dⁿ[V]: Sⁿ(s) ⊗ V → Sⁿ⁻¹(s) ⊗ V`.
//! - [`takiff`]: super weights and composition multiplicities of standard and
//!   projective modules.
//! - [`blocks`]: block labels in the finite-dimensional category and in
//!   category O, with explicit linkage chains.
//! - [`ext`]: Ext dimensions (closed form and matrix-rank oracle), Ext¹
//!   quivers, Koszul diagonal check.
//! - [`ideals`]: ad-nilpotent ideals and Borel subalgebra classification.
//! - [`invariants`]: the `sl(n)` realisation inside `gl(n|n)` and commutants
//!   of tensor powers.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod blocks;
pub mod charring;
pub mod dmap;
mod error;
pub mod ext;
pub mod ideals;
pub mod invariants;
pub mod linalg;
pub mod rootsys;
pub mod takiff;

pub use error::{Error, Result};

/// Resource limits shared by the explicit-matrix engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest module dimension any explicit construction may reach.
    pub dim_cap: usize,
    /// Largest tensor space `(2n)^r` handled by the invariant-theory engine.
    pub tensor_cap: usize,
    /// Longest linkage chain that will be emitted.
    pub chain_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dim_cap: 2000,
            tensor_cap: 20736,
            chain_cap: 10_000,
        }
    }
}
