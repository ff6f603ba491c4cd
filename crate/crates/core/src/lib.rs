//! Computational substrate for doubly transitive permutation groups and
//! their mod-2 permutation modules: finite fields, bit-packed GF(2) linear
//! algebra, stabilizer chains, group constructors, MeatAxe-style module
//! analysis, certificate trees and a Frobenius cycle-type sampler.

pub mod certificate;
pub mod error;
pub mod f2_linalg;
pub mod finite_fields;
pub mod frobenius_sampler;
pub mod group_catalog;
pub mod mod_rep;
pub mod perm_groups;
pub mod tables;
pub mod textfmt;
pub mod very_simple;

pub use error::{Error, Result};

/// Seed used by every randomized routine unless overridden.
pub const DEFAULT_SEED: u64 = 0x5EED;
