//! GF(2)-modules for permutation groups: permutation and heart modules,
//! MeatAxe irreducibility, endomorphism rings, composition factors, the
//! irreducible census and Brauer character values.

mod brauer;
mod census;
mod charpoly;
mod hom;
mod meataxe;
mod module;
mod split;

pub use charpoly::{charpoly_factors, eval_small, PartialFactorization, TRIAL_DEGREE};
pub use hom::{endo_ring_dim, hom_dim_cyclic, hom_space, irreducibles_isomorphic};
pub use meataxe::{
    meataxe_is_irreducible, spin, AlgebraElement, IrreducibilityWitness, MeatAxeOutcome, MEATAXE_ROUNDS,
};
pub use module::{build_qb, perm_character_value, perm_to_matrix, permutation_module, GModule};
pub use census::{irreducible_census, CensusEntry, CensusResult, DEFAULT_DIM_CAP};
pub use split::{split, CompositionFactor, CompositionReport};
pub use brauer::{brauer_value, cyclotomic_polynomial, BrauerValue};
