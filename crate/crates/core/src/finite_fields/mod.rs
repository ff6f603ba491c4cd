//! Finite field arithmetic: GF(2^m) with log tables, GF(p) and GF(p^k) for
//! odd p, univariate polynomials and distinct-degree factorization.

mod binary;
pub mod gf2poly;
mod extension;
mod parse;
mod poly;
mod prime;

pub use binary::{BinaryField, BinaryFieldElement, MAX_BINARY_DEGREE};
pub use extension::{PrimePowerField, MAX_EXTENSION_ORDER};
pub use parse::{parse_bivariate, parse_poly, BivariateTerms};
pub use poly::{Poly, PolyRing};
pub use prime::{is_prime, PrimeField};

use crate::error::Result;

/// Operations shared by the odd-characteristic fields used for sampling.
pub trait FiniteField {
    type Elem: Copy + Eq + Ord + std::fmt::Debug + std::hash::Hash;

    fn characteristic(&self) -> u64;
    /// Number of elements.
    fn order(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the prime-field embedding.
    fn from_int(&self, v: i64) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem>;
    /// Element with the given index in `0..order()`; index 0 is zero.
    fn element(&self, index: u64) -> Self::Elem;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }
}
