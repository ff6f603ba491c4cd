use serde_json::{json, Value};

use super::hom::{first_basis_vector, hom_dim_cyclic, irreducibles_isomorphic};
use super::meataxe::{meataxe_is_irreducible, IrreducibilityWitness, MeatAxeOutcome};
use super::module::GModule;
use crate::error::Result;

/// One isomorphism type of composition factor.
#[derive(Clone, Debug)]
pub struct CompositionFactor {
    pub module: GModule,
    pub multiplicity: usize,
    pub endo_dim: usize,
    pub witness: IrreducibilityWitness,
}

#[derive(Clone, Debug)]
pub struct CompositionReport {
    /// Sorted by (dimension, endomorphism dimension), ties in discovery order.
    pub factors: Vec<CompositionFactor>,
}

impl CompositionReport {
    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.module.dim() * f.multiplicity).sum()
    }

    /// `(dim, multiplicity)` per factor type.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|f| (f.module.dim(), f.multiplicity)).collect()
    }

    pub fn to_value(&self) -> Value {
        Value::Array(
            self.factors
                .iter()
                .map(|f| {
                    json!({
                        "dim": f.module.dim(),
                        "multiplicity": f.multiplicity,
                        "endo_dim": f.endo_dim,
                        "witness": f.witness.to_value(),
                    })
                })
                .collect(),
        )
    }
}

/// Seed for the `k`-th MeatAxe call of a run.
pub(crate) fn sub_seed(seed: u64, k: u64) -> u64 {
    seed ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Composition factors with multiplicities, by repeated MeatAxe splitting
/// into submodule and quotient.
pub fn split(m: &GModule, seed: u64) -> Result<CompositionReport> {
    let mut pending = vec![m.clone()];
    let mut factors: Vec<CompositionFactor> = Vec::new();
    let mut calls = 0u64;
    while let Some(piece) = pending.pop() {
        calls += 1;
        match meataxe_is_irreducible(&piece, sub_seed(seed, calls))? {
            MeatAxeOutcome::Reducible(sub) => {
                let label = piece.label().to_string();
                pending.push(piece.quotient(&sub, format!("{label}/sub"))?);
                pending.push(piece.submodule(&sub, format!("sub({label})"))?);
            }
            MeatAxeOutcome::Irreducible(witness) => {
                let mut known = false;
                for f in factors.iter_mut() {
                    if irreducibles_isomorphic(&f.module, &piece)? {
                        f.multiplicity += 1;
                        known = true;
                        break;
                    }
                }
                if !known {
                    let endo_dim = hom_dim_cyclic(&piece, &first_basis_vector(piece.dim()), &piece)?;
                    factors.push(CompositionFactor { module: piece, multiplicity: 1, endo_dim, witness });
                }
            }
        }
    }
    factors.sort_by_key(|f| (f.module.dim(), f.endo_dim));
    Ok(CompositionReport { factors })
}
