use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::sync::Arc;

use serde_json::{json, Value};

use super::hom::{first_basis_vector, hom_dim_cyclic};
use super::meataxe::{meataxe_is_irreducible, IrreducibilityWitness, MeatAxeOutcome};
use super::module::{build_qb, permutation_module, GModule};
use super::split::sub_seed;
use crate::error::{Error, Result};
use crate::perm_groups::{ConjClassTable, PermGroup};

/// Default bound on the dimension of tensor products tried.
pub const DEFAULT_DIM_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub module: GModule,
    pub endo_dim: usize,
    pub witness: IrreducibilityWitness,
    /// How the module was reached, e.g. `Λ²(Q_B)/sub`.
    pub path: String,
}

impl CensusEntry {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn absolutely_irreducible(&self) -> bool {
        self.endo_dim == 1
    }
}

#[derive(Clone, Debug)]
pub struct CensusResult {
    /// Sorted by (dimension, endomorphism dimension).
    pub irreducibles: Vec<CensusEntry>,
    pub absolutely_irreducible_dims: BTreeSet<usize>,
    /// Number of Frobenius fusion orbits of 2-regular classes.
    pub expected_count: usize,
    pub complete: bool,
    /// Modules examined by the MeatAxe during the run.
    pub modules_examined: usize,
}

impl CensusResult {
    /// `(dim, endo_dim)` per irreducible.
    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.irreducibles.iter().map(|e| (e.dim(), e.endo_dim)).collect()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "expected_count": self.expected_count,
            "complete": self.complete,
            "irreducibles": self.irreducibles.iter().map(|e| json!({
                "dim": e.dim(),
                "endo_dim": e.endo_dim,
                "absolutely_irreducible": e.absolutely_irreducible(),
                "path": e.path,
                "witness": e.witness.to_value(),
            })).collect::<Vec<_>>(),
            "absolutely_irreducible_dims": self.absolutely_irreducible_dims,
        })
    }
}

enum Task {
    Module(GModule),
    Tensor(usize, usize),
    ExteriorSquare(usize),
}

struct Queue {
    heap: BinaryHeap<Reverse<(usize, u64)>>,
    tasks: Vec<Option<Task>>,
}

impl Queue {
    fn push(&mut self, dim: usize, task: Task) {
        self.heap.push(Reverse((dim, self.tasks.len() as u64)));
        self.tasks.push(Some(task));
    }

    fn pop(&mut self) -> Option<Task> {
        let Reverse((_, id)) = self.heap.pop()?;
        self.tasks[id as usize].take()
    }
}

/// Searches for all irreducible GF(2)-modules. Seeds are the permutation
/// and heart modules; new modules come from tensor products and exterior
/// squares of the irreducibles found so far, split smallest first. The
/// run is complete once the count reaches the number of fusion orbits of
/// 2-regular classes, which equals the number of irreducibles.
pub fn irreducible_census(
    group: &Arc<PermGroup>,
    classes: &ConjClassTable,
    dim_cap: usize,
    seed: u64,
) -> Result<CensusResult> {
    let expected = classes.fusion_orbit_count();
    let mut found: Vec<CensusEntry> = Vec::new();
    let mut queue = Queue { heap: BinaryHeap::new(), tasks: Vec::new() };
    let perm = permutation_module(group)?;
    queue.push(perm.dim(), Task::Module(perm));
    if group.degree() >= 3 {
        let q = build_qb(group)?;
        queue.push(q.dim(), Task::Module(q));
    }
    let mut examined = 0usize;
    while found.len() < expected {
        let Some(task) = queue.pop() else { break };
        let piece = match task {
            Task::Module(m) => m,
            Task::Tensor(i, j) => {
                let (a, b) = (&found[i], &found[j]);
                let lbl = format!("{}⊗{}", a.path, b.path);
                a.module.tensor(&b.module)?.with_label(lbl)
            }
            Task::ExteriorSquare(i) => {
                let lbl = format!("Λ²({})", found[i].path);
                found[i].module.exterior_square()?.with_label(lbl)
            }
        };
        // a nonzero map from a known irreducible of the same dimension
        // identifies the piece without a MeatAxe run
        let mut known = false;
        for e in found.iter().filter(|e| e.dim() == piece.dim()) {
            if hom_dim_cyclic(&e.module, &first_basis_vector(e.dim()), &piece)? > 0 {
                known = true;
                break;
            }
        }
        if known {
            continue;
        }
        examined += 1;
        match meataxe_is_irreducible(&piece, sub_seed(seed, examined as u64))? {
            MeatAxeOutcome::Reducible(sub) => {
                let label = piece.label().to_string();
                let s = piece.submodule(&sub, format!("{label}/sub"))?;
                let q = piece.quotient(&sub, format!("{label}/quot"))?;
                queue.push(s.dim(), Task::Module(s));
                queue.push(q.dim(), Task::Module(q));
            }
            MeatAxeOutcome::Irreducible(witness) => {
                let endo_dim = hom_dim_cyclic(&piece, &first_basis_vector(piece.dim()), &piece)?;
                let path = piece.label().to_string();
                let idx = found.len();
                let d = piece.dim();
                found.push(CensusEntry { module: piece, endo_dim, witness, path });
                if d == 1 {
                    continue;
                }
                if d * (d - 1) / 2 <= dim_cap {
                    queue.push(d * (d - 1) / 2, Task::ExteriorSquare(idx));
                }
                for (i, e) in found.iter().enumerate() {
                    if e.dim() > 1 && e.dim() * d <= dim_cap {
                        queue.push(e.dim() * d, Task::Tensor(i, idx));
                    }
                }
            }
        }
    }
    if found.len() > expected {
        return Err(Error::Construction(format!(
            "found {} irreducibles but only {expected} are possible",
            found.len()
        )));
    }
    for e in &found {
        if e.dim() % e.endo_dim != 0 {
            return Err(Error::Construction(format!("endomorphism dimension {} does not divide {}", e.endo_dim, e.dim())));
        }
    }
    found.sort_by_key(|e| (e.dim(), e.endo_dim));
    let absolutely_irreducible_dims = found.iter().filter(|e| e.endo_dim == 1).map(CensusEntry::dim).collect();
    Ok(CensusResult {
        complete: found.len() == expected,
        irreducibles: found,
        absolutely_irreducible_dims,
        expected_count: expected,
        modules_examined: examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_catalog::{make_psl2_char2, make_sym_alt};
    use crate::perm_groups::conjugacy_classes;

    #[test]
    fn s3_census() {
        let g = Arc::new(make_sym_alt(3, false).unwrap().group.unwrap());
        let c = conjugacy_classes(&g).unwrap();
        let r = irreducible_census(&g, &c, DEFAULT_DIM_CAP, 1).unwrap();
        assert!(r.complete);
        assert_eq!(r.dims(), vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn psl2_8_census() {
        let g = Arc::new(make_psl2_char2(3).unwrap().group.unwrap());
        let c = conjugacy_classes(&g).unwrap();
        let r = irreducible_census(&g, &c, DEFAULT_DIM_CAP, crate::DEFAULT_SEED).unwrap();
        assert!(r.complete);
        assert_eq!(r.dims(), vec![(1, 1), (6, 3), (8, 1), (12, 3)]);
        assert_eq!(r.absolutely_irreducible_dims, BTreeSet::from([1, 8]));
    }
}
