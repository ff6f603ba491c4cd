//! Permutation groups: stabilizer chains, orbits, transitivity, conjugacy
//! classes with squaring fusion, and the subgroup-index audit.

mod chain;
mod classes;
mod perm;
mod subgroups;

use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use rand::Rng;

pub use chain::StabChain;
pub use classes::{conjugacy_classes, ConjClass, ConjClassTable, CLASS_CAP};
pub use perm::{CycleType, Permutation};
pub use subgroups::{
    find_index_dividing, find_subgroup_of_order, group_fingerprint, minimal_proper_index,
    subgroup_index_audit, AuditBackend, AuditOutcome, SubgroupWitness, SUBGROUP_CAP,
};

use crate::error::{Error, Result};

/// Largest group for which Cayley-graph words are tabulated.
pub const WORD_CAP: u64 = 10_000_000;

/// A permutation group given by generators, with a verified stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    cayley: Arc<OnceLock<CayleyTree>>,
}

#[derive(Debug)]
struct CayleyTree {
    parent: Vec<u32>,
    via: Vec<u8>,
}

/// Builds the stabilizer chain of the group generated by `generators`.
pub fn build_chain(generators: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::new(generators)
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::Precondition("a group needs at least one generator".into()))?;
        Self::with_base(degree, generators, &[])
    }

    /// Like [`Self::new`] but with an explicit degree (allowing no
    /// generators) and a prescribed base prefix.
    pub fn with_base(degree: usize, generators: Vec<Permutation>, prefix: &[u32]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Precondition("degree must be positive".into()));
        }
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Precondition("generators have different degrees".into()));
        }
        if prefix.iter().any(|&b| b as usize >= degree) {
            return Err(Error::Range("base point outside the domain".into()));
        }
        let chain = StabChain::build(degree, &generators, prefix);
        debug_assert!(generators.iter().all(|g| chain.contains(g)));
        Ok(Self { degree, generators, chain, cayley: Arc::new(OnceLock::new()) })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::with_base(degree, Vec::new(), &[]).expect("positive degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.chain.order_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Orbit of a point in discovery order.
    pub fn orbit(&self, p: u32) -> Vec<u32> {
        orbit_under(&self.generators, self.degree, p)
    }

    /// Orbits sorted by least element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_under(&self.generators, self.degree, 0)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Largest k ≤ 2 with the action k-transitive: one orbit gives 1, and a
    /// point stabilizer transitive on the remaining points gives 2.
    pub fn transitivity_degree(&self) -> u32 {
        if !self.is_transitive() {
            return 0;
        }
        if self.degree == 1 {
            return 1;
        }
        let stab = self.point_stabilizer(0);
        if orbit_under(stab.generators(), self.degree, 1).len() == self.degree - 1 {
            2
        } else {
            1
        }
    }

    /// Stabilizer of `p`, generated by the strong generators below a base
    /// starting at `p`.
    pub fn point_stabilizer(&self, p: u32) -> PermGroup {
        let chain = StabChain::build(self.degree, &self.generators, &[p]);
        let gens = chain.stabilizer_gens(1);
        PermGroup::with_base(self.degree, gens, &[]).expect("valid degree")
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        self.chain.random_element(rng)
    }

    /// Index of a member in `0..|G|`.
    pub fn rank(&self, g: &Permutation) -> Option<u64> {
        self.chain.rank(g)
    }

    pub fn unrank(&self, r: u64) -> Permutation {
        self.chain.unrank(r)
    }

    /// All elements in rank order; only sensible for small groups.
    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        let n = self.order_u64().expect("group order fits in u64");
        (0..n).map(move |r| self.unrank(r))
    }

    /// Subgroup generated by `gens` (members of this group or not).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> PermGroup {
        PermGroup::with_base(self.degree, gens, &self.chain.base()).expect("valid degree")
    }

    /// Normal closure of `gens` in this group.
    pub fn normal_closure(&self, gens: &[Permutation]) -> PermGroup {
        let mut h = self.subgroup(gens.to_vec());
        loop {
            let mut added = false;
            let mut new_gens = h.generators.clone();
            for x in h.generators.clone() {
                for s in &self.generators {
                    let c = x.conjugate_by(s);
                    if !h.contains(&c) {
                        new_gens.push(c);
                        h = self.subgroup(new_gens.clone());
                        added = true;
                    }
                }
            }
            if !added {
                return h;
            }
        }
    }

    /// A word in the generators equal to `g`, as generator indices applied
    /// left to right. Requires `|G| ≤ WORD_CAP`.
    pub fn word_for(&self, g: &Permutation) -> Result<Vec<usize>> {
        let n = self.order_u64().filter(|&n| n <= WORD_CAP).ok_or_else(|| {
            Error::CapExceeded(format!("Cayley words need |G| <= {WORD_CAP}"))
        })?;
        let tree = self.cayley.get_or_init(|| self.cayley_tree(n));
        let mut r = self.rank(g).ok_or(Error::NotInGroup)?;
        let mut word = Vec::new();
        while r != 0 {
            word.push(tree.via[r as usize] as usize);
            r = tree.parent[r as usize] as u64;
        }
        word.reverse();
        Ok(word)
    }

    fn cayley_tree(&self, n: u64) -> CayleyTree {
        assert!(self.generators.len() < 256, "too many generators for Cayley words");
        let mut parent = vec![u32::MAX; n as usize];
        let mut via = vec![0u8; n as usize];
        parent[0] = 0;
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            let rx = self.rank(&x).expect("member") as u32;
            for (i, s) in self.generators.iter().enumerate() {
                let y = x.mul(s);
                let ry = self.rank(&y).expect("member") as usize;
                if parent[ry] == u32::MAX {
                    parent[ry] = rx;
                    via[ry] = i as u8;
                    queue.push_back(y);
                }
            }
        }
        CayleyTree { parent, via }
    }
}

pub(crate) fn orbit_under(gens: &[Permutation], n: usize, p: u32) -> Vec<u32> {
    let mut seen = vec![false; n];
    seen[p as usize] = true;
    let mut orbit = vec![p];
    let mut k = 0;
    while k < orbit.len() {
        let x = orbit[k];
        for g in gens {
            let y = g.image(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                orbit.push(y);
            }
        }
        k += 1;
    }
    orbit
}

/// Orbits of the points `from..n` (the points below `from` are skipped).
fn orbits_under(gens: &[Permutation], n: usize, from: u32) -> Vec<Vec<u32>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for p in from..n as u32 {
        if !seen[p as usize] {
            let mut o = orbit_under(gens, n, p);
            for &q in &o {
                seen[q as usize] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
    }
    out
}

/// Cycle type of a permutation, fixed points included.
pub fn cycle_type(g: &Permutation) -> CycleType {
    g.cycle_type()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use std::collections::HashSet;

    fn sym(n: usize) -> PermGroup {
        let cyc: Vec<u32> = (0..n as u32).collect();
        PermGroup::new(vec![
            Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(n, &[&cyc]).unwrap(),
        ])
        .unwrap()
    }

    fn closure_size(gens: &[Permutation]) -> usize {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(gens[0].degree());
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn symmetric_group_order() {
        assert_eq!(sym(9).order(), BigUint::from(362880u32));
        assert_eq!(sym(9).transitivity_degree(), 2);
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(vec![Permutation::identity(4)]).unwrap();
        assert_eq!(g.order_u64(), Some(1));
        assert_eq!(g.transitivity_degree(), 0);
    }

    #[test]
    fn transitivity_examples() {
        let c3 = PermGroup::new(vec![Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        assert_eq!(c3.transitivity_degree(), 1);
        let t = PermGroup::new(vec![Permutation::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        assert_eq!(t.transitivity_degree(), 0);
    }

    #[test]
    fn chain_order_matches_closure() {
        let gens = vec![
            Permutation::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]]).unwrap(),
            Permutation::from_cycles(7, &[&[1, 2, 4], &[3, 6, 5]]).unwrap(),
        ];
        let g = PermGroup::new(gens.clone()).unwrap();
        assert_eq!(g.order_u64(), Some(closure_size(&gens) as u64));
        assert_eq!(g.order_u64(), Some(21));
    }

    #[test]
    fn rank_unrank_bijection() {
        let g = sym(5);
        let mut seen = HashSet::new();
        for r in 0..120 {
            let x = g.unrank(r);
            assert_eq!(g.rank(&x), Some(r));
            assert!(seen.insert(x));
        }
    }

    #[test]
    fn words_evaluate_to_elements() {
        let g = sym(6);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = g.random_element(&mut rng);
            let w = g.word_for(&x).unwrap();
            let y = w.iter().fold(g.identity(), |acc, &i| acc.mul(&g.generators()[i]));
            assert_eq!(x, y);
        }
    }

    #[test]
    fn normal_closure_of_three_cycle_in_s5_is_a5() {
        let g = sym(5);
        let c = Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        assert_eq!(g.normal_closure(&[c]).order_u64(), Some(60));
    }
}
