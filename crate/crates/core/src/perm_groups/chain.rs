//! Deterministic Schreier–Sims with explicit transversals.

use num_bigint::BigUint;
use rand::Rng;

use super::perm::Permutation;

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: u32,
    /// Strong generators fixing the earlier base points.
    pub gens: Vec<Permutation>,
    /// Basic orbit in discovery order.
    pub orbit: Vec<u32>,
    /// `slot[p]` is the index of `p` in `orbit`, or `u32::MAX`.
    pub slot: Vec<u32>,
    /// `reps[k]` maps the base point to `orbit[k]`.
    pub reps: Vec<Permutation>,
    pub reps_inv: Vec<Permutation>,
}

const ABSENT: u32 = u32::MAX;

impl Level {
    fn new(n: usize, base_point: u32) -> Self {
        let mut l = Self {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![ABSENT; n],
            reps: Vec::new(),
            reps_inv: Vec::new(),
        };
        l.rebuild_orbit(n);
        l
    }

    fn rebuild_orbit(&mut self, n: usize) {
        self.orbit = vec![self.base_point];
        self.slot = vec![ABSENT; n];
        self.slot[self.base_point as usize] = 0;
        let id = Permutation::identity(n);
        self.reps = vec![id.clone()];
        self.reps_inv = vec![id];
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            for g in &self.gens {
                let q = g.image(p);
                if self.slot[q as usize] == ABSENT {
                    self.slot[q as usize] = self.orbit.len() as u32;
                    self.orbit.push(q);
                    let rep = self.reps[k].mul(g);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            k += 1;
        }
    }

    pub fn position(&self, p: u32) -> Option<usize> {
        match self.slot[p as usize] {
            ABSENT => None,
            k => Some(k as usize),
        }
    }
}

/// Base and strong generating set.
#[derive(Clone, Debug)]
pub struct StabChain {
    n: usize,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    /// Builds a chain for the group generated by `gens` on `n` points,
    /// starting the base with `prefix`.
    pub fn build(n: usize, gens: &[Permutation], prefix: &[u32]) -> Self {
        Self::build_bounded(n, gens, prefix, None).expect("unbounded construction completes")
    }

    /// As [`Self::build`], but gives up (returning `None`) as soon as the
    /// group is known to have more than `bound` elements.
    pub fn build_bounded(
        n: usize,
        gens: &[Permutation],
        prefix: &[u32],
        bound: Option<u64>,
    ) -> Option<Self> {
        let mut chain = Self { n, levels: Vec::new() };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for &b in prefix {
            chain.levels.push(Level::new(n, b));
        }
        for g in &gens {
            if chain.levels.iter().all(|l| g.image(l.base_point) == l.base_point) {
                let b = first_moved(g);
                chain.levels.push(Level::new(n, b));
            }
        }
        for g in &gens {
            for l in chain.levels.iter_mut() {
                l.gens.push(g.clone());
                if g.image(l.base_point) != l.base_point {
                    break;
                }
            }
        }
        for l in chain.levels.iter_mut() {
            l.rebuild_orbit(n);
        }
        chain.complete(bound).then_some(chain)
    }

    /// The product of the current basic orbit lengths never exceeds the
    /// group order, so it can be compared against `bound` mid-construction.
    fn exceeds(&self, bound: Option<u64>) -> bool {
        bound.is_some_and(|b| self.order_u64().is_none_or(|o| o > b))
    }

    fn complete(&mut self, bound: Option<u64>) -> bool {
        if self.exceeds(bound) {
            return false;
        }
        let n = self.n;
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart_at = None;
            'search: for k in 0..self.levels[lvl].orbit.len() {
                for gi in 0..self.levels[lvl].gens.len() {
                    let level = &self.levels[lvl];
                    let s = &level.gens[gi];
                    let img = s.image(level.orbit[k]);
                    let j = level.position(img).expect("orbit is closed");
                    let h = level.reps[k].mul(s).mul(&level.reps_inv[j]);
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, drop) = self.strip(h, lvl + 1);
                    if drop < self.levels.len() || !residue.is_identity() {
                        if drop == self.levels.len() {
                            self.levels.push(Level::new(n, first_moved(&residue)));
                        }
                        for l in lvl + 1..=drop {
                            self.levels[l].gens.push(residue.clone());
                            self.levels[l].rebuild_orbit(n);
                        }
                        if self.exceeds(bound) {
                            return false;
                        }
                        restart_at = Some(drop);
                        break 'search;
                    }
                }
            }
            match restart_at {
                Some(d) => i = d as isize,
                None => i -= 1,
            }
        }
        true
    }

    /// Sifts `g` from level `from`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` when it passed every level).
    pub(crate) fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.image(level.base_point);
            match level.position(b) {
                None => return (g, l),
                Some(k) => g = g.mul(&level.reps_inv[k]),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * l.orbit.len())
    }

    /// Order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.n {
            return false;
        }
        let (residue, drop) = self.strip(g.clone(), 0);
        drop == self.levels.len() && residue.is_identity()
    }

    /// Strong generators of the stabilizer of the first `depth` base points.
    pub fn stabilizer_gens(&self, depth: usize) -> Vec<Permutation> {
        self.levels.get(depth).map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Uniformly random element as a product of random coset representatives.
    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        let mut g = Permutation::identity(self.n);
        for level in self.levels.iter().rev() {
            let k = rng.gen_range(0..level.reps.len());
            g = g.mul(&level.reps[k]);
        }
        g
    }

    /// Mixed-radix index of a member; `None` for non-members.
    pub fn rank(&self, g: &Permutation) -> Option<u64> {
        let mut digits = Vec::with_capacity(self.levels.len());
        let mut h = g.clone();
        for level in &self.levels {
            let k = level.position(h.image(level.base_point))?;
            digits.push(k);
            h = h.mul(&level.reps_inv[k]);
        }
        if !h.is_identity() {
            return None;
        }
        let mut r = 0u64;
        for (level, &d) in self.levels.iter().zip(&digits).rev() {
            r = r * level.orbit.len() as u64 + d as u64;
        }
        Some(r)
    }

    /// Inverse of [`Self::rank`].
    pub fn unrank(&self, mut r: u64) -> Permutation {
        let mut digits = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let len = level.orbit.len() as u64;
            digits.push((r % len) as usize);
            r /= len;
        }
        let mut g = Permutation::identity(self.n);
        for (level, &d) in self.levels.iter().zip(&digits).rev() {
            g = g.mul(&level.reps[d]);
        }
        g
    }
}

fn first_moved(g: &Permutation) -> u32 {
    g.images()
        .iter()
        .enumerate()
        .find(|&(i, &j)| i as u32 != j)
        .map(|(i, _)| i as u32)
        .expect("non-identity permutation moves a point")
}
