use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::f2_linalg::{is_invertible, mat_mul, mat_pow, tensor_product, BitMatrix, Subspace, DIM_CAP};
use crate::perm_groups::{PermGroup, Permutation};

/// Largest vector orbit explored by the faithfulness check.
const FAITHFUL_ORBIT_CAP: usize = 1 << 18;

/// A finite-dimensional GF(2)-module for a permutation group. Vectors are
/// rows and act on the right: `v ↦ v·R_s`, so `R_{s·t} = R_s·R_t` where
/// `s·t` applies `s` first.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<PermGroup>,
    action: Vec<BitMatrix>,
    label: String,
}

impl GModule {
    /// Checks shapes only; see [`GModule::validate`] for the full check.
    pub fn new(group: Arc<PermGroup>, action: Vec<BitMatrix>, label: impl Into<String>) -> Result<Self> {
        if action.len() != group.generators().len() {
            return Err(Error::Shape(format!(
                "{} action matrices for {} generators",
                action.len(),
                group.generators().len()
            )));
        }
        let dim = action.first().map_or(0, BitMatrix::rows);
        if dim == 0 {
            return Err(Error::Shape("module dimension must be positive".into()));
        }
        if dim > DIM_CAP {
            return Err(Error::CapExceeded(format!("module dimension {dim}")));
        }
        if action.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(Error::Shape("action matrices must share one square shape".into()));
        }
        Ok(Self { group, action, label: label.into() })
    }

    pub fn trivial(group: Arc<PermGroup>) -> Self {
        let action = vec![BitMatrix::identity(1); group.generators().len()];
        Self { group, action, label: "trivial".into() }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.action[0].rows()
    }

    pub fn action(&self) -> &[BitMatrix] {
        &self.action
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Product of the generator matrices along a word (left to right).
    pub fn word_matrix(&self, word: &[usize]) -> Result<BitMatrix> {
        let mut m = BitMatrix::identity(self.dim());
        for &i in word {
            m = mat_mul(&m, &self.action[i])?;
        }
        Ok(m)
    }

    /// Action matrix of an arbitrary group element, via a Cayley word.
    pub fn matrix_of(&self, g: &Permutation) -> Result<BitMatrix> {
        let word = self.group.word_for(g)?;
        self.word_matrix(&word)
    }

    /// Transposed action matrices, spanning the same algebra as the dual.
    pub fn transposed_action(&self) -> Vec<BitMatrix> {
        self.action.iter().map(BitMatrix::transpose).collect()
    }

    /// Invertibility of every generator matrix, plus `count` relation
    /// spot checks: for a random word `w` whose permutation has order `k`,
    /// the matrix of `w` raised to `k` must be the identity.
    pub fn validate(&self, count: usize, seed: u64) -> Result<()> {
        if let Some(i) = self.action.iter().position(|a| !is_invertible(a)) {
            return Err(Error::Construction(format!("action matrix {i} of {} is singular", self.label)));
        }
        let gens = self.group.generators();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..count {
            let len = rng.gen_range(1..=12);
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..gens.len())).collect();
            let perm = word.iter().fold(self.group.identity(), |acc, &i| acc.mul(&gens[i]));
            let m = mat_pow(&self.word_matrix(&word)?, perm.order())?;
            if m != BitMatrix::identity(self.dim()) {
                return Err(Error::Construction(format!("{} violates a group relation", self.label)));
            }
        }
        Ok(())
    }

    /// Restriction to an invariant subspace, in the coordinates of its
    /// reduced echelon basis.
    pub fn submodule(&self, sub: &Subspace, label: impl Into<String>) -> Result<Self> {
        let k = sub.dim();
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let rows = (0..k).map(|j| {
                let img = a.vec_mul(sub.basis().row(j));
                if !sub.contains(&img) {
                    return Err(Error::Precondition("subspace is not invariant".into()));
                }
                Ok(sub.coordinates(&img))
            });
            action.push(BitMatrix::from_row_words(k, rows.collect::<Result<Vec<_>>>()?));
        }
        Self::new(self.group.clone(), action, label)
    }

    /// Quotient by an invariant subspace, in the coordinates of the
    /// non-pivot columns of its echelon basis.
    pub fn quotient(&self, sub: &Subspace, label: impl Into<String>) -> Result<Self> {
        let n = self.dim();
        let mut is_pivot = vec![false; n];
        for &p in sub.pivots() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let q = free.len();
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let mut m = BitMatrix::zeros(q, q);
            for (i, &c) in free.iter().enumerate() {
                let mut v = a.row(c).to_vec();
                sub.reduce(&mut v);
                for (j, &d) in free.iter().enumerate() {
                    if (v[d / 64] >> (d % 64)) & 1 == 1 {
                        m.set(i, j, true);
                    }
                }
            }
            action.push(m);
        }
        Self::new(self.group.clone(), action, label)
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group.generators() == other.group.generators() {
            Ok(())
        } else {
            Err(Error::Precondition("modules belong to different groups".into()))
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| tensor_product(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.group.clone(), action, format!("({})⊗({})", self.label, other.label))
    }

    /// Exterior square, with basis `e_i ∧ e_j` (i < j) in lexicographic order.
    pub fn exterior_square(&self) -> Result<Self> {
        let d = self.dim();
        if d < 2 {
            return Err(Error::Shape("exterior square of a module of dimension < 2 is zero".into()));
        }
        let e = d * (d - 1) / 2;
        if e > DIM_CAP {
            return Err(Error::CapExceeded(format!("exterior square of dimension {e}")));
        }
        // offset[k] is the index of e_k ∧ e_{k+1}
        let offset: Vec<usize> = (0..d).map(|k| k * (2 * d - k - 1) / 2).collect();
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut m = BitMatrix::zeros(e, e);
                for i in 0..d {
                    for j in i + 1..d {
                        let r = offset[i] + j - i - 1;
                        let (u, w) = (a.row(i), a.row(j));
                        for k in 0..d {
                            let (uk, wk) = (bit(u, k), bit(w, k));
                            if !(uk || wk) {
                                continue;
                            }
                            for l in k + 1..d {
                                if (uk && bit(w, l)) ^ (wk && bit(u, l)) {
                                    let c = offset[k] + l - k - 1;
                                    m.row_mut(r)[c / 64] ^= 1 << (c % 64);
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Self::new(self.group.clone(), action, format!("Λ²({})", self.label))
    }

    /// Direct sum, block diagonal.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let (p, q) = (self.dim(), other.dim());
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = BitMatrix::zeros(p + q, p + q);
                for r in 0..p {
                    for c in 0..p {
                        m.set(r, c, a.get(r, c));
                    }
                }
                for r in 0..q {
                    for c in 0..q {
                        m.set(p + r, p + c, b.get(r, c));
                    }
                }
                m
            })
            .collect();
        Self::new(self.group.clone(), action, format!("{}⊕{}", self.label, other.label))
    }

    /// Same module in the basis given by the rows of an invertible matrix
    /// `p`: the new action is `P·R·P⁻¹`.
    pub fn change_basis(&self, p: &BitMatrix) -> Result<Self> {
        let pinv = crate::f2_linalg::inverse(p)?
            .ok_or_else(|| Error::Precondition("change of basis must be invertible".into()))?;
        let action = self
            .action
            .iter()
            .map(|a| mat_mul(&mat_mul(p, a)?, &pinv))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.group.clone(), action, format!("{} (rebased)", self.label))
    }

    /// Whether only the identity acts trivially: the group acts on the
    /// orbit of the standard basis vectors, which spans the module, and the
    /// image permutation group must have the full group order.
    pub fn is_faithful(&self) -> Result<bool> {
        let d = self.dim();
        let mut index: HashMap<Vec<u64>, u32> = HashMap::new();
        let mut vecs: Vec<Vec<u64>> = Vec::new();
        for i in 0..d {
            let mut v = vec![0u64; d.div_ceil(64)];
            v[i / 64] |= 1 << (i % 64);
            if !index.contains_key(&v) {
                index.insert(v.clone(), vecs.len() as u32);
                vecs.push(v);
            }
        }
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); self.action.len()];
        let mut k = 0;
        while k < vecs.len() {
            for (a, img) in self.action.iter().zip(images.iter_mut()) {
                let w = a.vec_mul(&vecs[k]);
                let next = vecs.len() as u32;
                let id = *index.entry(w.clone()).or_insert_with(|| {
                    vecs.push(w);
                    next
                });
                img.push(id);
            }
            if vecs.len() > FAITHFUL_ORBIT_CAP {
                return Err(Error::CapExceeded(format!("vector orbit above {FAITHFUL_ORBIT_CAP}")));
            }
            k += 1;
        }
        let gens = images.into_iter().map(Permutation::from_images).collect::<Result<Vec<_>>>()?;
        let image = PermGroup::new(gens)?;
        Ok(image.order() == self.group.order())
    }

    /// Module dump: label, dimension, then one matrix per generator.
    pub fn dump(&self) -> String {
        let mut out = format!("module {}\ndim {}\n", self.label, self.dim());
        for (i, a) in self.action.iter().enumerate() {
            out.push_str(&format!("generator {i}\n{}", a.dump()));
        }
        out
    }
}

pub(crate) fn bit(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

/// Permutation matrix with entry `(b, s⁻¹(b))` set, so that it maps a
/// function `h` on the points (a column vector) to `b ↦ h(s⁻¹(b))`.
/// Then `M(g)·M(h) = M(g ∘ h)`.
pub fn perm_to_matrix(group: &PermGroup, g: &Permutation) -> Result<BitMatrix> {
    if g.degree() != group.degree() || !group.contains(g) {
        return Err(Error::NotInGroup);
    }
    let n = g.degree();
    let inv = g.inverse();
    let mut m = BitMatrix::zeros(n, n);
    for b in 0..n {
        m.set(b, inv.image(b as u32) as usize, true);
    }
    Ok(m)
}

/// Row-convention matrix of a permutation: `e_c ↦ e_{s(c)}`.
fn row_perm_matrix(g: &Permutation) -> BitMatrix {
    let n = g.degree();
    let mut m = BitMatrix::zeros(n, n);
    for c in 0..n {
        m.set(c, g.image(c as u32) as usize, true);
    }
    m
}

/// The permutation module GF(2)^B.
pub fn permutation_module(group: &Arc<PermGroup>) -> Result<GModule> {
    let action = group.generators().iter().map(row_perm_matrix).collect();
    GModule::new(group.clone(), action, "F2^B")
}

/// The heart module: sum-zero functions on the points (odd n), modulo the
/// constants as well when n is even. The basis is `e_i = δ_i + δ_{n-1}`
/// for `i < n-1`; for even n the last of these is dropped, which is the
/// quotient by the all-ones vector `Σ e_i`.
pub fn build_qb(group: &Arc<PermGroup>) -> Result<GModule> {
    let n = group.degree();
    if n < 3 {
        return Err(Error::Range(format!("heart module needs at least 3 points, got {n}")));
    }
    let last = n - 1;
    let odd = n % 2 == 1;
    let dim = if odd { n - 1 } else { n - 2 };
    let action = group
        .generators()
        .iter()
        .map(|g| {
            let mut m = BitMatrix::zeros(dim, dim);
            for i in 0..n - 1 {
                let mut w = vec![false; n - 1];
                for p in [g.image(i as u32) as usize, g.image(last as u32) as usize] {
                    if p != last {
                        w[p] ^= true;
                    }
                }
                if !odd {
                    if i == n - 2 {
                        continue;
                    }
                    if w[n - 2] {
                        w.iter_mut().for_each(|x| *x ^= true);
                    }
                }
                for (j, &x) in w.iter().take(dim).enumerate() {
                    if x {
                        m.set(i, j, true);
                    }
                }
            }
            m
        })
        .collect();
    let label = if odd { "Q_B (sum-zero)" } else { "Q_B (sum-zero mod constants)" };
    let module = GModule::new(group.clone(), action, label)?;
    if n >= 5 && !module.is_faithful()? {
        return Err(Error::Construction("heart module is not faithful".into()));
    }
    Ok(module)
}

/// `χ_B(g) = fix(g) - 1`.
pub fn perm_character_value(g: &Permutation) -> i64 {
    g.fixed_points() as i64 - 1
}
