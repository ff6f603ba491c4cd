use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::charpoly::{charpoly_factors, eval_small, PartialFactorization};
use super::module::GModule;
use crate::error::{Error, Result};
use crate::f2_linalg::{left_kernel, nullspace, BitMatrix, EchelonBasis, Subspace};
use crate::finite_fields::gf2poly::degree;

/// Random algebra elements tried before giving up.
pub const MEATAXE_ROUNDS: usize = 64;
const WORDS_PER_ELEMENT: usize = 3;
const MAX_WORD_LEN: usize = 12;
/// Irreducible factors of each characteristic polynomial examined per round.
const FACTORS_PER_ROUND: usize = 4;

/// A sum of words in the generator matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub words: Vec<Vec<usize>>,
}

impl AlgebraElement {
    pub fn random(ngens: usize, rng: &mut impl Rng) -> Self {
        let words = (0..WORDS_PER_ELEMENT)
            .map(|_| {
                let len = rng.gen_range(1..=MAX_WORD_LEN);
                (0..len).map(|_| rng.gen_range(0..ngens)).collect()
            })
            .collect();
        Self { words }
    }

    pub fn eval(&self, m: &GModule) -> Result<BitMatrix> {
        let mut acc = BitMatrix::zeros(m.dim(), m.dim());
        for w in &self.words {
            acc = acc.add(&m.word_matrix(w)?)?;
        }
        Ok(acc)
    }
}

/// Replayable proof of irreducibility: for `θ` and the irreducible `p`,
/// `ker p(θ)` has dimension `deg p`, and a nonzero vector of it spins to
/// the whole module, as does one of `ker p(θ)ᵀ` under the transposes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityWitness {
    pub theta: AlgebraElement,
    /// Bit `i` is the coefficient of `x^i`.
    pub poly: u64,
}

impl IrreducibilityWitness {
    pub fn verify(&self, m: &GModule) -> Result<bool> {
        let p = eval_small(self.poly, &self.theta.eval(m)?)?;
        let ker = left_kernel(&p);
        if ker.dim() != degree(self.poly).unwrap_or(0) as usize || ker.dim() == 0 {
            return Ok(false);
        }
        let dual = nullspace(&p);
        Ok(spin(ker.basis().row(0), m.action()).dim() == m.dim()
            && spin(dual.basis().row(0), &m.transposed_action()).dim() == m.dim())
    }

    pub fn to_value(&self) -> Value {
        json!({ "theta_words": self.theta.words, "poly": format!("{:#x}", self.poly) })
    }
}

#[derive(Clone, Debug)]
pub enum MeatAxeOutcome {
    Irreducible(IrreducibilityWitness),
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
}

/// Smallest invariant subspace containing `v`.
pub fn spin(v: &[u64], gens: &[BitMatrix]) -> EchelonBasis {
    let n = gens[0].rows();
    let mut basis = EchelonBasis::new(n);
    let mut queue = Vec::new();
    if basis.insert(v.to_vec()) {
        queue.push(v.to_vec());
    }
    let mut k = 0;
    while k < queue.len() && basis.dim() < n {
        for g in gens {
            let w = g.vec_mul(&queue[k]);
            if basis.insert(w.clone()) {
                queue.push(w);
                if basis.dim() == n {
                    break;
                }
            }
        }
        k += 1;
    }
    basis
}

/// Norton's irreducibility test with the Holt–Rees refinement: random
/// algebra elements `θ`, irreducible factors `p` of their characteristic
/// polynomials, and spinning of kernel vectors of `p(θ)` on the module
/// and on its dual. Only a conclusive round yields a verdict.
pub fn meataxe_is_irreducible(m: &GModule, seed: u64) -> Result<MeatAxeOutcome> {
    let n = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transposed: Option<Vec<BitMatrix>> = None;
    for _ in 0..MEATAXE_ROUNDS {
        let theta = AlgebraElement::random(m.action().len(), &mut rng);
        let t = theta.eval(m)?;
        let fact = PartialFactorization::of(&charpoly_factors(&t));
        let mut cands: Vec<(u64, usize)> = fact.factors.into_iter().collect();
        // multiplicity-one factors first (their kernels have dimension deg p),
        // then by degree
        cands.sort_by_key(|&(p, k)| (k != 1, degree(p).unwrap(), p));
        for &(p, _) in cands.iter().take(FACTORS_PER_ROUND) {
            let pt = eval_small(p, &t)?;
            let ker = left_kernel(&pt);
            if ker.dim() == 0 {
                continue;
            }
            let v = random_member(&ker, &mut rng);
            let s = spin(&v, m.action());
            if s.dim() < n {
                return Ok(MeatAxeOutcome::Reducible(s.to_subspace()));
            }
            let conclusive = ker.dim() == degree(p).unwrap() as usize;
            if !conclusive {
                continue;
            }
            let dual = nullspace(&pt);
            let tr = transposed.get_or_insert_with(|| m.transposed_action());
            let w = random_member(&dual, &mut rng);
            let sd = spin(&w, tr);
            if sd.dim() < n {
                // annihilator of a proper dual submodule
                let ann = nullspace(&sd.to_matrix());
                return Ok(MeatAxeOutcome::Reducible(ann));
            }
            return Ok(MeatAxeOutcome::Irreducible(IrreducibilityWitness { theta, poly: p }));
        }
    }
    Err(Error::Undecided(MEATAXE_ROUNDS))
}

fn random_member(s: &Subspace, rng: &mut impl Rng) -> Vec<u64> {
    let b = s.basis();
    loop {
        let mut v = vec![0u64; b.stride()];
        for i in 0..b.rows() {
            if rng.gen::<bool>() {
                for (x, y) in v.iter_mut().zip(b.row(i)) {
                    *x ^= y;
                }
            }
        }
        if v.iter().any(|&w| w != 0) {
            return v;
        }
    }
}
