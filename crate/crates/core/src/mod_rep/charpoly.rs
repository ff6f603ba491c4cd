use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::Result;
use crate::f2_linalg::{mat_mul, BitMatrix};
use crate::finite_fields::gf2poly::{degree, irreducibles_up_to, is_irreducible, Gf2Poly};

/// Degree bound for trial division by irreducible polynomials.
pub const TRIAL_DEGREE: u32 = 12;

fn small_irreducibles() -> &'static [u64] {
    static LIST: OnceLock<Vec<u64>> = OnceLock::new();
    LIST.get_or_init(|| irreducibles_up_to(TRIAL_DEGREE))
}

/// Characteristic polynomial of a square matrix as a list of monic
/// factors whose product is the full polynomial. Each factor is the
/// polynomial relation of one Krylov chain modulo the span of the earlier
/// chains (row-vector convention).
pub fn charpoly_factors(a: &BitMatrix) -> Vec<Gf2Poly> {
    let n = a.rows();
    let words = n.div_ceil(64);
    let tag_words = (n + 1).div_ceil(64);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut pivots: Vec<usize> = Vec::with_capacity(n);
    // tags only for rows of the current chain; earlier rows carry none
    let mut tags: Vec<Option<Vec<u64>>> = Vec::with_capacity(n);
    let mut factors = Vec::new();

    let reduce = |v: &mut Vec<u64>, tag: &mut Vec<u64>, rows: &[Vec<u64>], pivots: &[usize], tags: &[Option<Vec<u64>>]| {
        for ((row, &p), t) in rows.iter().zip(pivots).zip(tags) {
            if (v[p / 64] >> (p % 64)) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x ^= y;
                }
                if let Some(t) = t {
                    for (x, y) in tag.iter_mut().zip(t) {
                        *x ^= y;
                    }
                }
            }
        }
    };

    for start in 0..n {
        if rows.len() == n {
            break;
        }
        for t in tags.iter_mut() {
            *t = None;
        }
        let mut v = vec![0u64; words];
        v[start / 64] |= 1 << (start % 64);
        let mut tag = vec![0u64; tag_words];
        tag[0] = 1;
        reduce(&mut v, &mut tag, &rows, &pivots, &tags);
        if v.iter().all(|&w| w == 0) {
            continue;
        }
        loop {
            let wi = v.iter().position(|&w| w != 0).unwrap();
            pivots.push(wi * 64 + v[wi].trailing_zeros() as usize);
            let next = a.vec_mul(&v);
            rows.push(v);
            tags.push(Some(tag.clone()));
            // x · tag
            let mut ntag = vec![0u64; tag_words];
            let mut carry = 0u64;
            for (o, &t) in ntag.iter_mut().zip(&tag) {
                *o = (t << 1) | carry;
                carry = t >> 63;
            }
            v = next;
            tag = ntag;
            reduce(&mut v, &mut tag, &rows, &pivots, &tags);
            if v.iter().all(|&w| w == 0) {
                factors.push(Gf2Poly::from_words(tag));
                break;
            }
        }
    }
    factors
}

/// Irreducible factors with multiplicities found by trial division, plus
/// the cofactors that trial division could not split.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialFactorization {
    pub factors: BTreeMap<u64, usize>,
    pub unfactored: Vec<Gf2Poly>,
}

impl PartialFactorization {
    pub fn of(parts: &[Gf2Poly]) -> Self {
        let mut out = Self::default();
        for f in parts {
            let mut cur = f.clone();
            for &p in small_irreducibles() {
                let dp = degree(p).unwrap() as usize;
                if cur.degree().unwrap_or(0) < dp {
                    break;
                }
                let k = cur.multiplicity_small(p);
                if k > 0 {
                    for _ in 0..k {
                        cur = cur.div_exact_small(p);
                    }
                    *out.factors.entry(p).or_default() += k;
                }
            }
            match cur.degree() {
                Some(0) | None => {}
                Some(d) if d < 64 && is_irreducible(cur.words()[0]) => {
                    *out.factors.entry(cur.words()[0]).or_default() += 1;
                }
                Some(_) => out.unfactored.push(cur),
            }
        }
        out
    }
}

/// `p(A)` for a small polynomial `p`, by Horner's rule.
pub fn eval_small(p: u64, a: &BitMatrix) -> Result<BitMatrix> {
    let n = a.rows();
    let d = degree(p).expect("nonzero polynomial");
    let mut acc = BitMatrix::zeros(n, n);
    for i in (0..=d).rev() {
        acc = mat_mul(&acc, a)?;
        if (p >> i) & 1 == 1 {
            for r in 0..n {
                acc.row_mut(r)[r / 64] ^= 1 << (r % 64);
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn product(parts: &[Gf2Poly]) -> Vec<bool> {
        let mut acc = vec![true];
        for f in parts {
            let d = f.degree().unwrap();
            let mut out = vec![false; acc.len() + d];
            for (i, &a) in acc.iter().enumerate() {
                if a {
                    for j in 0..=d {
                        out[i + j] ^= f.coeff(j);
                    }
                }
            }
            acc = out;
        }
        acc
    }

    /// Cayley–Hamilton oracle: χ(A) = 0 and deg χ = n.
    #[test]
    fn cayley_hamilton_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 2, 5, 17, 64, 70] {
            let rows: Vec<Vec<bool>> = (0..n).map(|_| (0..n).map(|_| rng.gen()).collect()).collect();
            let a = BitMatrix::from_bool_rows(&rows).unwrap();
            let parts = charpoly_factors(&a);
            let chi = product(&parts);
            assert_eq!(chi.len(), n + 1);
            let mut acc = BitMatrix::zeros(n, n);
            for &c in chi.iter().rev() {
                acc = mat_mul(&acc, &a).unwrap();
                if c {
                    acc = acc.add(&BitMatrix::identity(n)).unwrap();
                }
            }
            assert!(acc.is_zero(), "n={n}");
        }
    }

    #[test]
    fn companion_matrix_recovers_polynomial() {
        // rows e_i -> e_{i+1}, e_2 -> e_0 + e_1: relation x^3 + x + 1
        let c = BitMatrix::from_strs(&["010", "001", "110"]).unwrap();
        let parts = charpoly_factors(&c);
        let f = PartialFactorization::of(&parts);
        assert_eq!(f.factors, BTreeMap::from([(0b1011, 1)]));
        assert!(eval_small(0b1011, &c).unwrap().is_zero());
    }

    #[test]
    fn identity_has_repeated_linear_factor() {
        let f = PartialFactorization::of(&charpoly_factors(&BitMatrix::identity(6)));
        assert_eq!(f.factors, BTreeMap::from([(0b11, 6)]));
    }
}
