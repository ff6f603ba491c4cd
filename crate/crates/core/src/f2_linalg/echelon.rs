use rayon::prelude::*;

use super::matrix::{words_for, BitMatrix};
use crate::error::{Error, Result};

/// Row count above which elimination sweeps run on the rayon pool.
const PARALLEL_ROWS: usize = 512;

/// Reduced row echelon form: the reduced matrix (same shape, zero rows
/// last), its rank and the pivot column of each nonzero row.
pub fn rref(m: &BitMatrix) -> (BitMatrix, usize, Vec<usize>) {
    let mut r = m.clone();
    let pivots = rref_in_place(&mut r);
    let rank = pivots.len();
    r.debug_check();
    (r, rank, pivots)
}

pub fn rank(m: &BitMatrix) -> usize {
    rref(m).1
}

pub(crate) fn rref_in_place(m: &mut BitMatrix) -> Vec<usize> {
    let (rows, cols, stride) = (m.rows(), m.cols(), m.stride());
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows {
            break;
        }
        let (w, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (next..rows).find(|&r| m.row(r)[w] & bit != 0) else {
            continue;
        };
        m.swap_rows(next, p);
        let pivot_row: Vec<u64> = m.row(next)[w..].to_vec();
        let eliminate = |(i, row): (usize, &mut [u64])| {
            if i != next && row[w] & bit != 0 {
                for (x, y) in row[w..].iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        };
        if rows >= PARALLEL_ROWS && stride > 0 {
            m.data_mut().par_chunks_mut(stride).enumerate().for_each(eliminate);
        } else if stride > 0 {
            m.data_mut().chunks_mut(stride).enumerate().for_each(eliminate);
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

/// A subspace of GF(2)^n held as a basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the rows of `m`.
    pub fn row_space(m: &BitMatrix) -> Self {
        let (r, rank, pivots) = rref(m);
        Self { basis: r.row_slice(0, rank), pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { basis: BitMatrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { basis: BitMatrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    /// Basis rows in reduced echelon form.
    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; zero result means membership.
    pub fn reduce(&self, v: &mut [u64]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if (v[p / 64] >> (p % 64)) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(self.basis.row(i)) {
                    *x ^= y;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        w.resize(words_for(self.ambient_dim()), 0);
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of a member of the subspace in terms of the basis rows:
    /// the entries at the pivot columns.
    pub fn coordinates(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; words_for(self.dim())];
        for (i, &p) in self.pivots.iter().enumerate() {
            if (v[p / 64] >> (p % 64)) & 1 == 1 {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }
}

/// Null space `{v : M v = 0}` (column-vector convention).
pub fn nullspace(m: &BitMatrix) -> Subspace {
    let cols = m.cols();
    let (r, rank, pivots) = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut basis = BitMatrix::zeros(free.len(), cols);
    for (k, &f) in free.iter().enumerate() {
        basis.set(k, f, true);
        for (i, &p) in pivots.iter().enumerate().take(rank) {
            if r.get(i, f) {
                basis.set(k, p, true);
            }
        }
    }
    Subspace::row_space(&basis)
}

/// Left kernel `{v : v M = 0}`.
pub fn left_kernel(m: &BitMatrix) -> Subspace {
    nullspace(&m.transpose())
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &BitMatrix) -> Result<Option<BitMatrix>> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix has no inverse", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut aug = BitMatrix::zeros(n, 2 * n);
    for r in 0..n {
        super::matrix::xor_bits_at(aug.row_mut(r), m.row(r), n, 0);
        aug.set(r, n + r, true);
    }
    let pivots = rref_in_place(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Ok(None);
    }
    Ok(Some(aug.col_slice(n, 2 * n)))
}

pub fn is_invertible(m: &BitMatrix) -> bool {
    m.is_square() && rank(m) == m.rows()
}

/// Incrementally grown semi-echelon basis. Each stored row has zeros in
/// the pivot columns of the rows stored before it.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(ambient: usize) -> Self {
        Self { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if (v[p / 64] >> (p % 64)) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x ^= y;
                }
            }
        }
    }

    /// Adds `v` if it is independent; returns whether the span grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        v.resize(words_for(self.ambient), 0);
        self.reduce(&mut v);
        match v.iter().position(|&w| w != 0) {
            None => false,
            Some(wi) => {
                self.pivots.push(wi * 64 + v[wi].trailing_zeros() as usize);
                self.rows.push(v);
                true
            }
        }
    }

    /// Stored rows, in insertion order.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix::from_row_words(self.ambient, self.rows.iter().cloned())
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace::row_space(&self.to_matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rref() {
        let (r, rank, pivots) = rref(&BitMatrix::identity(5));
        assert_eq!(r, BitMatrix::identity(5));
        assert_eq!(rank, 5);
        assert_eq!(pivots, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn zero_rref() {
        let (r, rank, _) = rref(&BitMatrix::zeros(3, 4));
        assert!(r.is_zero());
        assert_eq!(rank, 0);
    }

    #[test]
    fn dependent_rows() {
        let m = BitMatrix::from_strs(&["1100", "0110", "1010"]).unwrap();
        assert_eq!(rank(&m), 2);
        let sum: Vec<u64> = m.row(0).iter().zip(m.row(1)).map(|(a, b)| a ^ b).collect();
        assert_eq!(sum, m.row(2));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&BitMatrix::identity(6)).dim(), 0);
        assert_eq!(nullspace(&BitMatrix::zeros(4, 4)).dim(), 4);
        let n = 9;
        let ones = BitMatrix::from_bool_rows(&[vec![true; n]]).unwrap();
        let k = nullspace(&ones);
        assert_eq!(k.dim(), n - 1);
        for i in 0..k.dim() {
            let weight: u32 = k.basis().row(i).iter().map(|w| w.count_ones()).sum();
            assert_eq!(weight % 2, 0);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = BitMatrix::from_strs(&["110", "011", "001"]).unwrap();
        let inv = inverse(&m).unwrap().unwrap();
        assert_eq!(super::super::mat_mul(&m, &inv).unwrap(), BitMatrix::identity(3));
        let singular = BitMatrix::from_strs(&["11", "11"]).unwrap();
        assert_eq!(inverse(&singular).unwrap(), None);
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let mut b = EchelonBasis::new(4);
        assert!(b.insert(vec![0b0011]));
        assert!(b.insert(vec![0b0110]));
        assert!(!b.insert(vec![0b0101]));
        assert!(b.insert(vec![0b1000]));
        assert_eq!(b.dim(), 3);
        let s = b.to_subspace();
        assert!(s.contains(&[0b1101]));
        assert!(!s.contains(&[0b0001]));
    }
}
