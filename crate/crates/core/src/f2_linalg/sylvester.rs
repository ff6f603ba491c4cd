use super::echelon::{nullspace, EchelonBasis, Subspace};
use super::matrix::{words_for, BitMatrix, DIM_CAP};
use crate::error::{Error, Result};

/// All k×n matrices X with `X·A_i = B_i·X` for every i, as a subspace of
/// GF(2)^(kn) where entry `(r, c)` of X is coordinate `r·n + c`.
pub fn solve_sylvester_space(a_list: &[BitMatrix], b_list: &[BitMatrix]) -> Result<Subspace> {
    if a_list.len() != b_list.len() {
        return Err(Error::Shape("coefficient lists differ in length".into()));
    }
    let (Some(a0), Some(b0)) = (a_list.first(), b_list.first()) else {
        return Err(Error::Shape("empty coefficient lists give no dimensions".into()));
    };
    let (n, k) = (a0.rows(), b0.rows());
    if a_list.iter().any(|a| a.rows() != n || a.cols() != n)
        || b_list.iter().any(|b| b.rows() != k || b.cols() != k)
    {
        return Err(Error::Shape("Sylvester coefficients must be square of fixed size".into()));
    }
    let unknowns = k * n;
    if unknowns > DIM_CAP {
        return Err(Error::CapExceeded(format!("{unknowns} unknowns in Sylvester system")));
    }
    let mut eqs = EchelonBasis::new(unknowns);
    let words = words_for(unknowns);
    'outer: for (a, b) in a_list.iter().zip(b_list) {
        let at = a.transpose();
        for r in 0..k {
            for c in 0..n {
                // (X A)[r][c] = sum_j X[r][j] A[j][c]; (B X)[r][c] = sum_j B[r][j] X[j][c]
                let mut row = vec![0u64; words];
                super::matrix::xor_bits_at(&mut row, at.row(c), n, r * n);
                for j in 0..k {
                    if b.get(r, j) {
                        let bit = j * n + c;
                        row[bit / 64] ^= 1 << (bit % 64);
                    }
                }
                eqs.insert(row);
                if eqs.dim() == unknowns {
                    break 'outer;
                }
            }
        }
    }
    Ok(nullspace(&eqs.to_matrix()))
}

/// Reshapes a solution vector into the k×n matrix it encodes.
pub fn vector_to_matrix(v: &[u64], k: usize, n: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(k, n);
    for r in 0..k {
        for c in 0..n {
            let bit = r * n + c;
            if (v[bit / 64] >> (bit % 64)) & 1 == 1 {
                m.set(r, c, true);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2_linalg::mat_mul;

    #[test]
    fn identity_coefficients_give_everything() {
        let s = solve_sylvester_space(&[BitMatrix::identity(3)], &[BitMatrix::identity(2)]).unwrap();
        assert_eq!(s.dim(), 6);
    }

    #[test]
    fn solutions_satisfy_the_equations() {
        // companion matrix of x^3 + x + 1 commutes with its own polynomial algebra
        let c = BitMatrix::from_strs(&["010", "001", "110"]).unwrap();
        let s = solve_sylvester_space(&[c.clone()], &[c.clone()]).unwrap();
        assert_eq!(s.dim(), 3);
        for i in 0..s.dim() {
            let x = vector_to_matrix(s.basis().row(i), 3, 3);
            assert_eq!(mat_mul(&x, &c).unwrap(), mat_mul(&c, &x).unwrap());
        }
    }

    #[test]
    fn trivial_into_two_dim_s3_module() {
        // generators of GL_2(F_2) acting on the sum-zero plane of 3 points
        let s = BitMatrix::from_strs(&["01", "10"]).unwrap();
        let t = BitMatrix::from_strs(&["11", "10"]).unwrap();
        let one = BitMatrix::identity(1);
        // X (1x2) with X·A = 1·X: a fixed row vector, none is nonzero
        let hom = solve_sylvester_space(&[s, t], &[one.clone(), one]).unwrap();
        assert_eq!(hom.dim(), 0);
    }

    #[test]
    fn cap_enforced() {
        let a = BitMatrix::identity(128);
        let b = BitMatrix::identity(128);
        assert!(matches!(solve_sylvester_space(&[a], &[b]), Err(Error::CapExceeded(_))));
    }
}
