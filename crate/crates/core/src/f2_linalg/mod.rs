//! Dense linear algebra over GF(2) on bit-packed rows.

mod echelon;
mod matrix;
mod mul;
mod sylvester;

pub use echelon::{
    inverse, is_invertible, left_kernel, nullspace, rank, rref, EchelonBasis, Subspace,
};
pub use matrix::{BitMatrix, DIM_CAP};
pub use mul::{
    mat_mul, mat_mul_four_russians, mat_mul_schoolbook, mat_mul_wide, mat_pow, tensor_product,
};
pub use sylvester::{solve_sylvester_space, vector_to_matrix};
