use rayon::prelude::*;

use super::matrix::{xor_bits_at, BitMatrix, DIM_CAP};
use crate::error::{Error, Result};

/// Output rows above which products are computed on the rayon pool.
const PARALLEL_ROWS: usize = 256;
/// Inner dimension from which the table-driven kernel pays off.
const FOUR_RUSSIANS_MIN: usize = 64;

fn check_shapes(a: &BitMatrix, b: &BitMatrix) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// Product over GF(2), choosing the fastest kernel for the shape.
pub fn mat_mul(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    if a.cols() >= FOUR_RUSSIANS_MIN {
        mat_mul_four_russians(a, b)
    } else {
        mat_mul_wide(a, b)
    }
}

/// Entry-by-entry dot products; the reference kernel.
pub fn mat_mul_schoolbook(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    check_shapes(a, b)?;
    let mut c = BitMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = false;
            for k in 0..a.cols() {
                acc ^= a.get(i, k) & b.get(k, j);
            }
            if acc {
                c.set(i, j, true);
            }
        }
    }
    Ok(c)
}

fn for_each_out_row(c: &mut BitMatrix, f: impl Fn(usize, &mut [u64]) + Sync + Send) {
    let stride = c.stride();
    if stride == 0 {
        return;
    }
    if c.rows() >= PARALLEL_ROWS {
        c.data_mut().par_chunks_mut(stride).enumerate().for_each(|(i, r)| f(i, r));
    } else {
        c.data_mut().chunks_mut(stride).enumerate().for_each(|(i, r)| f(i, r));
    }
}

/// Word-parallel kernel: row i of the product is the XOR of the rows of `b`
/// selected by row i of `a`.
pub fn mat_mul_wide(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    check_shapes(a, b)?;
    let mut c = BitMatrix::zeros(a.rows(), b.cols());
    for_each_out_row(&mut c, |i, out| {
        for (wi, &w) in a.row(i).iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let k = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for (o, x) in out.iter_mut().zip(b.row(k)) {
                    *o ^= x;
                }
            }
        }
    });
    c.debug_check();
    Ok(c)
}

/// Method of four Russians with 8-bit lookup tables over the rows of `b`.
pub fn mat_mul_four_russians(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    check_shapes(a, b)?;
    let stride = b.stride();
    let inner = a.cols();
    let blocks = inner.div_ceil(8);
    // tables[blk][byte] = XOR of rows 8*blk + i of b for bits i of byte
    let mut tables = vec![0u64; blocks * 256 * stride];
    for blk in 0..blocks {
        let base = blk * 256 * stride;
        let height = (inner - blk * 8).min(8);
        for byte in 1..(1usize << height) {
            let low = byte.trailing_zeros() as usize;
            let prev = byte & (byte - 1);
            let src_row = b.row(blk * 8 + low);
            for w in 0..stride {
                tables[base + byte * stride + w] = tables[base + prev * stride + w] ^ src_row[w];
            }
        }
    }
    let mut c = BitMatrix::zeros(a.rows(), b.cols());
    for_each_out_row(&mut c, |i, out| {
        let row = a.row(i);
        for blk in 0..blocks {
            let byte = ((row[blk / 8] >> ((blk % 8) * 8)) & 0xFF) as usize;
            if byte == 0 {
                continue;
            }
            let t = &tables[(blk * 256 + byte) * stride..(blk * 256 + byte + 1) * stride];
            for (o, x) in out.iter_mut().zip(t) {
                *o ^= x;
            }
        }
    });
    c.debug_check();
    Ok(c)
}

/// Kronecker product `A ⊗ B`, entry `(i·rB + k, j·cB + l) = A[i][j]·B[k][l]`.
pub fn tensor_product(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    let (rows, cols) = (a.rows() * b.rows(), a.cols() * b.cols());
    if rows > DIM_CAP || cols > DIM_CAP {
        return Err(Error::CapExceeded(format!("tensor product of shape {rows}x{cols}")));
    }
    let mut c = BitMatrix::zeros(rows, cols);
    let bc = b.cols();
    for_each_out_row(&mut c, |row, out| {
        let (i, k) = (row / b.rows(), row % b.rows());
        for j in 0..a.cols() {
            if a.get(i, j) {
                xor_bits_at(out, b.row(k), bc, j * bc);
            }
        }
    });
    c.debug_check();
    Ok(c)
}

/// `m^e` by repeated squaring.
pub fn mat_pow(m: &BitMatrix, mut e: u64) -> Result<BitMatrix> {
    if !m.is_square() {
        return Err(Error::Shape("power of a non-square matrix".into()));
    }
    let mut base = m.clone();
    let mut acc = BitMatrix::identity(m.rows());
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base)?;
        }
    }
    Ok(acc)
}
