use std::fmt;

use crate::error::{Error, Result};

/// Largest matrix side accepted by size-checked constructions.
pub const DIM_CAP: usize = 1 << 13;

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Mask of the valid bits in the last word of a row of `cols` bits.
fn tail_mask(cols: usize) -> u64 {
    match cols % 64 {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

/// XORs the first `len` bits of `src` into `dst` starting at bit `offset`.
pub(crate) fn xor_bits_at(dst: &mut [u64], src: &[u64], len: usize, offset: usize) {
    let (w, s) = (offset / 64, offset % 64);
    let n = words_for(len);
    for (i, &word) in src[..n].iter().enumerate() {
        let word = if i + 1 == n { word & tail_mask(len) } else { word };
        if word == 0 {
            continue;
        }
        dst[w + i] ^= word << s;
        if s != 0 && w + i + 1 < dst.len() {
            dst[w + i + 1] ^= word >> (64 - s);
        }
    }
}

/// Dense matrix over GF(2), rows packed little-endian into 64-bit words.
/// Bits past `cols` in each row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of booleans; all rows must share a length.
    pub fn from_bool_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!("row {i} has length {} not {cols}", r.len())));
            }
            for (j, &b) in r.iter().enumerate() {
                if b {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from `0/1` strings, one per row.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::Parse(format!("invalid matrix entry {c:?}"))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bool_rows(&parsed)
    }

    /// Builds a matrix from packed rows; pad bits are cleared.
    pub fn from_row_words(cols: usize, rows: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let stride = words_for(cols);
        let mut data = Vec::new();
        let mut count = 0;
        for mut r in rows {
            r.resize(stride, 0);
            if stride > 0 {
                r[stride - 1] &= tail_mask(cols);
            }
            data.extend_from_slice(&r);
            count += 1;
        }
        Self { rows: count, cols, stride, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Words per packed row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        let w = &mut self.data[r * self.stride + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row(r).iter().all(|&w| w == 0)
    }

    pub(crate) fn data_mut(&mut self) -> &mut [u64] {
        &mut self.data
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row(&mut self, dst: usize, src: usize) {
        if dst == src {
            self.row_mut(dst).fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = (a.min(b), a.max(b));
        let (x, y) = self.data.split_at_mut(hi * s);
        x[lo * s..(lo + 1) * s].swap_with_slice(&mut y[..s]);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        // 64x64 blocks transposed with the recursive swap trick
        let mut block = [0u64; 64];
        for rb in (0..self.rows).step_by(64) {
            for cw in 0..self.stride {
                for (i, slot) in block.iter_mut().enumerate() {
                    *slot = if rb + i < self.rows { self.data[(rb + i) * self.stride + cw] } else { 0 };
                }
                transpose64(&mut block);
                for (i, &w) in block.iter().enumerate() {
                    let c = cw * 64 + i;
                    if c < self.cols && w != 0 {
                        t.data[c * t.stride + rb / 64] = w;
                    }
                }
            }
        }
        t.debug_check();
        t
    }

    /// Rows `range` as a new matrix.
    pub fn row_slice(&self, start: usize, end: usize) -> Self {
        Self {
            rows: end - start,
            cols: self.cols,
            stride: self.stride,
            data: self.data[start * self.stride..end * self.stride].to_vec(),
        }
    }

    /// Matrix with the rows of `self` followed by those of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!("cannot stack {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, stride: self.stride, data })
    }

    /// Columns `start..end` as a new matrix.
    pub fn col_slice(&self, start: usize, end: usize) -> Self {
        let mut out = Self::zeros(self.rows, end - start);
        for r in 0..self.rows {
            for c in start..end {
                if self.get(r, c) {
                    out.set(r, c - start, true);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("matrix sum needs equal shapes".into()));
        }
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x ^= y;
        }
        Ok(out)
    }

    /// Row vector times matrix: XOR of the rows selected by `v`.
    pub fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.stride];
        for (wi, &w) in v.iter().enumerate().take(words_for(self.rows)) {
            let mut bits = w;
            while bits != 0 {
                let r = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if r >= self.rows {
                    break;
                }
                for (o, x) in out.iter_mut().zip(self.row(r)) {
                    *o ^= x;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> bool {
        (0..self.rows.min(self.cols)).fold(false, |acc, i| acc ^ self.get(i, i))
    }

    /// Panics in debug builds when a pad bit is set.
    pub fn debug_check(&self) {
        if cfg!(debug_assertions) && self.stride > 0 && self.cols % 64 != 0 {
            let mask = !tail_mask(self.cols);
            for r in 0..self.rows {
                assert_eq!(self.data[r * self.stride + self.stride - 1] & mask, 0, "pad bits set");
            }
        }
    }

    /// Dump format: a `rows cols` line followed by one `0/1` string per row.
    pub fn dump(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            s.extend((0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix dump".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension {t:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse("dimension line needs two numbers".into()));
        };
        let body: Vec<&str> = lines.map(str::trim).collect();
        if body.len() != rows || body.iter().any(|l| l.len() != cols) {
            return Err(Error::Parse(format!("dump body does not match {rows}x{cols}")));
        }
        let m = if rows == 0 { Self::zeros(0, cols) } else { Self::from_strs(&body)? };
        Ok(m)
    }
}

/// In-place transpose of a 64x64 bit block (row i, bit j) -> (row j, bit i).
fn transpose64(a: &mut [u64; 64]) {
    let mut j = 32;
    let mut m: u64 = 0x0000_0000_FFFF_FFFF;
    while j != 0 {
        let mut k = 0;
        while k < 64 {
            let t = ((a[k] >> j) ^ a[k + j]) & m;
            a[k] ^= t << j;
            a[k + j] ^= t;
            k = (k + j + 1) & !j;
        }
        j >>= 1;
        m ^= m << j;
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}", self.dump())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    pub(crate) fn random(rows: usize, cols: usize, seed: u64) -> BitMatrix {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.gen());
            }
        }
        m
    }

    #[test]
    fn transpose_matches_definition() {
        for (r, c) in [(1, 1), (3, 70), (64, 64), (65, 130), (129, 7)] {
            let m = random(r, c, (r * 1000 + c) as u64);
            let t = m.transpose();
            for i in 0..r {
                for j in 0..c {
                    assert_eq!(m.get(i, j), t.get(j, i));
                }
            }
            assert_eq!(t.transpose(), m);
        }
    }

    #[test]
    fn dump_round_trip() {
        let m = BitMatrix::from_strs(&["101", "011"]).unwrap();
        assert_eq!(m.dump(), "2 3\n101\n011\n");
        assert_eq!(BitMatrix::parse_dump(&m.dump()).unwrap(), m);
        assert!(BitMatrix::parse_dump("2 3\n101\n").is_err());
        assert!(BitMatrix::parse_dump("1 2\n12\n").is_err());
    }

    #[test]
    fn xor_bits_at_offsets() {
        let src = vec![!0u64, 0b1];
        for offset in [0, 1, 63, 64, 70] {
            let mut dst = vec![0u64; 4];
            xor_bits_at(&mut dst, &src, 65, offset);
            let set: usize = dst.iter().map(|w| w.count_ones() as usize).sum();
            assert_eq!(set, 65);
            assert_eq!((dst[offset / 64] >> (offset % 64)) & 1, 1);
        }
    }

    #[test]
    fn vec_mul_selects_rows() {
        let m = BitMatrix::from_strs(&["100", "010", "111"]).unwrap();
        assert_eq!(m.vec_mul(&[0b101]), vec![0b110]);
    }
}
