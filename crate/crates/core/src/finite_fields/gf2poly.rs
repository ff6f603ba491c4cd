//! Polynomials over GF(2) packed into machine words.
//!
//! Small polynomials (degree < 64) are plain `u64` bit strings, bit `i` being
//! the coefficient of `x^i`. [`Gf2Poly`] is the unbounded variant used for
//! characteristic polynomials of large matrices.

/// Degree of a small polynomial; `None` for zero.
pub fn degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Carry-less product of two small polynomials whose degrees sum below 64.
pub fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut shift = 0;
    while a != 0 {
        if a & 1 == 1 {
            acc ^= b << shift;
        }
        a >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of `a` modulo nonzero `m`.
pub fn rem(mut a: u64, m: u64) -> u64 {
    let dm = degree(m).expect("modulus must be nonzero");
    while let Some(da) = degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    rem(clmul(a, b), m)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility by trial division against every polynomial of degree at
/// most half the degree of `p`.
pub fn is_irreducible(p: u64) -> bool {
    let Some(d) = degree(p) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    for cand in 2u64..(1u64 << (d / 2 + 1)) {
        if rem(p, cand) == 0 {
            return false;
        }
    }
    true
}

/// All irreducible polynomials of degree 1..=max_degree, ordered by degree
/// and then by integer encoding.
pub fn irreducibles_up_to(max_degree: u32) -> Vec<u64> {
    assert!(max_degree < 32);
    (2u64..(1u64 << (max_degree + 1)))
        .filter(|&p| is_irreducible(p))
        .collect()
}

/// Arbitrary-degree polynomial over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn from_small(p: u64) -> Self {
        let mut out = Self { words: vec![p] };
        out.trim();
        out
    }

    /// Builds from coefficient bits, lowest degree first.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut out = Self {
            words: vec![0; bits.len().div_ceil(64)],
        };
        for (i, &b) in bits.iter().enumerate() {
            if b {
                out.words[i / 64] |= 1 << (i % 64);
            }
        }
        out.trim();
        out
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut out = Self { words };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Remainder modulo a small nonzero polynomial.
    pub fn rem_small(&self, m: u64) -> u64 {
        let dm = degree(m).expect("modulus must be nonzero") as usize;
        let Some(d) = self.degree() else { return 0 };
        // Horner over the bits, highest first, keeping a residue of degree < dm.
        let mut r = 0u64;
        for i in (0..=d).rev() {
            r <<= 1;
            if self.coeff(i) {
                r ^= 1;
            }
            if (r >> dm) & 1 == 1 {
                r ^= m;
            }
        }
        r
    }

    /// Exact quotient by a small polynomial; panics if it does not divide.
    pub fn div_exact_small(&self, m: u64) -> Gf2Poly {
        let dm = degree(m).expect("modulus must be nonzero") as usize;
        let Some(d) = self.degree() else { return Gf2Poly::zero() };
        let mut work = self.words.clone();
        let mut quot = vec![0u64; (d / 64) + 1];
        let get = |w: &Vec<u64>, i: usize| (w[i / 64] >> (i % 64)) & 1 == 1;
        for i in (dm..=d).rev() {
            if get(&work, i) {
                let shift = i - dm;
                quot[shift / 64] |= 1 << (shift % 64);
                for j in 0..=dm {
                    if (m >> j) & 1 == 1 {
                        let k = shift + j;
                        work[k / 64] ^= 1 << (k % 64);
                    }
                }
            }
        }
        assert!(work.iter().all(|&w| w == 0), "polynomial does not divide");
        Gf2Poly::from_words(quot)
    }

    /// Multiplicity of the small irreducible `p` as a factor.
    pub fn multiplicity_small(&self, p: u64) -> usize {
        let mut cur = self.clone();
        let mut k = 0;
        while !cur.is_zero() && cur.rem_small(p) == 0 {
            cur = cur.div_exact_small(p);
            k += 1;
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // Number of irreducibles of degree d over GF(2): 2,1,2,3,6,9,18,30.
        let all = irreducibles_up_to(8);
        let mut counts = [0usize; 9];
        for p in all {
            counts[degree(p).unwrap() as usize] += 1;
        }
        assert_eq!(&counts[1..], &[2, 1, 2, 3, 6, 9, 18, 30]);
    }

    #[test]
    fn reducible_cubic_detected() {
        // x^3+x^2+x+1 = (x+1)(x^2+1)
        assert!(!is_irreducible(0b1111));
        assert_eq!(clmul(0b11, 0b101), 0b1111);
        assert!(is_irreducible(0b1011));
    }

    #[test]
    fn big_poly_division() {
        let p = Gf2Poly::from_small(clmul(clmul(0b111, 0b111), 0b1011));
        assert_eq!(p.multiplicity_small(0b111), 2);
        assert_eq!(p.multiplicity_small(0b1011), 1);
        assert_eq!(p.multiplicity_small(0b11), 0);
    }
}
