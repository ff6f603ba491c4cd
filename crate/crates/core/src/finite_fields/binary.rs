use super::gf2poly;
use crate::error::{Error, Result};

/// Largest supported extension degree; full log tables are kept.
pub const MAX_BINARY_DEGREE: u32 = 16;

/// Element of GF(2^m): coefficient bits in the modulus basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BinaryFieldElement(pub u16);

impl BinaryFieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// GF(2^m) for 1 <= m <= 16 with log/antilog tables.
#[derive(Clone, Debug)]
pub struct BinaryField {
    m: u32,
    modulus: u32,
    generator: BinaryFieldElement,
    exp: Vec<u16>,
    log: Vec<u16>,
}

/// Built-in moduli for small degrees; the rest use the least irreducible.
fn default_modulus(m: u32) -> u32 {
    match m {
        1 => 0b11,
        2 => 0b111,
        3 => 0b1011,
        4 => 0b1_0011,
        5 => 0b10_0101,
        6 => 0b101_1011,
        _ => {
            let lo = 1u64 << m;
            (lo..lo << 1)
                .find(|&p| gf2poly::is_irreducible(p))
                .expect("irreducible polynomials exist in every degree") as u32
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl BinaryField {
    /// Builds GF(2^m). Without an explicit modulus the fixed table is used.
    pub fn new(m: u32, modulus: Option<u32>) -> Result<Self> {
        if !(1..=MAX_BINARY_DEGREE).contains(&m) {
            return Err(Error::Range(format!("extension degree {m} not in 1..=16")));
        }
        let modulus = modulus.unwrap_or_else(|| default_modulus(m));
        if gf2poly::degree(modulus as u64) != Some(m) {
            return Err(Error::Construction(format!(
                "modulus {modulus:#b} does not have degree {m}"
            )));
        }
        if !gf2poly::is_irreducible(modulus as u64) {
            return Err(Error::Construction(format!(
                "modulus {modulus:#b} is reducible over GF(2)"
            )));
        }
        let size = 1u32 << m;
        let group_order = (size - 1) as u64;
        let slow_mul = |a: u32, b: u32| gf2poly::mulmod(a as u64, b as u64, modulus as u64) as u32;
        let slow_pow = |a: u32, mut e: u64| {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let factors = prime_factors(group_order);
        let generator = (1..size)
            .find(|&g| {
                group_order == 1 || factors.iter().all(|&l| slow_pow(g, group_order / l) != 1)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u16; 2 * group_order as usize];
        let mut log = vec![0u16; size as usize];
        let mut cur = 1u32;
        for i in 0..group_order as usize {
            exp[i] = cur as u16;
            exp[i + group_order as usize] = cur as u16;
            log[cur as usize] = i as u16;
            cur = slow_mul(cur, generator);
        }
        debug_assert_eq!(cur, 1);
        Ok(Self {
            m,
            modulus,
            generator: BinaryFieldElement(generator as u16),
            exp,
            log,
        })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u32 {
        1 << self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> BinaryFieldElement {
        self.generator
    }

    pub fn element(&self, bits: u32) -> BinaryFieldElement {
        assert!(bits < self.size(), "element out of range");
        BinaryFieldElement(bits as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = BinaryFieldElement> {
        (0..self.size()).map(|v| BinaryFieldElement(v as u16))
    }

    pub fn add(&self, a: BinaryFieldElement, b: BinaryFieldElement) -> BinaryFieldElement {
        BinaryFieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: BinaryFieldElement, b: BinaryFieldElement) -> BinaryFieldElement {
        if a.0 == 0 || b.0 == 0 {
            return BinaryFieldElement::ZERO;
        }
        let i = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        BinaryFieldElement(self.exp[i])
    }

    pub fn inv(&self, a: BinaryFieldElement) -> Result<BinaryFieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.size() as usize - 1;
        let l = self.log[a.0 as usize] as usize;
        Ok(BinaryFieldElement(self.exp[(order - l) % order]))
    }

    pub fn div(&self, a: BinaryFieldElement, b: BinaryFieldElement) -> Result<BinaryFieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent (negative exponents invert).
    pub fn pow(&self, a: BinaryFieldElement, e: i64) -> BinaryFieldElement {
        if a.0 == 0 {
            return if e == 0 { BinaryFieldElement::ONE } else { BinaryFieldElement::ZERO };
        }
        let order = self.size() as i64 - 1;
        let l = self.log[a.0 as usize] as i64;
        BinaryFieldElement(self.exp[(l * e).rem_euclid(order) as usize])
    }

    /// Discrete logarithm with respect to [`Self::generator`].
    pub fn log(&self, a: BinaryFieldElement) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.log[a.0 as usize] as u32)
    }

    /// `a^(2^k)`, the k-th power of the Frobenius automorphism (k taken mod m).
    pub fn frobenius_power(&self, a: BinaryFieldElement, k: u32) -> BinaryFieldElement {
        let mut out = a;
        for _ in 0..k % self.m {
            out = self.mul(out, out);
        }
        out
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: BinaryFieldElement) -> Result<u64> {
        let l = self.log(a)? as u64;
        let n = self.size() as u64 - 1;
        Ok(n / gcd(n, l))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_division_oracle(a: u64, b: u64, m: u64) -> u64 {
        // schoolbook product followed by long division
        let mut prod = 0u64;
        for i in 0..16 {
            if (a >> i) & 1 == 1 {
                prod ^= b << i;
            }
        }
        let dm = 63 - m.leading_zeros();
        for i in (dm..64).rev() {
            if (prod >> i) & 1 == 1 {
                prod ^= m << (i - dm);
            }
        }
        prod
    }

    #[test]
    fn gf8_default_modulus_and_products() {
        let f = BinaryField::new(3, None).unwrap();
        assert_eq!(f.modulus(), 0b1011);
        let x = f.element(0b10);
        let x2 = f.element(0b100);
        assert_eq!(f.mul(x, x2), f.element(0b011));
        assert_eq!(poly_division_oracle(0b10, 0b100, 0b1011), 0b011);
    }

    #[test]
    fn gf8_inverse_of_x() {
        let f = BinaryField::new(3, None).unwrap();
        let x = f.element(0b10);
        // exhaustive search oracle over the 7 nonzero elements
        let found: Vec<_> = (1..8)
            .filter(|&c| poly_division_oracle(0b10, c, 0b1011) == 1)
            .collect();
        assert_eq!(found, vec![0b101]);
        assert_eq!(f.inv(x).unwrap(), f.element(0b101));
        assert_eq!(f.inv(BinaryFieldElement::ONE).unwrap(), BinaryFieldElement::ONE);
        assert_eq!(f.inv(BinaryFieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(
            BinaryField::new(3, Some(0b1111)),
            Err(Error::Construction(_))
        ));
        assert!(matches!(BinaryField::new(0, None), Err(Error::Range(_))));
        assert!(matches!(BinaryField::new(17, None), Err(Error::Range(_))));
    }

    #[test]
    fn prime_field_case() {
        let f = BinaryField::new(1, None).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.mul(BinaryFieldElement::ONE, BinaryFieldElement::ONE), BinaryFieldElement::ONE);
        assert_eq!(f.generator(), BinaryFieldElement::ONE);
    }

    #[test]
    fn fixed_table_moduli() {
        let expected = [(2, 0b111), (3, 0b1011), (4, 0b10011), (5, 0b100101), (6, 0b1011011)];
        for (m, modulus) in expected {
            assert_eq!(BinaryField::new(m, None).unwrap().modulus(), modulus);
        }
        // least irreducible of degree 7 is x^7+x+1
        assert_eq!(BinaryField::new(7, None).unwrap().modulus(), 0b1000_0011);
    }

    #[test]
    fn generator_has_full_order() {
        for m in 1..=16 {
            let f = BinaryField::new(m, None).unwrap();
            let n = (1u64 << m) - 1;
            let g = f.generator();
            for l in prime_factors(n) {
                assert_ne!(f.pow(g, (n / l) as i64), BinaryFieldElement::ONE, "m={m}");
            }
            assert_eq!(f.pow(g, n as i64), BinaryFieldElement::ONE);
        }
    }

    #[test]
    fn frobenius_cycles_back() {
        let f = BinaryField::new(3, None).unwrap();
        let x = f.element(0b10);
        assert_eq!(f.frobenius_power(x, 1), f.element(0b100));
        for a in f.elements() {
            assert_eq!(f.frobenius_power(a, 0), a);
            let thrice = (0..3).fold(a, |b, _| f.frobenius_power(b, 1));
            assert_eq!(thrice, a);
        }
    }

    #[test]
    fn frobenius_additive_exhaustive_small() {
        for m in 1..=4 {
            let f = BinaryField::new(m, None).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let s = f.add(a, b);
                    assert_eq!(f.mul(s, s), f.add(f.mul(a, a), f.mul(b, b)));
                }
            }
        }
    }

    #[test]
    fn frobenius_additive_random_large() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED);
        for m in 5..=16 {
            let f = BinaryField::new(m, None).unwrap();
            for _ in 0..1000 {
                let a = f.element(rng.gen_range(0..f.size()));
                let b = f.element(rng.gen_range(0..f.size()));
                let s = f.add(a, b);
                assert_eq!(f.mul(s, s), f.add(f.mul(a, a), f.mul(b, b)));
            }
        }
    }

    #[test]
    fn identity_and_absorbing_elements() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f = BinaryField::new(8, None).unwrap();
        for _ in 0..50 {
            let a = f.element(rng.gen_range(0..f.size()));
            assert_eq!(f.mul(a, BinaryFieldElement::ONE), a);
            assert_eq!(f.mul(a, BinaryFieldElement::ZERO), BinaryFieldElement::ZERO);
        }
    }
}
