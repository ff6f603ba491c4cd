use super::prime::is_prime;
use super::FiniteField;
use crate::error::{Error, Result};

/// Largest supported extension field order.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 20;

/// GF(p^k) for an odd prime p, with `p^k <= 2^20`.
///
/// Elements are encoded as integers whose base-p digits are the coefficients
/// of `1, y, ..., y^(k-1)` modulo the defining polynomial; the encoding of a
/// prime-field constant is the constant itself. Arithmetic goes through
/// exponent, logarithm and Zech tables.
#[derive(Clone, Debug)]
pub struct PrimePowerField {
    p: u64,
    k: u32,
    q: u64,
    /// Coefficients `c_0..c_{k-1}` of the monic defining polynomial.
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

impl PrimePowerField {
    /// Builds GF(p^k) using the lexicographically first primitive monic
    /// polynomial (lower coefficients read as a base-p integer).
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::Construction(format!("{p} is not an odd prime")));
        }
        if k == 0 {
            return Err(Error::Range("extension degree must be positive".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_EXTENSION_ORDER)
            .ok_or_else(|| Error::Range(format!("{p}^{k} exceeds 2^20")))?;
        let k_us = k as usize;
        for code in 0..q {
            let modulus = digits(code, p, k_us);
            if modulus[0] == 0 {
                continue;
            }
            if let Some(exp) = primitive_powers(&modulus, p, q) {
                return Ok(Self::from_tables(p, k, q, modulus, exp));
            }
        }
        unreachable!("primitive polynomials exist in every degree")
    }

    fn from_tables(p: u64, k: u32, q: u64, modulus: Vec<u64>, exp: Vec<u32>) -> Self {
        let n = (q - 1) as usize;
        let mut log = vec![NO_LOG; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let zech = exp
            .iter()
            .map(|&e| {
                let e = e as u64;
                let plus_one = if e % p == p - 1 { e - (p - 1) } else { e + 1 };
                log[plus_one as usize]
            })
            .collect();
        debug_assert_eq!(exp.len(), n);
        Self { p, k, q, modulus, exp, log, zech }
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Lower coefficients of the monic defining polynomial.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The class of `y`, a primitive element.
    pub fn generator(&self) -> u64 {
        self.exp[1 % self.exp.len()] as u64
    }

    fn log_of(&self, a: u64) -> u64 {
        self.log[a as usize] as u64
    }
}

fn digits(mut code: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn encode(ds: &[u64], p: u64) -> u64 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Successive powers of `y` modulo the monic polynomial with lower
/// coefficients `c`; `None` unless `y` has multiplicative order `q - 1`.
fn primitive_powers(c: &[u64], p: u64, q: u64) -> Option<Vec<u32>> {
    let k = c.len();
    let n = (q - 1) as usize;
    let mut cur = vec![0u64; k];
    cur[0] = 1;
    let mut exp = Vec::with_capacity(n);
    for i in 0..n {
        let code = encode(&cur, p);
        if i > 0 && code == 1 {
            return None;
        }
        exp.push(code as u32);
        // multiply by y: shift up, fold the overflow with y^k = -sum c_j y^j
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..k {
                cur[j] = (cur[j] + (p - c[j]) * top) % p;
            }
        }
    }
    (encode(&cur, p) == 1).then_some(exp)
}

impl FiniteField for PrimePowerField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn order(&self) -> u64 {
        self.q
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.q - 1;
        let (la, lb) = (self.log_of(a), self.log_of(b));
        let z = self.zech[((lb + n - la) % n) as usize];
        if z == NO_LOG {
            0
        } else {
            self.exp[((la + z as u64) % n) as usize] as u64
        }
    }

    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log_of(a) + n / 2) % n) as usize] as u64
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log_of(a) + self.log_of(b)) % n) as usize] as u64
    }

    fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log_of(a)) % n) as usize] as u64)
    }

    fn element(&self, index: u64) -> u64 {
        debug_assert!(index < self.q);
        index
    }
}
