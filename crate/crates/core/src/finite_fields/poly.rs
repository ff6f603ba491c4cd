use std::collections::BTreeMap;

use super::FiniteField;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients stored lowest degree first and
/// trimmed so that the last stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Copy + PartialEq> Poly<E> {
    /// Builds a polynomial from low-to-high coefficients, trimming zeros.
    pub fn new<F: FiniteField<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|&c| c == field.zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<E> {
        self.coeffs.last().copied()
    }
}

/// Polynomial arithmetic bound to a field.
pub struct PolyRing<'a, F: FiniteField> {
    pub field: &'a F,
}

impl<'a, F: FiniteField> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        Self { field }
    }

    pub fn from_coeffs(&self, coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        Poly::new(self.field, coeffs)
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.from_coeffs(vec![self.field.zero(), self.field.one()])
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let f = self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).copied().unwrap_or(f.zero());
                let y = b.coeffs.get(i).copied().unwrap_or(f.zero());
                f.add(x, y)
            })
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { coeffs: a.coeffs.iter().map(|&c| self.field.neg(c)).collect() }
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = self.field;
        let mut out = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == f.zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    /// Quotient and remainder; division by zero is an error.
    pub fn divrem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field;
        let lead_inv = f.inv(b.coeffs[db])?;
        let mut rem = a.coeffs.clone();
        let Some(da) = a.degree().filter(|&d| d >= db) else {
            return Ok((Poly::zero(), a.clone()));
        };
        let mut quot = vec![f.zero(); da - db + 1];
        for i in (db..=da).rev() {
            let c = rem[i];
            if c == f.zero() {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[i - db] = t;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[i - db + j] = f.sub(rem[i - db + j], f.mul(t, bj));
            }
        }
        rem.truncate(db);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        Ok(self.divrem(a, b)?.1)
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(a, self.field.inv(l).expect("leading coefficient is nonzero")),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn mulmod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m).expect("modulus is nonzero")
    }

    /// `a^e mod m` by square and multiply.
    pub fn powmod(&self, a: &Poly<F::Elem>, mut e: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut base = self.rem(a, m).expect("modulus is nonzero");
        let mut acc = self.rem(&self.constant(self.field.one()), m).expect("modulus is nonzero");
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &base, m);
            }
            base = self.mulmod(&base, &base, m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let f = self.field;
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.characteristic()) as i64)))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: F::Elem) -> F::Elem {
        let f = self.field;
        a.coeffs.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// True when `gcd(a, a') = 1`. A vanishing derivative means `a` is a
    /// p-th power, hence not squarefree for positive degree.
    pub fn is_squarefree(&self, a: &Poly<F::Elem>) -> bool {
        let d = self.derivative(a);
        if d.is_zero() {
            return a.degree() == Some(0);
        }
        self.gcd(a, &d).degree() == Some(0)
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, as a
    /// map degree -> count, via the `gcd(f, x^(Q^d) - x)` cascade.
    pub fn distinct_degree_degrees(&self, f: &Poly<F::Elem>) -> Result<BTreeMap<usize, usize>> {
        let deg = f.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::Range("polynomial must have positive degree".into()));
        }
        if !self.is_squarefree(f) {
            return Err(Error::NotSquarefree);
        }
        let q = self.field.order();
        let x = self.x();
        let mut rest = self.monic(f);
        let mut h = self.rem(&x, &rest)?;
        let mut out = BTreeMap::new();
        let mut d = 0;
        while let Some(dr) = rest.degree() {
            d += 1;
            if dr < 2 * d {
                if dr > 0 {
                    out.insert(dr, 1);
                }
                break;
            }
            h = self.powmod(&h, q, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            let dg = g.degree().expect("gcd with nonzero rest is nonzero");
            if dg > 0 {
                *out.entry(d).or_insert(0) += dg / d;
                rest = self.divrem(&rest, &g)?.0;
                h = self.rem(&h, &rest)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_fields::{PrimeField, PrimePowerField};

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(f: &PrimeField, c: &[i64]) -> Poly<u64> {
        Poly::new(f, c.iter().map(|&v| f.from_int(v)).collect())
    }

    #[test]
    fn cubic_splits_into_linears() {
        let f = gf(7);
        let r = PolyRing::new(&f);
        let got = r.distinct_degree_degrees(&poly(&f, &[0, -1, 0, 1])).unwrap();
        assert_eq!(got, BTreeMap::from([(1, 3)]));
    }

    #[test]
    fn x2_plus_1_is_irreducible_mod_7() {
        let f = gf(7);
        // -1 is not a square: oracle over all residues
        assert!((0..7u64).all(|a| a * a % 7 != 6));
        let r = PolyRing::new(&f);
        let got = r.distinct_degree_degrees(&poly(&f, &[1, 0, 1])).unwrap();
        assert_eq!(got, BTreeMap::from([(2, 1)]));
    }

    fn mult_order(base: u64, m: u64) -> usize {
        let mut x = base % m;
        let mut k = 1;
        while x != 1 {
            x = x * base % m;
            k += 1;
        }
        k
    }

    #[test]
    fn x9_minus_1_mod_7() {
        let f = gf(7);
        let r = PolyRing::new(&f);
        let got = r.distinct_degree_degrees(&poly(&f, &[-1, 0, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        // cyclotomic oracle: Phi_d splits into phi(d)/ord_d(7) factors of degree ord_d(7)
        let mut expected = BTreeMap::new();
        for (d, phi) in [(1u64, 1usize), (3, 2), (9, 6)] {
            let o = if d == 1 { 1 } else { mult_order(7, d) };
            *expected.entry(o).or_insert(0) += phi / o;
        }
        assert_eq!(got, expected);
        assert_eq!(got.get(&1), Some(&3));
    }

    #[test]
    fn non_squarefree_and_constant_rejected() {
        let f = gf(7);
        let r = PolyRing::new(&f);
        assert_eq!(
            r.distinct_degree_degrees(&poly(&f, &[1, 2, 1])),
            Err(Error::NotSquarefree)
        );
        // x^7 has zero derivative
        let mut c = vec![0; 8];
        c[7] = 1;
        c[0] = 1;
        assert_eq!(r.distinct_degree_degrees(&poly(&f, &c)), Err(Error::NotSquarefree));
        assert!(matches!(r.distinct_degree_degrees(&poly(&f, &[3])), Err(Error::Range(_))));
    }

    #[test]
    fn divrem_reconstructs() {
        let f = gf(11);
        let r = PolyRing::new(&f);
        let a = poly(&f, &[3, 1, 4, 1, 5, 9, 2, 6]);
        let b = poly(&f, &[5, 3, 5]);
        let (q, rem) = r.divrem(&a, &b).unwrap();
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(rem.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn works_over_extension_field() {
        let f = PrimePowerField::new(3, 2).unwrap();
        let r = PolyRing::new(&f);
        // x^2 + 1 is irreducible over GF(3) but splits over GF(9)
        let p = Poly::new(&f, vec![1, 0, 1]);
        assert_eq!(r.distinct_degree_degrees(&p).unwrap(), BTreeMap::from([(1, 2)]));
        // x^9 - x splits completely
        let mut c = vec![0u64; 10];
        c[9] = 1;
        c[1] = f.from_int(-1);
        let p = Poly::new(&f, c);
        assert_eq!(r.distinct_degree_degrees(&p).unwrap(), BTreeMap::from([(1, 9)]));
    }
}
