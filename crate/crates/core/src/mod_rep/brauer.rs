use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::charpoly::charpoly_factors;
use super::module::GModule;
use crate::error::{Error, Result};
use crate::finite_fields::{BinaryField, BinaryFieldElement, MAX_BINARY_DEGREE};
use crate::perm_groups::Permutation;

/// An element of `Z[ζ_e]`, stored as integer coefficients of `1, ζ, …`
/// reduced modulo the e-th cyclotomic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerValue {
    pub conductor: u64,
    pub coefficients: Vec<i64>,
}

impl BrauerValue {
    pub fn as_integer(&self) -> Option<i64> {
        if self.coefficients.iter().skip(1).all(|&c| c == 0) {
            Some(self.coefficients.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    pub fn to_value(&self) -> Value {
        json!({ "conductor": self.conductor, "coefficients": self.coefficients })
    }
}

/// Integer coefficients of the e-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_polynomial(e: u64) -> Vec<i64> {
    // x^e - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in (1..e).filter(|d| e % d == 0) {
        num = div_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let (mut r, q) = divrem_monic(num, den);
    r.retain(|&c| c != 0);
    debug_assert!(r.is_empty());
    q
}

/// Division by a monic integer polynomial.
fn divrem_monic(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    if r.len() <= dd {
        r.resize(dd, 0);
        return (r, vec![0]);
    }
    let mut q = vec![0i64; r.len() - dd];
    for i in (dd..r.len()).rev() {
        let c = r[i];
        if c != 0 {
            q[i - dd] = c;
            for (j, &d) in den.iter().enumerate() {
                r[i - dd + j] -= c * d;
            }
        }
    }
    r.truncate(dd);
    (r, q)
}

/// Multiplicative order of 2 modulo an odd `e > 1`.
fn order_of_two(e: u64) -> u32 {
    let mut k = 1;
    let mut x = 2 % e;
    while x != 1 {
        x = x * 2 % e;
        k += 1;
    }
    k
}

/// Orbits of `j ↦ 2j` on `Z/e`.
fn cyclotomic_cosets(e: u64) -> Vec<Vec<u64>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for j in 0..e {
        if seen.contains(&j) {
            continue;
        }
        let mut c = vec![j];
        seen.insert(j);
        let mut x = 2 * j % e;
        while x != j {
            seen.insert(x);
            c.push(x);
            x = 2 * x % e;
        }
        out.push(c);
    }
    out
}

/// `∏_{j ∈ coset} (x - β^j)` in GF(2)[x], as bits.
fn coset_min_poly(field: &BinaryField, beta: BinaryFieldElement, coset: &[u64]) -> Result<u64> {
    let mut poly = vec![BinaryFieldElement::ONE];
    for &j in coset {
        let root = field.pow(beta, j as i64);
        let mut next = vec![BinaryFieldElement::ZERO; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.add(next[i], field.mul(c, root));
        }
        poly = next;
    }
    let mut bits = 0u64;
    for (i, c) in poly.iter().enumerate() {
        match c.0 {
            0 => {}
            1 => bits |= 1 << i,
            _ => return Err(Error::Construction("coset polynomial not defined over GF(2)".into())),
        }
    }
    Ok(bits)
}

/// Brauer character value of `g` on `m`. Eigenvalues are read off the
/// characteristic polynomial through the minimal polynomials of the
/// cyclotomic cosets; the eigenvalue `β^j`, with `β` the power
/// `γ^((2^k-1)/e)` of the fixed generator `γ` of GF(2^k), lifts to `ζ_e^j`.
pub fn brauer_value(m: &GModule, g: &Permutation) -> Result<BrauerValue> {
    let e = g.order();
    if e % 2 == 0 {
        return Err(Error::NotTwoRegular(e));
    }
    let dim = m.dim() as i64;
    if e == 1 {
        return Ok(BrauerValue { conductor: 1, coefficients: vec![dim] });
    }
    let k = order_of_two(e);
    if k > MAX_BINARY_DEGREE {
        return Err(Error::Range(format!("eigenvalues of order {e} need GF(2^{k})")));
    }
    let field = BinaryField::new(k, None)?;
    let beta = field.pow(field.generator(), ((1u64 << k) - 1) as i64 / e as i64);
    let parts = charpoly_factors(&m.matrix_of(g)?);
    let mut sums = vec![0i64; e as usize];
    let mut counted = 0i64;
    for coset in cyclotomic_cosets(e) {
        let p = coset_min_poly(&field, beta, &coset)?;
        let mult: usize = parts.iter().map(|f| f.multiplicity_small(p)).sum();
        for &j in &coset {
            sums[j as usize] += mult as i64;
        }
        counted += (mult * coset.len()) as i64;
    }
    if counted != dim {
        return Err(Error::Construction(format!("eigenvalues of {g} account for {counted} of {dim} dimensions")));
    }
    let (coefficients, _) = divrem_monic(&sums, &cyclotomic_polynomial(e));
    Ok(BrauerValue { conductor: e, coefficients })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group_catalog::make_psl2_char2;
    use crate::mod_rep::{build_qb, perm_character_value};

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(15), vec![1, -1, 0, 1, -1, 1, 0, -1, 1]);
    }

    #[test]
    fn cosets_partition() {
        let cs = cyclotomic_cosets(7);
        assert_eq!(cs, vec![vec![0], vec![1, 2, 4], vec![3, 6, 5]]);
        assert_eq!(order_of_two(13), 12);
    }

    #[test]
    fn psl2_8_heart_values() {
        let g = Arc::new(make_psl2_char2(3).unwrap().group.unwrap());
        let q = build_qb(&g).unwrap();
        let id = g.identity();
        assert_eq!(brauer_value(&q, &id).unwrap().as_integer(), Some(8));
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        let mut seen = BTreeSet::new();
        while seen.len() < 4 {
            let x = g.random_element(&mut rng);
            if x.order() % 2 == 1 {
                seen.insert(x.order());
                let v = brauer_value(&q, &x).unwrap();
                assert_eq!(v.as_integer(), Some(perm_character_value(&x)), "order {}", x.order());
            } else {
                assert!(matches!(brauer_value(&q, &x), Err(Error::NotTwoRegular(_))));
            }
        }
    }
}
