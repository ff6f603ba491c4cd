use num_bigint::BigUint;

use super::{verify, CatalogEntry, CatalogGroup, Family};
use crate::error::{Error, Result};
use crate::finite_fields::{BinaryField, BinaryFieldElement};
use crate::perm_groups::Permutation;

type Vec3 = [BinaryFieldElement; 3];
type Mat3 = [[BinaryFieldElement; 3]; 3];

fn entry(m: u32) -> CatalogEntry {
    let q = BigUint::from(2u32).pow(m);
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let d = if (&q + 1u32) % 3u32 == BigUint::from(0u32) { 3u32 } else { 1 };
    let order = &q3 * (&q3 + 1u32) * (&q2 - 1u32) / d;
    CatalogEntry::new(
        Family::Psu3,
        m,
        1u64 << m,
        format!("psu3:{m}"),
        format!("U3_{q}"),
        format!("U3({q})"),
        u64::try_from(q3 + 1u32).unwrap_or(u64::MAX),
        order,
        2,
        m == 2,
    )
}

/// Unitary geometry over GF(q²) for the form `x0·x2^q + x1^(q+1) + x2·x0^q`.
struct Hermitian {
    field: BinaryField,
    /// Exponent of the field involution, as a Frobenius power.
    m: u32,
}

impl Hermitian {
    fn bar(&self, x: BinaryFieldElement) -> BinaryFieldElement {
        self.field.frobenius_power(x, self.m)
    }

    fn form(&self, v: &Vec3, w: &Vec3) -> BinaryFieldElement {
        let f = &self.field;
        let t0 = f.mul(v[0], self.bar(w[2]));
        let t1 = f.mul(v[1], self.bar(w[1]));
        let t2 = f.mul(v[2], self.bar(w[0]));
        f.add(f.add(t0, t1), t2)
    }

    fn apply(&self, a: &Mat3, v: &Vec3) -> Vec3 {
        let f = &self.field;
        std::array::from_fn(|i| (0..3).fold(BinaryFieldElement::ZERO, |acc, j| f.add(acc, f.mul(a[i][j], v[j]))))
    }

    fn preserves(&self, a: &Mat3) -> bool {
        let e = |i: usize| -> Vec3 { std::array::from_fn(|k| if k == i { BinaryFieldElement::ONE } else { BinaryFieldElement::ZERO }) };
        (0..3).all(|i| (0..3).all(|j| self.form(&self.apply(a, &e(i)), &self.apply(a, &e(j))) == self.form(&e(i), &e(j))))
    }

    fn normalize(&self, v: &Vec3) -> Vec3 {
        let lead = v.iter().find(|x| !x.is_zero()).copied().expect("nonzero vector");
        let inv = self.field.inv(lead).expect("nonzero");
        std::array::from_fn(|i| self.field.mul(v[i], inv))
    }
}

/// PSU₃(2^m) on the q³+1 isotropic points of PG(2, q²), points normalized
/// with first nonzero coordinate 1 and sorted lexicographically. Only
/// q = 4 is constructed.
///
/// Generators: the upper unitriangular isometries with (0,1) entry in
/// {1, ω} for ω a generator of GF(q²) (their (0,2) entry taken as the
/// least value satisfying the form), the torus `diag(ω, ω^(q-1), ω^(-q))`,
/// and the swap of the first and last coordinates.
pub fn make_psu3_char2(m: u32) -> Result<CatalogGroup> {
    if m < 2 {
        return Err(Error::Range(format!("PSU3(2^m) needs m >= 2, got {m}")));
    }
    let entry = entry(m);
    if m > 2 {
        return Ok(CatalogGroup { entry, group: None });
    }
    let h = Hermitian { field: BinaryField::new(2 * m, None)?, m };
    let f = &h.field;
    let zero = BinaryFieldElement::ZERO;
    let one = BinaryFieldElement::ONE;
    let mut points: Vec<Vec3> = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                let v = [a, b, c];
                if v.iter().all(|x| x.is_zero()) || h.normalize(&v) != v {
                    continue;
                }
                if h.form(&v, &v).is_zero() {
                    points.push(v);
                }
            }
        }
    }
    points.sort();
    let q = 1u64 << m;
    if points.len() as u64 != q * q * q + 1 {
        return Err(Error::Construction(format!("found {} isotropic points", points.len())));
    }
    let to_perm = |a: &Mat3| -> Result<Permutation> {
        let images = points
            .iter()
            .map(|p| {
                let img = h.normalize(&h.apply(a, p));
                points.binary_search(&img).map(|i| i as u32).map_err(|_| {
                    Error::Construction("matrix does not preserve the isotropic points".into())
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::from_images(images)
    };
    let omega = f.generator();
    let mut gens = Vec::new();
    for alpha in [one, omega] {
        let u = f
            .elements()
            .flat_map(|beta| f.elements().map(move |gamma| (beta, gamma)))
            .map(|(beta, gamma)| [[one, alpha, beta], [zero, one, gamma], [zero, zero, one]])
            .find(|a| h.preserves(a))
            .ok_or_else(|| Error::Construction("no unitriangular isometry found".into()))?;
        gens.push(to_perm(&u)?);
    }
    let torus = [
        [omega, zero, zero],
        [zero, f.pow(omega, q as i64 - 1), zero],
        [zero, zero, f.pow(omega, -(q as i64))],
    ];
    let swap = [[zero, zero, one], [zero, one, zero], [one, zero, zero]];
    for a in [&torus, &swap] {
        if !h.preserves(a) {
            return Err(Error::Construction("generator is not an isometry".into()));
        }
        gens.push(to_perm(a)?);
    }
    verify(entry, gens)
}
