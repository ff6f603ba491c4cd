use num_bigint::BigUint;

use super::{verify, CatalogEntry, CatalogGroup, Family};
use crate::error::{Error, Result};
use crate::finite_fields::{BinaryField, BinaryFieldElement};
use crate::perm_groups::Permutation;

fn entry(m: u32) -> CatalogEntry {
    let q = BigUint::from(2u32).pow(2 * m + 1);
    let q2 = &q * &q;
    let order = &q2 * (&q2 + 1u32) * (&q - 1u32);
    let degree = u64::try_from(&q2 + 1u32).unwrap_or(u64::MAX);
    CatalogEntry::new(
        Family::Sz,
        m,
        q.to_string().parse().unwrap_or(0),
        format!("sz:{m}"),
        format!("Sz_{q}"),
        format!("Sz({q})"),
        degree,
        order,
        2,
        m == 1,
    )
}

/// Sz(2^(2m+1)) on the q²+1 points of its ovoid: `(a, b)` is point
/// `a·q + b`, ∞ is last. Only q = 8 is constructed; larger m give the
/// catalog metadata alone.
///
/// With θ: x ↦ x^(2^(m+1)) and `z(x, y) = xy + x^(θ+2) + y^θ`, the
/// generators are the translations `(x, y) ↦ (x + a, y + b + x·a^θ)`, the
/// torus `(x, y) ↦ (λx, λ^(θ+1)·y)` and the involution
/// `(x, y) ↦ (y/z, x/z)` exchanging ∞ and (0, 0).
pub fn make_suzuki(m: u32) -> Result<CatalogGroup> {
    if m == 0 {
        return Err(Error::Range("Sz(2^(2m+1)) needs m >= 1".into()));
    }
    let entry = entry(m);
    if m > 1 {
        return Ok(CatalogGroup { entry, group: None });
    }
    let field = BinaryField::new(2 * m + 1, None)?;
    let q = field.size();
    let theta = |x: BinaryFieldElement| field.frobenius_power(x, m + 1);
    let inf = q * q;
    let encode = |x: BinaryFieldElement, y: BinaryFieldElement| x.0 as u32 * q + y.0 as u32;
    let decode = |p: u32| (field.element(p / q), field.element(p % q));
    let map = |f: &dyn Fn(BinaryFieldElement, BinaryFieldElement) -> Option<(BinaryFieldElement, BinaryFieldElement)>,
               at_inf: u32| {
        let images = (0..=inf)
            .map(|p| {
                if p == inf {
                    return at_inf;
                }
                let (x, y) = decode(p);
                f(x, y).map_or(inf, |(u, v)| encode(u, v))
            })
            .collect();
        Permutation::from_images(images)
    };
    let translation = |a: BinaryFieldElement, b: BinaryFieldElement| {
        map(&|x, y| Some((field.add(x, a), field.add(field.add(y, b), field.mul(x, theta(a))))), inf)
    };
    let one = BinaryFieldElement::ONE;
    let zero = BinaryFieldElement::ZERO;
    let lambda = field.generator();
    let lambda_theta1 = field.mul(theta(lambda), lambda);
    let z = |x: BinaryFieldElement, y: BinaryFieldElement| {
        let x2 = field.mul(x, x);
        field.add(field.add(field.mul(x, y), field.mul(theta(x), x2)), theta(y))
    };
    let involution = map(
        &|x, y| {
            let zz = z(x, y);
            if zz.is_zero() {
                None
            } else {
                let inv = field.inv(zz).expect("nonzero");
                Some((field.mul(y, inv), field.mul(x, inv)))
            }
        },
        0,
    )?;
    let gens = vec![
        translation(one, zero)?,
        translation(zero, one)?,
        map(&|x, y| Some((field.mul(lambda, x), field.mul(lambda_theta1, y))), inf)?,
        involution,
    ];
    verify(entry, gens)
}
