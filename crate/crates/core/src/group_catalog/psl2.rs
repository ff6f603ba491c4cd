use num_bigint::BigUint;

use super::{verify, CatalogEntry, CatalogGroup, Family};
use crate::error::{Error, Result};
use crate::finite_fields::{BinaryField, BinaryFieldElement};
use crate::perm_groups::Permutation;

/// PSL₂(2^m) on the projective line: field elements by encoding, ∞ last.
pub fn make_psl2_char2(m: u32) -> Result<CatalogGroup> {
    if !(2..=6).contains(&m) {
        return Err(Error::Range(format!("PSL2(2^m) needs 2 <= m <= 6, got {m}")));
    }
    let field = BinaryField::new(m, None)?;
    let q = field.size() as u64;
    let entry = CatalogEntry::new(
        Family::Psl2,
        m,
        2,
        format!("psl2:{m}"),
        format!("L2_{q}"),
        format!("L2({q})"),
        q + 1,
        BigUint::from(q * (q * q - 1)),
        2,
        true,
    );
    let inf = q as u32;
    let point = |x: Option<BinaryFieldElement>| x.map_or(inf, |e| e.0 as u32);
    let map = |f: &dyn Fn(Option<BinaryFieldElement>) -> Option<BinaryFieldElement>| {
        let images = (0..=q as u32)
            .map(|p| {
                let x = (p != inf).then(|| field.element(p));
                point(f(x))
            })
            .collect();
        Permutation::from_images(images)
    };
    let gamma = field.generator();
    let gens = vec![
        map(&|x| x.map(|x| field.add(x, BinaryFieldElement::ONE)))?,
        map(&|x| x.map(|x| field.mul(gamma, x)))?,
        map(&|x| match x {
            None => Some(BinaryFieldElement::ZERO),
            Some(x) if x.is_zero() => None,
            Some(x) => Some(field.inv(x).expect("nonzero")),
        })?,
    ];
    verify(entry, gens)
}
