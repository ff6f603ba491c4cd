use num_bigint::BigUint;

use super::{verify, CatalogEntry, CatalogGroup, Family};
use crate::error::{Error, Result};
use crate::finite_fields::is_prime;
use crate::perm_groups::Permutation;

/// `Some((p, k))` when `q = p^k` for a prime p.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1 && is_prime(p)).then_some((p, k))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn entry(m: u32, q: u64) -> CatalogEntry {
    let bq = BigUint::from(q);
    let mut order = bq.pow(m * (m - 1) / 2);
    for i in 2..=m {
        order *= bq.pow(i) - 1u32;
    }
    order /= gcd(m as u64, q - 1);
    let degree = (bq.pow(m) - 1u32) / (q - 1);
    let computational = matches!((m, q), (4, 3) | (3, 3));
    CatalogEntry::new(
        Family::PslMq,
        m,
        q,
        format!("lmq:{m},{q}"),
        format!("L{m}_{q}"),
        format!("L{m}({q})"),
        u64::try_from(degree).unwrap_or(u64::MAX),
        order,
        2,
        computational,
    )
}

/// PSL_m(q) on the points of PG(m-1, q), each point the vector with first
/// nonzero coordinate 1, points sorted lexicographically. Constructed for
/// (m, q) in {(3, 3), (4, 3)}; other parameters give metadata only.
///
/// Generators: the transvection `I + E_01` and the determinant-one
/// monomial matrix cycling the coordinate axes.
pub fn make_psl_m_q(m: u32, q: u64) -> Result<CatalogGroup> {
    if m < 2 {
        return Err(Error::Range(format!("PSL_m(q) needs m >= 2, got {m}")));
    }
    let Some((p, k)) = prime_power(q).filter(|&(p, _)| p != 2) else {
        return Err(Error::Range(format!("q = {q} is not an odd prime power")));
    };
    let entry = entry(m, q);
    if !entry.computational {
        return Ok(CatalogGroup { entry, group: None });
    }
    debug_assert_eq!(k, 1);
    let m = m as usize;
    let mut points: Vec<Vec<u64>> = Vec::new();
    let total = q.pow(m as u32);
    for code in 1..total {
        let mut v = vec![0u64; m];
        let mut c = code;
        for i in (0..m).rev() {
            v[i] = c % q;
            c /= q;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            points.push(v);
        }
    }
    points.sort();
    let normalize = |v: Vec<u64>| -> Vec<u64> {
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero");
        let inv = (1..p).find(|&y| lead * y % p == 1).expect("field inverse");
        v.into_iter().map(|x| x * inv % p).collect()
    };
    let to_perm = |a: &[Vec<u64>]| -> Result<Permutation> {
        let images = points
            .iter()
            .map(|v| {
                let w: Vec<u64> = (0..m).map(|i| (0..m).map(|j| a[i][j] * v[j]).sum::<u64>() % p).collect();
                points.binary_search(&normalize(w)).map(|i| i as u32).map_err(|_| {
                    Error::Construction("image is not a projective point".into())
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::from_images(images)
    };
    let mut transvection = vec![vec![0u64; m]; m];
    for (i, row) in transvection.iter_mut().enumerate() {
        row[i] = 1;
    }
    transvection[0][1] = 1;
    // e_j -> e_{j+1}; the sign of an m-cycle is (-1)^(m-1), fixed in one entry
    let mut cycle = vec![vec![0u64; m]; m];
    for j in 0..m {
        cycle[(j + 1) % m][j] = 1;
    }
    if m % 2 == 0 {
        cycle[0][m - 1] = p - 1;
    }
    verify(entry, vec![to_perm(&transvection)?, to_perm(&cycle)?])
}
