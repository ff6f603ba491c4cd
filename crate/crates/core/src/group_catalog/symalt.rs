use num_bigint::BigUint;

use super::{verify, CatalogEntry, CatalogGroup, Family};
use crate::error::{Error, Result};
use crate::perm_groups::Permutation;

/// S_n or A_n on n points, 3 ≤ n ≤ 64, with the usual two generators:
/// a transposition and an n-cycle, or a 3-cycle and an (n-1)- or n-cycle.
pub fn make_sym_alt(n: usize, alternating: bool) -> Result<CatalogGroup> {
    if !(3..=64).contains(&n) {
        return Err(Error::Range(format!("symmetric and alternating groups need 3 <= n <= 64, got {n}")));
    }
    let fact: BigUint = (1..=n as u32).map(BigUint::from).product();
    let (family, order, transitivity, tag) = if alternating {
        (Family::Alt, fact / 2u32, 2.min(n as u32 - 2), "alt")
    } else {
        (Family::Sym, fact, 2, "sym")
    };
    let upper = if alternating { "A" } else { "S" };
    let entry = CatalogEntry::new(
        family,
        n as u32,
        0,
        format!("{tag}:{n}"),
        format!("{upper}{n}"),
        format!("{upper}{n}"),
        n as u64,
        order,
        transitivity,
        true,
    );
    let gens = if alternating {
        // an odd-length cycle is even; pair it with a 3-cycle
        let long: Vec<u32> = if n % 2 == 1 { (0..n as u32).collect() } else { (1..n as u32).collect() };
        vec![
            Permutation::from_cycles(n, &[&[0, 1, 2]])?,
            Permutation::from_cycles(n, &[&long])?,
        ]
    } else {
        let long: Vec<u32> = (0..n as u32).collect();
        vec![Permutation::from_cycles(n, &[&[0, 1]])?, Permutation::from_cycles(n, &[&long])?]
    };
    verify(entry, gens).map_err(|e| Error::Construction(format!("{upper}{n}: {e}")))
}
