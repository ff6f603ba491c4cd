use std::sync::Arc;

use proptest::prelude::*;
use workbench::certificate::Verdict;
use workbench::f2_linalg::{inverse, mat_mul, mat_mul_four_russians, mat_mul_schoolbook, mat_mul_wide, BitMatrix};
use workbench::frobenius_sampler::{
    sample_from_distribution, symmetric_type_distribution, total_variation, TypeDistribution,
};
use workbench::group_catalog::{make_psl2_char2, make_sym_alt};
use workbench::mod_rep::{build_qb, irreducibles_isomorphic, GModule};
use workbench::perm_groups::PermGroup;
use workbench::very_simple::factorizations;

fn matrix(rows: usize, cols: usize, bits: &[bool]) -> BitMatrix {
    let data: Vec<Vec<bool>> = (0..rows).map(|r| bits[r * cols..(r + 1) * cols].to_vec()).collect();
    BitMatrix::from_bool_rows(&data).unwrap()
}

fn dims_and_bits() -> impl Strategy<Value = (usize, usize, usize, Vec<bool>, Vec<bool>)> {
    (1usize..150, 1usize..150, 1usize..150).prop_flat_map(|(r, k, c)| {
        (
            Just(r),
            Just(k),
            Just(c),
            proptest::collection::vec(any::<bool>(), r * k),
            proptest::collection::vec(any::<bool>(), k * c),
        )
    })
}

/// An invertible matrix built from random row additions.
fn invertible(n: usize, ops: &[(usize, usize)]) -> BitMatrix {
    let mut p = BitMatrix::identity(n);
    for &(a, b) in ops {
        let (a, b) = (a % n, b % n);
        if a != b {
            p.xor_row(a, b);
        }
    }
    p
}

fn heart_of(g: PermGroup) -> GModule {
    build_qb(&Arc::new(g)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_routes_agree((r, k, c, a, b) in dims_and_bits()) {
        let a = matrix(r, k, &a);
        let b = matrix(k, c, &b);
        let want = mat_mul_schoolbook(&a, &b).unwrap();
        prop_assert_eq!(&mat_mul(&a, &b).unwrap(), &want);
        prop_assert_eq!(&mat_mul_four_russians(&a, &b).unwrap(), &want);
        prop_assert_eq!(&mat_mul_wide(&a, &b).unwrap(), &want);
    }

    #[test]
    fn factorizations_are_exactly_the_nontrivial_pairs(n in 1u64..5000) {
        let brute: Vec<(u64, u64)> =
            (2..=n).filter(|a| n % a == 0 && a * a <= n).map(|a| (a, n / a)).collect();
        prop_assert_eq!(factorizations(n).pairs, brute);
    }

    #[test]
    fn verdict_combination(vs in proptest::collection::vec(0u8..3, 0..12)) {
        let vs: Vec<Verdict> = vs
            .into_iter()
            .map(|v| [Verdict::Pass, Verdict::Fail, Verdict::Inconclusive][v as usize])
            .collect();
        let want = if vs.contains(&Verdict::Inconclusive) {
            Verdict::Inconclusive
        } else if vs.contains(&Verdict::Fail) {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        prop_assert_eq!(Verdict::combine(vs.iter().copied()), want);
        prop_assert_eq!(Verdict::combine(vs.iter().rev().copied()), want);
    }

    #[test]
    fn sampled_distributions(n in 3u32..10, alternating in any::<bool>(), draws in 1u64..400, seed in any::<u64>()) {
        let exact = symmetric_type_distribution(n, alternating);
        prop_assert!((exact.total_mass() - 1.0).abs() < 1e-9);
        let s = sample_from_distribution(&exact, draws, seed);
        prop_assert!((s.total_mass() - 1.0).abs() < 1e-9);
        prop_assert!(s.support().all(|t| exact.probs.contains_key(t)));
        let d = total_variation(&s, &exact);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!((d - total_variation(&exact, &s)).abs() < 1e-12);
        prop_assert!(total_variation(&s, &s).abs() < 1e-12);
        prop_assert_eq!(s, sample_from_distribution(&exact, draws, seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn isomorphism_survives_rebasing(ops in proptest::collection::vec((0usize..64, 0usize..64), 0..80)) {
        let q = heart_of(make_psl2_char2(3).unwrap().group().unwrap().clone());
        let p = invertible(q.dim(), &ops);
        let rebased = q.change_basis(&p).unwrap();
        prop_assert!(irreducibles_isomorphic(&q, &rebased).unwrap());
    }
}

#[test]
fn heart_of_a5_is_self_dual() {
    let g = Arc::new(make_sym_alt(5, true).unwrap().group().unwrap().clone());
    let q = build_qb(&g).unwrap();
    let dual: Vec<BitMatrix> =
        q.action().iter().map(|a| inverse(a).unwrap().unwrap().transpose()).collect();
    let dual = GModule::new(g, dual, "dual").unwrap();
    assert_eq!(q.dim(), 4);
    assert!(irreducibles_isomorphic(&q, &dual).unwrap());
}

#[test]
fn s4_has_five_cycle_types() {
    let d: TypeDistribution = symmetric_type_distribution(4, false);
    assert_eq!(d.probs.len(), 5);
}
