use num_bigint::BigUint;
use workbench::group_catalog::{lookup, make_psl2_char2, make_psl_m_q, make_psu3_char2, make_suzuki, make_sym_alt};

#[test]
fn psl2_series_orders() {
    for m in 2..=6u32 {
        let q = 1u64 << m;
        let g = make_psl2_char2(m).unwrap();
        let grp = g.group().unwrap();
        assert_eq!(grp.order(), BigUint::from(q * (q * q - 1)));
        assert_eq!(grp.degree() as u64, q + 1);
        assert_eq!(grp.point_stabilizer(0).order(), BigUint::from(q * (q - 1)));
    }
}

#[test]
fn suzuki_8() {
    let g = make_suzuki(1).unwrap();
    assert_eq!(g.entry.degree, 65);
    assert_eq!(g.entry.genus, 32);
    assert_eq!(g.group().unwrap().order_u64(), Some(29120));
}

#[test]
fn unitary_4() {
    let g = make_psu3_char2(2).unwrap();
    assert_eq!(g.entry.degree, 65);
    assert_eq!(g.group().unwrap().order_u64(), Some(62400));
}

#[test]
fn linear_groups() {
    let g = make_psl_m_q(3, 3).unwrap();
    assert_eq!(g.group().unwrap().order_u64(), Some(5616));
    assert_eq!(g.entry.degree, 13);
    let g = make_psl_m_q(4, 3).unwrap();
    assert_eq!(g.group().unwrap().order_u64(), Some(6_065_280));
    assert_eq!(g.entry.genus, 19);
}

#[test]
fn sym_alt() {
    for n in 3..=9usize {
        let f: u64 = (1..=n as u64).product();
        assert_eq!(make_sym_alt(n, false).unwrap().group().unwrap().order_u64(), Some(f));
        assert_eq!(make_sym_alt(n, true).unwrap().group().unwrap().order_u64(), Some(f / 2));
    }
    assert!(lookup("alt:2").is_err());
}
