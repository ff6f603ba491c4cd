//! Acceptance suite. Each criterion returns a pass flag, a one-line detail
//! and the canonical text of everything it produced; criterion 10 reruns
//! the first nine and compares those texts byte for byte. Runs without
//! the test harness so the per-criterion lines always reach stdout.

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use workbench::certificate::{Certificate, Evidence, Verdict};
use workbench::f2_linalg::{mat_mul, mat_mul_four_russians, mat_mul_schoolbook, mat_mul_wide, BitMatrix};
use workbench::group_catalog::{
    catalog_ids, lookup, make_psl2_char2, make_psl_m_q, make_psu3_char2, make_suzuki, CatalogGroup,
};
use workbench::mod_rep::{
    brauer_value, build_qb, endo_ring_dim, irreducible_census, irreducibles_isomorphic, meataxe_is_irreducible,
    permutation_module, split, MeatAxeOutcome, DEFAULT_DIM_CAP,
};
use workbench::perm_groups::{
    conjugacy_classes, find_index_dividing, find_subgroup_of_order, minimal_proper_index, AuditOutcome,
    PermGroup, Permutation,
};
use workbench::textfmt::{from_text, to_text};
use workbench::DEFAULT_SEED;
use workbench_cli::{certify_pipeline, CertifyParams, DEFAULT_CLASS_CAP};

struct Outcome {
    pass: bool,
    detail: String,
    artifact: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>, artifact: &Value) -> Self {
        Self { pass, detail: detail.into(), artifact: to_text(artifact) }
    }
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

fn tables_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tables/atlas.tbl")
}

fn arc(cg: &CatalogGroup) -> Arc<PermGroup> {
    Arc::new(cg.group().expect("computational entry").clone())
}

/// The five groups of criteria 1 and 2.
fn criterion_groups() -> Vec<(&'static str, CatalogGroup)> {
    vec![
        ("PSL2(8)", make_psl2_char2(3).unwrap()),
        ("PSL2(16)", make_psl2_char2(4).unwrap()),
        ("Sz(8)", make_suzuki(1).unwrap()),
        ("U3(4)", make_psu3_char2(2).unwrap()),
        ("L4(3)", make_psl_m_q(4, 3).unwrap()),
    ]
}

fn c1_catalog() -> Outcome {
    let start = Instant::now();
    let expected = [504u64, 4080, 29120, 62400, 6065280];
    let mut rows = Vec::new();
    let mut ok = true;
    for ((name, cg), want) in criterion_groups().into_iter().zip(expected) {
        let g = cg.group().unwrap();
        let order = g.order_u64();
        let t = g.transitivity_degree();
        ok &= order == Some(want) && t == 2;
        rows.push(json!({ "group": name, "order": order, "transitivity": t }));
    }
    let el = start.elapsed();
    ok &= within(el, 60);
    Outcome::new(ok, format!("orders and 2-transitivity in {:.1}s (limit 60s)", el.as_secs_f64()), &json!(rows))
}

fn c2_heart_modules() -> Outcome {
    let start = Instant::now();
    let expected = [8usize, 16, 64, 64, 38];
    let mut rows = Vec::new();
    let mut ok = true;
    for ((name, cg), want) in criterion_groups().into_iter().zip(expected) {
        let g = arc(&cg);
        let q = build_qb(&g).unwrap();
        let faithful = q.is_faithful().unwrap();
        let irreducible = matches!(meataxe_is_irreducible(&q, DEFAULT_SEED), Ok(MeatAxeOutcome::Irreducible(_)));
        let endo = endo_ring_dim(&q).unwrap();
        ok &= q.dim() == want && faithful && irreducible && endo == 1;
        rows.push(json!({ "group": name, "dim": q.dim(), "faithful": faithful, "irreducible": irreducible, "endo_dim": endo }));
    }
    let el = start.elapsed();
    ok &= within(el, 600);
    Outcome::new(ok, format!("dims 8,16,64,64,38 absolutely irreducible in {:.1}s (limit 600s)", el.as_secs_f64()), &json!(rows))
}

fn c3_census_psl2_8() -> Outcome {
    let start = Instant::now();
    let g = arc(&make_psl2_char2(3).unwrap());
    let classes = conjugacy_classes(&g).unwrap();
    let r = irreducible_census(&g, &classes, DEFAULT_DIM_CAP, DEFAULT_SEED).unwrap();
    let el = start.elapsed();
    let ok = r.complete
        && r.expected_count == 4
        && r.dims() == vec![(1, 1), (6, 3), (8, 1), (12, 3)]
        && r.absolutely_irreducible_dims == BTreeSet::from([1, 8])
        && within(el, 120);
    Outcome::new(ok, format!("dims {:?} in {:.1}s (limit 120s)", r.dims(), el.as_secs_f64()), &r.to_value())
}

fn c4_census_large() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut values = Vec::new();
    for (name, cg) in [("Sz(8)", make_suzuki(1).unwrap()), ("U3(4)", make_psu3_char2(2).unwrap())] {
        let start = Instant::now();
        let g = arc(&cg);
        let classes = conjugacy_classes(&g).unwrap();
        let r = irreducible_census(&g, &classes, DEFAULT_DIM_CAP, DEFAULT_SEED).unwrap();
        let el = start.elapsed();
        ok &= r.complete
            && r.irreducibles.len() == classes.fusion_orbit_count()
            && r.absolutely_irreducible_dims == BTreeSet::from([1, 64])
            && within(el, 1800);
        parts.push(format!("{name} {}/{} types {:.0}s", r.irreducibles.len(), r.expected_count, el.as_secs_f64()));
        values.push(r.to_value());
    }
    Outcome::new(ok, format!("{} (limit 1800s each)", parts.join(", ")), &json!(values))
}

fn all_leaves(c: &Certificate, pred: impl Fn(&Evidence) -> bool + Copy) -> bool {
    c.walk().iter().filter(|n| n.is_leaf()).all(|n| pred(&n.evidence))
}

fn certify(id: &str) -> (Certificate, Value) {
    let params = CertifyParams {
        group_id: id.to_string(),
        tables: Some(tables_path()),
        computed: true,
        dim_cap: DEFAULT_DIM_CAP,
        class_cap: DEFAULT_CLASS_CAP,
        seed: DEFAULT_SEED,
    };
    let (cert, report, _) = certify_pipeline(&params).unwrap();
    (cert, report.value)
}

fn c5_certificates() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut values = Vec::new();
    for id in ["psl2:3", "psl2:4", "sz:1", "psu3:2"] {
        let (cert, report) = certify(id);
        let computed = all_leaves(&cert, |e| matches!(e, Evidence::Computed { .. }));
        ok &= cert.verdict == Verdict::Pass && computed && cert.check_invariants().is_ok();
        parts.push(format!("{id} {:?}{}", cert.verdict, if computed { " computed" } else { "" }));
        values.push(json!({ "certificate": cert.to_value(), "report": report }));
    }
    let (cert, report) = certify("lmq:4,3");
    let leaves: Vec<&Certificate> = cert.walk().into_iter().filter(|n| n.is_leaf()).collect();
    let has_table = leaves.iter().any(|n| matches!(n.evidence, Evidence::Table { .. }));
    let index_leaf = leaves.iter().any(|n| {
        n.claim.contains("index dividing 38")
            && n.verdict == Verdict::Pass
            && matches!(&n.evidence, Evidence::Table { row, .. } if row.to_string().contains("40"))
    });
    ok &= cert.verdict == Verdict::Pass && has_table && index_leaf;
    parts.push(format!("lmq:4,3 {:?} with table leaves", cert.verdict));
    values.push(json!({ "certificate": cert.to_value(), "report": report }));
    Outcome::new(ok, parts.join(", "), &json!(values))
}

fn c6_brauer() -> Outcome {
    let mut failures = 0;
    let mut checked = 0;
    let mut rows = Vec::new();
    for cg in [make_psl2_char2(3), make_psl2_char2(4), make_suzuki(1), make_psu3_char2(2)] {
        let g = arc(&cg.unwrap());
        let q = build_qb(&g).unwrap();
        let classes = conjugacy_classes(&g).unwrap();
        for (_, c) in classes.two_regular() {
            let want = c.rep.fixed_points() as i64 - 1;
            let got = brauer_value(&q, &c.rep).unwrap().as_integer();
            checked += 1;
            if got != Some(want) {
                failures += 1;
            }
            rows.push(json!({ "degree": g.degree(), "class": c.name, "value": got, "fix_minus_one": want }));
        }
    }
    Outcome::new(failures == 0, format!("{checked} classes, {failures} failures"), &json!(rows))
}

fn c7_splitting() -> Outcome {
    let mut ok = true;
    let mut names = Vec::new();
    let mut rows = Vec::new();
    for id in catalog_ids() {
        let cg = lookup(id).unwrap();
        if cg.entry.degree % 2 == 0 || !cg.entry.computational {
            continue;
        }
        let g = arc(&cg);
        let n = g.degree();
        let report = split(&permutation_module(&g).unwrap(), DEFAULT_SEED).unwrap();
        let q = build_qb(&g).unwrap();
        let shape_ok = report.shape() == vec![(1, 1), (n - 1, 1)];
        let iso = shape_ok && irreducibles_isomorphic(&report.factors[1].module, &q).unwrap();
        ok &= shape_ok && iso;
        names.push(format!("{id}{}", if shape_ok && iso { "" } else { " (mismatch)" }));
        rows.push(json!({ "group": id, "factors": report.to_value(), "heart_isomorphic": iso }));
    }
    Outcome::new(ok, format!("trivial + heart for {}", names.join(" ")), &json!(rows))
}

/// Element set of the group generated by `gens`, by breadth-first closure.
fn closure(gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(gens[0].degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for s in gens {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

/// Orders of all subgroups, found by adjoining one element at a time to
/// every subgroup already known, starting from the trivial one. Elements
/// are indices into `elements`, multiplied through a full Cayley table.
fn brute_force_subgroup_orders(elements: &[Permutation]) -> BTreeSet<u64> {
    let n = elements.len();
    let index: std::collections::HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let table: Vec<Vec<usize>> =
        elements.iter().map(|x| elements.iter().map(|y| index[&x.mul(y)]).collect()).collect();
    let id = index[&Permutation::identity(elements[0].degree())];
    let close = |gens: &[usize]| {
        let mut member = vec![false; n];
        member[id] = true;
        let mut list = vec![id];
        let mut k = 0;
        while k < list.len() {
            for &s in gens {
                let y = table[list[k]][s];
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            k += 1;
        }
        member
    };
    let trivial = close(&[]);
    let mut known: HashSet<Vec<bool>> = HashSet::from([trivial.clone()]);
    let mut frontier: Vec<(Vec<usize>, Vec<bool>)> = vec![(Vec::new(), trivial)];
    let mut orders = BTreeSet::new();
    while let Some((gens, member)) = frontier.pop() {
        orders.insert(member.iter().filter(|&&b| b).count() as u64);
        for e in (0..n).filter(|&e| !member[e]) {
            let mut g2 = gens.clone();
            g2.push(e);
            let m2 = close(&g2);
            if known.insert(m2.clone()) {
                frontier.push((g2, m2));
            }
        }
    }
    orders
}

fn divides(a: u64, b: u64) -> bool {
    b % a == 0
}

fn small_groups() -> Vec<(&'static str, PermGroup)> {
    let p = |n: usize, c: &[&[u32]]| Permutation::from_cycles(n, c).unwrap();
    let g = |gens: Vec<Permutation>| PermGroup::new(gens).unwrap();
    vec![
        ("S4", g(vec![p(4, &[&[0, 1]]), p(4, &[&[0, 1, 2, 3]])])),
        ("A5", g(vec![p(5, &[&[0, 1, 2]]), p(5, &[&[0, 1, 2, 3, 4]])])),
        ("S5", g(vec![p(5, &[&[0, 1]]), p(5, &[&[0, 1, 2, 3, 4]])])),
        // PSL2(7) on the 7 points of the Fano plane
        ("PSL2(7)", g(vec![p(7, &[&[0, 1, 2, 3, 4, 5, 6]]), p(7, &[&[1, 2, 4], &[3, 6, 5]]), p(7, &[&[0, 1], &[2, 5]])])),
    ]
}

fn c8_oracles() -> Outcome {
    let mut discrepancies = 0;
    let mut rows = Vec::new();

    // group orders against closure
    let mut order_groups: Vec<(String, PermGroup)> =
        small_groups().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    for id in catalog_ids() {
        let cg = lookup(id).unwrap();
        if cg.entry.computational && cg.entry.expected_order <= 10_000u32.into() {
            order_groups.push((id.to_string(), cg.group().unwrap().clone()));
        }
    }
    for (name, g) in &order_groups {
        let brute = closure(g.generators()).len() as u64;
        if g.order_u64() != Some(brute) {
            discrepancies += 1;
        }
        rows.push(json!({ "group": name, "order": brute }));
    }

    // subgroup audit against exhaustive enumeration
    for ((name, g), want) in small_groups().into_iter().zip([24u64, 60, 120, 168]) {
        let n = g.order_u64().unwrap();
        if n != want {
            discrepancies += 1;
            continue;
        }
        let elements: Vec<Permutation> = g.elements().collect();
        let orders = brute_force_subgroup_orders(&elements);
        if orders.len() < 3 {
            discrepancies += 1;
        }
        let proper_indices: BTreeSet<u64> = orders.iter().filter(|&&o| o < n).map(|o| n / o).collect();
        if minimal_proper_index(&g).unwrap() != proper_indices.first().copied() {
            discrepancies += 1;
        }
        for s in 1..=n {
            let found = find_subgroup_of_order(&g, s).unwrap();
            if found.is_some() != orders.contains(&s) || found.is_some_and(|w| !w.verify(&g)) {
                discrepancies += 1;
            }
        }
        for big_n in 1..=2 * n {
            let brute = proper_indices.iter().any(|&i| divides(i, big_n));
            let got = match find_index_dividing(&g, big_n).unwrap() {
                AuditOutcome::None => false,
                AuditOutcome::Found(w) => w.verify(&g) && divides(w.index, big_n) && w.index > 1,
            };
            if got != brute {
                discrepancies += 1;
            }
        }
        rows.push(json!({ "group": name, "subgroup_orders": orders }));
    }

    // accelerated products against the schoolbook product
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let sizes = [(1, 1, 1), (7, 9, 5), (63, 64, 65), (64, 64, 64), (100, 130, 70), (128, 200, 129), (257, 256, 255)];
    for (r, k, c) in sizes {
        let mut bad = 0;
        for _ in 0..100 {
            let a = random_matrix(&mut rng, r, k);
            let b = random_matrix(&mut rng, k, c);
            let want = mat_mul_schoolbook(&a, &b).unwrap();
            for got in [mat_mul(&a, &b), mat_mul_four_russians(&a, &b), mat_mul_wide(&a, &b)] {
                if got.unwrap() != want {
                    bad += 1;
                }
            }
        }
        discrepancies += bad;
        rows.push(json!({ "size": [r, k, c], "cases": 100, "discrepancies": bad }));
    }
    Outcome::new(discrepancies == 0, format!("{discrepancies} discrepancies"), &json!(rows))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
    let data: Vec<Vec<bool>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen()).collect()).collect();
    BitMatrix::from_bool_rows(&data).unwrap()
}

fn c9_sampler() -> Outcome {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance_sample.txt");
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["sample", "abhyankar_l2_8", "--out"])
        .arg(&out)
        .env_remove("WORKBENCH_SEED")
        .status()
        .unwrap();
    let el = start.elapsed();
    let mut v = from_text(&std::fs::read_to_string(&out).unwrap()).unwrap();
    v["manifest"]["wall_time_ms"] = Value::Null;
    let rows = v["consistency"]["candidates"].as_array().unwrap().clone();
    let dist = |name: &str| rows.iter().find(|r| r["name"] == name).unwrap()["distance"].as_f64().unwrap();
    let qualified = rows.iter().any(|r| r["name"] == "psl2:3" && r["qualified"] == true);
    let margin = dist("alt:9").min(dist("sym:9")) - dist("psl2:3");

    let g = make_psl2_char2(3).unwrap();
    let allowed: BTreeSet<String> =
        conjugacy_classes(g.group().unwrap()).unwrap().classes.iter().map(|c| c.cycle_type.to_string()).collect();
    let support: BTreeSet<String> =
        v["empirical"]["types"].as_array().unwrap().iter().map(|t| t["type"].as_str().unwrap().to_string()).collect();
    let ok = status.success()
        && v["manifest"]["parameters"]["p"] == 7
        && v["manifest"]["parameters"]["budget"] == 500
        && qualified
        && margin >= 0.05
        && allowed.len() == 5
        && support.is_subset(&allowed)
        && within(el, 30);
    Outcome::new(
        ok,
        format!("TV {:.4}, margin {margin:.3}, {} of 5 types seen, {:.1}s (limit 30s)", dist("psl2:3"), support.len(), el.as_secs_f64()),
        &v,
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "catalog verification", c1_catalog),
        (2, "heart module dimensions", c2_heart_modules),
        (3, "PSL2(8) census", c3_census_psl2_8),
        (4, "Sz(8) and U3(4) census", c4_census_large),
        (5, "very simple certificates", c5_certificates),
        (6, "Brauer identity", c6_brauer),
        (7, "splitting invariant", c7_splitting),
        (8, "oracle equivalence", c8_oracles),
        (9, "Frobenius sampler", c9_sampler),
    ];
    // `cargo test --test acceptance -- 3 5` runs a subset
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: Vec<_> = criteria.into_iter().filter(|(n, _, _)| only.is_empty() || only.contains(n)).collect();
    let mut lines = Vec::new();
    let mut all = true;
    let mut first = Vec::new();
    for &(n, name, f) in &criteria {
        let o = f();
        all &= o.pass;
        lines.push(format!("criterion {n:>2} {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail));
        println!("{}", lines.last().unwrap());
        first.push(o.artifact);
    }
    let differing: Vec<u32> = criteria
        .iter()
        .zip(&first)
        .filter(|((_, _, f), a)| f().artifact != **a)
        .map(|((n, _, _), _)| *n)
        .collect();
    let det = differing.is_empty();
    all &= det;
    lines.push(format!(
        "criterion 10 determinism: {} ({})",
        if det { "PASS" } else { "FAIL" },
        if det { format!("{} criteria reproduced byte for byte", criteria.len()) } else { format!("criteria {differing:?} differ") }
    ));
    println!("{}", lines.last().unwrap());
    if !all {
        eprintln!("acceptance failures:\n{}", lines.join("\n"));
        std::process::exit(1);
    }
}
