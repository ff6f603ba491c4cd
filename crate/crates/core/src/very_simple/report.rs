use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::certificate::{Certificate, Verdict};
use crate::group_catalog::CatalogEntry;
use crate::tables::Tables;

/// Exceptional pairs (table id, genus) for the 2-part condition.
const TWO_PART_EXCEPTIONS: &[(&str, u64)] = &[("L4_3", 19)];
/// Exceptional pairs for the odd Schur multiplier condition.
const SCHUR_EXCEPTIONS: &[(&str, u64)] = &[("Sz_8", 32)];

/// Summary tying a certificate to the endomorphism-ring criterion for the
/// jacobian of `y² = f(x)` with Galois group G on the roots of f.
#[derive(Clone, Debug, PartialEq)]
pub struct MainReport {
    pub value: Value,
}

fn branch(ok: bool, id: &str, genus: u64, exceptions: &[(&str, u64)]) -> &'static str {
    if ok {
        "satisfied"
    } else if exceptions.contains(&(id, genus)) {
        "exceptional case"
    } else {
        "not satisfied"
    }
}

/// Records which hypotheses are machine-verified (the very-simple module
/// condition, from the certificate) and which are consumed as cited data:
/// (a) the 2-part of |G| against 2g, (b) parity of the Schur multiplier,
/// (d) the lift of the heart module to the rational sum-zero permutation
/// module. The endomorphism-ring conclusion is reported as conditional on
/// these inputs and is never computed.
pub fn theorem_main_report(entry: &CatalogEntry, cert: &Certificate, tables: Option<&Tables>) -> MainReport {
    let g = entry.genus;
    let two_part = entry.two_part();
    let two_g = BigUint::from(2 * g);
    let divides = &two_g % &two_part == BigUint::from(0u32);
    let two_part_row = json!({
        "two_part_of_order": two_part.to_string(),
        "two_g": 2 * g,
        "divides": divides,
        "status": branch(divides, &entry.table_id, g, TWO_PART_EXCEPTIONS),
    });
    let schur_row = match tables.and_then(|t| t.schur_multiplier(&entry.table_id)) {
        Some((mult, rec)) => json!({
            "order": mult,
            "odd": mult % 2 == 1,
            "status": branch(mult % 2 == 1, &entry.table_id, g, SCHUR_EXCEPTIONS),
            "citation": rec.citation,
        }),
        None => json!({ "status": "no table data" }),
    };
    let verified = cert.verdict == Verdict::Pass;
    let lift = if entry.degree % 2 == 1 {
        "sum-zero rational permutation module reduces to the heart module (odd degree)"
    } else {
        "sum-zero rational permutation module reduces to a module with the heart module as quotient (even degree)"
    };
    let value = json!({
        "group": entry.name,
        "catalog_id": entry.id,
        "degree": entry.degree,
        "genus": g,
        "order": entry.expected_order.to_string(),
        "conditions": {
            "a_two_part": two_part_row,
            "b_schur_multiplier": schur_row,
            "c_very_simple": {
                "status": if verified { "machine-verified" } else { "not verified" },
                "certificate_verdict": cert.verdict,
                "certificate_digest": cert.inputs_digest,
            },
            "d_orthogonal_lift": { "status": "cited", "note": lift },
        },
        "conclusion": if verified {
            "End(J) = Z is the criterion's conclusion given the verified and cited inputs; it is not computed here"
        } else {
            "module condition not certified; no conclusion drawn"
        },
    });
    MainReport { value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Evidence;
    use crate::group_catalog::{make_psl2_char2, make_psl_m_q, make_suzuki};

    fn pass() -> Certificate {
        Certificate::leaf("x", Verdict::Pass, Evidence::Computed { payload: json!({}) }, String::new())
    }

    #[test]
    fn psl2_8_two_part_holds() {
        let e = make_psl2_char2(3).unwrap().entry;
        let r = theorem_main_report(&e, &pass(), None);
        assert_eq!(r.value["conditions"]["a_two_part"]["status"], "satisfied");
        assert_eq!(r.value["conditions"]["c_very_simple"]["status"], "machine-verified");
    }

    #[test]
    fn exceptional_branches() {
        let tables = Tables::parse("[schur_multiplier]\nSz_8, 4, \"cited\"\nL4_3, 2, \"cited\"\n").unwrap();
        let sz = make_suzuki(1).unwrap().entry;
        let r = theorem_main_report(&sz, &pass(), Some(&tables));
        assert_eq!(r.value["conditions"]["b_schur_multiplier"]["status"], "exceptional case");
        let l43 = make_psl_m_q(4, 3).unwrap().entry;
        let r = theorem_main_report(&l43, &pass(), Some(&tables));
        assert_eq!(r.value["conditions"]["a_two_part"]["status"], "exceptional case");
    }
}
