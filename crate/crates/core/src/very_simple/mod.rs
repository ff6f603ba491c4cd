//! Sufficient-criterion certification that an absolutely irreducible
//! module is very simple: no proper subgroup of index dividing N, and for
//! every factorization N = ab no absolutely irreducible module of
//! dimension a or of dimension b.

mod report;

use std::sync::Arc;

use num_bigint::BigUint;
use serde_json::json;

pub use report::{theorem_main_report, MainReport};

use crate::certificate::{digest, Certificate, Evidence, Verdict};
use crate::error::{Error, Result};
use crate::mod_rep::{
    endo_ring_dim, irreducible_census, meataxe_is_irreducible, CensusResult, GModule, MeatAxeOutcome,
    DEFAULT_DIM_CAP,
};
use crate::perm_groups::{group_fingerprint, subgroup_index_audit, AuditBackend, ConjClassTable, PermGroup};
use crate::tables::Tables;

/// Largest group order for which the census is attempted.
pub const CENSUS_GROUP_CAP: u64 = 100_000;

/// Unordered factor pairs `N = ab` with `1 < a ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationList {
    pub n: u64,
    pub pairs: Vec<(u64, u64)>,
}

pub fn factorizations(n: u64) -> FactorizationList {
    let pairs = (2..).take_while(|a| a * a <= n).filter(|a| n % a == 0).map(|a| (a, n / a)).collect();
    FactorizationList { n, pairs }
}

/// `|GL_d(F_2)| = ∏_{i<d} (2^d - 2^i)`.
pub fn gl_order(d: u32) -> BigUint {
    let two_d = BigUint::from(1u32) << d;
    (0..d).map(|i| &two_d - (BigUint::from(1u32) << i)).product()
}

/// Simplicity by class closures: every minimal normal subgroup contains a
/// nontrivial class, so the group is simple exactly when each nontrivial
/// class has the whole group as normal closure.
pub fn is_simple_by_class_closures(group: &PermGroup, classes: &ConjClassTable) -> bool {
    let order = group.order();
    order > BigUint::from(1u32)
        && classes
            .classes
            .iter()
            .filter(|c| !c.rep.is_identity())
            .all(|c| group.normal_closure(std::slice::from_ref(&c.rep)).order() == order)
}

/// Evidence sources for the certification engine.
#[derive(Clone, Debug)]
pub struct Backends<'a> {
    /// Allow exhaustive computations (subgroup search, class closures,
    /// census) within their caps.
    pub computed: bool,
    pub tables: Option<&'a Tables>,
    /// Key of the group in the table file.
    pub group_id: Option<&'a str>,
    /// A census computed earlier, reused instead of recomputing.
    pub census: Option<&'a CensusResult>,
    pub dim_cap: usize,
    pub seed: u64,
}

impl Default for Backends<'_> {
    fn default() -> Self {
        Self {
            computed: true,
            tables: None,
            group_id: None,
            census: None,
            dim_cap: DEFAULT_DIM_CAP,
            seed: crate::DEFAULT_SEED,
        }
    }
}

fn module_digest(group: &PermGroup, m: &GModule) -> String {
    digest(&format!("{};{}", group_fingerprint(group), m.dump()))
}

/// Certificate that `m` (absolutely irreducible, dimension N) satisfies
/// both conditions of the very-simplicity criterion. PASS certifies very
/// simple; the engine never concludes the opposite. A subgroup of index
/// dividing N yields FAIL of the criterion with that subgroup as witness.
pub fn certify_very_simple(
    group: &Arc<PermGroup>,
    m: &GModule,
    classes: Option<&ConjClassTable>,
    backends: &Backends,
) -> Result<Certificate> {
    let n = m.dim() as u64;
    let inputs = module_digest(group, m);
    let endo = endo_ring_dim(m)?;
    let witness = match meataxe_is_irreducible(m, backends.seed)? {
        MeatAxeOutcome::Irreducible(w) => w,
        MeatAxeOutcome::Reducible(_) => return Err(Error::Precondition("module is reducible".into())),
    };
    if endo != 1 {
        return Err(Error::Precondition(format!("endomorphism ring has dimension {endo}, not 1")));
    }
    let abs_irred = Certificate::leaf(
        format!("module of dimension {n} is absolutely irreducible"),
        Verdict::Pass,
        Evidence::Computed {
            payload: json!({ "method": "meataxe+endomorphism_ring", "seed": backends.seed, "endo_dim": endo, "witness": witness.to_value() }),
        },
        inputs.clone(),
    );

    let audit = subgroup_index_audit(
        group,
        n,
        AuditBackend { computed: backends.computed, tables: backends.tables, group_id: backends.group_id },
    );

    let group_order = group.order();
    let simplicity = simplicity_leaf(group, classes, backends);
    let owned_census;
    let census = match backends.census {
        Some(c) => Some(c),
        None => {
            let small = group.order_u64().is_some_and(|o| o <= CENSUS_GROUP_CAP);
            match classes {
                Some(cl) if backends.computed && small && !factorizations(n).pairs.is_empty() => {
                    owned_census = irreducible_census(group, cl, backends.dim_cap, backends.seed)?;
                    Some(&owned_census)
                }
                _ => None,
            }
        }
    };

    let mut pair_nodes = Vec::new();
    for (a, b) in factorizations(n).pairs {
        let leaves: Vec<Certificate> = [a, b]
            .into_iter()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|d| dimension_leaf(d, &group_order, simplicity.as_ref(), census, backends, &inputs))
            .collect();
        let refuted: Vec<Certificate> = leaves.iter().filter(|c| c.verdict == Verdict::Pass).cloned().collect();
        let children = if refuted.is_empty() { leaves } else { refuted };
        pair_nodes.push(Certificate::node(
            format!("factorization {a}*{b}: no absolutely irreducible module of dimension {a} or {b}"),
            Evidence::None,
            children,
            inputs.clone(),
        ));
    }
    let dims_node = Certificate::node(
        format!("every factorization of {n} has a dimension without absolutely irreducible modules"),
        Evidence::None,
        pair_nodes,
        inputs.clone(),
    );
    let mut children = vec![abs_irred, audit];
    if !dims_node.children.is_empty() {
        children.push(dims_node);
    } else {
        children.push(Certificate::leaf(
            format!("{n} has no factorization into two factors greater than 1"),
            Verdict::Pass,
            Evidence::Computed { payload: json!({ "method": "divisor_enumeration", "N": n }) },
            inputs.clone(),
        ));
    }
    Ok(Certificate::node(
        format!("module of dimension {n} is very simple"),
        Evidence::None,
        children,
        inputs,
    ))
}

/// Simplicity of the group, computed or cited; `None` when unavailable.
fn simplicity_leaf(group: &PermGroup, classes: Option<&ConjClassTable>, backends: &Backends) -> Option<Certificate> {
    let claim = "group is simple";
    let inputs = digest(&group_fingerprint(group));
    if backends.computed {
        if let Some(cl) = classes {
            let simple = is_simple_by_class_closures(group, cl);
            let verdict = if simple { Verdict::Pass } else { Verdict::Fail };
            let payload = json!({ "method": "class_normal_closures", "classes": cl.classes.len() });
            return Some(Certificate::leaf(claim, verdict, Evidence::Computed { payload }, inputs));
        }
    }
    let (tables, id) = (backends.tables?, backends.group_id?);
    let rec = tables.simple(id)?;
    Some(Certificate::leaf(
        claim,
        Verdict::Pass,
        Evidence::Table { citation: rec.citation.clone(), row: rec.to_value() },
        inputs,
    ))
}

fn dimension_leaf(
    d: u64,
    group_order: &BigUint,
    simplicity: Option<&Certificate>,
    census: Option<&CensusResult>,
    backends: &Backends,
    inputs: &str,
) -> Certificate {
    let claim = format!("no absolutely irreducible module of dimension {d}");
    // embedding bound: a nontrivial absolutely irreducible module of a
    // simple group is faithful, so |G| ≤ |GL_d(F_2)|
    if let Some(simple) = simplicity.filter(|s| s.verdict == Verdict::Pass) {
        let gl = gl_order(d as u32);
        if &gl < group_order {
            let bound = Certificate::leaf(
                format!("|GL_{d}(F_2)| < |G|"),
                Verdict::Pass,
                Evidence::Computed {
                    payload: json!({ "method": "embedding_bound", "gl_order": gl.to_string(), "group_order": group_order.to_string() }),
                },
                inputs.to_string(),
            );
            return Certificate::node(claim, Evidence::None, vec![simple.clone(), bound], inputs.to_string());
        }
    }
    if let Some(c) = census.filter(|c| c.complete) {
        if !c.absolutely_irreducible_dims.contains(&(d as usize)) {
            return Certificate::leaf(
                claim,
                Verdict::Pass,
                Evidence::Computed {
                    payload: json!({
                        "method": "irreducible_census",
                        "seed": backends.seed,
                        "dim_cap": backends.dim_cap,
                        "census": c.to_value(),
                    }),
                },
                inputs.to_string(),
            );
        }
    }
    if let (Some(tables), Some(id)) = (backends.tables, backends.group_id) {
        if let Some((dims, rec)) = tables.excluded_abs_irred_dims(id) {
            if dims.contains(&d) {
                return Certificate::leaf(
                    claim,
                    Verdict::Pass,
                    Evidence::Table { citation: rec.citation.clone(), row: rec.to_value() },
                    inputs.to_string(),
                );
            }
        }
    }
    Certificate::leaf(format!("{claim} (no applicable backend)"), Verdict::Inconclusive, Evidence::None, inputs.to_string())
}
