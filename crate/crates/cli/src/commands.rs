use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};
use workbench::certificate::{Certificate, Evidence, Verdict};
use workbench::error::{Error, Result};
use workbench::frobenius_sampler::{
    consistency_verdict, group_type_distribution, sample_specializations, symmetric_type_distribution,
    ParametricPoly, TypeDistribution,
};
use workbench::group_catalog::{catalog_ids, lookup, Family};
use workbench::mod_rep::{
    build_qb, endo_ring_dim, hom_dim_cyclic, irreducible_census, meataxe_is_irreducible, permutation_module,
    MeatAxeOutcome,
};
use workbench::perm_groups::{conjugacy_classes, group_fingerprint, SUBGROUP_CAP};
use workbench::tables::Tables;
use workbench::textfmt::{from_text, to_text};
use workbench::very_simple::{certify_very_simple, theorem_main_report, Backends, MainReport, CENSUS_GROUP_CAP};

use crate::config::SamplerConfig;
use crate::manifest::Manifest;
use crate::{ModuleKind, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_NOT_QUALIFIED, EXIT_OK};

/// Largest module dimension whose endomorphism ring is solved directly.
const SYLVESTER_DIM: usize = 90;

fn io_err(e: std::io::Error) -> Error {
    Error::Parse(format!("i/o: {e}"))
}

fn slug(id: &str) -> String {
    id.replace([':', ','], "_")
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_err)?;
    }
    std::fs::write(path, text).map_err(io_err)
}

pub fn catalog(family: Option<&str>, m: Option<u64>, q: Option<u64>, out: &mut dyn Write) -> Result<u8> {
    let ids: Vec<String> = match family {
        None => catalog_ids().into_iter().map(String::from).collect(),
        Some(tag) => {
            let fam = Family::from_tag(tag).ok_or_else(|| Error::Parse(format!("unknown family {tag:?}")))?;
            match (m, q) {
                (Some(m), Some(q)) if fam == Family::PslMq => vec![format!("{tag}:{m},{q}")],
                (Some(_), None) if fam == Family::PslMq => {
                    return Err(Error::Parse("family lmq needs both --m and --q".into()))
                }
                (Some(m), _) => vec![format!("{tag}:{m}")],
                (None, _) => catalog_ids()
                    .into_iter()
                    .filter(|id| id.split(':').next().and_then(Family::from_tag) == Some(fam))
                    .map(String::from)
                    .collect(),
            }
        }
    };
    let mut rows = Vec::new();
    for id in ids {
        rows.push(lookup(&id)?.entry.to_value());
    }
    write!(out, "{}", to_text(&json!({ "entries": rows }))).map_err(io_err)?;
    Ok(EXIT_OK)
}

pub fn build(id: &str, kind: ModuleKind, path: Option<&Path>, seed: u64, out: &mut dyn Write) -> Result<u8> {
    let cg = lookup(id)?;
    let g = Arc::new(cg.group()?.clone());
    let module = match kind {
        ModuleKind::Heart => build_qb(&g)?,
        ModuleKind::Permutation => permutation_module(&g)?,
    };
    module.validate(20, seed)?;
    let irreducible = match meataxe_is_irreducible(&module, seed) {
        Ok(MeatAxeOutcome::Irreducible(_)) => json!(true),
        Ok(MeatAxeOutcome::Reducible(_)) => json!(false),
        Err(Error::Undecided(_)) => json!("undecided"),
        Err(e) => return Err(e),
    };
    let endo = if module.dim() <= SYLVESTER_DIM {
        json!(endo_ring_dim(&module)?)
    } else if irreducible == json!(true) {
        let mut v = vec![0u64; module.dim().div_ceil(64)];
        v[0] = 1;
        json!(hom_dim_cyclic(&module, &v, &module)?)
    } else {
        Value::Null
    };
    if let Some(p) = path {
        write_file(p, &format!("group {id}\n{}", module.dump()))?;
    }
    let summary = json!({
        "group": id,
        "module": module.label(),
        "dim": module.dim(),
        "faithful": module.is_faithful()?,
        "irreducible": irreducible,
        "endo_dim": endo,
        "seed": seed,
    });
    write!(out, "{}", to_text(&summary)).map_err(io_err)?;
    Ok(EXIT_OK)
}

pub fn census(id: &str, dim_cap: usize, seed: u64, path: Option<&Path>, out: &mut dyn Write) -> Result<u8> {
    let start = Instant::now();
    let cg = lookup(id)?;
    let g = Arc::new(cg.group()?.clone());
    if g.order_u64().is_none_or(|o| o > CENSUS_GROUP_CAP) {
        writeln!(out, "group order exceeds the census cap {CENSUS_GROUP_CAP}").map_err(io_err)?;
        return Ok(EXIT_INCONCLUSIVE);
    }
    let classes = conjugacy_classes(&g)?;
    let result = irreducible_census(&g, &classes, dim_cap, seed)?;
    let mut manifest = Manifest::new("census", seed);
    manifest.param("group_id", json!(id)).cap("dim_cap", json!(dim_cap)).input("group", &group_fingerprint(&g));
    manifest.wall_time_ms = start.elapsed().as_millis();
    let report = to_text(&json!({ "manifest": manifest.to_value(), "census": result.to_value() }));
    match path {
        Some(p) => write_file(p, &report)?,
        None => write!(out, "{report}").map_err(io_err)?,
    }
    Ok(if result.complete { EXIT_OK } else { EXIT_INCONCLUSIVE })
}

/// Inputs of one certification run; recorded in the certificate file so
/// that `verify` can replay it.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifyParams {
    pub group_id: String,
    pub tables: Option<PathBuf>,
    pub computed: bool,
    pub dim_cap: usize,
    pub class_cap: u64,
    pub seed: u64,
}

impl CertifyParams {
    fn from_manifest(m: &Value) -> Result<Self> {
        let p = &m["parameters"];
        let bad = || Error::Parse("certificate manifest lacks certify parameters".into());
        Ok(Self {
            group_id: p["group_id"].as_str().ok_or_else(bad)?.to_string(),
            tables: p["tables"].as_str().map(PathBuf::from),
            computed: p["computed"].as_bool().ok_or_else(bad)?,
            dim_cap: m["caps"]["dim_cap"].as_u64().ok_or_else(bad)? as usize,
            class_cap: m["caps"]["class_cap"].as_u64().ok_or_else(bad)?,
            seed: m["seeds"]["seed"].as_u64().ok_or_else(bad)?,
        })
    }
}

/// Builds the heart module of the group and certifies it. Failures past
/// input resolution (caps, undecided MeatAxe runs) become an INCONCLUSIVE
/// certificate rather than an error.
pub fn certify_pipeline(p: &CertifyParams) -> Result<(Certificate, MainReport, Manifest)> {
    let start = Instant::now();
    let mut cg = lookup(&p.group_id)?;
    let tables = p.tables.as_deref().map(Tables::load).transpose()?;
    let mut manifest = Manifest::new("certify", p.seed);
    manifest
        .param("group_id", json!(p.group_id))
        .param("tables", json!(p.tables.as_ref().map(|t| t.display().to_string())))
        .param("computed", json!(p.computed))
        .cap("dim_cap", json!(p.dim_cap))
        .cap("class_cap", json!(p.class_cap))
        .cap("subgroup_cap", json!(SUBGROUP_CAP))
        .cap("census_group_cap", json!(CENSUS_GROUP_CAP));
    if let Some(t) = &tables {
        manifest.table_citations = t.citations();
    }
    let cert = match cg.group.take() {
        None => Certificate::leaf(
            format!("{} is outside the computational range", cg.entry.name),
            Verdict::Inconclusive,
            Evidence::None,
            workbench::certificate::digest(&cg.entry.id),
        ),
        Some(group) => {
            let g = Arc::new(group);
            manifest.input("group", &group_fingerprint(&g));
            let run = || -> Result<Certificate> {
                let q = build_qb(&g)?;
                let small = g.order_u64().is_some_and(|o| o <= p.class_cap);
                let classes = if p.computed && small { Some(conjugacy_classes(&g)?) } else { None };
                let backends = Backends {
                    computed: p.computed,
                    tables: tables.as_ref(),
                    group_id: Some(&cg.entry.table_id),
                    census: None,
                    dim_cap: p.dim_cap,
                    seed: p.seed,
                };
                certify_very_simple(&g, &q, classes.as_ref(), &backends)
            };
            run().unwrap_or_else(|e| {
                Certificate::leaf(
                    format!("certification stopped: {e}"),
                    Verdict::Inconclusive,
                    Evidence::None,
                    workbench::certificate::digest(&group_fingerprint(&g)),
                )
            })
        }
    };
    let report = theorem_main_report(&cg.entry, &cert, tables.as_ref());
    manifest.wall_time_ms = start.elapsed().as_millis();
    Ok((cert, report, manifest))
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => EXIT_OK,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        Verdict::Fail => EXIT_FAIL,
    }
}

pub fn certify(p: &CertifyParams, out_dir: &Path, out: &mut dyn Write) -> Result<u8> {
    let (cert, report, manifest) = certify_pipeline(p)?;
    let m = manifest.to_value();
    let cert_path = out_dir.join(format!("{}.certificate.txt", slug(&p.group_id)));
    let report_path = out_dir.join(format!("{}.report.txt", slug(&p.group_id)));
    write_file(&cert_path, &to_text(&json!({ "manifest": m, "certificate": cert.to_value() })))?;
    write_file(&report_path, &to_text(&json!({ "manifest": m, "report": report.value })))?;
    writeln!(
        out,
        "verdict: {:?}\ncertificate: {}\nreport: {}",
        cert.verdict,
        cert_path.display(),
        report_path.display()
    )
    .map_err(io_err)?;
    Ok(verdict_code(cert.verdict))
}

pub fn verify(path: &Path, tables: Option<&Path>, out: &mut dyn Write) -> Result<u8> {
    let text = std::fs::read_to_string(path).map_err(io_err)?;
    let v = from_text(&text)?;
    let recorded = Certificate::from_value(v["certificate"].clone())?;
    let mut params = CertifyParams::from_manifest(&v["manifest"])?;
    if let Some(t) = tables {
        params.tables = Some(t.to_path_buf());
    }
    if let Err(e) = recorded.check_invariants() {
        writeln!(out, "invariant violation: {e}").map_err(io_err)?;
        return Ok(EXIT_FAIL);
    }
    let (fresh, _, _) = certify_pipeline(&params)?;
    if fresh.to_value() == recorded.to_value() {
        let computed = recorded.walk().iter().filter(|c| matches!(c.evidence, Evidence::Computed { .. })).count();
        writeln!(out, "replayed: {computed} computed leaves identical; verdict {:?}", recorded.verdict)
            .map_err(io_err)?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "replay differs from the recorded certificate").map_err(io_err)?;
        Ok(EXIT_FAIL)
    }
}

/// Cycle-type distribution of a catalog group, in closed form for the
/// symmetric and alternating groups.
pub fn candidate_distribution(id: &str) -> Result<TypeDistribution> {
    if let Some((tag, n)) = id.split_once(':') {
        if matches!(tag, "sym" | "alt") {
            let n: u32 = n.parse().map_err(|_| Error::Parse(format!("bad degree in {id:?}")))?;
            return Ok(symmetric_type_distribution(n, tag == "alt"));
        }
    }
    let cg = lookup(id)?;
    Ok(group_type_distribution(&conjugacy_classes(cg.group()?)?))
}

pub fn sample(config: &str, seed: Option<u64>, path: Option<&Path>, out: &mut dyn Write) -> Result<u8> {
    let start = Instant::now();
    let (cfg, text) = SamplerConfig::resolve(config)?;
    let seed = seed.unwrap_or(cfg.seed);
    let f = ParametricPoly::parse(&cfg.polynomial, cfg.p)?;
    let empirical = sample_specializations(&f, &cfg.field_sizes, cfg.budget, seed)?;
    let candidates = cfg
        .candidates
        .iter()
        .map(|id| Ok((id.clone(), candidate_distribution(id)?)))
        .collect::<Result<Vec<_>>>()?;
    let verdict = consistency_verdict(&empirical, &candidates, cfg.tolerance)?;
    let qualified = verdict.row(&cfg.expected).is_some_and(|r| r.qualified);
    let mut manifest = Manifest::new("sample", seed);
    manifest
        .param("config", json!(cfg.name))
        .param("polynomial", json!(cfg.polynomial))
        .param("p", json!(cfg.p))
        .param("field_sizes", json!(cfg.field_sizes))
        .param("budget", json!(cfg.budget))
        .param("expected", json!(cfg.expected))
        .input("config", &text);
    manifest.wall_time_ms = start.elapsed().as_millis();
    let report = to_text(&json!({
        "manifest": manifest.to_value(),
        "empirical": empirical.to_value(),
        "consistency": verdict.to_value(),
        "expected_qualified": qualified,
    }));
    match path {
        Some(p) => write_file(p, &report)?,
        None => write!(out, "{report}").map_err(io_err)?,
    }
    Ok(if qualified { EXIT_OK } else { EXIT_NOT_QUALIFIED })
}
