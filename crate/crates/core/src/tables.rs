//! Cited group data consumed by TABLE evidence.
//!
//! The file is line oriented. `[section]` headers open a section, `#`
//! starts a comment, and every record is `group_id, field..., "citation"`.
//! Known sections:
//!
//! * `min_proper_subgroup_index`: `group_id, index, "citation"`
//! * `no_abs_irred_dims_char2`: `group_id, d1 d2 ..., "citation"`, dimensions
//!   in which the group has no absolutely irreducible module over GF(2)-bar
//! * `simple`: `group_id, "citation"`
//! * `schur_multiplier`: `group_id, order, "citation"`

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRecord {
    pub section: String,
    pub group_id: String,
    pub fields: Vec<String>,
    pub citation: String,
}

impl TableRecord {
    pub fn to_value(&self) -> Value {
        json!({
            "section": self.section,
            "group_id": self.group_id,
            "fields": self.fields,
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Tables {
    records: Vec<TableRecord>,
}

fn split_fields(line: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for c in line.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                cur.push(c);
            }
            ',' if !quoted => {
                out.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    if quoted {
        return Err(Error::Parse(format!("unterminated quote in {line:?}")));
    }
    out.push(cur.trim().to_string());
    Ok(out)
}

impl Tables {
    pub fn parse(text: &str) -> Result<Self> {
        let mut records = Vec::new();
        let mut section: Option<String> = None;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = Some(name.trim().to_string());
                continue;
            }
            let section = section
                .clone()
                .ok_or_else(|| Error::Parse(format!("line {}: record outside a section", no + 1)))?;
            let mut fields = split_fields(line)?;
            if fields.len() < 2 {
                return Err(Error::Parse(format!("line {}: expected id and citation", no + 1)));
            }
            let citation = fields.pop().unwrap();
            let citation = citation
                .strip_prefix('"')
                .and_then(|c| c.strip_suffix('"'))
                .ok_or_else(|| Error::Parse(format!("line {}: citation must be quoted", no + 1)))?
                .to_string();
            let group_id = fields.remove(0);
            records.push(TableRecord { section, group_id, fields, citation });
        }
        let tables = Self { records };
        tables.validate()?;
        Ok(tables)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn validate(&self) -> Result<()> {
        for r in &self.records {
            let ok = match r.section.as_str() {
                "min_proper_subgroup_index" | "schur_multiplier" => {
                    r.fields.len() == 1 && r.fields[0].parse::<u64>().is_ok()
                }
                "no_abs_irred_dims_char2" => {
                    r.fields.len() == 1
                        && r.fields[0].split_whitespace().all(|d| d.parse::<u64>().is_ok())
                }
                "simple" => r.fields.is_empty(),
                _ => true,
            };
            if !ok {
                return Err(Error::Parse(format!(
                    "malformed {} record for {}",
                    r.section, r.group_id
                )));
            }
        }
        Ok(())
    }

    pub fn records(&self) -> &[TableRecord] {
        &self.records
    }

    pub fn find(&self, section: &str, group_id: &str) -> Option<&TableRecord> {
        self.records.iter().find(|r| r.section == section && r.group_id == group_id)
    }

    pub fn min_proper_subgroup_index(&self, group_id: &str) -> Option<(u64, &TableRecord)> {
        let r = self.find("min_proper_subgroup_index", group_id)?;
        Some((r.fields[0].parse().ok()?, r))
    }

    pub fn excluded_abs_irred_dims(&self, group_id: &str) -> Option<(Vec<u64>, &TableRecord)> {
        let r = self.find("no_abs_irred_dims_char2", group_id)?;
        let dims = r.fields[0].split_whitespace().filter_map(|d| d.parse().ok()).collect();
        Some((dims, r))
    }

    pub fn simple(&self, group_id: &str) -> Option<&TableRecord> {
        self.find("simple", group_id)
    }

    pub fn schur_multiplier(&self, group_id: &str) -> Option<(u64, &TableRecord)> {
        let r = self.find("schur_multiplier", group_id)?;
        Some((r.fields[0].parse().ok()?, r))
    }

    /// Distinct citations in file order.
    pub fn citations(&self) -> Vec<String> {
        let mut seen = BTreeMap::new();
        for (i, r) in self.records.iter().enumerate() {
            seen.entry(r.citation.clone()).or_insert(i);
        }
        let mut v: Vec<(usize, String)> = seen.into_iter().map(|(c, i)| (i, c)).collect();
        v.sort();
        v.into_iter().map(|(_, c)| c).collect()
    }
}
