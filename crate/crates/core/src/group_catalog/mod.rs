//! Constructors for the doubly transitive families, each verified against
//! its order formula and transitivity before it is returned.

mod linear;
mod psl2;
mod suzuki;
mod symalt;
mod unitary;

use num_bigint::BigUint;
use serde_json::{json, Value};

pub use linear::make_psl_m_q;
pub use psl2::make_psl2_char2;
pub use suzuki::make_suzuki;
pub use symalt::make_sym_alt;
pub use unitary::make_psu3_char2;

use crate::error::{Error, Result};
use crate::perm_groups::{PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Sym,
    Alt,
    Psl2,
    Sz,
    Psu3,
    PslMq,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Sym => "sym",
            Family::Alt => "alt",
            Family::Psl2 => "psl2",
            Family::Sz => "sz",
            Family::Psu3 => "psu3",
            Family::PslMq => "lmq",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "sym" => Family::Sym,
            "alt" => Family::Alt,
            "psl2" => Family::Psl2,
            "sz" => Family::Sz,
            "psu3" => Family::Psu3,
            "lmq" | "l4q" => Family::PslMq,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: Family,
    /// Family parameter (m, or n for Sym/Alt).
    pub m: u32,
    /// Field size where applicable, otherwise 0.
    pub q: u64,
    /// Catalog id such as `psl2:3`.
    pub id: String,
    /// Key used in table files, such as `L2_8`.
    pub table_id: String,
    pub name: String,
    pub degree: u64,
    pub expected_order: BigUint,
    pub expected_transitivity: u32,
    /// Genus of a hyperelliptic curve whose roots form the point set:
    /// (n-1)/2 for odd n, (n-2)/2 for even n.
    pub genus: u64,
    /// False for entries that exist only as metadata.
    pub computational: bool,
}

impl CatalogEntry {
    #[allow(clippy::too_many_arguments)]
    fn new(
        family: Family,
        m: u32,
        q: u64,
        id: String,
        table_id: String,
        name: String,
        degree: u64,
        expected_order: BigUint,
        expected_transitivity: u32,
        computational: bool,
    ) -> Self {
        let genus = if degree % 2 == 1 { (degree - 1) / 2 } else { degree.saturating_sub(2) / 2 };
        Self {
            family,
            m,
            q,
            id,
            table_id,
            name,
            degree,
            expected_order,
            expected_transitivity,
            genus,
            computational,
        }
    }

    /// Power of 2 dividing the group order.
    pub fn two_part(&self) -> BigUint {
        let mut o = self.expected_order.clone();
        let mut t = BigUint::from(1u32);
        let two = BigUint::from(2u32);
        while &o % &two == BigUint::from(0u32) {
            o /= &two;
            t *= &two;
        }
        t
    }

    pub fn to_value(&self) -> Value {
        json!({
            "id": self.id,
            "family": self.family.tag(),
            "name": self.name,
            "m": self.m,
            "q": self.q,
            "degree": self.degree,
            "order": self.expected_order.to_string(),
            "genus": self.genus,
            "computational": self.computational,
        })
    }
}

/// A catalog entry with its group, when the group is in computational range.
#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub entry: CatalogEntry,
    pub group: Option<PermGroup>,
}

impl CatalogGroup {
    /// The group, or a cap error for metadata-only entries.
    pub fn group(&self) -> Result<&PermGroup> {
        self.group.as_ref().ok_or_else(|| {
            Error::CapExceeded(format!("{} is outside the computational range", self.entry.name))
        })
    }
}

fn verify(entry: CatalogEntry, gens: Vec<Permutation>) -> Result<CatalogGroup> {
    let group = PermGroup::new(gens)?;
    if group.degree() as u64 != entry.degree {
        return Err(Error::Construction(format!("{}: degree {} not {}", entry.name, group.degree(), entry.degree)));
    }
    if group.order() != entry.expected_order {
        return Err(Error::Construction(format!(
            "{}: order {} not {}",
            entry.name,
            group.order(),
            entry.expected_order
        )));
    }
    let t = group.transitivity_degree();
    if t != entry.expected_transitivity {
        return Err(Error::Construction(format!("{}: transitivity {t} not {}", entry.name, entry.expected_transitivity)));
    }
    Ok(CatalogGroup { entry, group: Some(group) })
}

fn parse_params(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad catalog parameter {t:?}"))))
        .collect()
}

/// Builds the entry named by a catalog id: `psl2:m`, `sz:m`, `psu3:m`,
/// `lmq:m,q` (alias `l4q:m,q`), `sym:n`, `alt:n`.
pub fn lookup(id: &str) -> Result<CatalogGroup> {
    let (tag, params) = id
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("catalog id {id:?} lacks ':'")))?;
    let family = Family::from_tag(tag).ok_or_else(|| Error::Parse(format!("unknown family {tag:?}")))?;
    let p = parse_params(params)?;
    let one = |p: &[u64]| -> Result<u64> {
        match p {
            [x] => Ok(*x),
            _ => Err(Error::Parse(format!("{tag} takes one parameter"))),
        }
    };
    let small = |x: u64| u32::try_from(x).map_err(|_| Error::Range(format!("parameter {x} too large")));
    match family {
        Family::Psl2 => make_psl2_char2(small(one(&p)?)?),
        Family::Sz => make_suzuki(small(one(&p)?)?),
        Family::Psu3 => make_psu3_char2(small(one(&p)?)?),
        Family::Sym => make_sym_alt(one(&p)? as usize, false),
        Family::Alt => make_sym_alt(one(&p)? as usize, true),
        Family::PslMq => match p[..] {
            [m, q] => make_psl_m_q(small(m)?, q),
            _ => Err(Error::Parse("lmq takes two parameters m,q".into())),
        },
    }
}

/// The series listing: every constructible entry plus metadata rows for
/// the first out-of-range members of each family.
pub fn catalog_ids() -> Vec<&'static str> {
    vec![
        "psl2:2", "psl2:3", "psl2:4", "psl2:5", "psl2:6", "sz:1", "sz:2", "psu3:2", "psu3:3",
        "lmq:3,3", "lmq:4,3", "lmq:3,5",
    ]
}
