//! Existence of subgroups of prescribed order, for the index audit.
//!
//! A subgroup H of order s contains a Sylow q-subgroup of H, and that
//! subgroup is conjugate into a fixed Sylow q-subgroup P of G. So, up to
//! conjugacy, H contains one of the subgroups of P of order q^v_q(s) (just
//! P itself when q does not divide the index). Starting from each such
//! anchor, the search walks up through subgroups whose order divides s by
//! adjoining one double-coset representative at a time; every subgroup of
//! order s containing the anchor is reached this way.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde_json::json;

use super::chain::StabChain;
use super::perm::Permutation;
use super::PermGroup;
use crate::certificate::{digest, Certificate, Evidence, Verdict};
use crate::error::{Error, Result};
use crate::tables::Tables;

/// Largest group for which subgroups are searched exhaustively.
pub const SUBGROUP_CAP: u64 = 100_000;

/// Groups up to this order also get their minimal proper index recorded.
const MIN_INDEX_RECORD_CAP: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupWitness {
    pub generators: Vec<Permutation>,
    pub order: u64,
    pub index: u64,
}

impl SubgroupWitness {
    /// Rebuilds the subgroup and checks membership and index.
    pub fn verify(&self, group: &PermGroup) -> bool {
        let h = group.subgroup(self.generators.clone());
        let n = group.order_u64().unwrap_or(0);
        self.generators.iter().all(|g| group.contains(g))
            && h.order_u64() == Some(self.order)
            && self.order * self.index == n
    }

    pub fn to_value(&self) -> serde_json::Value {
        json!({
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "order": self.order,
            "index": self.index,
        })
    }
}

/// Which evidence sources the audit may use.
#[derive(Clone, Copy, Debug)]
pub struct AuditBackend<'a> {
    pub computed: bool,
    pub tables: Option<&'a Tables>,
    /// Row key in the tables, e.g. `L4_3`.
    pub group_id: Option<&'a str>,
}

impl AuditBackend<'_> {
    pub fn computed_only() -> Self {
        Self { computed: true, tables: None, group_id: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditOutcome {
    /// No proper subgroup has index dividing N.
    None,
    Found(SubgroupWitness),
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

fn is_power_of(mut x: u64, q: u64) -> bool {
    while x % q == 0 {
        x /= q;
    }
    x == 1
}

/// Search state for one group.
struct Search<'a> {
    group: &'a PermGroup,
    order: u64,
    base: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(group: &'a PermGroup) -> Result<Self> {
        let order = group
            .order_u64()
            .filter(|&n| n <= SUBGROUP_CAP)
            .ok_or_else(|| Error::CapExceeded(format!("subgroup search needs |G| <= {SUBGROUP_CAP}")))?;
        Ok(Self { group, order, base: group.chain().base() })
    }

    fn chain(&self, gens: &[Permutation], bound: Option<u64>) -> Option<StabChain> {
        StabChain::build_bounded(self.group.degree(), gens, &self.base, bound)
    }

    /// Ranks (in G) of all elements of the subgroup with this chain.
    fn element_key(&self, chain: &StabChain) -> Vec<u32> {
        let n = chain.order_u64().expect("bounded subgroup");
        let mut key: Vec<u32> = (0..n)
            .map(|r| self.group.rank(&chain.unrank(r)).expect("subgroup element") as u32)
            .collect();
        key.sort_unstable();
        key
    }

    /// A Sylow q-subgroup, grown one normalizing q-element at a time.
    fn sylow(&self, q: u64) -> (Vec<Permutation>, StabChain) {
        let target = factorize(self.order)
            .into_iter()
            .find(|&(p, _)| p == q)
            .map_or(1, |(p, e)| p.pow(e));
        let mut gens: Vec<Permutation> = Vec::new();
        let mut chain = self.chain(&gens, None).expect("unbounded");
        while chain.order_u64().unwrap() < target {
            let next = (0..self.order).map(|r| self.group.unrank(r)).find(|x| {
                is_power_of(x.order(), q)
                    && !chain.contains(x)
                    && gens.iter().all(|k| chain.contains(&k.conjugate_by(x)))
            });
            let x = next.expect("a p-subgroup below Sylow order has a proper p-overgroup in its normalizer");
            gens.push(x);
            chain = self.chain(&gens, None).expect("unbounded");
        }
        (gens, chain)
    }

    /// Subgroups of the group generated by `gens` having order `target`.
    fn subgroups_of_order(&self, gens: &[Permutation], target: u64) -> Vec<Vec<Permutation>> {
        let whole = self.chain(gens, None).expect("unbounded");
        let elements: Vec<Permutation> = (0..whole.order_u64().unwrap()).map(|r| whole.unrank(r)).collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut queue: VecDeque<Vec<Permutation>> = VecDeque::from([Vec::new()]);
        seen.insert(vec![0u32]);
        while let Some(hg) = queue.pop_front() {
            let h = self.chain(&hg, None).expect("unbounded");
            let ho = h.order_u64().unwrap();
            if ho == target {
                out.push(hg);
                continue;
            }
            for x in &elements {
                if h.contains(x) {
                    continue;
                }
                let mut ng = hg.clone();
                ng.push(x.clone());
                let Some(l) = self.chain(&ng, Some(target)) else { continue };
                if target % l.order_u64().unwrap() != 0 {
                    continue;
                }
                if seen.insert(self.element_key(&l)) {
                    queue.push_back(ng);
                }
            }
        }
        out
    }

    /// Representatives of the double cosets `K g K` other than `K` itself.
    fn double_coset_reps(&self, k_gens: &[Permutation], k: &StabChain) -> Vec<Permutation> {
        let mut visited = vec![false; self.order as usize];
        let mut reps = Vec::new();
        for r in 0..self.order {
            if visited[r as usize] {
                continue;
            }
            let g = self.group.unrank(r);
            let inside = k.contains(&g);
            visited[r as usize] = true;
            let mut stack = vec![g.clone()];
            while let Some(x) = stack.pop() {
                for s in k_gens {
                    for y in [s.mul(&x), x.mul(s)] {
                        let ry = self.group.rank(&y).expect("member") as usize;
                        if !visited[ry] {
                            visited[ry] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            if !inside {
                reps.push(g);
            }
        }
        reps
    }

    /// Orbit lengths of the generated group all divide `s`.
    fn orbits_divide(&self, gens: &[Permutation], s: u64) -> bool {
        let n = self.group.degree();
        let mut seen = vec![false; n];
        for p in 0..n as u32 {
            if seen[p as usize] {
                continue;
            }
            let o = super::orbit_under(gens, n, p);
            for &x in &o {
                seen[x as usize] = true;
            }
            if s % o.len() as u64 != 0 {
                return false;
            }
        }
        true
    }

    /// Generators of some subgroup of order `s`, if one exists.
    fn find_order(&self, s: u64) -> Option<Vec<Permutation>> {
        if self.order % s != 0 {
            return None;
        }
        if s == 1 {
            return Some(Vec::new());
        }
        if s == self.order {
            return Some(self.group.generators().to_vec());
        }
        let g_fact = factorize(self.order);
        let (q, a) = factorize(s)
            .into_iter()
            .max_by_key(|&(p, e)| {
                let full = g_fact.iter().any(|&(gp, ge)| gp == p && ge == e);
                (full, p.pow(e), p)
            })
            .expect("s > 1");
        let (p_gens, p_chain) = self.sylow(q);
        let anchors = if p_chain.order_u64() == Some(q.pow(a)) {
            vec![p_gens]
        } else {
            self.subgroups_of_order(&p_gens, q.pow(a))
        };
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for anchor in anchors {
            let mut queue = VecDeque::from([anchor]);
            while let Some(kg) = queue.pop_front() {
                let k = self.chain(&kg, None).expect("unbounded");
                if !seen.insert(self.element_key(&k)) {
                    continue;
                }
                if k.order_u64() == Some(s) {
                    return Some(kg);
                }
                for g in self.double_coset_reps(&kg, &k) {
                    if s % g.order() != 0 {
                        continue;
                    }
                    let mut lg = kg.clone();
                    lg.push(g);
                    if !self.orbits_divide(&lg, s) {
                        continue;
                    }
                    if let Some(l) = self.chain(&lg, Some(s)) {
                        if s % l.order_u64().unwrap() == 0 {
                            queue.push_back(lg);
                        }
                    }
                }
            }
        }
        None
    }

    fn witness(&self, gens: Vec<Permutation>) -> SubgroupWitness {
        let h = self.chain(&gens, None).expect("unbounded");
        let order = h.order_u64().unwrap();
        SubgroupWitness { generators: gens, order, index: self.order / order }
    }
}

/// Some subgroup of the given order, if any.
pub fn find_subgroup_of_order(group: &PermGroup, s: u64) -> Result<Option<SubgroupWitness>> {
    let search = Search::new(group)?;
    Ok(search.find_order(s).map(|g| search.witness(g)))
}

/// Smallest index of a proper subgroup (`None` for the trivial group).
pub fn minimal_proper_index(group: &PermGroup) -> Result<Option<u64>> {
    let search = Search::new(group)?;
    for d in divisors(search.order).into_iter().skip(1) {
        if search.find_order(search.order / d).is_some() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Searches for a proper subgroup whose index divides `n`.
pub fn find_index_dividing(group: &PermGroup, n: u64) -> Result<AuditOutcome> {
    let search = Search::new(group)?;
    let common: BTreeSet<u64> = divisors(n).into_iter().filter(|d| search.order % d == 0).collect();
    for d in common.into_iter().filter(|&d| d > 1) {
        if let Some(gens) = search.find_order(search.order / d) {
            return Ok(AuditOutcome::Found(search.witness(gens)));
        }
    }
    Ok(AuditOutcome::None)
}

/// Canonical text describing a group, used for input digests.
pub fn group_fingerprint(group: &PermGroup) -> String {
    let gens: Vec<String> = group.generators().iter().map(|g| g.to_string()).collect();
    format!("degree={};generators={}", group.degree(), gens.join(";"))
}

/// Certificate for "no proper subgroup has index dividing `n`".
pub fn subgroup_index_audit(group: &PermGroup, n: u64, backend: AuditBackend) -> Certificate {
    let claim = format!("no proper subgroup has index dividing {n}");
    let inputs = digest(&format!("{};N={n}", group_fingerprint(group)));
    let order = group.order_u64();
    if backend.computed && order.is_some_and(|o| o <= SUBGROUP_CAP) {
        let outcome = find_index_dividing(group, n).expect("order checked against the cap");
        let min_index = order
            .filter(|&o| o <= MIN_INDEX_RECORD_CAP)
            .map(|_| minimal_proper_index(group).expect("order checked"));
        let mut payload = json!({
            "method": "subgroup_index_search",
            "N": n,
            "group_order": order,
            "min_proper_index": min_index.flatten(),
        });
        let verdict = match outcome {
            AuditOutcome::None => Verdict::Pass,
            AuditOutcome::Found(w) => {
                payload["witness"] = w.to_value();
                Verdict::Fail
            }
        };
        return Certificate::leaf(claim, verdict, Evidence::Computed { payload }, inputs);
    }
    if let (Some(tables), Some(id)) = (backend.tables, backend.group_id) {
        if let Some((m, record)) = tables.min_proper_subgroup_index(id) {
            let verdict = if n < m {
                Verdict::Pass
            } else if n % m == 0 {
                Verdict::Fail
            } else {
                Verdict::Inconclusive
            };
            let evidence = Evidence::Table { citation: record.citation.clone(), row: record.to_value() };
            return Certificate::leaf(claim, verdict, evidence, inputs);
        }
    }
    Certificate::leaf(
        format!("{claim} (no applicable backend)"),
        Verdict::Inconclusive,
        Evidence::None,
        inputs,
    )
}
