//! Frobenius cycle-type statistics for one-parameter polynomial families
//! over finite fields, compared against the cycle-type distributions of
//! candidate permutation groups.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite_fields::{parse_bivariate, BivariateTerms, FiniteField, PolyRing, PrimePowerField};
use crate::perm_groups::{ConjClassTable, CycleType};

/// Default soft-score tolerance.
pub const DEFAULT_TOLERANCE: f64 = 0.1;

/// A polynomial in x whose coefficients are polynomials in a parameter z,
/// over a field of characteristic p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricPoly {
    pub text: String,
    pub p: u64,
    terms: BivariateTerms,
    degree: u32,
}

impl ParametricPoly {
    /// Parses a template such as `x^9 - z*x^7 + 1`. The leading
    /// coefficient in x must be a nonzero constant mod p.
    pub fn parse(text: &str, p: u64) -> Result<Self> {
        let mut terms = parse_bivariate(text)?;
        terms.retain(|_, c| c.rem_euclid(p as i64) != 0);
        let degree = terms.keys().map(|&(xe, _)| xe).max().ok_or_else(|| Error::Parse("zero polynomial".into()))?;
        if degree == 0 {
            return Err(Error::Parse("template has no x".into()));
        }
        if terms.keys().any(|&(xe, ze)| xe == degree && ze > 0) {
            return Err(Error::Parse("leading coefficient in x must not involve z".into()));
        }
        Ok(Self { text: text.to_string(), p, terms, degree })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficients in x (lowest first) at the parameter value `z`.
    pub fn specialize<F: FiniteField>(&self, field: &F, z: F::Elem) -> Vec<F::Elem> {
        let mut coeffs = vec![field.zero(); self.degree as usize + 1];
        for (&(xe, ze), &c) in &self.terms {
            let mut t = field.from_int(c);
            for _ in 0..ze {
                t = field.mul(t, z);
            }
            coeffs[xe as usize] = field.add(coeffs[xe as usize], t);
        }
        coeffs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DistributionSource {
    Empirical { used: u64, discarded: u64 },
    Group { order: BigUint },
    Synthetic { draws: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeDistribution {
    pub probs: BTreeMap<CycleType, f64>,
    pub source: DistributionSource,
}

impl TypeDistribution {
    fn from_counts(counts: BTreeMap<CycleType, BigUint>, total: &BigUint, source: DistributionSource) -> Self {
        let probs = counts
            .into_iter()
            .map(|(t, c)| (t, ratio(&c, total)))
            .collect();
        Self { probs, source }
    }

    pub fn support(&self) -> impl Iterator<Item = &CycleType> {
        self.probs.keys()
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.values().sum()
    }

    pub fn to_value(&self) -> Value {
        let rows: Vec<Value> =
            self.probs.iter().map(|(t, p)| json!({ "type": t.to_string(), "probability": p })).collect();
        let source = match &self.source {
            DistributionSource::Empirical { used, discarded } => {
                json!({ "kind": "empirical", "used": used, "discarded": discarded })
            }
            DistributionSource::Group { order } => json!({ "kind": "group", "order": order.to_string() }),
            DistributionSource::Synthetic { draws } => json!({ "kind": "synthetic", "draws": draws }),
        };
        json!({ "source": source, "types": rows })
    }
}

/// Exact quotient of big integers as a float, computed without overflow.
fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    let shift = den.bits().saturating_sub(60);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// Cycle types weighted by class size over group order, merged across
/// classes of equal type.
pub fn group_type_distribution(classes: &ConjClassTable) -> TypeDistribution {
    let mut counts: BTreeMap<CycleType, BigUint> = BTreeMap::new();
    for c in &classes.classes {
        *counts.entry(c.cycle_type.clone()).or_default() += BigUint::from(c.size);
    }
    let order = BigUint::from(classes.group_order);
    TypeDistribution::from_counts(counts, &order, DistributionSource::Group { order: order.clone() })
}

/// Partitions of `n` as nonincreasing part lists.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Cycle-type distribution of S_n or A_n from the class-size formula
/// `n! / ∏ k^{m_k} m_k!`.
pub fn symmetric_type_distribution(n: u32, alternating: bool) -> TypeDistribution {
    let fact = |k: u32| (1..=k).fold(BigUint::from(1u32), |a, i| a * i);
    let n_fact = fact(n);
    let mut counts = BTreeMap::new();
    for parts in partitions(n) {
        let t = CycleType::from_lengths(parts);
        if alternating && !t.is_even() {
            continue;
        }
        let mut den = BigUint::from(1u32);
        for (&k, &m) in t.parts() {
            den *= BigUint::from(k).pow(m) * fact(m);
        }
        counts.insert(t, &n_fact / den);
    }
    let order = if alternating && n > 1 { &n_fact / 2u32 } else { n_fact };
    TypeDistribution::from_counts(counts, &order, DistributionSource::Group { order: order.clone() })
}

/// Frobenius cycle types of specializations `z ↦ z0` over the listed
/// fields GF(p^k). The budget is shared round-robin between the fields;
/// within a field, z-values are drawn without replacement, and draws past
/// the field size count as discards, as do degree-dropping and
/// non-squarefree specializations.
pub fn sample_specializations(
    f: &ParametricPoly,
    field_sizes: &[u64],
    budget: u64,
    seed: u64,
) -> Result<TypeDistribution> {
    if budget == 0 {
        return Err(Error::Range("sampling budget must be positive".into()));
    }
    if field_sizes.is_empty() {
        return Err(Error::Range("no field sizes given".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<CycleType, BigUint> = BTreeMap::new();
    let (mut used, mut discarded) = (0u64, 0u64);
    let nf = field_sizes.len() as u64;
    for (i, &q) in field_sizes.iter().enumerate() {
        let share = budget / nf + u64::from((i as u64) < budget % nf);
        let k = field_degree(q, f.p)?;
        let field = PrimePowerField::new(f.p, k)?;
        let ring = PolyRing::new(&field);
        let take = share.min(q);
        discarded += share - take;
        for idx in sample(&mut rng, q as usize, take as usize).into_iter() {
            let z = field.element(idx as u64);
            let coeffs = f.specialize(&field, z);
            if coeffs.last() == Some(&field.zero()) {
                discarded += 1;
                continue;
            }
            let poly = ring.from_coeffs(coeffs);
            match ring.distinct_degree_degrees(&poly) {
                Ok(degs) => {
                    let t = CycleType::from_lengths(
                        degs.iter().flat_map(|(&d, &c)| std::iter::repeat_n(d as u32, c)),
                    );
                    *counts.entry(t).or_default() += 1u32;
                    used += 1;
                }
                Err(Error::NotSquarefree) => discarded += 1,
                Err(e) => return Err(e),
            }
        }
    }
    if used == 0 {
        return Err(Error::DegenerateFamily);
    }
    Ok(TypeDistribution::from_counts(
        counts,
        &BigUint::from(used),
        DistributionSource::Empirical { used, discarded },
    ))
}

fn field_degree(q: u64, p: u64) -> Result<u32> {
    let mut k = 0;
    let mut x = q;
    while x > 1 && x % p == 0 {
        x /= p;
        k += 1;
    }
    if x != 1 || k == 0 {
        return Err(Error::Range(format!("{q} is not a power of {p}")));
    }
    Ok(k)
}

/// Draws from a known distribution, for self-tests of the comparison.
pub fn sample_from_distribution(dist: &TypeDistribution, draws: u64, seed: u64) -> TypeDistribution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<(&CycleType, f64)> = dist.probs.iter().map(|(t, &p)| (t, p)).collect();
    let mut counts: BTreeMap<CycleType, BigUint> = BTreeMap::new();
    for _ in 0..draws {
        let mut u: f64 = rng.gen::<f64>() * dist.total_mass();
        let mut pick = entries.last().expect("nonempty distribution").0;
        for (t, p) in &entries {
            if u < *p {
                pick = t;
                break;
            }
            u -= p;
        }
        *counts.entry(pick.clone()).or_default() += 1u32;
    }
    TypeDistribution::from_counts(counts, &BigUint::from(draws), DistributionSource::Synthetic { draws })
}

/// Half the L1 distance.
pub fn total_variation(a: &TypeDistribution, b: &TypeDistribution) -> f64 {
    let mut keys: Vec<&CycleType> = a.probs.keys().chain(b.probs.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| (a.probs.get(k).unwrap_or(&0.0) - b.probs.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CandidateRow {
    pub name: String,
    /// Every observed type lies in the candidate's support.
    pub qualified: bool,
    pub distance: f64,
    pub within_tolerance: bool,
    /// First observed type the candidate cannot produce.
    pub witness: Option<CycleType>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport {
    /// Ranked: qualified first, then by distance.
    pub rows: Vec<CandidateRow>,
    pub used: u64,
    pub discarded: u64,
    pub tolerance: f64,
}

impl ConsistencyReport {
    pub fn row(&self, name: &str) -> Option<&CandidateRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "used": self.used,
            "discarded": self.discarded,
            "tolerance": self.tolerance,
            "candidates": self.rows.iter().enumerate().map(|(i, r)| json!({
                "rank": i + 1,
                "name": r.name,
                "qualified": r.qualified,
                "distance": r.distance,
                "within_tolerance": r.within_tolerance,
                "witness_type": r.witness.as_ref().map(ToString::to_string),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Hard support check plus total-variation soft score per candidate.
pub fn consistency_verdict(
    empirical: &TypeDistribution,
    candidates: &[(String, TypeDistribution)],
    tolerance: f64,
) -> Result<ConsistencyReport> {
    if !(tolerance > 0.0 && tolerance <= 1.0) {
        return Err(Error::Range(format!("tolerance {tolerance} outside (0, 1]")));
    }
    let (used, discarded) = match empirical.source {
        DistributionSource::Empirical { used, discarded } => (used, discarded),
        DistributionSource::Synthetic { draws } => (draws, 0),
        DistributionSource::Group { .. } => (0, 0),
    };
    let mut rows: Vec<CandidateRow> = candidates
        .iter()
        .map(|(name, dist)| {
            let witness = empirical.support().find(|t| !dist.probs.contains_key(*t)).cloned();
            let distance = total_variation(empirical, dist);
            CandidateRow {
                name: name.clone(),
                qualified: witness.is_none(),
                distance,
                within_tolerance: distance <= tolerance,
                witness,
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        b.qualified
            .cmp(&a.qualified)
            .then(a.distance.total_cmp(&b.distance))
            .then(a.name.cmp(&b.name))
    });
    Ok(ConsistencyReport { rows, used, discarded, tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_catalog::{make_psl2_char2, make_sym_alt};
    use crate::perm_groups::{conjugacy_classes, PermGroup};

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    #[test]
    fn s3_distribution() {
        let g = make_sym_alt(3, false).unwrap().group.unwrap();
        let d = group_type_distribution(&conjugacy_classes(&g).unwrap());
        assert_eq!(d.probs.len(), 3);
        assert!((d.probs[&ct("1^3")] - 1.0 / 6.0).abs() < 1e-12);
        assert!((d.probs[&ct("1 2")] - 0.5).abs() < 1e-12);
        assert!((d.probs[&ct("3")] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_group_distribution() {
        let g = PermGroup::trivial(5);
        let d = group_type_distribution(&conjugacy_classes(&g).unwrap());
        assert_eq!(d.probs, BTreeMap::from([(ct("1^5"), 1.0)]));
    }

    #[test]
    fn psl2_8_support() {
        let g = make_psl2_char2(3).unwrap().group.unwrap();
        let d = group_type_distribution(&conjugacy_classes(&g).unwrap());
        let support: Vec<String> = d.support().map(ToString::to_string).collect();
        assert_eq!(support.len(), 5);
        for t in ["1^9", "1 2^4", "3^3", "1^2 7", "9"] {
            assert!(d.probs.contains_key(&ct(t)), "{t}");
        }
        assert!((d.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_classes() {
        for n in 3..=6u32 {
            for alt in [false, true] {
                let g = make_sym_alt(n as usize, alt).unwrap().group.unwrap();
                let by_classes = group_type_distribution(&conjugacy_classes(&g).unwrap());
                let closed = symmetric_type_distribution(n, alt);
                assert_eq!(by_classes.probs.len(), closed.probs.len());
                for (t, p) in &closed.probs {
                    assert!((by_classes.probs[t] - p).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn reducible_template_has_fixed_points() {
        // (x - z)(x^2 + 1) over GF(7)
        let f = ParametricPoly::parse("x^3 - z*x^2 + x - z", 7).unwrap();
        let d = sample_specializations(&f, &[7], 7, 1).unwrap();
        assert!(d.support().all(|t| t.parts().contains_key(&1)));
        match d.source {
            DistributionSource::Empirical { used, discarded } => assert_eq!(used + discarded, 7),
            _ => unreachable!(),
        }
    }

    #[test]
    fn budget_and_parse_errors() {
        let f = ParametricPoly::parse("x^9 - z*x^7 + 1", 7).unwrap();
        assert!(matches!(sample_specializations(&f, &[7], 0, 1), Err(Error::Range(_))));
        assert!(ParametricPoly::parse("z*x^2 + 1", 7).is_err());
        assert!(ParametricPoly::parse("x^2 +* 1", 7).is_err());
    }

    #[test]
    fn exhausted_draws_are_discards() {
        let f = ParametricPoly::parse("x^9 - z*x^7 + 1", 7).unwrap();
        let d = sample_specializations(&f, &[7], 20, 1).unwrap();
        match d.source {
            DistributionSource::Empirical { used, discarded } => {
                assert_eq!(used + discarded, 20);
                assert!(discarded >= 13);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn self_comparison_and_witness() {
        let g = make_sym_alt(3, false).unwrap().group.unwrap();
        let s3 = group_type_distribution(&conjugacy_classes(&g).unwrap());
        let c3 = symmetric_type_distribution(3, true);
        let r = consistency_verdict(&s3, &[("A3".into(), c3), ("S3".into(), s3.clone())], 0.1).unwrap();
        assert_eq!(r.rows[0].name, "S3");
        assert_eq!(r.rows[0].distance, 0.0);
        assert!(!r.rows[1].qualified);
        assert_eq!(r.rows[1].witness, Some(ct("1 2")));
    }
}
