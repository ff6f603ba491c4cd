//! Verdict trees emitted by every audit.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Combines child verdicts: any inconclusive child wins, then any
    /// failure; otherwise pass.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Pass;
        for v in verdicts {
            match v {
                Verdict::Inconclusive => return Verdict::Inconclusive,
                Verdict::Fail => out = Verdict::Fail,
                Verdict::Pass => {}
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Payload sufficient to replay the computation.
    Computed { payload: Value },
    /// Imported from a cited table row.
    Table { citation: String, row: Value },
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub children: Vec<Certificate>,
    pub inputs_digest: String,
}

/// Hex SHA-256 of the canonical input description.
pub fn digest(input: &str) -> String {
    hex::encode(Sha256::digest(input.as_bytes()))
}

impl Certificate {
    pub fn leaf(claim: impl Into<String>, verdict: Verdict, evidence: Evidence, inputs_digest: String) -> Self {
        Self { claim: claim.into(), verdict, evidence, children: Vec::new(), inputs_digest }
    }

    /// Inner node whose verdict is derived from its children, which are
    /// sorted by claim.
    pub fn node(
        claim: impl Into<String>,
        evidence: Evidence,
        mut children: Vec<Certificate>,
        inputs_digest: String,
    ) -> Self {
        children.sort_by(|a, b| a.claim.cmp(&b.claim));
        let verdict = Verdict::combine(children.iter().map(|c| c.verdict));
        Self { claim: claim.into(), verdict, evidence, children, inputs_digest }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Depth-first iterator over all nodes.
    pub fn walk(&self) -> Vec<&Certificate> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.walk());
        }
        out
    }

    /// Checks the verdict algebra on the whole tree.
    pub fn check_invariants(&self) -> Result<()> {
        for node in self.walk() {
            if node.is_leaf() {
                if node.verdict == Verdict::Pass && node.evidence == Evidence::None {
                    return Err(Error::Precondition(format!("PASS leaf without evidence: {}", node.claim)));
                }
            } else {
                let combined = Verdict::combine(node.children.iter().map(|c| c.verdict));
                if combined != node.verdict {
                    return Err(Error::Precondition(format!("verdict disagrees with children: {}", node.claim)));
                }
                if node.children.windows(2).any(|w| w[0].claim > w[1].claim) {
                    return Err(Error::Precondition(format!("children not sorted: {}", node.claim)));
                }
            }
        }
        Ok(())
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("certificates serialize")
    }

    pub fn from_value(v: Value) -> Result<Self> {
        serde_json::from_value(v).map_err(|e| Error::Parse(format!("certificate: {e}")))
    }

    pub fn to_text(&self) -> String {
        crate::textfmt::to_text(&self.to_value())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::from_value(crate::textfmt::from_text(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn leaf(claim: &str, v: Verdict) -> Certificate {
        Certificate::leaf(claim, v, Evidence::Computed { payload: json!({"n": 1}) }, digest(claim))
    }

    #[test]
    fn verdict_algebra() {
        let pass = Certificate::node("root", Evidence::None, vec![leaf("b", Verdict::Pass), leaf("a", Verdict::Pass)], digest("r"));
        assert_eq!(pass.verdict, Verdict::Pass);
        assert_eq!(pass.children[0].claim, "a");
        let fail = Certificate::node("root", Evidence::None, vec![leaf("a", Verdict::Fail), leaf("b", Verdict::Pass)], digest("r"));
        assert_eq!(fail.verdict, Verdict::Fail);
        let inc = Certificate::node("root", Evidence::None, vec![leaf("a", Verdict::Fail), leaf("b", Verdict::Inconclusive)], digest("r"));
        assert_eq!(inc.verdict, Verdict::Inconclusive);
        assert!(inc.check_invariants().is_ok());
    }

    #[test]
    fn pass_leaf_needs_evidence() {
        let bad = Certificate::leaf("x", Verdict::Pass, Evidence::None, digest("x"));
        assert!(bad.check_invariants().is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = Certificate::node(
            "root",
            Evidence::Table { citation: "Atlas p. 1".into(), row: json!(["G", 3]) },
            vec![leaf("a", Verdict::Pass)],
            digest("r"),
        );
        let text = c.to_text();
        assert_eq!(Certificate::from_text(&text).unwrap(), c);
        assert!(text.contains("verdict: \"PASS\""));
    }
}
