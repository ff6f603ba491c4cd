use serde::Deserialize;
use workbench::error::{Error, Result};
use workbench::textfmt::from_text;

const PACKAGED: &[(&str, &str)] = &[
    ("abhyankar_l2_8", include_str!("../../../configs/abhyankar_l2_8.cfg")),
    ("abhyankar_psl_m_q", include_str!("../../../configs/abhyankar_psl_m_q.cfg")),
];

/// Sampler run description, stored in the structured text format.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SamplerConfig {
    pub name: String,
    pub polynomial: String,
    pub p: u64,
    pub field_sizes: Vec<u64>,
    pub budget: u64,
    pub seed: u64,
    /// Catalog ids.
    pub candidates: Vec<String>,
    /// Candidate that must qualify for exit code 0.
    pub expected: String,
    pub tolerance: f64,
}

impl SamplerConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let v = from_text(text)?;
        serde_json::from_value(v).map_err(|e| Error::Parse(format!("sampler config: {e}")))
    }

    /// A packaged config by name, or else a file path.
    pub fn resolve(name_or_path: &str) -> Result<(Self, String)> {
        let text = match PACKAGED.iter().find(|(n, _)| *n == name_or_path) {
            Some((_, t)) => t.to_string(),
            None => std::fs::read_to_string(name_or_path)
                .map_err(|e| Error::Parse(format!("cannot read config {name_or_path}: {e}")))?,
        };
        Ok((Self::parse(&text)?, text))
    }

    pub fn packaged_names() -> Vec<&'static str> {
        PACKAGED.iter().map(|(n, _)| *n).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packaged_configs_parse() {
        for name in SamplerConfig::packaged_names() {
            let (c, _) = SamplerConfig::resolve(name).unwrap();
            assert_eq!(c.name, name);
            assert!(c.candidates.contains(&c.expected));
        }
    }

    #[test]
    fn unknown_field_rejected() {
        assert!(SamplerConfig::parse("name: \"x\"\nbogus: 1\n").is_err());
    }
}
