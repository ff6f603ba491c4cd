use serde_json::{json, Map, Value};
use workbench::certificate::digest;

/// Provenance block embedded in every emitted report.
#[derive(Clone, Debug)]
pub struct Manifest {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub seed: u64,
    pub caps: Map<String, Value>,
    pub input_digests: Map<String, Value>,
    pub table_citations: Vec<String>,
    pub wall_time_ms: u128,
}

impl Manifest {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            parameters: Map::new(),
            seed,
            caps: Map::new(),
            input_digests: Map::new(),
            table_citations: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, v: Value) -> &mut Self {
        self.parameters.insert(key.to_string(), v);
        self
    }

    pub fn cap(&mut self, key: &str, v: Value) -> &mut Self {
        self.caps.insert(key.to_string(), v);
        self
    }

    pub fn input(&mut self, key: &str, text: &str) -> &mut Self {
        self.input_digests.insert(key.to_string(), Value::String(digest(text)));
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "seeds": { "seed": self.seed },
            "caps": self.caps,
            "input_digests": self.input_digests,
            "table_citations": self.table_citations,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "wall_time_ms": self.wall_time_ms as u64,
        })
    }
}
