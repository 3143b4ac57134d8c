use std::io::Write;
use std::path::Path;

use facecover::analysis::SweepRow;
use serde_json::{json, Map, Value};

use crate::error::CliError;

pub const SCHEMA: &str = "facecover/1";

/// Run parameters copied into every JSON report. No clock or host data, so
/// equal runs give byte-identical reports.
pub struct Provenance {
    command: &'static str,
    seed: Option<u64>,
    budget: Option<u64>,
}

impl Provenance {
    pub fn new(command: &'static str) -> Self {
        Provenance {
            command,
            seed: None,
            budget: None,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn budget(mut self, nodes: Option<u64>) -> Self {
        self.budget = nodes;
        self
    }
}

#[derive(Debug)]
pub enum Output {
    Json(Value),
    Text(String),
}

/// Object fields of `extra` are added to `base`.
pub fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

impl Output {
    pub fn json(p: Provenance, body: Value) -> Self {
        let mut top = Map::new();
        top.insert("schema".into(), json!(SCHEMA));
        top.insert(
            "provenance".into(),
            json!({
                "version": facecover::VERSION,
                "command": p.command,
                "seed": p.seed,
                "budget": { "max_nodes": p.budget },
            }),
        );
        match body {
            Value::Object(o) => top.extend(o),
            other => {
                top.insert("result".into(), other);
            }
        }
        Output::Json(Value::Object(top))
    }

    pub fn render(&self) -> String {
        match self {
            Output::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("values serialize");
                s.push('\n');
                s
            }
            Output::Text(s) => s.clone(),
        }
    }

    pub fn write(&self, out: Option<&Path>) -> Result<(), CliError> {
        let body = self.render();
        match out {
            Some(path) => {
                std::fs::write(path, body).map_err(|e| CliError::io(path.display().to_string(), e))
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(body.as_bytes())
                    .and_then(|()| stdout.flush())
                    .map_err(|e| CliError::io("stdout", e))
            }
        }
    }
}

pub const SWEEP_HEADER: &str = "function_id,n,k,m,epsilon,exact_rank,bound,margin,proved_optimal";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.function_id,
            r.n,
            r.k,
            r.m,
            r.epsilon,
            r.exact_rank,
            r.bound,
            r.margin,
            r.proved_optimal
        ));
    }
    s
}
