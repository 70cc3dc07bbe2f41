use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use workbench::suite::{Record, Status};

/// What every command prints: text by default, JSON with `--json`.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub parameters: BTreeMap<String, Value>,
    pub records: Vec<Record>,
    pub overall: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    /// Human-readable body; not part of the JSON.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &[String]) -> Self {
        Report {
            command: command.to_vec(),
            parameters: BTreeMap::new(),
            records: Vec::new(),
            overall: Status::Pass,
            result: None,
            lines: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("parameters serialize");
        self.parameters.insert(key.to_owned(), v);
        self
    }

    pub fn result(&mut self, value: impl Serialize) -> &mut Self {
        self.result = Some(serde_json::to_value(value).expect("results serialize"));
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn record(&mut self, r: Record) -> &mut Self {
        self.records.push(r);
        self.overall = if self.records.iter().any(|r| r.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        for r in &self.records {
            let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "[{}] {} ({} ms) {}",
                r.status,
                r.name,
                r.elapsed_ms,
                counts.join(" ")
            );
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "    {w}");
            }
        }
        let _ = writeln!(out, "overall: {}", self.overall);
        out
    }
}
