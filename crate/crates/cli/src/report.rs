use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds(bool),
    Exploration,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::Holds(b) => s.serialize_bool(*b),
            Verdict::Exploration => s.serialize_str("exploration"),
        }
    }
}

/// One command's output. Keys serialize in declaration order and every
/// integer is a decimal string.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub verdict: Verdict,
    pub details: Value,
    pub findings: Vec<String>,
    pub version: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            verdict: Verdict::Holds(true),
            details: Value::Null,
            findings: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), Value::String(value.to_string()));
        self
    }

    pub fn verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn details(mut self, details: impl Serialize) -> Self {
        self.details = serde_json::to_value(details).expect("report details serialize");
        self
    }

    pub fn finding(&mut self, msg: impl Into<String>) {
        self.findings.push(msg.into());
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Holds(false) => 1,
            _ => 0,
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Holds(true) => "holds",
            Verdict::Holds(false) => "fails",
            Verdict::Exploration => "exploration",
        };
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or_default()))
            .collect();
        let mut line = format!("{} [{}]: {verdict}", self.command, inputs.join(" "));
        if !self.findings.is_empty() {
            line.push_str(&format!(" ({} findings)", self.findings.len()));
        }
        line
    }
}
