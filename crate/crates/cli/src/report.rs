//! Reports shared by the text and JSON outputs.

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
    /// Usage, input or parse error.
    Error,
    /// A size guard refused the input.
    Guard,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Error => "error",
            Outcome::Guard => "guard",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail | Outcome::Inconclusive => 1,
            Outcome::Error => 2,
            Outcome::Guard => 3,
        }
    }
}

/// The result of one command. Text and JSON renderings carry the same fields.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub outcome: Outcome,
    pub facts: Map<String, Value>,
    /// `kind` first, then the fields needed to replay the failure.
    pub witness: Option<Map<String, Value>>,
    pub error: Option<Map<String, Value>>,
    /// An emitted site document.
    pub document: Option<String>,
}

impl Report {
    pub fn new(command: &str, outcome: Outcome) -> Report {
        Report {
            command: command.to_string(),
            outcome,
            facts: Map::new(),
            witness: None,
            error: None,
            document: None,
        }
    }

    pub fn fact(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.facts.insert(key.to_string(), value.into());
        self
    }

    pub fn with_witness(mut self, kind: &str, fields: Vec<(&str, Value)>) -> Report {
        let mut w = Map::new();
        w.insert("kind".into(), kind.into());
        for (k, v) in fields {
            w.insert(k.to_string(), v);
        }
        self.witness = Some(w);
        self
    }

    pub fn error(command: &str, outcome: Outcome, kind: &str, fields: Vec<(&str, Value)>) -> Report {
        let mut e = Map::new();
        e.insert("kind".into(), kind.into());
        for (k, v) in fields {
            e.insert(k.to_string(), v);
        }
        Report {
            error: Some(e),
            ..Report::new(command, outcome)
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "outcome": self.outcome.name(),
            "exit_code": self.exit_code(),
            "facts": self.facts,
            "witness": self.witness,
            "error": self.error,
            "document": self.document,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
        s.push('\n');
        s
    }

    /// Documents print as themselves; every other report prints as
    /// `command: outcome` followed by indented fields.
    pub fn to_text(&self) -> String {
        if let (Some(doc), Outcome::Pass) = (&self.document, self.outcome) {
            return doc.clone();
        }
        let mut s = format!("{}: {}\n", self.command, self.outcome.name());
        for (k, v) in &self.facts {
            s.push_str(&format!("  {k}: {}\n", render(v)));
        }
        for (label, map) in [("witness", &self.witness), ("error", &self.error)] {
            if let Some(m) = map {
                s.push_str(&format!("{label}: {}\n", render(&m["kind"])));
                for (k, v) in m.iter().filter(|(k, _)| *k != "kind") {
                    s.push_str(&format!("  {k}: {}\n", render(v)));
                }
            }
        }
        if let Some(doc) = &self.document {
            s.push('\n');
            s.push_str(doc);
        }
        s
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(render).collect();
            format!("{{{}}}", parts.join(", "))
        }
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}
