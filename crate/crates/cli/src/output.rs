//! Structured output and exit codes. Every command prints exactly one
//! object on standard output; the exit code is a function of the verdict:
//! 0 success or positive verdict, 1 negative verdict, 2 usage or parse
//! error, 3 unknown or uncovered.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    No,
    Unsolvable,
    Unknown,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::No | Status::Unsolvable => 1,
            Status::Unknown => 3,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Output {
    pub status: Status,
    pub command: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

impl Output {
    pub fn new(status: Status, command: &str, result: Value) -> Self {
        Output { status, command: command.to_string(), result, witness: None, citation: None }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_citation(mut self, citation: &str) -> Self {
        self.citation = Some(citation.to_string());
        self
    }

    pub fn error(command: &str, message: String) -> Self {
        Output::new(Status::Error, command, serde_json::json!({ "message": message }))
    }

    /// Prints as JSON or a compact text rendering, returns the exit code.
    pub fn emit(&self, format: crate::Format) -> i32 {
        match format {
            crate::Format::Json => {
                println!("{}", serde_json::to_string(self).expect("output serializes"));
            }
            crate::Format::Text => {
                let status = serde_json::to_string(&self.status).unwrap();
                println!("status: {}", status.trim_matches('"'));
                println!("result: {}", render(&self.result));
                if let Some(w) = &self.witness {
                    println!("witness: {}", render(w));
                }
                if let Some(c) = &self.citation {
                    println!("citation: {c}");
                }
            }
        }
        self.status.exit_code()
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
