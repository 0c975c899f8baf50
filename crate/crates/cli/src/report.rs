//! Command output: a structured document plus a short human summary.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub data: Value,
    pub summary: Vec<String>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    passed: bool,
    result: &'a Value,
}

impl Report {
    pub fn new(command: &str, data: impl Serialize) -> anyhow::Result<Self> {
        Ok(Report {
            command: command.to_string(),
            passed: true,
            data: serde_json::to_value(data)?,
            summary: Vec::new(),
        })
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    pub fn passed(mut self, ok: bool) -> Self {
        self.passed = ok;
        self
    }

    /// Pretty JSON; object keys come out sorted, so equal inputs give equal bytes.
    pub fn structured(&self) -> String {
        let env = Envelope {
            command: &self.command,
            passed: self.passed,
            result: &self.data,
        };
        let value = serde_json::to_value(env).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn summary_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.command, if self.passed { "ok" } else { "FAILED" });
        for l in &self.summary {
            s.push_str("  ");
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted() {
        let r = Report::new("x", json!({"b": 1, "a": {"d": 2, "c": 3}})).unwrap();
        let s = r.structured();
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.find("\"c\"").unwrap() < s.find("\"d\"").unwrap());
        assert!(s.find("\"command\"").unwrap() < s.find("\"passed\"").unwrap());
    }
}
