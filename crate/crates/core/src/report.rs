//! JSON-lines reports: one record per item, then one summary record.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    VerificationFailed,
    BudgetExhausted,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::BudgetExhausted => 2,
            Status::InputError => 3,
        }
    }

    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::BudgetExhausted { .. } | Error::PrefixTooShort { .. } | Error::UndecidableBeyondPrefix(_) => {
                Status::BudgetExhausted
            }
            _ => Status::InputError,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub kind: &'static str,
    pub index: usize,
    pub input: String,
    pub output: String,
    pub verdict: Verdict,
    /// Both sides of the violated equation on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl Item {
    pub fn new(index: usize, input: impl Into<String>, output: impl Into<String>, verdict: Verdict) -> Self {
        Item { kind: "item", index, input: input.into(), output: output.into(), verdict, lhs: None, rhs: None }
    }

    pub fn with_sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        self.lhs = Some(lhs.into());
        self.rhs = Some(rhs.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub kind: &'static str,
    pub command: String,
    pub config: serde_json::Value,
    pub pass: usize,
    pub fail: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub items: Vec<Item>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        Report {
            items: Vec::new(),
            summary: Summary {
                kind: "summary",
                command: command.to_string(),
                config,
                pass: 0,
                fail: 0,
                status: Status::Ok,
                notes: Vec::new(),
                error: None,
            },
        }
    }

    pub fn push(&mut self, item: Item) {
        match item.verdict {
            Verdict::Pass => self.summary.pass += 1,
            Verdict::Fail => {
                self.summary.fail += 1;
                self.summary.status = Status::VerificationFailed;
            }
        }
        self.items.push(item);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.summary.notes.push(note.into());
    }

    /// Records a failed verification that is not tied to a single item.
    pub fn fail_check(&mut self, note: impl Into<String>) {
        self.note(note);
        self.summary.status = Status::VerificationFailed;
    }

    pub fn abort(&mut self, e: &Error) {
        self.summary.status = Status::of_error(e);
        self.summary.error = Some(e.to_string());
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.status.exit_code()
    }

    pub fn next_index(&self) -> usize {
        self.items.len()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            out.push_str(&serde_json::to_string(item).expect("items serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("summary serializes"));
        out.push('\n');
        out
    }
}

/// Writes the report to `path`, or to stdout when `path` is `None`.
pub fn emit_report(report: &Report, path: Option<&Path>) -> Result<()> {
    let text = report.to_jsonl();
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_only() {
        let r = Report::new("eval", serde_json::json!({"seed": 0}));
        let text = r.to_jsonl();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with(r#"{"kind":"summary","command":"eval","config":{"seed":0},"pass":0,"fail":0,"status":"ok"}"#));
    }

    #[test]
    fn failures_carry_both_sides() {
        let mut r = Report::new("avoid", serde_json::Value::Null);
        r.push(Item::new(0, "g0", "g1", Verdict::Fail).with_sides("g0 g1 g0^-1", "g1"));
        assert_eq!(r.exit_code(), 1);
        let first = r.to_jsonl().lines().next().unwrap().to_string();
        assert_eq!(
            first,
            r#"{"kind":"item","index":0,"input":"g0","output":"g1","verdict":"fail","lhs":"g0 g1 g0^-1","rhs":"g1"}"#
        );
    }

    #[test]
    fn file_output() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.jsonl");
        let mut r = Report::new("t2", serde_json::Value::Null);
        r.abort(&Error::BudgetExhausted { budget: 3 });
        emit_report(&r, Some(&path)).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), r.to_jsonl());
        assert_eq!(r.exit_code(), 2);
    }
}
