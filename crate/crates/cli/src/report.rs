//! The machine report and its text rendering.

use std::fmt::Write as _;

use cocyclelab::scalar::ScalarKind;
use cocyclelab::theorems::HypothesisCheck;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Error,
    Skipped,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Error => "ERROR",
            Outcome::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl From<&HypothesisCheck> for Hypothesis {
    fn from(h: &HypothesisCheck) -> Self {
        Hypothesis { name: h.name.clone(), holds: h.holds, detail: h.detail.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub key: String,
    pub expected: Value,
    /// `null` when the task produced no such value.
    pub actual: Value,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskError {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub id: String,
    pub task: String,
    pub outcome: Outcome,
    pub scalar: Option<ScalarKind>,
    pub values: Map<String, Value>,
    pub hypotheses: Vec<Hypothesis>,
    pub expectations: Vec<Expectation>,
    pub witnesses: Map<String, Value>,
    /// Witnesses replaced by their size.
    pub elided: Vec<String>,
    pub error: Option<TaskError>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub skipped: usize,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(tasks: Vec<TaskReport>) -> Self {
        let count = |o: Outcome| tasks.iter().filter(|t| t.outcome == o).count();
        let mut summary = Summary {
            total: tasks.len(),
            passed: count(Outcome::Pass),
            failed: count(Outcome::Fail),
            errors: count(Outcome::Error),
            skipped: count(Outcome::Skipped),
            exit_code: 0,
        };
        summary.exit_code = if summary.errors > 0 {
            2
        } else if summary.failed > 0 {
            1
        } else {
            0
        };
        Report { tool: "cocyclelab".into(), version: env!("CARGO_PKG_VERSION").into(), tasks, summary }
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code
    }

    /// Pretty JSON with sorted object keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tasks {
            let scalar = match t.scalar {
                Some(ScalarKind::Rational) => " [rational]",
                Some(ScalarKind::Float) => " [float]",
                None => "",
            };
            let _ = writeln!(out, "[{}] {} ({}){scalar}", t.outcome.label(), t.id, t.task);
            if !t.values.is_empty() {
                let vals: Vec<String> = t.values.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
                let _ = writeln!(out, "    {}", vals.join(", "));
            }
            for h in &t.hypotheses {
                let mark = if h.holds { "holds" } else { "FAILS" };
                if h.detail.is_empty() {
                    let _ = writeln!(out, "    hypothesis {mark}: {}", h.name);
                } else {
                    let _ = writeln!(out, "    hypothesis {mark}: {} ({})", h.name, h.detail);
                }
            }
            for e in t.expectations.iter().filter(|e| !e.ok) {
                let _ = writeln!(out, "    expected {} = {}, got {}", e.key, compact(&e.expected), compact(&e.actual));
            }
            if let Some(e) = &t.error {
                let _ = writeln!(out, "    {}: {}", e.kind, e.message);
            }
            if !t.elided.is_empty() {
                let _ = writeln!(out, "    elided witnesses: {}", t.elided.join(", "));
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} tasks: {} passed, {} failed, {} errors, {} skipped (exit {})",
            s.total, s.passed, s.failed, s.errors, s.skipped, s.exit_code
        );
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
