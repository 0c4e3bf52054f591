//! Task orchestration: concurrent execution, expectations and witness elision.

use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::report::{Expectation, Outcome, Report, TaskError, TaskReport};
use crate::spec::ProblemSpec;
use crate::tasks::{error_kind, execute, outcome_of_error, Payload, Slot};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WitnessMode {
    /// Elide witnesses above the document's `elide_above`.
    #[default]
    Auto,
    All,
    None,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Run sequentially and skip everything after the first non-passing task.
    pub fail_fast: bool,
    /// Run tasks one at a time even without `fail_fast`.
    pub sequential: bool,
    pub witnesses: WitnessMode,
}

pub fn run(spec: &ProblemSpec, opts: RunOptions) -> Report {
    let tasks = if opts.fail_fast {
        let mut out = Vec::with_capacity(spec.tasks.len());
        let mut stopped = false;
        for i in 0..spec.tasks.len() {
            if stopped {
                out.push(skipped(spec, i));
                continue;
            }
            let r = run_task(spec, i, opts.witnesses);
            stopped = r.outcome != Outcome::Pass;
            out.push(r);
        }
        out
    } else if opts.sequential {
        (0..spec.tasks.len()).map(|i| run_task(spec, i, opts.witnesses)).collect()
    } else {
        (0..spec.tasks.len()).into_par_iter().map(|i| run_task(spec, i, opts.witnesses)).collect()
    };
    Report::new(tasks)
}

fn blank(spec: &ProblemSpec, i: usize, outcome: Outcome) -> TaskReport {
    let t = &spec.tasks[i];
    TaskReport {
        id: t.id.clone(),
        task: t.kind.name().to_string(),
        outcome,
        scalar: t.refs.get(&Slot::Rep).map(|r| spec.rep(r).kind()),
        values: Map::new(),
        hypotheses: Vec::new(),
        expectations: Vec::new(),
        witnesses: Map::new(),
        elided: Vec::new(),
        error: None,
    }
}

fn skipped(spec: &ProblemSpec, i: usize) -> TaskReport {
    blank(spec, i, Outcome::Skipped)
}

fn run_task(spec: &ProblemSpec, i: usize, mode: WitnessMode) -> TaskReport {
    let task = &spec.tasks[i];
    let mut report = blank(spec, i, Outcome::Pass);
    let payload = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| execute(spec, task)));
    let payload = match payload {
        Ok(Ok(p)) => p,
        Ok(Err(e)) => {
            report.outcome = outcome_of_error(&e);
            if let cocyclelab::error::Error::HypothesisFailed { check, detail } = &e {
                report.hypotheses.push(crate::report::Hypothesis { name: check.clone(), holds: false, detail: detail.clone() });
            }
            report.error = Some(TaskError { kind: error_kind(&e), message: e.to_string() });
            return report;
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal error".into());
            report.outcome = Outcome::Error;
            report.error = Some(TaskError { kind: "Panic".into(), message });
            return report;
        }
    };
    let Payload { passed, mut values, witnesses, hypotheses } = payload;
    values.insert("passed".into(), Value::Bool(passed));
    report.expectations = task
        .expect
        .iter()
        .map(|(key, expected)| {
            let actual = lookup(&values, key).cloned().unwrap_or(Value::Null);
            let ok = matches(expected, &actual, spec.options.tol);
            Expectation { key: key.clone(), expected: expected.clone(), actual, ok }
        })
        .collect();
    if !passed || report.expectations.iter().any(|e| !e.ok) {
        report.outcome = Outcome::Fail;
    }
    report.values = values;
    report.hypotheses = hypotheses;
    for (key, w) in witnesses {
        let size = scalar_count(&w);
        let keep = match mode {
            WitnessMode::All => true,
            WitnessMode::None => false,
            WitnessMode::Auto => size <= spec.options.elide_above,
        };
        if keep {
            report.witnesses.insert(key, w);
        } else {
            report.elided.push(key);
        }
    }
    report
}

/// Dotted-path lookup into nested objects.
fn lookup<'a>(values: &'a Map<String, Value>, key: &str) -> Option<&'a Value> {
    if let Some(v) = values.get(key) {
        return Some(v);
    }
    let mut parts = key.split('.');
    let mut cur = values.get(parts.next()?)?;
    for p in parts {
        cur = match cur {
            Value::Object(m) => m.get(p)?,
            Value::Array(a) => a.get(p.parse::<usize>().ok()?)?,
            _ => return None,
        };
    }
    Some(cur)
}

/// Numbers agree to `tol·(1 + |expected|)`; everything else must be equal.
fn matches(expected: &Value, actual: &Value, tol: f64) -> bool {
    match (expected, actual) {
        (Value::Number(e), Value::Number(a)) => {
            let (e, a) = (e.as_f64().unwrap_or(f64::NAN), a.as_f64().unwrap_or(f64::NAN));
            (e - a).abs() <= tol * (1.0 + e.abs())
        }
        (Value::Array(e), Value::Array(a)) => e.len() == a.len() && e.iter().zip(a).all(|(e, a)| matches(e, a, tol)),
        _ => expected == actual,
    }
}

fn scalar_count(v: &Value) -> usize {
    match v {
        Value::Array(a) => a.iter().map(scalar_count).sum(),
        Value::Object(m) => m.values().map(scalar_count).sum(),
        _ => 1,
    }
}
