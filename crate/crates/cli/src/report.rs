use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// One verified property with its residual and tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    /// Plain statement of the property that was checked.
    pub anchor: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `residual <= tol`.
    pub fn residual(name: &str, anchor: &str, residual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            residual,
            tol,
            passed: residual.is_finite() && residual <= tol,
        }
    }

    /// A yes/no check; the residual is 0 when it holds and 1 otherwise.
    pub fn flag(name: &str, anchor: &str, holds: bool) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            residual: if holds { 0.0 } else { 1.0 },
            tol: 0.0,
            passed: holds,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "anchor": self.anchor,
            "residual": self.residual,
            "tol": self.tol,
            "passed": self.passed,
        })
    }
}

/// Machine-readable outcome of a subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub values: Map<String, Value>,
    pub checks: Vec<Check>,
    /// The main computed object (an associator, a graph combination, a
    /// weight), written by `--out`.
    pub artifact: Option<Value>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            values: Map::new(),
            checks: Vec::new(),
            artifact: None,
            elapsed_ms: 0,
        }
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.values.insert(key.into(), v.into());
        self
    }

    pub fn check(&mut self, c: Check) -> &mut Self {
        self.checks.push(c);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// 0 when every check passed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "values": Value::Object(self.values.clone()),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "passed": self.passed(),
            "artifact": self.artifact.clone().unwrap_or(Value::Null),
            "timing": { "elapsed_ms": self.elapsed_ms as u64 },
            "versions": { "assoclab": env!("CARGO_PKG_VERSION") },
        })
    }

    /// Human-readable summary: values, then one line per check.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "assoclab {}  ({} ms)", self.command, self.elapsed_ms);
        let width = self.values.keys().map(|k| k.len()).max().unwrap_or(0);
        for (k, v) in &self.values {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "  {k:<width$}  {shown}");
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "  checks:");
            let nw = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "    {verdict}  {:<nw$}  residual {:.3e} (tol {:.1e})  {}",
                    c.name, c.residual, c.tol, c.anchor
                );
            }
        }
        out
    }
}
