//! Run reports: what was asked, what came out, and how it compares to the bounds.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
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

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// One bound or property check. `margin` is the worst slack observed;
/// it is non-negative exactly when the check passes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub index: usize,
    pub name: String,
    pub verdict: Verdict,
    pub margin: f64,
    pub detail: String,
}

impl CheckReport {
    pub fn new(index: usize, name: &str, margin: f64, detail: impl Into<String>) -> Self {
        CheckReport {
            index,
            name: name.to_string(),
            verdict: Verdict::from_bool(margin >= 0.0),
            // Normalises -0.
            margin: margin + 0.0,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    /// Per check, in check order.
    pub checks_ms: Vec<f64>,
}

/// Everything a command did. Only `timing` varies between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: Option<u64>,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub outputs: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<CheckReport>,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            seed: None,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            checks: Vec::new(),
            timing: Timing::default(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_string(), to_value(value));
        self
    }

    pub fn output(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.outputs.insert(key.to_string(), to_value(value));
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// One line per check: `[ 3] PASS name margin=... detail`.
    pub fn check_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "[{:>2}] {} {} margin={:e} {}",
                    c.index,
                    c.verdict.label(),
                    c.name,
                    c.margin,
                    c.detail
                )
            })
            .collect()
    }
}

fn to_value(v: impl Serialize) -> serde_json::Value {
    serde_json::to_value(v).expect("plain data serializes")
}

/// JSON report with every timing field removed, for reproducibility checks.
pub fn without_timing(json: &str) -> serde_json::Result<serde_json::Value> {
    let mut v: serde_json::Value = serde_json::from_str(json)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing");
    }
    Ok(v)
}
