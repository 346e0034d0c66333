//! Pass/fail records shared by every verification suite.

use std::fmt::Display;

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub identity: String,
    pub instance: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport { suite: suite.into(), checks: Vec::new() }
    }

    pub fn record(&mut self, identity: &str, instance: impl Into<String>, pass: bool) {
        self.checks.push(Check {
            identity: identity.to_string(),
            instance: instance.into(),
            pass,
            detail: None,
            max_residual: None,
        });
    }

    /// Records an equality, keeping both sides in the detail when they differ.
    pub fn eq<T: PartialEq + Display>(&mut self, identity: &str, instance: impl Into<String>, lhs: &T, rhs: &T) {
        let pass = lhs == rhs;
        self.checks.push(Check {
            identity: identity.to_string(),
            instance: instance.into(),
            pass,
            detail: (!pass).then(|| format!("lhs = {lhs}, rhs = {rhs}")),
            max_residual: None,
        });
    }

    pub fn residual(&mut self, identity: &str, instance: impl Into<String>, residual: f64, tol: f64) {
        let pass = residual.is_finite() && residual <= tol;
        self.checks.push(Check {
            identity: identity.to_string(),
            instance: instance.into(),
            pass,
            detail: Some(format!("residual = {residual:.3e}, tol = {tol:.1e}")),
            max_residual: Some(residual),
        });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    /// One line per identity with pass counts.
    pub fn summary(&self) -> String {
        let mut names: Vec<&str> = Vec::new();
        for c in &self.checks {
            if !names.contains(&c.identity.as_str()) {
                names.push(&c.identity);
            }
        }
        let mut out = String::new();
        for name in names {
            let (ok, total) = self
                .checks
                .iter()
                .filter(|c| c.identity == name)
                .fold((0, 0), |(o, t), c| (o + c.pass as usize, t + 1));
            let flag = if ok == total { "ok" } else { "FAIL" };
            out.push_str(&format!("{:<28} {ok}/{total} {flag}\n", name));
        }
        for f in self.failures().take(20) {
            out.push_str(&format!(
                "  failed {} [{}] {}\n",
                f.identity,
                f.instance,
                f.detail.as_deref().unwrap_or("")
            ));
        }
        out
    }
}
