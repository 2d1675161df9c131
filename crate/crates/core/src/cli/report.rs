use serde_json::{json, Value};

/// One named check with its outcome and supporting data.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

/// A JSON report with a plain-text summary footer.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
    /// Extra payload (relation files, tables) kept next to the checks.
    pub data: Value,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report { name: name.into(), checks: Vec::new(), data: Value::Null }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: Value) {
        self.checks.push(Check { name: name.into(), pass, detail });
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn merge(&mut self, other: Report) {
        let prefix = other.name.clone();
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}/{}", c.name), ..c });
        }
        if !other.data.is_null() {
            if self.data.is_null() {
                self.data = json!({});
            }
            self.data[prefix] = other.data;
        }
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> =
            self.checks.iter().map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail })).collect();
        json!({ "suite": self.name, "ok": self.ok(), "checks": checks, "data": self.data })
    }

    pub fn footer(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("{} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name));
        }
        s.push_str(&format!(
            "{}: {} checks, {} failed: {}\n",
            self.name,
            self.checks.len(),
            self.failures(),
            if self.ok() { "ok" } else { "FAILED" }
        ));
        s
    }
}
