//! Named identity checks and their text/JSON rendering.

use std::fmt::Display;

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), lhs: lhs.into(), rhs: rhs.into(), pass }
    }

    /// Compares two values exactly and records their renderings.
    pub fn equal<T: PartialEq + Display>(name: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Self::new(name, lhs.to_string(), rhs.to_string(), lhs == rhs)
    }

    /// A yes/no property with no natural right-hand side.
    pub fn holds(name: impl Into<String>, detail: impl Into<String>, pass: bool) -> Self {
        Self::new(name, detail, if pass { "holds" } else { "fails" }, pass)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: Option<String>,
    pub checks: Vec<Check>,
    /// Free-form lines printed after the table in text mode.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: Some(suite.into()), ..Default::default() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Appends the checks and notes of `other`, prefixing check names with its suite.
    pub fn absorb(&mut self, other: Report) {
        let prefix = other.suite.clone();
        for mut c in other.checks {
            if let Some(p) = &prefix {
                c.name = format!("{p}/{}", c.name);
            }
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// `{suite, checks: [{name, lhs, rhs, pass}], passed, failed}` with sorted keys.
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "pass": c.pass}))
            .collect();
        let mut v = json!({"checks": checks, "passed": self.passed(), "failed": self.failed()});
        if let Some(s) = &self.suite {
            v["suite"] = json!(s);
        }
        v
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }

    /// Table with columns `check | computed | expected | pass`, then notes and a summary.
    pub fn to_text(&self) -> String {
        let header = ["check", "computed", "expected", "pass"];
        let rows: Vec<[String; 4]> = self
            .checks
            .iter()
            .map(|c| [c.name.clone(), c.lhs.clone(), c.rhs.clone(), if c.pass { "PASS" } else { "FAIL" }.to_string()])
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: [&str; 4]| -> String {
            let padded: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join(" | ").trim_end().to_string()
        };
        let mut out = String::new();
        if let Some(s) = &self.suite {
            out.push_str(&format!("suite: {s}\n"));
        }
        out.push_str(&line(header));
        out.push('\n');
        out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
        out.push('\n');
        for r in &rows {
            out.push_str(&line([&r[0], &r[1], &r[2], &r[3]]));
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(n);
            out.push('\n');
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed(), self.failed()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_json() {
        let r = Report::default();
        assert_eq!(r.to_json(), json!({"checks": [], "passed": 0, "failed": 0}));
    }

    #[test]
    fn json_is_key_sorted_and_stable() {
        let mut r = Report::new("demo");
        r.push(Check::equal("two", &2, &2));
        r.push(Check::equal("three", &3, &4));
        let s = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(
            s,
            r#"{"checks":[{"lhs":"2","name":"two","pass":true,"rhs":"2"},{"lhs":"3","name":"three","pass":false,"rhs":"4"}],"failed":1,"passed":1,"suite":"demo"}"#
        );
        assert_eq!(s, serde_json::to_string(&r.clone().to_json()).unwrap());
    }

    #[test]
    fn text_table() {
        let mut r = Report::new("demo");
        r.push(Check::new("[h,x]", "a", "a", true));
        let t = r.to_text();
        assert!(t.contains("check | computed | expected | pass"));
        assert!(t.contains("[h,x] | a        | a        | PASS"));
        assert!(t.ends_with("1 passed, 0 failed\n"));
    }
}
