//! Reports shared by every subcommand and their three renderings.

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Format;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// The constants every report is computed under.
#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub c_flow: String,
    pub c0: String,
    pub notes: Vec<String>,
}

impl Conventions {
    pub fn calibrated() -> Conventions {
        Conventions::with(
            kdv_core::diffalg::C_FLOW.to_string(),
            kdv_core::dmod::C0.to_string(),
        )
    }

    pub fn with(c_flow: String, c0: String) -> Conventions {
        Conventions {
            notes: vec![
                format!("flows act by ∂ₙu = c_flow·S′ₙ₊₁ with c_flow = {c_flow}"),
                format!("the linear term of C carries c0 = {c0}, solved from ev₁∘C = 0"),
            ],
            c_flow,
            c0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub conventions: Conventions,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub data: Value,
    /// Human-readable body for `--format text`.
    pub lines: Vec<String>,
    /// Header and rows for `--format csv`.
    pub table: (Vec<String>, Vec<Vec<String>>),
}

impl Report {
    pub fn new(command: &str, parameters: Value) -> Report {
        Report {
            command: command.to_string(),
            conventions: Conventions::calibrated(),
            parameters,
            checks: Vec::new(),
            data: Value::Null,
            lines: Vec::new(),
            table: (Vec::new(), Vec::new()),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Absorbs another report's checks under `prefix/`.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.checks.push(Check::new(
                format!("{prefix}/{}", c.name),
                c.passed,
                c.detail,
            ));
        }
        if let Value::Object(map) = &mut self.data {
            map.insert(prefix.to_string(), other.data);
        }
        self.lines.push(format!("[{prefix}]"));
        self.lines
            .extend(other.lines.into_iter().map(|l| format!("  {l}")));
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "conventions": self.conventions,
            "parameters": self.parameters,
            "passed": self.passed(),
            "checks": self.checks,
            "data": self.data,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = format!(
            "kdvres {} (c_flow = {}, c0 = {})\n",
            self.command, self.conventions.c_flow, self.conventions.c0
        );
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{status} {}: {}\n", c.name, c.detail));
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| !c.passed).count();
            s.push_str(&format!(
                "{} passed, {failed} failed\n",
                self.checks.len() - failed
            ));
        }
        s
    }

    fn render_csv(&self) -> String {
        let (header, rows) = if self.table.0.is_empty() {
            let rows = self
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
                .collect();
            (vec!["check".into(), "passed".into(), "detail".into()], rows)
        } else {
            self.table.clone()
        };
        let mut s = csv_row(&header);
        for r in &rows {
            s.push_str(&csv_row(r));
        }
        s
    }
}

fn csv_row(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect();
    format!("{}\n", quoted.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_when_needed() {
        assert_eq!(
            csv_row(&["a".into(), "b,c".into(), "say \"x\"".into()]),
            "a,\"b,c\",\"say \"\"x\"\"\"\n"
        );
    }

    #[test]
    fn merged_checks_are_prefixed() {
        let mut all = Report::new("verify all", json!({}));
        all.data = json!({});
        let mut part = Report::new("verify characters", json!({}));
        part.checks.push(Check::new("equal", false, "differs"));
        all.merge("characters", part);
        assert_eq!(all.checks[0].name, "characters/equal");
        assert!(!all.passed());
        assert!(all
            .render(Format::Text)
            .contains("FAIL characters/equal: differs"));
    }
}
