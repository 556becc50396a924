//! Verification reports and their text/JSON/CSV renderings.
//!
//! Reports are plain data assembled deterministically; rendering never
//! includes timing or machine state, so identical configurations produce
//! byte-identical output regardless of thread count.

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub name: String,
    pub cases_checked: u64,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report {
            name: name.into(),
            ..Report::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(Report::passed)
}

pub fn render(reports: &[Report], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => render_text(reports),
        OutputFormat::Json => render_json(reports),
        OutputFormat::Csv => render_csv(reports),
    }
}

fn render_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("== {}\n", r.name));
        out.push_str(&format!("cases checked: {}\n", r.cases_checked));
        if !r.columns.is_empty() {
            out.push_str(&format!("{}\n", r.columns.join(" | ")));
            for row in &r.rows {
                out.push_str(&format!("{}\n", row.join(" | ")));
            }
        }
        for note in &r.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        if r.violations.is_empty() {
            out.push_str("violations: 0\nresult: PASS\n");
        } else {
            out.push_str(&format!("violations: {}\n", r.violations.len()));
            for v in &r.violations {
                out.push_str(&format!("  VIOLATION {v}\n"));
            }
            out.push_str("result: FAIL\n");
        }
        out.push('\n');
    }
    out
}

fn report_json(r: &Report) -> Value {
    json!({
        "table": r.name,
        "cases_checked": r.cases_checked,
        "violations": r.violations,
        "rows": r.rows.iter().map(|row| {
            r.columns
                .iter()
                .cloned()
                .zip(row.iter().map(|v| Value::String(v.clone())))
                .collect::<serde_json::Map<String, Value>>()
        }).collect::<Vec<_>>(),
        "notes": r.notes,
        "passed": r.passed(),
    })
}

fn render_json(reports: &[Report]) -> String {
    let value = if reports.len() == 1 {
        report_json(&reports[0])
    } else {
        Value::Array(reports.iter().map(report_json).collect())
    };
    let mut s = serde_json::to_string_pretty(&value).expect("report serialization");
    s.push('\n');
    s
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn render_csv(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("# table: {}\n", r.name));
        out.push_str(&format!("# cases_checked: {}\n", r.cases_checked));
        if !r.columns.is_empty() {
            out.push_str(&format!(
                "{}\n",
                r.columns.iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(",")
            ));
            for row in &r.rows {
                out.push_str(&format!(
                    "{}\n",
                    row.iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(",")
                ));
            }
        }
        out.push_str(&format!("# violations: {}\n", r.violations.len()));
        for v in &r.violations {
            out.push_str(&format!("# VIOLATION {}\n", v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_stable() {
        let mut r = Report::new("demo");
        r.cases_checked = 3;
        r.columns = vec!["a".into(), "b".into()];
        r.rows = vec![vec!["1".into(), "x,y".into()]];
        r.notes.push("hello".into());
        let text = render(&[r.clone()], OutputFormat::Text);
        assert!(text.contains("result: PASS"));
        let csv = render(&[r.clone()], OutputFormat::Csv);
        assert!(csv.contains("\"x,y\""));
        let json = render(&[r], OutputFormat::Json);
        assert!(json.contains("\"table\": \"demo\""));
    }
}
