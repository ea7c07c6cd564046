use std::fmt::Write as _;

use ncg_core::hochschild::DegreeWindow;
use serde::Serialize;
use serde_json::Value;

pub const REPORT_FORMAT: &str = "ncg-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    ValidationFailed,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

/// An input by name, with the SHA-256 of its resolved content.
#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row<I: IntoIterator<Item = S>, S: ToString>(&mut self, cells: I) {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub tool: Tool,
    pub command: String,
    pub status: Status,
    pub inputs: Vec<Input>,
    pub field: Option<String>,
    pub window: Option<DegreeWindow>,
    pub truncation: Option<usize>,
    pub guard_band: Value,
    pub diagnostics: Vec<String>,
    pub result: Value,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            format: REPORT_FORMAT,
            tool: Tool { name: "ncg", version: env!("CARGO_PKG_VERSION") },
            command: command.into(),
            status: Status::Ok,
            inputs: Vec::new(),
            field: None,
            window: None,
            truncation: None,
            guard_band: Value::Object(Default::default()),
            diagnostics: Vec::new(),
            result: Value::Null,
            tables: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

pub fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("reports serialize") + "\n",
        Format::Csv => csv_tables(r),
        Format::Markdown => markdown(r),
    }
}

fn csv_tables(r: &Report) -> String {
    let mut out = String::new();
    for t in &r.tables {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&t.columns).expect("in-memory write");
        for row in &t.rows {
            w.write_record(row).expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory write");
        let _ = writeln!(out, "# {}", t.name);
        out.push_str(&String::from_utf8(bytes).expect("utf-8"));
        out.push('\n');
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn markdown(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# ncg {}\n", r.command);
    let _ = writeln!(out, "- status: {}", scalar(&serde_json::to_value(r.status).expect("status")));
    let _ = writeln!(out, "- version: {}", r.tool.version);
    for i in &r.inputs {
        let _ = writeln!(out, "- input {}: sha256 {}", i.name, &i.sha256[..16]);
    }
    if let Some(f) = &r.field {
        let _ = writeln!(out, "- field: {f}");
    }
    if let Some(w) = &r.window {
        match w.weights {
            Some((lo, hi)) => {
                let _ = writeln!(out, "- window: n <= {}, weights {lo}..={hi}", w.n_max);
            }
            None => {
                let _ = writeln!(out, "- window: n <= {}", w.n_max);
            }
        }
    }
    if let Some(n) = r.truncation {
        let _ = writeln!(out, "- truncation: u^{n}");
    }
    if let Value::Object(m) = &r.guard_band {
        for (k, v) in m {
            let _ = writeln!(out, "- guard band {k}: {}", scalar(v));
        }
    }
    if let Value::Object(m) = &r.result {
        out.push('\n');
        for (k, v) in m {
            if !v.is_array() && !v.is_object() {
                let _ = writeln!(out, "- {k}: {}", scalar(v));
            }
        }
    }
    for t in &r.tables {
        let _ = writeln!(out, "\n## {}\n", t.name);
        let _ = writeln!(out, "| {} |", t.columns.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(t.columns.len()));
        for row in &t.rows {
            let _ = writeln!(out, "| {} |", row.join(" | "));
        }
    }
    if !r.diagnostics.is_empty() {
        let _ = writeln!(out, "\n## diagnostics\n");
        for d in &r.diagnostics {
            let _ = writeln!(out, "- {d}");
        }
    }
    out
}
