use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;

/// A tabular result plus its structured form for JSON output.
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub data: Value,
}

impl Report {
    pub fn new<S: Serialize>(columns: &[&str], rows: Vec<Vec<String>>, data: &S) -> Self {
        Report {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            data: serde_json::to_value(data).expect("reports serialize"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Header {
    pub version: &'static str,
    pub command: String,
    pub field: String,
    pub seed: u64,
    pub budget: u64,
    /// Subcommand parameters after defaults and config merging.
    pub config: Value,
}

pub fn render(header: &Header, report: &Report, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = format!(
                "# mobius-fq {} command={} field={} seed={} budget={} config={}\n",
                header.version,
                header.command,
                header.field,
                header.seed,
                header.budget,
                serde_json::to_string(&header.config).expect("config serializes")
            );
            out.push_str(&report.columns.join(","));
            out.push('\n');
            for row in &report.rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let doc = json!({ "header": header, "data": report.data });
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

pub fn real(x: f64) -> String {
    let s = format!("{x:.12}");
    // Values that round to zero print without a sign.
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

pub fn complex(z: Complex64) -> [String; 2] {
    [real(z.re), real(z.im)]
}
