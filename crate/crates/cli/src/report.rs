//! Report emission: text, JSON (`schema_version` 1) and TSV for cohomology tables.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value as Json};

use crate::run::Report;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Tsv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Tsv => "tsv",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            _ => Err(format!("unknown format `{s}` (text, json, tsv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Tsv => "tsv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmitError {
    pub index: usize,
    pub command: &'static str,
}

impl fmt::Display for EmitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "command {} ({}): tsv output is only available for cech-table", self.index, self.command)
    }
}

impl std::error::Error for EmitError {}

pub(crate) fn verdict_text(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn verdict_json(v: Option<bool>) -> Json {
    v.map_or(Json::Null, |ok| json!(verdict_text(ok)))
}

fn report_json(r: &Report) -> Json {
    json!({
        "index": r.index,
        "command": r.kind.name(),
        "source": r.source,
        "verdict": verdict_json(r.verdict),
        "result": r.json,
    })
}

fn report_text(r: &Report) -> String {
    let mut s = format!("[{}] {}\n", r.index, r.source);
    for l in &r.lines {
        s.push_str("  ");
        s.push_str(l);
        s.push('\n');
    }
    if let Some(ok) = r.verdict {
        s.push_str(&format!("  verdict: {}\n", verdict_text(ok)));
    }
    s
}

fn report_tsv(r: &Report) -> Result<String, EmitError> {
    r.table.as_ref().map(|t| t.to_tsv()).ok_or(EmitError { index: r.index, command: r.kind.name() })
}

/// One document for a single report, as written by `--out`.
pub fn emit_one(r: &Report, format: Format) -> Result<String, EmitError> {
    match format {
        Format::Text => Ok(report_text(r)),
        Format::Json => {
            let mut doc = report_json(r);
            doc["schema_version"] = json!(SCHEMA_VERSION);
            Ok(pretty(&doc))
        }
        Format::Tsv => report_tsv(r),
    }
}

/// All reports as one document.
pub fn emit(reports: &[Report], format: Format) -> Result<String, EmitError> {
    match format {
        Format::Text => {
            let mut s: String = reports.iter().map(report_text).collect();
            let checks: Vec<bool> = reports.iter().filter_map(|r| r.verdict).collect();
            let failed = checks.iter().filter(|ok| !**ok).count();
            s.push_str(&format!("summary: {} command(s), {} check(s), {} failed\n", reports.len(), checks.len(), failed));
            Ok(s)
        }
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
                "failed": failed(reports),
            });
            Ok(pretty(&doc))
        }
        Format::Tsv => reports.iter().map(report_tsv).collect(),
    }
}

/// Any FAIL verdict.
pub fn failed(reports: &[Report]) -> bool {
    reports.iter().any(|r| r.verdict == Some(false))
}

fn pretty(doc: &Json) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("json values serialize");
    s.push('\n');
    s
}
