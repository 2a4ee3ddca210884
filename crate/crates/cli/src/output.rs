//! Run manifests and the three output formats.

use std::collections::BTreeMap;
use std::io::{self, Write};

use chrono::{DateTime, SecondsFormat, Utc};
use resolvent::planes::{Check, Status};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::Format;

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub seed: String,
    pub precision: String,
    pub tolerances: BTreeMap<&'static str, f64>,
    pub version: &'static str,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(seed: u64, precision: u32) -> Self {
        let mut command: Vec<String> = std::env::args().collect();
        if let Some(first) = command.first_mut() {
            *first = "resolvent".into();
        }
        let tolerances = BTreeMap::from([
            ("bertini", resolvent::verify::BERTINI_TOL),
            ("certify", resolvent::planes::CERTIFY_TOL),
            ("cluster", resolvent::planes::CLUSTER_TOL),
            ("residual", resolvent::planes::SliceConfig::default().residual_tol),
        ]);
        Self {
            command,
            seed: seed.to_string(),
            precision: precision.to_string(),
            tolerances,
            version: env!("CARGO_PKG_VERSION"),
            timestamp: timestamp(),
        }
    }
}

/// `SOURCE_DATE_EPOCH` when set, so repeated runs can be byte-identical.
fn timestamp() -> String {
    let at = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|s| DateTime::<Utc>::from_timestamp(s, 0))
        .unwrap_or_else(Utc::now);
    at.to_rfc3339_opts(SecondsFormat::Secs, true)
}

/// A table of string cells; JSON rows use the header as keys unless given.
#[derive(Debug, Default)]
pub struct Rows {
    pub header: Vec<String>,
    pub records: Vec<Vec<String>>,
    pub json: Option<Vec<Value>>,
}

#[derive(Debug)]
pub enum Body {
    Rows(Rows),
    Checks(Vec<Check>),
}

/// Everything a subcommand produces.
#[derive(Debug)]
pub struct Outcome {
    pub body: Body,
    /// Text mode only: printed instead of the table when set.
    pub text: Option<String>,
    /// Text mode only: lines after the checks.
    pub notes: Vec<String>,
    /// Extra top-level JSON members.
    pub extra: Vec<(&'static str, Value)>,
}

impl Outcome {
    pub fn rows(rows: Rows) -> Self {
        Self {
            body: Body::Rows(rows),
            text: None,
            notes: Vec::new(),
            extra: Vec::new(),
        }
    }

    pub fn checks(checks: Vec<Check>) -> Self {
        Self {
            body: Body::Checks(checks),
            text: None,
            notes: Vec::new(),
            extra: Vec::new(),
        }
    }

    pub fn with_text(mut self, text: impl Into<String>) -> Self {
        self.text = Some(text.into());
        self
    }

    pub fn with_extra(mut self, key: &'static str, value: Value) -> Self {
        self.extra.push((key, value));
        self
    }

    /// False when any check failed.
    pub fn ok(&self) -> bool {
        match &self.body {
            Body::Rows(_) => true,
            Body::Checks(c) => c.iter().all(|c| c.status != Status::Fail),
        }
    }

    pub fn write(&self, format: Format, manifest: &RunManifest, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Text => self.write_text(out),
            Format::Json => {
                let v = self.to_json(manifest);
                serde_json::to_writer_pretty(&mut *out, &v)?;
                writeln!(out)
            }
            Format::Csv => self.write_csv(out),
        }
    }

    fn to_json(&self, manifest: &RunManifest) -> Value {
        let mut top = Map::new();
        top.insert(
            "manifest".into(),
            serde_json::to_value(manifest).expect("manifest serializes"),
        );
        match &self.body {
            Body::Rows(r) => {
                let rows = match &r.json {
                    Some(v) => v.clone(),
                    None => r
                        .records
                        .iter()
                        .map(|rec| {
                            let obj: Map<String, Value> =
                                r.header.iter().cloned().zip(rec.iter().map(|c| json!(c))).collect();
                            Value::Object(obj)
                        })
                        .collect(),
                };
                top.insert("rows".into(), Value::Array(rows));
            }
            Body::Checks(c) => {
                top.insert("checks".into(), serde_json::to_value(c).expect("checks serialize"));
                top.insert("passed".into(), json!(self.ok()));
            }
        }
        for (k, v) in &self.extra {
            top.insert((*k).into(), v.clone());
        }
        let mut v = Value::Object(top);
        stringify_integers(&mut v);
        v
    }

    fn write_text(&self, out: &mut impl Write) -> io::Result<()> {
        if let Some(t) = &self.text {
            writeln!(out, "{t}")?;
        } else {
            match &self.body {
                Body::Rows(r) => write_table(out, r)?,
                Body::Checks(checks) => {
                    for c in checks {
                        write!(out, "{}  {}", c.status, c.description)?;
                        if c.status != Status::Pass || c.expected != c.computed {
                            write!(
                                out,
                                " [expected {}; computed {}]",
                                c.expected.join(", "),
                                c.computed.join(", ")
                            )?;
                        }
                        if let Some(n) = &c.note {
                            write!(out, " ({n})")?;
                        }
                        writeln!(out)?;
                    }
                }
            }
        }
        for n in &self.notes {
            writeln!(out, "{n}")?;
        }
        if let Body::Checks(checks) = &self.body {
            let count = |s| checks.iter().filter(|c| c.status == s).count();
            let verdict = if self.ok() { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{verdict}: {} checks, {} failed, {} flagged",
                checks.len(),
                count(Status::Fail),
                count(Status::Flagged)
            )?;
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        match &self.body {
            Body::Rows(r) => {
                w.write_record(&r.header)?;
                for rec in &r.records {
                    w.write_record(rec)?;
                }
            }
            Body::Checks(checks) => {
                w.write_record(["description", "status", "expected", "computed", "note"])?;
                for c in checks {
                    w.write_record([
                        c.description.clone(),
                        c.status.to_string(),
                        c.expected.join("; "),
                        c.computed.join("; "),
                        c.note.clone().unwrap_or_default(),
                    ])?;
                }
            }
        }
        w.flush()
    }
}

fn write_table(out: &mut impl Write, r: &Rows) -> io::Result<()> {
    let cols = r.header.len();
    let widths: Vec<usize> = (0..cols)
        .map(|i| {
            r.records
                .iter()
                .map(|rec| rec[i].chars().count())
                .chain([r.header[i].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}", w = *w))
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(&r.header))?;
    for rec in &r.records {
        writeln!(out, "{}", line(rec))?;
    }
    Ok(())
}

/// Rewrites every JSON integer as its decimal string; floats are kept.
pub fn stringify_integers(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => *v = Value::String(n.to_string()),
        Value::Array(a) => a.iter_mut().for_each(stringify_integers),
        Value::Object(o) => o.values_mut().for_each(stringify_integers),
        _ => {}
    }
}

pub fn check(description: impl Into<String>, expected: impl ToString, computed: impl ToString, ok: bool) -> Check {
    Check {
        description: description.into(),
        expected: vec![expected.to_string()],
        computed: vec![computed.to_string()],
        status: if ok { Status::Pass } else { Status::Fail },
        note: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_become_strings() {
        let mut v = json!({"a": 1, "b": [2, 0.5], "c": {"d": -3}});
        stringify_integers(&mut v);
        assert_eq!(v, json!({"a": "1", "b": ["2", 0.5], "c": {"d": "-3"}}));
    }
}
