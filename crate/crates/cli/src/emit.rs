use std::io::Write;

use anyhow::Result;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::config::Format;
use crate::record::{fmt_real, ReportRecord};

/// Records of one suite, in execution order.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub records: Vec<ReportRecord>,
}

struct Document<'a>(&'a [SuiteReport]);

impl Serialize for Document<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for r in self.0 {
            map.serialize_entry(r.suite, &r.records)?;
        }
        map.end()
    }
}

pub fn emit(out: &mut impl Write, reports: &[SuiteReport], format: Format) -> Result<()> {
    match format {
        Format::Json => emit_json(out, reports),
        Format::Csv => emit_csv(out, reports),
        Format::Text => emit_text(out, reports),
    }
}

/// One JSON object keyed by suite name, each holding an array of records.
pub fn emit_json(out: &mut impl Write, reports: &[SuiteReport]) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, &Document(reports))?;
    writeln!(out)?;
    Ok(())
}

const CSV_HEADER: [&str; 8] =
    ["suite", "id", "status", "closed_form", "tolerance", "inputs", "numeric_routes", "rel_errors"];

/// Map-valued columns are rendered as `name=value;name=value`.
pub fn emit_csv(out: &mut impl Write, reports: &[SuiteReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for report in reports {
        for r in &report.records {
            w.write_record([
                report.suite.to_string(),
                r.id.clone(),
                r.status.as_str().to_string(),
                fmt_real(r.closed_form.0),
                fmt_real(r.tolerance.0),
                r.inputs.render(),
                r.numeric_routes.render(),
                r.rel_errors.render(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

const ID_WIDTH: usize = 28;

fn short(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.10e}")
    } else {
        fmt_real(x)
    }
}

/// Fixed-width columns; the last column lists the routes and errors.
pub fn emit_text(out: &mut impl Write, reports: &[SuiteReport]) -> Result<()> {
    for report in reports {
        writeln!(out, "== {} ==", report.suite)?;
        writeln!(out, "{:<ID_WIDTH$} {:<7} {:>18} {:>9}  details", "id", "status", "closed_form", "max_err")?;
        for r in &report.records {
            let max_err =
                r.rel_errors.0.iter().map(|e| e.1).fold(None, |m: Option<f64>, e| Some(m.map_or(e, |m| m.max(e))));
            let max_err = max_err.map_or_else(|| "-".to_string(), |e| format!("{e:.2e}"));
            let routes =
                r.numeric_routes.0.iter().map(|(k, v)| format!("{k}={}", short(*v))).collect::<Vec<_>>().join(" ");
            let line = format!(
                "{:<ID_WIDTH$} {:<7} {:>18} {:>9}  {}",
                r.id,
                r.status.as_str(),
                short(r.closed_form.0),
                max_err,
                routes
            );
            writeln!(out, "{}", line.trim_end())?;
        }
        writeln!(out)?;
    }
    Ok(())
}
