//! Rendering of verification reports and atlas listings as JSON, markdown and CSV.

use serde::Serialize;

use crate::atlas::AtlasEntry;
use crate::error::{Error, Result};
use crate::verify::TheoremReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Md,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Malformed(format!("format {other:?}; use json, md or csv"))),
        }
    }
}

/// One flat row: `id, field, expected, computed, status, seconds`.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub id: String,
    pub field: String,
    pub expected: String,
    pub computed: String,
    pub status: String,
    pub seconds: String,
}

pub fn report_rows(reports: &[TheoremReport]) -> Vec<Row> {
    reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c| Row {
                id: format!("{}/{}", r.driver, c.id),
                field: r.field.clone(),
                expected: c.expected.clone(),
                computed: c.computed.clone(),
                status: c.status.to_string(),
                seconds: r.seconds.map_or(String::new(), |s| format!("{s:.3}")),
            })
        })
        .collect()
}

pub fn atlas_rows(field: &str, entries: &[AtlasEntry]) -> Vec<Row> {
    entries
        .iter()
        .map(|e| Row {
            id: e.id.clone(),
            field: field.into(),
            expected: format!(
                "{:?} {}",
                e.expected_od0,
                e.expected_od4.as_ref().map_or("-".into(), |v| format!("{v:?}"))
            ),
            computed: format!("{:?} {:?}", e.od0, e.od4),
            status: serde_json::to_value(e.status)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default(),
            seconds: String::new(),
        })
        .collect()
}

pub fn csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Malformed(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Malformed(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn reports_markdown(reports: &[TheoremReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out += &format!("## {} over GF({}): {}\n\n", r.driver, r.field, r.status);
        out += &format!("{}\n\n", r.title);
        out += "| check | claim | expected | computed | status |\n|---|---|---|---|---|\n";
        for c in &r.checks {
            out += &format!(
                "| {} | {} | {} | {} | {} |\n",
                cell(&c.id),
                cell(&c.claim),
                cell(&c.expected),
                cell(&c.computed),
                c.status
            );
        }
        if !r.enumerated.is_empty() {
            out += "\nEnumerated:\n\n";
            for (k, v) in &r.enumerated {
                out += &format!("- {k}: {v}\n");
            }
        }
        let notes: Vec<&String> = r
            .notes
            .iter()
            .chain(r.checks.iter().filter_map(|c| c.note.as_ref()))
            .collect();
        if !notes.is_empty() {
            out += "\nNotes:\n\n";
            let mut seen = std::collections::BTreeSet::new();
            for n in notes {
                if seen.insert(n) {
                    out += &format!("- {n}\n");
                }
            }
        }
        if let Some(s) = r.seconds {
            out += &format!("\nTime: {s:.3} s\n");
        }
        out += "\n";
    }
    out
}

pub fn atlas_markdown(field: &str, entries: &[AtlasEntry]) -> String {
    let mut out = format!("# Orbit representatives over GF({field})\n\n");
    out += "| id | kind | parameters | OD0 | OD4 | expected OD0 | expected OD4 | status |\n";
    out += "|---|---|---|---|---|---|---|---|\n";
    for e in entries {
        let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out += &format!(
            "| {} | {:?} | {} | {:?} | {:?} | {:?} | {} | {} |\n",
            e.id,
            e.kind,
            params.join(", "),
            e.od0,
            e.od4,
            e.expected_od0,
            e.expected_od4.as_ref().map_or("-".into(), |v| format!("{v:?}")),
            serde_json::to_value(e.status)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default()
        );
    }
    out
}
