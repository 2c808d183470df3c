//! Text, JSON and CSV serialization of reports and search results.
//!
//! JSON is the lossless form. CSV has one row per report with the columns of
//! [`CSV_HEADER`]; partitions are written like `[5,2,2,1]`. Text mirrors the
//! usual phrasing of relations, e.g. `relation: L_a = L_b`.

use std::fmt::Write as _;

use serde::Serialize;

use gal_core::IntersectionReport;

use crate::search::{SearchHit, SearchOutcome};
use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

pub const CSV_HEADER: [&str; 11] =
    ["family", "a", "b", "kinds", "group_a", "group_b", "relation", "dt1", "dt2", "certification", "witness"];

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn csv_row(r: &IntersectionReport, kinds: &[u8]) -> Vec<String> {
    vec![
        r.family.to_string(),
        r.a.to_string(),
        r.b.to_string(),
        kinds.iter().map(u8::to_string).collect::<Vec<_>>().join(";"),
        r.group_a.to_string(),
        r.group_b.to_string(),
        r.relation.to_string(),
        opt(&r.dt1),
        opt(&r.dt2),
        r.certification.to_string(),
        opt(&r.witness),
    ]
}

fn write_csv<'a>(rows: impl Iterator<Item = (&'a IntersectionReport, &'a [u8])>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for (r, k) in rows {
        w.write_record(csv_row(r, k))?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

fn json<T: Serialize + ?Sized>(v: &T) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    Ok(s)
}

pub fn report_text(r: &IntersectionReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family: {}", r.family);
    let _ = writeln!(s, "a: {}", r.a);
    let _ = writeln!(s, "b: {}", r.b);
    let _ = writeln!(s, "G_a = {}", r.group_a);
    let _ = writeln!(s, "G_b = {}", r.group_b);
    if let Some(d) = &r.dt1 {
        let _ = writeln!(s, "DT(F1) = {d}");
    }
    if let Some(d) = &r.dt2 {
        let _ = writeln!(s, "DT(F2) = {d}");
    }
    let _ = writeln!(s, "relation: {}", r.relation.phrase());
    let _ = writeln!(s, "certification: {}", r.certification);
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "witness: {w}");
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn emit_report(r: &IntersectionReport, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    match format {
        OutputFormat::Text => Ok(report_text(r).into_bytes()),
        OutputFormat::Json => json(r),
        OutputFormat::Csv => write_csv(std::iter::once((r, &[][..]))),
    }
}

fn hit_line(h: &SearchHit) -> String {
    let kinds = if h.kinds.is_empty() {
        String::new()
    } else {
        format!("  F{}", h.kinds.iter().map(u8::to_string).collect::<Vec<_>>().join(",F"))
    };
    format!(
        "({}) ({})  {}  G = {}{}  [{}]",
        h.a,
        h.b,
        h.report.relation.phrase(),
        h.report.group_a,
        kinds,
        h.report.certification
    )
}

/// The hit list only; stats and skipped pairs go to the sidecar.
pub fn emit_hits(hits: &[SearchHit], format: OutputFormat) -> Result<Vec<u8>, CliError> {
    match format {
        OutputFormat::Text => Ok(hits.iter().map(|h| hit_line(h) + "\n").collect::<String>().into_bytes()),
        OutputFormat::Json => json(hits),
        OutputFormat::Csv => write_csv(hits.iter().map(|h| (&h.report, h.kinds.as_slice()))),
    }
}

/// Stats and per-pair errors of a search.
pub fn emit_sidecar(out: &SearchOutcome) -> Result<Vec<u8>, CliError> {
    #[derive(Serialize)]
    struct Sidecar<'a> {
        stats: &'a crate::search::SearchStats,
        errors: &'a [crate::search::PairError],
    }
    json(&Sidecar { stats: &out.stats, errors: &out.errors })
}
