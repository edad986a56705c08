//! CSV and JSON-lines output, summaries and exit codes.
//!
//! Every row carries `schema = 1`. Floats are written in Rust's shortest
//! round-trip form, so identical inputs give identical bytes apart from the
//! `wall_time_ms` column.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::sweep::{AreaRow, BenchRow};
use crate::verify::{Status, VerdictRecord};

pub const SCHEMA_VERSION: u32 = 1;

pub const VERDICT_COLUMNS: [&str; 15] = [
    "schema",
    "check_name",
    "map_id",
    "family",
    "params",
    "r",
    "method",
    "lhs",
    "rhs",
    "slack",
    "tolerance",
    "passed",
    "resolution",
    "error_indicator",
    "wall_time_ms",
];

pub const AREA_COLUMNS: [&str; 10] =
    ["schema", "map_id", "family", "params", "r", "method", "value", "resolution", "error_indicator", "wall_time_ms"];

pub const BENCH_COLUMNS: [&str; 6] = ["schema", "m", "method", "value", "wall_time_ms", "rel_diff"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl Format {
    pub fn from_slug(s: &str) -> Option<Format> {
        match s {
            "csv" => Some(Format::Csv),
            "jsonl" => Some(Format::Jsonl),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

#[derive(Serialize)]
struct Versioned<'a, T> {
    schema: u32,
    #[serde(flatten)]
    row: &'a T,
}

fn write_jsonl<W: Write, T: Serialize>(mut w: W, rows: &[T]) -> Result<()> {
    for row in rows {
        serde_json::to_writer(&mut w, &Versioned { schema: SCHEMA_VERSION, row })?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

fn write_csv<W: Write, T>(w: W, header: &[&str], rows: &[T], fields: impl Fn(&T) -> Vec<String>) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for row in rows {
        let mut rec = vec![SCHEMA_VERSION.to_string()];
        rec.extend(fields(row));
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_verdicts<W: Write>(w: W, format: Format, records: &[VerdictRecord]) -> Result<()> {
    match format {
        Format::Jsonl => write_jsonl(w, records),
        Format::Csv => write_csv(w, &VERDICT_COLUMNS, records, |v| {
            vec![
                v.check_name.clone(),
                v.map_id.clone(),
                v.family.clone(),
                v.params.clone(),
                v.r.map(|r| r.to_string()).unwrap_or_default(),
                v.method.clone(),
                v.lhs.to_string(),
                v.rhs.to_string(),
                v.slack.to_string(),
                v.tolerance.to_string(),
                v.passed.to_string(),
                v.resolution.to_string(),
                v.error_indicator.to_string(),
                v.wall_time_ms.to_string(),
            ]
        }),
    }
}

pub fn write_areas<W: Write>(w: W, format: Format, rows: &[AreaRow]) -> Result<()> {
    match format {
        Format::Jsonl => write_jsonl(w, rows),
        Format::Csv => write_csv(w, &AREA_COLUMNS, rows, |a| {
            vec![
                a.map_id.clone(),
                a.family.clone(),
                a.params.clone(),
                a.r.to_string(),
                a.method.clone(),
                a.value.to_string(),
                a.resolution.to_string(),
                a.error_indicator.to_string(),
                a.wall_time_ms.to_string(),
            ]
        }),
    }
}

pub fn write_bench<W: Write>(w: W, format: Format, rows: &[BenchRow]) -> Result<()> {
    match format {
        Format::Jsonl => write_jsonl(w, rows),
        Format::Csv => write_csv(w, &BENCH_COLUMNS, rows, |b| {
            vec![
                b.m.to_string(),
                b.method.clone(),
                b.value.to_string(),
                b.wall_time_ms.to_string(),
                b.rel_diff.to_string(),
            ]
        }),
    }
}

/// Counts by outcome. A designed violation that occurs counts as a pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(records: &[VerdictRecord]) -> Self {
        let mut s = Summary::default();
        for r in records {
            if r.status == Status::Inconclusive {
                s.inconclusive += 1;
            } else if r.outcome_ok() {
                s.pass += 1;
            } else {
                s.fail += 1;
            }
        }
        s
    }

    /// 0 all pass, 1 any failure, 2 inconclusive results but no failure.
    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            1
        } else if self.inconclusive > 0 {
            2
        } else {
            0
        }
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "pass={} fail={} inconclusive={}", self.pass, self.fail, self.inconclusive)
    }
}
