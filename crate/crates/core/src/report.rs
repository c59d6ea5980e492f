//! Rendering of identity and suite reports as JSON, CSV, or a text table.
//!
//! JSON and CSV carry enough digits to reproduce every binary64 value; the
//! table rounds to 15 significant digits.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::format::{full_precision, significant};
use crate::identities::{IdentityReport, Params, SuiteReport};

pub const CSV_HEADER: [&str; 8] = [
    "identity_id",
    "params",
    "lhs",
    "rhs",
    "abs_residual",
    "rel_residual",
    "tolerance",
    "passed",
];

const TABLE_DIGITS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "table" => Ok(Self::Table),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::domain(format!("unknown output format '{other}'"))),
        }
    }
}

/// `name=value` pairs joined by `;`, names in sorted order.
pub fn params_cell(params: &Params) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn suite_json(report: &SuiteReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn identity_json(report: &IdentityReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn reports_csv<'a>(reports: impl IntoIterator<Item = &'a IdentityReport>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for r in reports {
        writer
            .write_record([
                r.identity_id.as_str().to_string(),
                params_cell(&r.params),
                full_precision(r.lhs),
                full_precision(r.rhs),
                full_precision(r.abs_residual),
                full_precision(r.rel_residual),
                full_precision(r.tolerance),
                r.passed.to_string(),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

pub fn reports_table<'a>(reports: impl IntoIterator<Item = &'a IdentityReport>) -> String {
    let rows: Vec<[String; 7]> = reports
        .into_iter()
        .map(|r| {
            let mut status = if r.passed { "pass" } else { "FAIL" }.to_string();
            if let Some(err) = &r.error {
                let _ = write!(status, " ({err})");
            } else if !r.converged {
                status.push_str(" (unconverged)");
            }
            [
                r.identity_id.as_str().to_string(),
                params_cell(&r.params),
                significant(r.lhs, TABLE_DIGITS),
                significant(r.rhs, TABLE_DIGITS),
                significant(r.rel_residual, 3),
                significant(r.tolerance, 3),
                status,
            ]
        })
        .collect();
    let header = [
        "identity",
        "params",
        "lhs",
        "rhs",
        "rel_residual",
        "tolerance",
        "result",
    ];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let padded: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(&header);
    for row in &rows {
        line(&row.each_ref().map(String::as_str));
    }
    out
}

pub fn suite_table(report: &SuiteReport) -> String {
    let mut out = reports_table(&report.reports);
    let _ = writeln!(
        out,
        "\n{} checks: {} passed, {} failed",
        report.reports.len(),
        report.n_pass(),
        report.n_fail()
    );
    out
}

pub fn render_suite(report: &SuiteReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => suite_table(report),
        OutputFormat::Json => suite_json(report),
        OutputFormat::Csv => reports_csv(&report.reports),
    }
}

pub fn render_identity(report: &IdentityReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => reports_table([report]),
        OutputFormat::Json => identity_json(report),
        OutputFormat::Csv => reports_csv([report]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{check_reflection, run_suite, IdentityId, SuiteGrid, Tolerances};
    use crate::quadrature::QuadratureConfig;
    use std::collections::BTreeMap;

    fn suite() -> SuiteReport {
        let mut grid = SuiteGrid::empty();
        grid.set(IdentityId::Reflection, BTreeMap::from([("x".into(), vec![0.5, 0.2])]))
            .unwrap();
        grid.set(
            IdentityId::GaussMultiplication,
            BTreeMap::from([("n".into(), vec![3.0]), ("x".into(), vec![2.5])]),
        )
        .unwrap();
        run_suite(&grid, &QuadratureConfig::default(), &Tolerances::default()).unwrap()
    }

    #[test]
    fn csv_header_and_params_column() {
        let csv = reports_csv(&suite().reports);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "identity_id,params,lhs,rhs,abs_residual,rel_residual,tolerance,passed"
        );
        let first = lines.next().unwrap();
        assert!(first.starts_with("gauss-multiplication,n=3;x=2.5,"), "{first}");
        assert!(first.ends_with(",true"));
    }

    #[test]
    fn csv_values_round_trip() {
        let report = suite();
        let csv = reports_csv(&report.reports);
        let mut reader = csv::Reader::from_reader(csv.as_bytes());
        for (row, r) in reader.records().zip(&report.reports) {
            let row = row.unwrap();
            assert_eq!(row[2].parse::<f64>().unwrap(), r.lhs);
            assert_eq!(row[3].parse::<f64>().unwrap(), r.rhs);
        }
    }

    #[test]
    fn json_round_trips_every_field() {
        let report = suite();
        let back: SuiteReport = serde_json::from_str(&suite_json(&report)).unwrap();
        assert_eq!(back, report);
        let value: serde_json::Value = serde_json::from_str(&suite_json(&report)).unwrap();
        assert_eq!(value["summary"]["fail"], 0);
        assert!(value["config"]["quadrature"]["abs_tol"].is_number());
    }

    #[test]
    fn table_mentions_every_check() {
        let table = suite_table(&suite());
        assert!(table.contains("reflection"));
        assert!(table.contains("3 checks: 3 passed, 0 failed"));
        let single = render_identity(&check_reflection(0.5).unwrap(), OutputFormat::Table);
        assert!(single.contains("3.14159265358979"));
    }
}
