//! Report documents and their JSON, CSV and markdown projections.

use std::time::{SystemTime, UNIX_EPOCH};

use bernoulli_core::classical::{bernoulli, cauchy1, euler_number, hw};
use bernoulli_core::congr::{PrimeSweepReport, Residue};
use bernoulli_core::fps::{Egf, SeriesParams};
use bernoulli_core::identities::{IdentityReport, Params};
use bernoulli_core::polybern::{dibernoulli, poly_bernoulli};
use bernoulli_core::seqcore::{harmonic, rat, stirling1_row, stirling2_row, to_fraction};
use bernoulli_core::Rat;
use serde::Serialize;

use crate::{Format, Sequence};

#[derive(Debug, Serialize)]
pub struct Meta {
    tool: &'static str,
    version: &'static str,
    generated_at_unix: u64,
}

impl Meta {
    pub fn now() -> Self {
        let generated_at_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            generated_at_unix,
        }
    }
}

#[derive(Debug, Serialize)]
struct WithMeta<'a, T> {
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<&'a Meta>,
    #[serde(flatten)]
    body: &'a T,
}

fn to_json<T: Serialize>(body: &T, meta: Option<&Meta>) -> String {
    let mut s = serde_json::to_string_pretty(&WithMeta { meta, body }).expect("report is serializable");
    s.push('\n');
    s
}

#[derive(Debug, Serialize)]
pub struct FailureRecord {
    pub id: String,
    pub params: Params,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_residue: Option<Residue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_residue: Option<Residue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// The canonical report shape shared by `verify` and `congruence`.
#[derive(Debug, Serialize)]
pub struct IdentitySuite {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<FailureRecord>,
    pub notes: Vec<String>,
}

impl IdentitySuite {
    pub fn new(selector: &str, reports: &[IdentityReport]) -> Self {
        let mut failures = Vec::new();
        let mut notes = Vec::new();
        for r in reports {
            notes.push(format!("{}: {} cases on {}", r.id, r.cases, r.domain));
            notes.extend(r.notes.iter().map(|n| format!("{}: {n}", r.id)));
            failures.extend(r.failures.iter().map(|f| FailureRecord {
                id: f.id.to_string(),
                params: f.params.clone(),
                lhs: f.lhs.as_ref().map(to_fraction),
                rhs: f.rhs.as_ref().map(to_fraction),
                lhs_residue: None,
                rhs_residue: None,
                error: f.error.clone(),
            }));
        }
        Self {
            suite: format!("verify {selector}"),
            cases: reports.iter().map(|r| r.cases).sum(),
            failures,
            notes,
        }
    }
}

pub fn congruence_suite(selector: &str, report: &PrimeSweepReport) -> IdentitySuite {
    let mut failures: Vec<FailureRecord> = report
        .failures()
        .map(|c| FailureRecord {
            id: c.id.to_string(),
            params: c.params.clone(),
            lhs: Some(to_fraction(&c.lhs_value)),
            rhs: Some(to_fraction(&c.rhs_value)),
            lhs_residue: Some(c.lhs),
            rhs_residue: Some(c.rhs),
            error: None,
        })
        .collect();
    failures.extend(report.errors.iter().map(|e| FailureRecord {
        id: e.id.to_string(),
        params: Params::new().with_int("p", e.p as i64),
        lhs: None,
        rhs: None,
        lhs_residue: None,
        rhs_residue: None,
        error: Some(e.error.clone()),
    }));
    let mut notes = vec![format!(
        "{} odd primes up to {}: {:?}",
        report.primes.len(),
        report.p_max,
        report.primes
    )];
    notes.extend(report.skipped.iter().map(|s| format!("{} skipped at p = {}: {}", s.id, s.p, s.reason)));
    notes.extend(report.notes.iter().cloned());
    IdentitySuite {
        suite: format!("congruence {selector}"),
        cases: report.checks.len() + report.errors.len(),
        failures,
        notes,
    }
}

fn csv_doc(meta: Option<&Meta>, header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields");
    match meta_line(meta) {
        Some(line) => format!("# {line}\n{body}"),
        None => body,
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn residue_detail(f: &FailureRecord) -> String {
    match (&f.lhs_residue, &f.rhs_residue, &f.error) {
        (_, _, Some(e)) => e.clone(),
        (Some(l), Some(r), None) => format!("{} != {} (mod {})", l.value, r.value, l.modulus),
        _ => String::new(),
    }
}

fn meta_line(meta: Option<&Meta>) -> Option<String> {
    meta.map(|m| format!("{} {} generated_at_unix={}", m.tool, m.version, m.generated_at_unix))
}

pub fn render_suite(suite: &IdentitySuite, format: Format, meta: Option<&Meta>) -> String {
    let dash = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".to_owned());
    match format {
        Format::Json => to_json(suite, meta),
        Format::Csv => {
            let mut rows = vec![vec![
                "summary".to_owned(),
                suite.suite.clone(),
                String::new(),
                String::new(),
                String::new(),
                format!("{} cases", suite.cases),
            ]];
            for f in &suite.failures {
                rows.push(vec![
                    "failure".to_owned(),
                    f.id.clone(),
                    f.params.to_string(),
                    dash(&f.lhs),
                    dash(&f.rhs),
                    residue_detail(f),
                ]);
            }
            for n in &suite.notes {
                let mut row = vec![String::new(); 6];
                row[0] = "note".to_owned();
                row[5] = n.clone();
                rows.push(row);
            }
            csv_doc(meta, &["kind", "id", "params", "lhs", "rhs", "detail"], rows)
        }
        Format::Markdown => {
            let mut out = format!("# {}\n\n", suite.suite);
            if let Some(line) = meta_line(meta) {
                out.push_str(&format!("_{line}_\n\n"));
            }
            out.push_str(&format!("{} cases, {} failures\n\n", suite.cases, suite.failures.len()));
            if !suite.failures.is_empty() {
                out.push_str("| id | params | lhs | rhs | detail |\n|---|---|---|---|---|\n");
                for f in &suite.failures {
                    out.push_str(&format!(
                        "| {} | {} | {} | {} | {} |\n",
                        f.id,
                        md_cell(&f.params.to_string()),
                        dash(&f.lhs),
                        dash(&f.rhs),
                        md_cell(&residue_detail(f))
                    ));
                }
                out.push('\n');
            }
            if !suite.notes.is_empty() {
                out.push_str("## Notes\n\n");
                for n in &suite.notes {
                    out.push_str(&format!("- {n}\n"));
                }
            }
            out
        }
    }
}

/// Output of `compute`: scalar sequences carry `value`, Stirling tables `row`.
#[derive(Debug, Serialize)]
pub struct ComputeTable {
    sequence: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    values: Vec<ComputeRow>,
}

#[derive(Debug, Serialize)]
struct ComputeRow {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    row: Option<Vec<String>>,
}

pub fn compute_table(sequence: Sequence, n_max: usize, x: Option<&Rat>, p: Option<u32>) -> ComputeTable {
    let zero = rat(0, 1);
    let x_or_zero = x.unwrap_or(&zero);
    let scalar = |n: usize, v: Rat| ComputeRow {
        n,
        value: Some(to_fraction(&v)),
        row: None,
    };
    let values: Vec<ComputeRow> = match sequence {
        Sequence::Bernoulli => (0..=n_max).map(|n| scalar(n, bernoulli(n))).collect(),
        Sequence::Euler => (0..=n_max).map(|n| scalar(n, euler_number(n))).collect(),
        Sequence::Cauchy1 => (0..=n_max).map(|n| scalar(n, cauchy1(n))).collect(),
        Sequence::Dibernoulli => (0..=n_max).map(|n| scalar(n, dibernoulli(n))).collect(),
        Sequence::Harmonic => (1..=n_max).map(|n| scalar(n, harmonic(n))).collect(),
        Sequence::Hw => (1..=n_max).map(|n| scalar(n, hw(n, x_or_zero))).collect(),
        Sequence::PolyBernoulli => {
            let p = p.expect("checked while building the run config");
            (0..=n_max).map(|n| scalar(n, poly_bernoulli(n, p, x_or_zero))).collect()
        }
        Sequence::Stirling1 => (0..=n_max).map(|n| table_row(n, &stirling1_row(n))).collect(),
        Sequence::Stirling2 => (0..=n_max).map(|n| table_row(n, &stirling2_row(n))).collect(),
    };
    let uses_x = matches!(sequence, Sequence::Hw | Sequence::PolyBernoulli);
    ComputeTable {
        sequence: sequence.name(),
        p: if sequence == Sequence::PolyBernoulli { p } else { None },
        x: uses_x.then(|| to_fraction(x_or_zero)),
        values,
    }
}

fn table_row<T: std::fmt::Display>(n: usize, row: &[T]) -> ComputeRow {
    ComputeRow {
        n,
        value: None,
        row: Some(row.iter().map(|v| format!("{v}/1")).collect()),
    }
}

fn row_text(r: &ComputeRow) -> String {
    match (&r.value, &r.row) {
        (Some(v), _) => v.clone(),
        (None, Some(row)) => row.join(" "),
        (None, None) => String::new(),
    }
}

pub fn render_compute(table: &ComputeTable, format: Format, meta: Option<&Meta>) -> String {
    match format {
        Format::Json => to_json(table, meta),
        Format::Csv => {
            let rows = table
                .values
                .iter()
                .map(|r| vec![table.sequence.to_owned(), r.n.to_string(), row_text(r)])
                .collect();
            csv_doc(meta, &["sequence", "n", "value"], rows)
        }
        Format::Markdown => {
            let mut out = format!("# {}\n\n", table.sequence);
            if let Some(line) = meta_line(meta) {
                out.push_str(&format!("_{line}_\n\n"));
            }
            out.push_str("| n | value |\n|---|---|\n");
            for r in &table.values {
                out.push_str(&format!("| {} | {} |\n", r.n, row_text(r)));
            }
            out
        }
    }
}

#[derive(Debug, Serialize)]
struct SeriesDump<'a> {
    series: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    order: usize,
    ordinary: Vec<String>,
    egf: Vec<String>,
}

pub fn render_series(name: &str, params: &SeriesParams, series: &Egf, format: Format, meta: Option<&Meta>) -> String {
    let dump = SeriesDump {
        series: name,
        k: params.k,
        p: params.p,
        x: params.x.as_ref().map(to_fraction),
        order: series.order(),
        ordinary: series.coeffs().iter().map(to_fraction).collect(),
        egf: series.egf_coeffs().iter().map(to_fraction).collect(),
    };
    match format {
        Format::Json => to_json(&dump, meta),
        Format::Csv => {
            let rows = dump
                .ordinary
                .iter()
                .zip(&dump.egf)
                .enumerate()
                .map(|(n, (o, e))| vec![name.to_owned(), n.to_string(), o.clone(), e.clone()])
                .collect();
            csv_doc(meta, &["series", "n", "ordinary", "egf"], rows)
        }
        Format::Markdown => {
            let mut out = format!("# {name}\n\n");
            if let Some(line) = meta_line(meta) {
                out.push_str(&format!("_{line}_\n\n"));
            }
            out.push_str("| n | ordinary | egf |\n|---|---|---|\n");
            for (n, (o, e)) in dump.ordinary.iter().zip(&dump.egf).enumerate() {
                out.push_str(&format!("| {n} | {o} | {e} |\n"));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bernoulli_core::congr::{check_congruence, prime_sweep, CongruenceId};

    #[test]
    fn congruence_failures_carry_residues() {
        let mut report = prime_sweep(&[CongruenceId::C1], 5);
        let mut bad = check_congruence(CongruenceId::C1, 5).unwrap().remove(0);
        bad.pass = false;
        report.checks.push(bad);
        let suite = congruence_suite("C1", &report);
        let doc: serde_json::Value = serde_json::from_str(&render_suite(&suite, Format::Json, None)).unwrap();
        let f = &doc["failures"][0];
        assert_eq!(f["params"]["p"], 5);
        assert_eq!(f["lhs_residue"]["modulus"], 5);
        assert_eq!(f["lhs_residue"]["value"], f["rhs_residue"]["value"]);
        assert!(doc.get("meta").is_none());
    }

    #[test]
    fn stirling_rows_are_fractions() {
        let table = compute_table(Sequence::Stirling1, 3, None, None);
        let doc = serde_json::to_value(&table).unwrap();
        assert_eq!(doc["values"][3]["row"], serde_json::json!(["0/1", "2/1", "3/1", "1/1"]));
    }
}
