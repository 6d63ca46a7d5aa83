//! Text, JSON and CSV renderings of command results.
//!
//! JSON is one compact document per invocation followed by a newline.
//! CSV always starts with a header row.

use clap::ValueEnum;
use icg_core::oracle::OracleMismatch;
use icg_core::{ExtremalRecord, Spectrum, VerificationReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct Rendered(String);

impl Rendered {
    pub fn into_string(self) -> String {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub n: u64,
    pub divisors: Vec<u64>,
    pub lambda: Vec<i64>,
    pub degree: i64,
    pub least_eigenvalue: i64,
    pub witness_j: Vec<u64>,
    pub spread: u64,
}

impl SpectrumDoc {
    pub fn new(s: &Spectrum) -> Self {
        let least = s.least();
        SpectrumDoc {
            n: s.n,
            divisors: s.divisors.clone(),
            lambda: s.values.clone(),
            degree: s.index(),
            least_eigenvalue: least.value,
            witness_j: least.witnesses,
            spread: s.spread(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyAllDoc {
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub n_max: u64,
    pub exhaustive_max: u64,
    pub samples: usize,
    pub seed: Option<u64>,
    pub tol: f64,
    pub checked: usize,
    pub max_residual: f64,
    pub passed: bool,
    pub failure: Option<OracleMismatch>,
}

fn json<T: Serialize>(value: &T) -> Rendered {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    Rendered(s)
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Rendered {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    let bytes = w.into_inner().expect("in-memory flush");
    Rendered(String::from_utf8(bytes).expect("ascii output"))
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn spec_text(n: u64, divisors: &[u64]) -> String {
    format!("{n}:{}", join(divisors, ","))
}

pub fn spectrum(doc: &SpectrumDoc, format: Format) -> Rendered {
    match format {
        Format::Json => json(doc),
        Format::Csv => csv_rows(
            &["j", "lambda"],
            doc.lambda
                .iter()
                .enumerate()
                .map(|(j, l)| vec![j.to_string(), l.to_string()]),
        ),
        Format::Text => Rendered(format!(
            "graph   {}\nlambda  {}\ndegree  {}\nleast   {} at j = {}\nspread  {}\n",
            spec_text(doc.n, &doc.divisors),
            join(&doc.lambda, " "),
            doc.degree,
            doc.least_eigenvalue,
            join(&doc.witness_j, ","),
            doc.spread
        )),
    }
}

pub fn record(rec: &ExtremalRecord, format: Format) -> Rendered {
    let value = rec.value.map_or_else(String::new, |v| v.to_string());
    match format {
        Format::Json => json(rec),
        Format::Csv => csv_rows(
            &["n", "class", "objective", "value", "divisors", "witness_j"],
            rec.achievers.iter().map(|a| {
                vec![
                    rec.n.to_string(),
                    rec.class.to_string(),
                    rec.objective.to_string(),
                    value.clone(),
                    join(&a.divisors, "|"),
                    join(&a.witness_j, "|"),
                ]
            }),
        ),
        Format::Text => {
            let mut s = format!(
                "n {}  class {}  objective {}\n",
                rec.n, rec.class, rec.objective
            );
            if rec.class_empty {
                s.push_str("class is empty\n");
            } else {
                s.push_str(&format!(
                    "value {value}  ({} achiever{})\n",
                    rec.achievers.len(),
                    if rec.achievers.len() == 1 { "" } else { "s" }
                ));
                for a in &rec.achievers {
                    s.push_str(&format!(
                        "  {}  j = {}\n",
                        spec_text(rec.n, &a.divisors),
                        join(&a.witness_j, ",")
                    ));
                }
            }
            Rendered(s)
        }
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "{:<6} n={}..{}  {}  failures={}",
        r.theorem.to_string(),
        r.n_from,
        r.n_to,
        if r.passed { "PASS" } else { "FAIL" },
        r.failures.len()
    );
    if !r.class_empty.is_empty() {
        s.push_str(&format!("  class_empty={}", join(&r.class_empty, ",")));
    }
    if !r.skipped.is_empty() {
        s.push_str(&format!("  skipped={}", join(&r.skipped, ",")));
    }
    if let Some(ms) = r.elapsed_ms {
        s.push_str(&format!("  {ms} ms"));
    }
    s.push('\n');
    for f in &r.failures {
        s.push_str(&format!("  n={} {}", f.n, f.check));
        if let Some(d) = &f.divisors {
            s.push_str(&format!(" D={d:?}"));
        }
        if let Some(j) = f.j {
            s.push_str(&format!(" j={j}"));
        }
        s.push_str(&format!(": expected {}, got {}\n", f.expected, f.got));
    }
    s
}

fn report_rows(reports: &[VerificationReport]) -> Rendered {
    csv_rows(
        &["theorem", "n_from", "n_to", "passed", "failures"],
        reports.iter().map(|r| {
            vec![
                r.theorem.to_string(),
                r.n_from.to_string(),
                r.n_to.to_string(),
                r.passed.to_string(),
                r.failures.len().to_string(),
            ]
        }),
    )
}

pub fn verify_one(r: &VerificationReport, format: Format) -> Rendered {
    match format {
        Format::Json => json(r),
        Format::Csv => report_rows(std::slice::from_ref(r)),
        Format::Text => Rendered(report_text(r)),
    }
}

pub fn verify_all(doc: &VerifyAllDoc, format: Format) -> Rendered {
    match format {
        Format::Json => json(doc),
        Format::Csv => report_rows(&doc.reports),
        Format::Text => {
            let mut s: String = doc.reports.iter().map(report_text).collect();
            s.push_str(if doc.passed {
                "ALL PASS\n"
            } else {
                "SOME FAILED\n"
            });
            Rendered(s)
        }
    }
}

pub fn oracle(doc: &OracleDoc, format: Format) -> Rendered {
    match format {
        Format::Json => json(doc),
        Format::Csv => csv_rows(
            &[
                "n_max",
                "samples",
                "seed",
                "tol",
                "checked",
                "max_residual",
                "passed",
            ],
            [vec![
                doc.n_max.to_string(),
                doc.samples.to_string(),
                doc.seed.map_or_else(String::new, |s| s.to_string()),
                doc.tol.to_string(),
                doc.checked.to_string(),
                format!("{:e}", doc.max_residual),
                doc.passed.to_string(),
            ]],
        ),
        Format::Text => {
            let mut s = format!(
                "checked {} graphs (exhaustive to n={}, {} sampled{}), max residual {:e}, tol {:e}: {}\n",
                doc.checked,
                doc.exhaustive_max,
                doc.samples,
                doc.seed.map_or_else(String::new, |s| format!(", seed {s}")),
                doc.max_residual,
                doc.tol,
                if doc.passed { "PASS" } else { "FAIL" }
            );
            if let Some(f) = &doc.failure {
                s.push_str(&format!("first mismatch: {f}\n"));
            }
            Rendered(s)
        }
    }
}
