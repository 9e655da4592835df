//! Report serialization.
//!
//! JSON goes through `serde_json::Value`, whose maps are ordered by key, so
//! the same report always produces the same bytes. CSV has one fixed header
//! per report type; digraphs inside any report use the edge-list format
//! (`n <count>` header, one `tail head` per line), so every witness can be
//! fed straight back to the CLI.

use std::fmt::Display;

use aalpha_core::ordering::ProbeReport;
use aalpha_core::spectral::Lemma22Bounds;
use aalpha_core::{BoundReport64, OrderingVerdict64, RemarkReport64, SpectralResult64, VerificationReport64};
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub trait Report: Serialize {
    fn csv_header(&self) -> &'static [&'static str];
    fn csv_rows(&self) -> Vec<Vec<String>>;
}

pub fn serialize_report<R: Report + ?Sized>(report: &R, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let value = serde_json::to_value(report).map_err(|e| CliError::Internal(e.to_string()))?;
            let mut s = serde_json::to_string_pretty(&value).map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let internal = |e: csv::Error| CliError::Internal(e.to_string());
            w.write_record(report.csv_header()).map_err(internal)?;
            for row in report.csv_rows() {
                w.write_record(&row).map_err(internal)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
        }
    }
}

fn s<T: Display>(v: T) -> String {
    v.to_string()
}

fn opt<T: Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Debug, Serialize)]
pub struct SpectralEntry {
    pub alpha: f64,
    #[serde(flatten)]
    pub result: SpectralResult64,
}

#[derive(Debug, Serialize)]
pub struct SpectralOutput {
    pub command: &'static str,
    pub input: String,
    pub digraph: String,
    pub n: usize,
    pub m: usize,
    pub tol: f64,
    pub results: Vec<SpectralEntry>,
}

pub const SPECTRAL_CSV_HEADER: &[&str] = &["alpha", "lambda", "cw_lower", "cw_upper", "iterations", "converged"];

impl Report for SpectralOutput {
    fn csv_header(&self) -> &'static [&'static str] {
        SPECTRAL_CSV_HEADER
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.results
            .iter()
            .map(|e| {
                let r = &e.result;
                vec![s(e.alpha), s(r.lambda), s(r.cw_lower), s(r.cw_upper), s(r.iterations), s(r.converged)]
            })
            .collect()
    }
}

#[derive(Debug, Serialize)]
pub struct BoundsOutput {
    pub command: &'static str,
    pub input: String,
    pub digraph: String,
    pub tol: f64,
    pub bounds: Vec<BoundReport64>,
    pub lemma22: Vec<Lemma22Entry>,
}

#[derive(Debug, Serialize)]
pub struct Lemma22Entry {
    #[serde(flatten)]
    pub bounds: Lemma22Bounds<f64>,
    pub lambda: f64,
    pub sandwich_holds: bool,
}

pub const BOUNDS_CSV_HEADER: &[&str] = &[
    "bound_name", "kind", "alpha", "k", "applicable", "bound_value", "lambda", "slack", "violated", "reason",
];

impl Report for BoundsOutput {
    fn csv_header(&self) -> &'static [&'static str] {
        BOUNDS_CSV_HEADER
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows: Vec<Vec<String>> = self
            .bounds
            .iter()
            .map(|b| {
                vec![
                    s(b.bound_name),
                    s(match b.kind {
                        aalpha_core::BoundKind::Upper => "upper",
                        aalpha_core::BoundKind::Lower => "lower",
                    }),
                    s(b.alpha),
                    opt(b.k),
                    s(b.applicable),
                    opt(b.bound_value),
                    s(b.lambda),
                    opt(b.slack),
                    s(b.violated),
                    b.reason.clone(),
                ]
            })
            .collect();
        for e in &self.lemma22 {
            let b = &e.bounds;
            let equality = format!("equality {}", b.equality);
            rows.push(vec![
                s("lemma22"), s("lower"), s(b.alpha), String::new(), s(true), s(b.lower), s(e.lambda),
                s(e.lambda - b.lower), s(!e.sandwich_holds), equality.clone(),
            ]);
            rows.push(vec![
                s("lemma22"), s("upper"), s(b.alpha), String::new(), s(true), s(b.upper), s(e.lambda),
                s(b.upper - e.lambda), s(!e.sandwich_holds), equality,
            ]);
        }
        rows
    }
}

#[derive(Debug, Serialize)]
pub struct CompareOutput {
    pub command: &'static str,
    pub g1_input: String,
    pub g2_input: String,
    pub g1: String,
    pub g2: String,
    pub tol: f64,
    pub verdicts: Vec<OrderingVerdict64>,
}

pub const COMPARE_CSV_HEADER: &[&str] = &[
    "theorem", "alpha", "preconditions_met", "failed_conditions", "lambda1", "lambda2", "margin", "holds",
];

impl Report for CompareOutput {
    fn csv_header(&self) -> &'static [&'static str] {
        COMPARE_CSV_HEADER
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.verdicts
            .iter()
            .map(|v| {
                let failed: Vec<&str> = v.conditions.iter().filter(|c| !c.satisfied).map(|c| c.name.as_str()).collect();
                vec![
                    s(v.theorem),
                    s(v.alpha),
                    s(v.preconditions_met),
                    failed.join("; "),
                    opt(v.lambda1.map(|e| e.lambda)),
                    opt(v.lambda2.map(|e| e.lambda)),
                    opt(v.margin),
                    opt(v.holds),
                ]
            })
            .collect()
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub command: &'static str,
    pub report: VerificationReport64,
}

/// One row per performed check. `partner` and `lambda_partner` are filled
/// for pairwise statements only; `bound_value` for bounds only.
pub const VERIFY_CSV_HEADER: &[&str] = &[
    "theorem", "alpha", "k", "digraph", "partner", "bound_value", "lambda", "lambda_partner", "slack", "violated",
];

impl Report for VerifyOutput {
    fn csv_header(&self) -> &'static [&'static str] {
        VERIFY_CSV_HEADER
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.report
            .rows
            .iter()
            .map(|r| {
                vec![
                    s(r.theorem),
                    s(r.alpha),
                    opt(r.k),
                    r.digraph.clone(),
                    r.partner.clone().unwrap_or_default(),
                    opt(r.bound_value),
                    s(r.lambda),
                    opt(r.lambda_partner),
                    s(r.slack),
                    s(r.violated),
                ]
            })
            .collect()
    }
}

#[derive(Debug, Serialize)]
pub struct ProbeOutput {
    pub command: &'static str,
    pub report: ProbeReport,
}

pub const PROBE_CSV_HEADER: &[&str] = &["n", "population", "satisfying", "max_excess", "max_out_over_m"];

impl Report for ProbeOutput {
    fn csv_header(&self) -> &'static [&'static str] {
        PROBE_CSV_HEADER
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.report
            .levels
            .iter()
            .map(|l| vec![s(l.n), s(l.population), s(l.satisfying), s(l.max_excess), s(l.max_out_over_m)])
            .collect()
    }
}

#[derive(Debug, Serialize)]
pub struct RemarkOutput {
    pub command: &'static str,
    pub reports: Vec<RemarkReport64>,
    pub counterexample_found: bool,
}

pub const REMARK_CSV_HEADER: &[&str] = &[
    "n", "m", "alpha", "threshold", "status", "sampled", "min", "p05", "median", "p95", "max", "mean",
    "below_minus_epsilon",
];

impl Report for RemarkOutput {
    fn csv_header(&self) -> &'static [&'static str] {
        REMARK_CSV_HEADER
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for r in &self.reports {
            for a in &r.alphas {
                let st = a.stats.as_ref();
                rows.push(vec![
                    s(r.n),
                    s(r.m),
                    s(a.alpha),
                    s(a.threshold),
                    a.status.clone(),
                    s(a.sampled),
                    opt(st.map(|x| x.min)),
                    opt(st.map(|x| x.p05)),
                    opt(st.map(|x| x.median)),
                    opt(st.map(|x| x.p95)),
                    opt(st.map(|x| x.max)),
                    opt(st.map(|x| x.mean)),
                    opt(st.map(|x| x.below_minus_epsilon)),
                ]);
            }
        }
        rows
    }
}

#[derive(Debug, Serialize)]
pub struct EnumerateOutput {
    pub command: &'static str,
    pub n: usize,
    pub m_filter: Option<usize>,
    pub count: usize,
    pub digraphs: Vec<EnumeratedDigraph>,
}

#[derive(Debug, Serialize)]
pub struct EnumeratedDigraph {
    pub index: usize,
    pub m: usize,
    pub max_out_degree: usize,
    pub digraph: String,
}

pub const ENUMERATE_CSV_HEADER: &[&str] = &["index", "m", "max_out_degree", "digraph"];

impl Report for EnumerateOutput {
    fn csv_header(&self) -> &'static [&'static str] {
        ENUMERATE_CSV_HEADER
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.digraphs
            .iter()
            .map(|d| vec![s(d.index), s(d.m), s(d.max_out_degree), d.digraph.clone()])
            .collect()
    }
}
