//! Command-line front end for `aalpha-core`.
//!
//! Exit codes: 0 on success with no violation, 2 when a violation or a
//! would-be counterexample is found, 1 on usage or input errors.

pub mod alpha;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use aalpha_core::bounds::{
    best_k_report, corollary31_report, corollary41_report, theorem31_report, theorem41_report,
};
use aalpha_core::ordering::{thm12_satisfiability_probe_with, Comparator};
use aalpha_core::spectral::spectral_radius;
use aalpha_core::{
    enumerate_strong_digraphs, lemma21_check, lemma22_bounds, parse_edge_list, verify, Digraph, EnumerationSpec, Theorem, VerifyOptions,
};
use clap::{Args, Parser, Subcommand};

use crate::alpha::parse_alpha_spec;
use crate::report::*;

pub use report::{serialize_report, Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Input {
        path: String,
        source: aalpha_core::Error,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] aalpha_core::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Parser)]
#[command(name = "aalpha", version, about = "A_alpha spectral radius of strongly connected digraphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Collatz–Wielandt enclosure width.
    #[arg(long, global = true, default_value_t = aalpha_core::DEFAULT_TOL)]
    pub tol: f64,
    /// Worker threads for sweeps; results do not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Perron root of A_alpha for one digraph.
    Spectral(SpectralArgs),
    /// Evaluate the single-digraph bounds.
    Bounds(BoundsArgs),
    /// Evaluate an ordering statement on a pair of digraphs.
    Compare(CompareArgs),
    /// Sweep a statement over a population of digraphs.
    Verify(VerifyArgs),
    /// Check whether Δ⁺ > 2m/3 + 1 is satisfiable for small n.
    Probe(ProbeArgs),
    /// Search for pairs violating the max-outdegree ordering below 1/sqrt2.
    RemarkSearch(RemarkArgs),
    /// List labeled strongly connected digraphs.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    /// Edge-list file (`-` for stdin).
    #[arg(long)]
    pub input: PathBuf,
    /// Comma list, `1/sqrt2`, or `grid:start:stop:step`.
    #[arg(long, default_value = "0.5")]
    pub alpha: String,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "0.5")]
    pub alpha: String,
    /// 21, 22, 31, c31, 41, c41 or all.
    #[arg(long, default_value = "all")]
    pub theorem: String,
    /// Parameter of the 41/c41 bounds; by default the tightest applicable one.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub g1: PathBuf,
    #[arg(long)]
    pub g2: PathBuf,
    #[arg(long, default_value = "0.75")]
    pub alpha: String,
    /// 11, 12, c42, remark or all.
    #[arg(long, default_value = "all")]
    pub theorem: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// 21, 22, 31, c31, 41, c41, 11, 12 or c42.
    #[arg(long)]
    pub theorem: String,
    /// Every labeled strongly connected digraph on N vertices.
    #[arg(long, value_name = "N", conflicts_with = "random")]
    pub exhaustive: Option<usize>,
    /// Random strongly connected digraphs on N vertices.
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,
    /// Restrict to this arc count.
    #[arg(long)]
    pub m: Option<usize>,
    /// Sample size for --random.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "0.5")]
    pub alpha: String,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
pub struct RemarkArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated arc counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub m: Vec<usize>,
    #[arg(long, default_value = "0.55,0.6,0.65,0.7")]
    pub alpha: String,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: Option<usize>,
    /// Print only the count.
    #[arg(long)]
    pub count_only: bool,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(outcome) => {
            if out.write_all(outcome.text.as_bytes()).is_err() {
                return 1;
            }
            if outcome.flagged {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

struct Outcome {
    text: String,
    flagged: bool,
}

fn execute(cli: &Cli, err: &mut impl Write) -> Result<Outcome, CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    if cli.workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let fmt = cli.format;
    let tol = cli.tol;
    match &cli.command {
        Command::Spectral(a) => {
            let (g, input) = load(&a.input)?;
            let alphas = parse_alpha_spec(&a.alpha)?;
            let mut results = Vec::with_capacity(alphas.len());
            for alpha in alphas {
                results.push(SpectralEntry { alpha, result: spectral_radius(&g, alpha, tol)? });
            }
            let flagged = false;
            let r = SpectralOutput {
                command: "spectral",
                input,
                digraph: g.to_edge_list(),
                n: g.n(),
                m: g.m(),
                tol,
                results,
            };
            Ok(Outcome { text: serialize_report(&r, fmt)?, flagged })
        }
        Command::Bounds(a) => bounds(a, tol, fmt),
        Command::Compare(a) => compare(a, fmt),
        Command::Verify(a) => {
            let theorem: Theorem = a.theorem.parse()?;
            let spec = match (a.exhaustive, a.random) {
                (Some(n), None) => EnumerationSpec::exhaustive(n, a.m),
                (None, Some(n)) => EnumerationSpec::random(n, a.m, a.count, a.seed),
                _ => return Err(CliError::Usage("verify needs --exhaustive N or --random N".into())),
            };
            let alphas = parse_alpha_spec(&a.alpha)?;
            let opts = VerifyOptions { tol, workers: cli.workers, collect_rows: fmt == Format::Csv };
            let report = verify(theorem, &spec, &alphas, opts)?;
            let _ = writeln!(err, "{}", report.wall_summary);
            let flagged = report.has_violations();
            let r = VerifyOutput { command: "verify", report };
            Ok(Outcome { text: serialize_report(&r, fmt)?, flagged })
        }
        Command::Probe(a) => {
            let report = thm12_satisfiability_probe_with(a.n_max, cli.workers)?;
            let flagged = report.hypothesis_satisfiable;
            let r = ProbeOutput { command: "probe", report };
            Ok(Outcome { text: serialize_report(&r, fmt)?, flagged })
        }
        Command::RemarkSearch(a) => {
            let alphas = parse_alpha_spec(&a.alpha)?;
            let mut reports = Vec::with_capacity(a.m.len());
            for &m in &a.m {
                reports.push(aalpha_core::ordering::remark_search_with(
                    a.n, m, &alphas, a.samples, a.seed, tol, cli.workers,
                )?);
            }
            let found = reports.iter().any(|r| r.counterexample_found);
            let r = RemarkOutput { command: "remark-search", reports, counterexample_found: found };
            Ok(Outcome { text: serialize_report(&r, fmt)?, flagged: found })
        }
        Command::Enumerate(a) => {
            let mut digraphs = Vec::new();
            let mut count = 0;
            for (index, g) in enumerate_strong_digraphs(a.n, a.m)?.enumerate() {
                count += 1;
                if !a.count_only {
                    digraphs.push(EnumeratedDigraph {
                        index,
                        m: g.m(),
                        max_out_degree: g.max_out_degree(),
                        digraph: g.to_edge_list(),
                    });
                }
            }
            let r = EnumerateOutput { command: "enumerate", n: a.n, m_filter: a.m, count, digraphs };
            Ok(Outcome { text: serialize_report(&r, fmt)?, flagged: false })
        }
    }
}

fn bounds(a: &BoundsArgs, tol: f64, fmt: Format) -> Result<Outcome, CliError> {
    let (g, input) = load(&a.input)?;
    let alphas = parse_alpha_spec(&a.alpha)?;
    let selected: Vec<Theorem> = if a.theorem.eq_ignore_ascii_case("all") {
        Theorem::ALL.iter().copied().filter(|t| !t.is_pairwise()).collect()
    } else {
        let t: Theorem = a.theorem.parse()?;
        if t.is_pairwise() {
            return Err(CliError::Usage(format!("{} compares two digraphs; use `compare`", t.name())));
        }
        vec![t]
    };

    let mut out = Vec::new();
    let mut lemma22 = Vec::new();
    let half = spectral_radius(&g, 0.5, tol)?;
    for &t in &selected {
        match t {
            Theorem::Corollary31 => out.push(corollary31_report(&g, &half)),
            Theorem::Corollary41 => match a.k {
                Some(k) => out.push(corollary41_report(&g, k, &half)),
                None => {
                    let best = best_k_report(&g, 0.5, &half);
                    out.push(corollary41_report(&g, best.k.unwrap_or(1), &half));
                }
            },
            _ => {
                for &alpha in &alphas {
                    let s = spectral_radius(&g, alpha, tol)?;
                    match t {
                        Theorem::Lemma21 => out.push(lemma21_check(&g, alpha, tol)?),
                        Theorem::Lemma22 => {
                            let b = lemma22_bounds(&g, alpha)?;
                            let eps = aalpha_core::EPSILON;
                            let sandwich_holds =
                                b.lower - eps <= s.lambda && s.lambda <= b.upper + eps;
                            lemma22.push(Lemma22Entry { bounds: b, lambda: s.lambda, sandwich_holds });
                        }
                        Theorem::Theorem31 => out.push(theorem31_report(&g, alpha, &s)),
                        Theorem::Theorem41 => match a.k {
                            Some(k) => out.push(theorem41_report(&g, alpha, k, &s)),
                            None => out.push(best_k_report(&g, alpha, &s).report),
                        },
                        _ => unreachable!("pairwise statements are filtered out"),
                    }
                }
            }
        }
    }
    let flagged = out.iter().any(|b| b.violated) || lemma22.iter().any(|e| !e.sandwich_holds);
    let r = BoundsOutput { command: "bounds", input, digraph: g.to_edge_list(), tol, bounds: out, lemma22 };
    Ok(Outcome { text: serialize_report(&r, fmt)?, flagged })
}

fn compare(a: &CompareArgs, fmt: Format) -> Result<Outcome, CliError> {
    let (g1, g1_input) = load(&a.g1)?;
    let (g2, g2_input) = load(&a.g2)?;
    let alphas = parse_alpha_spec(&a.alpha)?;
    let comparators: Vec<Comparator> = match a.theorem.to_ascii_lowercase().as_str() {
        "all" => vec![Comparator::Theorem11, Comparator::Theorem12, Comparator::Corollary42, Comparator::Remark11],
        "11" | "theorem11" => vec![Comparator::Theorem11],
        "12" | "theorem12" => vec![Comparator::Theorem12],
        "c42" | "corollary42" => vec![Comparator::Corollary42],
        "remark" | "remark11" => vec![Comparator::Remark11],
        other => return Err(CliError::Usage(format!("unknown comparator '{other}'"))),
    };
    let mut verdicts = Vec::new();
    for c in comparators {
        for &alpha in &alphas {
            verdicts.push(c.compare(&g1, &g2, alpha)?);
        }
    }
    let flagged = verdicts.iter().any(|v| v.holds == Some(false));
    let r = CompareOutput {
        command: "compare",
        g1_input,
        g2_input,
        g1: g1.to_edge_list(),
        g2: g2.to_edge_list(),
        tol: aalpha_core::DEFAULT_TOL,
        verdicts,
    };
    Ok(Outcome { text: serialize_report(&r, fmt)?, flagged })
}

/// Reads and parses an edge list; `-` reads stdin.
fn load(path: &Path) -> Result<(Digraph, String), CliError> {
    let name = path.display().to_string();
    let text = if name == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| CliError::Io { path: name.clone(), message: e.to_string() })?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io { path: name.clone(), message: e.to_string() })?
    };
    let g = parse_edge_list(&text).map_err(|source| CliError::Input { path: name.clone(), source })?;
    Ok((g, name))
}
