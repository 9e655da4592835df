//! Verification sweeps: run one bound or ordering statement over a whole
//! population and collect violations and the tightest observed slack.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    applicable_k_range, corollary31_report, corollary41_report, theorem31_report, theorem41_report,
    BoundReport,
};
use crate::digraph::Digraph;
use crate::enumerate::{random_strong_digraph_with, slot_count, strong_population, thread_pool, MAX_EXHAUSTIVE_N};
use crate::error::{Error, Result};
use crate::ordering::Comparator;
use crate::scalar::{inv_sqrt2, Scalar};
use crate::spectral::{lemma21_report, lemma22_bounds, spectral_radius, SpectralResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Lemma21,
    Lemma22,
    Theorem31,
    Corollary31,
    Theorem41,
    Corollary41,
    Theorem11,
    Theorem12,
    Corollary42,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::Lemma21,
        Theorem::Lemma22,
        Theorem::Theorem31,
        Theorem::Corollary31,
        Theorem::Theorem41,
        Theorem::Corollary41,
        Theorem::Theorem11,
        Theorem::Theorem12,
        Theorem::Corollary42,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Lemma21 => "lemma21",
            Theorem::Lemma22 => "lemma22",
            Theorem::Theorem31 => "theorem31",
            Theorem::Corollary31 => "corollary31",
            Theorem::Theorem41 => "theorem41",
            Theorem::Corollary41 => "corollary41",
            Theorem::Theorem11 => "theorem11",
            Theorem::Theorem12 => "theorem12",
            Theorem::Corollary42 => "corollary42",
        }
    }

    pub fn is_pairwise(self) -> bool {
        self.comparator().is_some()
    }

    fn comparator(self) -> Option<Comparator> {
        match self {
            Theorem::Theorem11 => Some(Comparator::Theorem11),
            Theorem::Theorem12 => Some(Comparator::Theorem12),
            Theorem::Corollary42 => Some(Comparator::Corollary42),
            _ => None,
        }
    }

    /// Whether a sweep at this α says anything about the statement.
    pub fn accepts_alpha<T: Scalar>(self, alpha: T) -> bool {
        let in_unit = alpha >= T::zero() && alpha < T::one();
        match self {
            Theorem::Lemma21 | Theorem::Lemma22 => in_unit,
            Theorem::Theorem31 | Theorem::Theorem41 => alpha >= T::lit(0.5) && alpha < T::one(),
            Theorem::Corollary31 | Theorem::Corollary41 => alpha == T::lit(0.5),
            Theorem::Theorem11 => alpha >= inv_sqrt2() && alpha < T::one(),
            Theorem::Theorem12 | Theorem::Corollary42 => {
                self.comparator().expect("pairwise").alpha_in_range(alpha)
            }
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    /// Accepts the full name or the short code (`21`, `22`, `31`, `c31`, ...).
    fn from_str(s: &str) -> Result<Self> {
        let t = match s.to_ascii_lowercase().as_str() {
            "lemma21" | "21" => Theorem::Lemma21,
            "lemma22" | "22" => Theorem::Lemma22,
            "theorem31" | "31" => Theorem::Theorem31,
            "corollary31" | "c31" => Theorem::Corollary31,
            "theorem41" | "41" => Theorem::Theorem41,
            "corollary41" | "c41" => Theorem::Corollary41,
            "theorem11" | "11" => Theorem::Theorem11,
            "theorem12" | "12" => Theorem::Theorem12,
            "corollary42" | "c42" => Theorem::Corollary42,
            _ => return Err(Error::UnknownTheorem(s.to_string())),
        };
        Ok(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

/// Which digraphs a sweep runs over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationSpec {
    pub mode: Mode,
    pub n: usize,
    pub m_filter: Option<usize>,
    /// Random mode only.
    pub count: usize,
    /// Random mode only.
    pub seed: u64,
}

impl EnumerationSpec {
    pub fn exhaustive(n: usize, m_filter: Option<usize>) -> Self {
        EnumerationSpec {
            mode: Mode::Exhaustive,
            n,
            m_filter,
            count: 0,
            seed: 0,
        }
    }

    /// Without `m_filter`, each sample draws its own `m` uniformly from
    /// `[n, n(n−1)]`.
    pub fn random(n: usize, m_filter: Option<usize>, count: usize, seed: u64) -> Self {
        EnumerationSpec {
            mode: Mode::Random,
            n,
            m_filter,
            count,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            Mode::Exhaustive => {
                if self.n == 0 {
                    return Err(Error::NoVertices);
                }
                if self.n > MAX_EXHAUSTIVE_N {
                    return Err(Error::EnumerationTooLarge(self.n));
                }
            }
            Mode::Random => {
                if self.n < 2 {
                    return Err(Error::InvalidParameters("random mode needs n >= 2".into()));
                }
                if let Some(m) = self.m_filter {
                    if m < self.n || m > slot_count(self.n) {
                        return Err(Error::InvalidParameters(format!(
                            "random mode needs n <= m <= n(n-1); got n = {}, m = {m}",
                            self.n
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Materializes the population in a worker-independent order.
    pub fn population(&self, workers: usize) -> Result<Vec<Digraph>> {
        self.validate()?;
        match self.mode {
            Mode::Exhaustive => strong_population(self.n, self.m_filter, workers),
            Mode::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                (0..self.count)
                    .map(|_| {
                        let m = match self.m_filter {
                            Some(m) => m,
                            None => rng.gen_range(self.n..=slot_count(self.n)),
                        };
                        random_strong_digraph_with(self.n, m, &mut rng)
                    })
                    .collect()
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions<T> {
    pub tol: T,
    pub workers: usize,
    /// Keep one [`CheckRow`] per performed check (for tabular output).
    pub collect_rows: bool,
}

impl<T: Scalar> Default for VerifyOptions<T> {
    fn default() -> Self {
        VerifyOptions {
            tol: T::default_tol(),
            workers: 1,
            collect_rows: false,
        }
    }
}

/// A single check, or the tightest one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness<T> {
    pub digraph: String,
    pub partner: Option<String>,
    pub alpha: T,
    pub k: Option<usize>,
    pub margin: T,
    pub lambda: T,
    pub lambda_partner: Option<T>,
    pub detail: String,
}

/// One performed check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow<T> {
    pub theorem: &'static str,
    pub alpha: T,
    pub k: Option<usize>,
    pub digraph: String,
    pub partner: Option<String>,
    pub bound_value: Option<T>,
    pub lambda: T,
    pub lambda_partner: Option<T>,
    pub slack: T,
    pub violated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport<T> {
    pub theorem: &'static str,
    pub population: EnumerationSpec,
    pub alpha_grid: Vec<T>,
    pub tol: T,
    pub epsilon: T,
    pub population_size: usize,
    pub checked: usize,
    pub skipped_alpha: Vec<T>,
    pub violations: Vec<Witness<T>>,
    pub min_slack: Option<Witness<T>>,
    /// Timing; kept out of serialized output so reports stay reproducible.
    #[serde(skip)]
    pub wall_summary: String,
    #[serde(skip)]
    pub rows: Vec<CheckRow<T>>,
}

impl<T: Scalar> VerificationReport<T> {
    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }
}

struct Outcome<T> {
    witness: Witness<T>,
    bound_value: Option<T>,
    violated: bool,
}

struct Sink<T> {
    theorem: Theorem,
    checked: usize,
    violations: Vec<Witness<T>>,
    min_slack: Option<Witness<T>>,
    rows: Vec<CheckRow<T>>,
    collect_rows: bool,
}

impl<T: Scalar> Sink<T> {
    fn push(&mut self, o: Outcome<T>) {
        self.checked += 1;
        if self.collect_rows {
            let w = &o.witness;
            self.rows.push(CheckRow {
                theorem: self.theorem.name(),
                alpha: w.alpha,
                k: w.k,
                digraph: w.digraph.clone(),
                partner: w.partner.clone(),
                bound_value: o.bound_value,
                lambda: w.lambda,
                lambda_partner: w.lambda_partner,
                slack: w.margin,
                violated: o.violated,
            });
        }
        if self.min_slack.as_ref().is_none_or(|b| o.witness.margin < b.margin) {
            self.min_slack = Some(o.witness.clone());
        }
        if o.violated {
            self.violations.push(o.witness);
        }
    }
}

fn from_bound<T: Scalar>(g: &Digraph, r: &BoundReport<T>) -> Option<Outcome<T>> {
    if !r.applicable {
        return None;
    }
    Some(Outcome {
        witness: Witness {
            digraph: g.to_edge_list(),
            partner: None,
            alpha: r.alpha,
            k: r.k,
            margin: r.slack.expect("applicable bound has slack"),
            lambda: r.lambda,
            lambda_partner: None,
            detail: r.bound_name.to_string(),
        },
        bound_value: r.bound_value,
        violated: r.violated,
    })
}

fn single_checks<T: Scalar>(
    theorem: Theorem,
    g: &Digraph,
    alpha: T,
    spectral: &SpectralResult<T>,
    tol: T,
) -> Result<Vec<Outcome<T>>> {
    let eps = T::violation_eps();
    // A lone vertex has no arcs: A_α = [0], every degree statistic is zero
    // and none of the statements are about it.
    if g.n() < 2 {
        return Ok(Vec::new());
    }
    let out = match theorem {
        Theorem::Lemma21 => from_bound(g, &lemma21_report(g, alpha, tol, spectral))
            .into_iter()
            .collect(),
        Theorem::Theorem31 => from_bound(g, &theorem31_report(g, alpha, spectral))
            .into_iter()
            .collect(),
        Theorem::Corollary31 => from_bound(g, &corollary31_report(g, spectral))
            .into_iter()
            .collect(),
        Theorem::Theorem41 => applicable_k_range(g)
            .filter_map(|k| from_bound(g, &theorem41_report(g, alpha, k, spectral)))
            .collect(),
        Theorem::Corollary41 => applicable_k_range(g)
            .filter_map(|k| from_bound(g, &corollary41_report(g, k, spectral)))
            .collect(),
        Theorem::Lemma22 => {
            let b = lemma22_bounds(g, alpha)?;
            let lambda = spectral.lambda;
            let below = lambda - b.lower;
            let above = b.upper - lambda;
            let mut problems = Vec::new();
            if below < -eps {
                problems.push("lambda below lower bound");
            }
            if above < -eps {
                problems.push("lambda above upper bound");
            }
            if b.equality && (lambda - b.lower).abs() > eps {
                problems.push("equality flagged but lambda differs from bound");
            }
            if g.is_out_regular() && !b.equality {
                problems.push("out-regular digraph without equality flag");
            }
            vec![Outcome {
                witness: Witness {
                    digraph: g.to_edge_list(),
                    partner: None,
                    alpha,
                    k: None,
                    margin: below.min(above),
                    lambda,
                    lambda_partner: None,
                    detail: if problems.is_empty() {
                        format!("lower {} upper {} equality {}", b.lower, b.upper, b.equality)
                    } else {
                        problems.join("; ")
                    },
                },
                bound_value: None,
                violated: !problems.is_empty(),
            }]
        }
        _ => unreachable!("pairwise theorem in single sweep"),
    };
    Ok(out)
}

/// Runs `theorem` over the population at every α of the grid that falls
/// inside the statement's range; other α are listed in `skipped_alpha`.
pub fn verify<T: Scalar>(
    theorem: Theorem,
    spec: &EnumerationSpec,
    alpha_grid: &[T],
    opts: VerifyOptions<T>,
) -> Result<VerificationReport<T>> {
    let start = Instant::now();
    let pool = thread_pool(opts.workers)?;
    let population = spec.population(opts.workers)?;
    let built = start.elapsed();

    let (alphas, skipped): (Vec<T>, Vec<T>) =
        alpha_grid.iter().partition(|&&a| theorem.accepts_alpha(a));

    let mut sink = Sink {
        theorem,
        checked: 0,
        violations: Vec::new(),
        min_slack: None,
        rows: Vec::new(),
        collect_rows: opts.collect_rows,
    };

    for &alpha in &alphas {
        let spectra: Vec<SpectralResult<T>> = pool.install(|| {
            population
                .par_iter()
                .map(|g| spectral_radius(g, alpha, opts.tol))
                .collect::<Result<Vec<_>>>()
        })?;

        match theorem.comparator() {
            None => {
                let outcomes: Vec<Vec<Outcome<T>>> = pool.install(|| {
                    population
                        .par_iter()
                        .zip(&spectra)
                        .map(|(g, s)| single_checks(theorem, g, alpha, s, opts.tol))
                        .collect::<Result<Vec<_>>>()
                })?;
                for o in outcomes.into_iter().flatten() {
                    sink.push(o);
                }
            }
            Some(cmp) => {
                let firsts: Vec<usize> = (0..population.len())
                    .filter(|&i| cmp.first_candidate(&population[i], alpha))
                    .collect();
                let outcomes: Vec<Vec<Outcome<T>>> = pool.install(|| {
                    firsts
                        .par_iter()
                        .map(|&i| pair_checks(cmp, &population, &spectra, i, alpha))
                        .collect()
                });
                for o in outcomes.into_iter().flatten() {
                    sink.push(o);
                }
            }
        }
    }

    let total = start.elapsed();
    Ok(VerificationReport {
        theorem: theorem.name(),
        population: spec.clone(),
        alpha_grid: alpha_grid.to_vec(),
        tol: opts.tol,
        epsilon: T::violation_eps(),
        population_size: population.len(),
        checked: sink.checked,
        skipped_alpha: skipped,
        violations: sink.violations,
        min_slack: sink.min_slack,
        wall_summary: format!(
            "population {:.3}s, checks {:.3}s, total {:.3}s, workers {}",
            built.as_secs_f64(),
            (total - built).as_secs_f64(),
            total.as_secs_f64(),
            opts.workers
        ),
        rows: sink.rows,
    })
}

fn pair_checks<T: Scalar>(
    cmp: Comparator,
    population: &[Digraph],
    spectra: &[SpectralResult<T>],
    i: usize,
    alpha: T,
) -> Vec<Outcome<T>> {
    let g1 = &population[i];
    let d1 = g1.max_out_degree();
    population
        .iter()
        .enumerate()
        .filter(|(_, g2)| g2.m() == g1.m() && g2.max_out_degree() < d1)
        .filter_map(|(j, g2)| {
            let v = cmp.verdict(g1, &spectra[i], g2, &spectra[j], alpha);
            if !v.preconditions_met {
                return None;
            }
            let margin = v.margin.expect("judged verdict has margin");
            Some(Outcome {
                witness: Witness {
                    digraph: g1.to_edge_list(),
                    partner: Some(g2.to_edge_list()),
                    alpha,
                    k: None,
                    margin,
                    lambda: spectra[i].lambda,
                    lambda_partner: Some(spectra[j].lambda),
                    detail: v.predicted.to_string(),
                },
                bound_value: None,
                violated: v.holds == Some(false),
            })
        })
        .collect()
}
