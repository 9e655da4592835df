//! Evidence gathering for the maximum-outdegree ordering below `α = 1/√2`.
//!
//! For each tested α in `[1/2, 1/√2)` the threshold `2α(1−α)(m−n+1) + 2α`
//! is evaluated at that α. `G₁` is drawn from the digraphs of highest
//! outdegree that meet it, `G₂` uniformly from those of strictly smaller
//! maximum outdegree, and the margin `λ_α(G₁) − λ_α(G₂)` is recorded. The
//! report describes what was observed and nothing more.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{theorem11_threshold, Comparator};
use crate::digraph::Digraph;
use crate::enumerate::{random_strong_digraph_with, strong_population, thread_pool, MAX_EXHAUSTIVE_N};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::spectral_radius;

/// Random candidates drawn when `n` is too large to enumerate.
pub const RANDOM_POOL: usize = 4096;

/// Cap on the number of distinct would-be counterexamples listed per α.
pub const MAX_LISTED: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RemarkWitness<T> {
    pub g1: String,
    pub g2: String,
    pub lambda1: T,
    pub lambda2: T,
    pub margin: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginStats<T> {
    pub count: usize,
    pub min: T,
    pub p05: T,
    pub median: T,
    pub p95: T,
    pub max: T,
    pub mean: T,
    /// Samples with margin `≤ −ε`.
    pub below_minus_epsilon: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RemarkAlpha<T> {
    pub alpha: T,
    pub threshold: T,
    pub status: String,
    pub g1_candidates: usize,
    pub g1_max_out_degree: Option<usize>,
    pub g2_candidates: usize,
    pub distinct_pairs: u64,
    pub sampled: usize,
    pub stats: Option<MarginStats<T>>,
    pub min_margin_witness: Option<RemarkWitness<T>>,
    pub counterexamples: Vec<RemarkWitness<T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RemarkReport<T> {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub samples: usize,
    pub tol: T,
    pub epsilon: T,
    pub source: &'static str,
    pub population_size: usize,
    pub alphas: Vec<RemarkAlpha<T>>,
    pub counterexample_found: bool,
}

pub fn remark_search<T: Scalar>(
    n: usize,
    m: usize,
    alpha_grid: &[T],
    samples: usize,
    seed: u64,
) -> Result<RemarkReport<T>> {
    remark_search_with(n, m, alpha_grid, samples, seed, T::default_tol(), 1)
}

pub fn remark_search_with<T: Scalar>(
    n: usize,
    m: usize,
    alpha_grid: &[T],
    samples: usize,
    seed: u64,
    tol: T,
    workers: usize,
) -> Result<RemarkReport<T>> {
    if n < 4 {
        return Err(Error::InvalidParameters(format!("remark search needs n >= 4, got {n}")));
    }
    if m < n || m > n * (n - 1) {
        return Err(Error::InvalidParameters(format!(
            "m = {m} outside [n, n(n-1)] = [{n}, {}]",
            n * (n - 1)
        )));
    }
    for &alpha in alpha_grid {
        if !Comparator::Remark11.alpha_in_range(alpha) {
            return Err(Error::InvalidAlpha(alpha.to_f64().unwrap_or(f64::NAN)));
        }
    }

    let (population, source) = if n <= MAX_EXHAUSTIVE_N {
        (strong_population(n, Some(m), workers)?, "exhaustive")
    } else {
        (random_pool(n, m, seed)?, "random pool")
    };
    let degrees: Vec<usize> = population.iter().map(Digraph::max_out_degree).collect();
    let pool = thread_pool(workers)?;

    let mut alphas = Vec::with_capacity(alpha_grid.len());
    for (ai, &alpha) in alpha_grid.iter().enumerate() {
        let threshold = theorem11_threshold(alpha, n, m);
        let g1_all: Vec<usize> = (0..population.len())
            .filter(|&i| T::count(degrees[i]) >= threshold)
            .collect();
        let top = g1_all.iter().map(|&i| degrees[i]).max();
        let g1: Vec<usize> = g1_all.iter().copied().filter(|&i| Some(degrees[i]) == top).collect();
        let g2: Vec<usize> = match top {
            Some(d) => (0..population.len()).filter(|&i| degrees[i] < d).collect(),
            None => Vec::new(),
        };
        let mut entry = RemarkAlpha {
            alpha,
            threshold,
            status: "ok".to_string(),
            g1_candidates: g1_all.len(),
            g1_max_out_degree: top,
            g2_candidates: g2.len(),
            distinct_pairs: g1.len() as u64 * g2.len() as u64,
            sampled: 0,
            stats: None,
            min_margin_witness: None,
            counterexamples: Vec::new(),
        };
        if g1.is_empty() {
            entry.status = format!("empty candidate set: no digraph has maxout >= {threshold}");
            alphas.push(entry);
            continue;
        }
        if g2.is_empty() {
            entry.status = "empty candidate set: no partner with smaller maxout".to_string();
            alphas.push(entry);
            continue;
        }
        if samples == 0 {
            alphas.push(entry);
            continue;
        }

        let needed: Vec<usize> = g1.iter().chain(&g2).copied().collect();
        let spectra = pool.install(|| {
            needed
                .par_iter()
                .map(|&i| spectral_radius(&population[i], alpha, tol))
                .collect::<Result<Vec<_>>>()
        })?;
        let mut lambda = vec![T::nan(); population.len()];
        for (&i, s) in needed.iter().zip(&spectra) {
            lambda[i] = s.lambda;
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(ai as u64);
        let eps = T::violation_eps();
        let witness = |a: usize, b: usize| RemarkWitness {
            g1: population[a].to_edge_list(),
            g2: population[b].to_edge_list(),
            lambda1: lambda[a],
            lambda2: lambda[b],
            margin: lambda[a] - lambda[b],
        };
        let mut margins = Vec::with_capacity(samples);
        let mut min_pair: Option<(T, usize, usize)> = None;
        let mut listed = HashSet::new();
        for _ in 0..samples {
            let a = g1[rng.gen_range(0..g1.len())];
            let b = g2[rng.gen_range(0..g2.len())];
            let margin = lambda[a] - lambda[b];
            margins.push(margin);
            if min_pair.is_none_or(|(v, _, _)| margin < v) {
                min_pair = Some((margin, a, b));
            }
            if margin <= -eps && listed.len() < MAX_LISTED && listed.insert((a, b)) {
                entry.counterexamples.push(witness(a, b));
            }
        }
        entry.sampled = samples;
        entry.stats = Some(margin_stats(margins, eps));
        entry.min_margin_witness = min_pair.map(|(_, a, b)| witness(a, b));
        alphas.push(entry);
    }

    let counterexample_found = alphas
        .iter()
        .any(|a| a.stats.as_ref().is_some_and(|s| s.below_minus_epsilon > 0));
    Ok(RemarkReport {
        n,
        m,
        seed,
        samples,
        tol,
        epsilon: T::violation_eps(),
        source,
        population_size: population.len(),
        alphas,
        counterexample_found,
    })
}

fn random_pool(n: usize, m: usize, seed: u64) -> Result<Vec<Digraph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..RANDOM_POOL {
        let g = random_strong_digraph_with(n, m, &mut rng)?;
        if seen.insert(g.clone()) {
            out.push(g);
        }
    }
    Ok(out)
}

fn margin_stats<T: Scalar>(mut margins: Vec<T>, eps: T) -> MarginStats<T> {
    margins.sort_by(|a, b| a.partial_cmp(b).expect("finite margins"));
    let count = margins.len();
    let rank = |q: f64| {
        let idx = ((q * count as f64).ceil() as usize).clamp(1, count) - 1;
        margins[idx]
    };
    MarginStats {
        count,
        min: margins[0],
        p05: rank(0.05),
        median: rank(0.5),
        p95: rank(0.95),
        max: margins[count - 1],
        mean: margins.iter().copied().sum::<T>() / T::count(count),
        below_minus_epsilon: margins.iter().filter(|&&v| v <= -eps).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_alpha_at_or_above_inv_sqrt2() {
        assert!(matches!(
            remark_search(4, 6, &[0.71], 10, 1),
            Err(Error::InvalidAlpha(_))
        ));
        assert!(remark_search(4, 6, &[std::f64::consts::FRAC_1_SQRT_2], 10, 1).is_err());
        assert!(remark_search(4, 6, &[0.45], 10, 1).is_err());
    }

    #[test]
    fn zero_samples_is_empty() {
        let r = remark_search(4, 6, &[0.6], 0, 1).unwrap();
        assert_eq!(r.alphas[0].sampled, 0);
        assert!(r.alphas[0].stats.is_none());
        assert!(!r.counterexample_found);
    }

    #[test]
    fn empty_candidate_set_reported() {
        // threshold at m = 8, α = 0.55 is 3.575 > n − 1.
        let r = remark_search(4, 8, &[0.55], 100, 1).unwrap();
        assert!(r.alphas[0].status.starts_with("empty candidate set"));
        assert_eq!(r.alphas[0].sampled, 0);
    }

    #[test]
    fn deterministic_and_worker_independent() {
        let a = remark_search_with(4, 6, &[0.55, 0.65], 500, 9, 1e-10, 1).unwrap();
        let b = remark_search_with(4, 6, &[0.55, 0.65], 500, 9, 1e-10, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn quantiles_nearest_rank() {
        let s = margin_stats((1..=100).map(f64::from).collect(), 1e-9);
        assert_eq!((s.min, s.p05, s.median, s.p95, s.max), (1.0, 5.0, 50.0, 95.0, 100.0));
        assert_eq!(s.mean, 50.5);
    }

    #[test]
    fn rejects_small_n() {
        assert!(remark_search(3, 3, &[0.6], 10, 1).is_err());
    }
}
