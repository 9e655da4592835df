//! Is `Δ⁺ > 2m/3 + 1` ever satisfiable by a strongly connected digraph?
//!
//! In a strongly connected digraph on `n ≥ 2` vertices every vertex has
//! outdegree at least one and `Δ⁺ ≤ n − 1`, so `m ≥ Δ⁺ + (n − 1) ≥ 2Δ⁺`.
//! The probe confirms this by exhaustive enumeration instead of assuming it.

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{digraph_from_mask, out_masks, slot_count, thread_pool, MAX_EXHAUSTIVE_N};
use crate::error::{Error, Result};
use crate::enumerate::mask_is_strong;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeLevel {
    pub n: usize,
    pub population: usize,
    pub satisfying: usize,
    /// Maximum of `Δ⁺ − (2m/3 + 1)` at this `n`.
    pub max_excess: f64,
    pub max_out_over_m: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub n_max: usize,
    pub levels: Vec<ProbeLevel>,
    pub population_size: usize,
    /// Digraphs with `Δ⁺ > 2m/3 + 1`.
    pub satisfying_count: usize,
    pub hypothesis_satisfiable: bool,
    pub max_excess: Option<f64>,
    pub max_excess_witness: Option<String>,
    /// Largest `Δ⁺/m`, as a float and as an unreduced fraction.
    pub max_out_over_m: Option<f64>,
    pub max_out_over_m_exact: Option<String>,
    pub max_out_over_m_witness: Option<String>,
    /// Every member satisfied `Δ⁺ ≤ m/2`.
    pub half_ceiling_holds: bool,
}

#[derive(Clone, Copy, Default)]
struct Tally {
    population: usize,
    satisfying: usize,
    // (3Δ − 2m − 3, mask)
    excess: Option<(i64, u32)>,
    // (Δ, m, mask)
    ratio: Option<(u64, u64, u32)>,
    ceiling_ok: bool,
}

impl Tally {
    fn empty() -> Self {
        Tally {
            ceiling_ok: true,
            ..Default::default()
        }
    }

    fn add(&mut self, n: usize, mask: u32) {
        let d = out_masks(n, mask)[..n]
            .iter()
            .map(|r| r.count_ones() as u64)
            .max()
            .unwrap_or(0);
        let m = mask.count_ones() as u64;
        let excess = 3 * d as i64 - 2 * m as i64 - 3;
        self.population += 1;
        if excess > 0 {
            self.satisfying += 1;
        }
        if self.excess.is_none_or(|(e, _)| excess > e) {
            self.excess = Some((excess, mask));
        }
        if self.ratio.is_none_or(|(bd, bm, _)| d * bm > bd * m) {
            self.ratio = Some((d, m, mask));
        }
        if 2 * d > m {
            self.ceiling_ok = false;
        }
    }

    // `other` covers a later range; ties keep `self`.
    fn merge(mut self, other: Tally) -> Tally {
        self.population += other.population;
        self.satisfying += other.satisfying;
        if let Some((e, mask)) = other.excess {
            if self.excess.is_none_or(|(s, _)| e > s) {
                self.excess = Some((e, mask));
            }
        }
        if let Some((d, m, mask)) = other.ratio {
            if self.ratio.is_none_or(|(bd, bm, _)| d * bm > bd * m) {
                self.ratio = Some((d, m, mask));
            }
        }
        self.ceiling_ok &= other.ceiling_ok;
        self
    }
}

pub fn thm12_satisfiability_probe(n_max: usize) -> Result<ProbeReport> {
    thm12_satisfiability_probe_with(n_max, 1)
}

/// Exhaustive scan over every strongly connected digraph with
/// `2 ≤ n ≤ n_max`.
pub fn thm12_satisfiability_probe_with(n_max: usize, workers: usize) -> Result<ProbeReport> {
    if n_max > MAX_EXHAUSTIVE_N {
        return Err(Error::EnumerationTooLarge(n_max));
    }
    let pool = thread_pool(workers)?;
    let chunk = 1u64 << 12;
    let mut levels = Vec::new();
    let mut overall = Tally::empty();
    // (tally, n) so witnesses can be expanded with the right vertex count
    let mut best_excess: Option<(i64, usize, u32)> = None;
    let mut best_ratio: Option<(u64, u64, usize, u32)> = None;

    for n in 2..=n_max {
        let total = 1u64 << slot_count(n);
        let tally = pool.install(|| {
            (0..total.div_ceil(chunk))
                .into_par_iter()
                .map(|c| {
                    let mut t = Tally::empty();
                    for mask in c * chunk..((c + 1) * chunk).min(total) {
                        let mask = mask as u32;
                        if mask_is_strong(n, mask) {
                            t.add(n, mask);
                        }
                    }
                    t
                })
                .collect::<Vec<_>>()
                .into_iter()
                .fold(Tally::empty(), Tally::merge)
        });
        if let Some((e, mask)) = tally.excess {
            if best_excess.is_none_or(|(b, _, _)| e > b) {
                best_excess = Some((e, n, mask));
            }
        }
        if let Some((d, m, mask)) = tally.ratio {
            if best_ratio.is_none_or(|(bd, bm, _, _)| d * bm > bd * m) {
                best_ratio = Some((d, m, n, mask));
            }
        }
        levels.push(ProbeLevel {
            n,
            population: tally.population,
            satisfying: tally.satisfying,
            max_excess: tally.excess.map_or(f64::NEG_INFINITY, |(e, _)| e as f64 / 3.0),
            max_out_over_m: tally.ratio.map_or(0.0, |(d, m, _)| d as f64 / m as f64),
        });
        overall = overall.merge(tally);
    }

    Ok(ProbeReport {
        n_max,
        levels,
        population_size: overall.population,
        satisfying_count: overall.satisfying,
        hypothesis_satisfiable: overall.satisfying > 0,
        max_excess: best_excess.map(|(e, _, _)| e as f64 / 3.0),
        max_excess_witness: best_excess.map(|(_, n, mask)| digraph_from_mask(n, mask).to_edge_list()),
        max_out_over_m: best_ratio.map(|(d, m, _, _)| d as f64 / m as f64),
        max_out_over_m_exact: best_ratio.map(|(d, m, _, _)| format!("{d}/{m}")),
        max_out_over_m_witness: best_ratio.map(|(_, _, n, mask)| digraph_from_mask(n, mask).to_edge_list()),
        half_ceiling_holds: overall.ceiling_ok,
    })
}
