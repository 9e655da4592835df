//! Populations of strongly connected digraphs.
//!
//! Exhaustive mode walks all `2^(n(n−1))` labeled off-diagonal adjacency
//! patterns for `n ≤ 5`, each held in one `u32`. Bit `i·(n−1) + j'` encodes
//! the arc `i → j`, where `j'` is `j` with the diagonal slot squeezed out.
//! The strong-connectivity filter runs on the bitmask; only survivors are
//! expanded into [`Digraph`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub const MAX_EXHAUSTIVE_N: usize = 5;

const CHUNK_BITS: u32 = 12;

/// Number of off-diagonal slots, `n(n−1)`.
pub fn slot_count(n: usize) -> usize {
    n * n.saturating_sub(1)
}

fn slot(n: usize, tail: usize, head: usize) -> usize {
    tail * (n - 1) + if head < tail { head } else { head - 1 }
}

/// Per-vertex out-neighbour bitmasks.
pub fn out_masks(n: usize, mask: u32) -> [u32; MAX_EXHAUSTIVE_N] {
    let mut rows = [0u32; MAX_EXHAUSTIVE_N];
    for (i, row) in rows.iter_mut().enumerate().take(n) {
        for j in 0..n {
            if j != i && mask >> slot(n, i, j) & 1 == 1 {
                *row |= 1 << j;
            }
        }
    }
    rows
}

/// Strong connectivity on the bitmask form: everything is reachable from
/// vertex 0 and reaches vertex 0.
pub fn mask_is_strong(n: usize, mask: u32) -> bool {
    let all = (1u32 << n) - 1;
    let out = out_masks(n, mask);
    let mut inn = [0u32; MAX_EXHAUSTIVE_N];
    for i in 0..n {
        for j in 0..n {
            if out[i] >> j & 1 == 1 {
                inn[j] |= 1 << i;
            }
        }
    }
    closure_from_zero(n, &out) == all && closure_from_zero(n, &inn) == all
}

fn closure_from_zero(n: usize, rows: &[u32; MAX_EXHAUSTIVE_N]) -> u32 {
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        for (v, &row) in rows.iter().enumerate().take(n) {
            if frontier >> v & 1 == 1 {
                next |= row;
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

pub fn digraph_from_mask(n: usize, mask: u32) -> Digraph {
    let out = out_masks(n, mask);
    let arcs = (0..n).flat_map(|i| (0..n).filter(move |&j| out[i] >> j & 1 == 1).map(move |j| (i, j)));
    Digraph::new(n, arcs).expect("bitmask arcs are always simple")
}

fn check_exhaustive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::EnumerationTooLarge(n));
    }
    Ok(())
}

fn keep(n: usize, mask: u32, m_filter: Option<usize>) -> bool {
    m_filter.is_none_or(|m| mask.count_ones() as usize == m) && mask_is_strong(n, mask)
}

/// Lazily yields every strongly connected labeled digraph on `n ≤ 5`
/// vertices, in increasing bitmask order, optionally only those with
/// exactly `m_filter` arcs.
pub fn enumerate_strong_digraphs(
    n: usize,
    m_filter: Option<usize>,
) -> Result<impl Iterator<Item = Digraph>> {
    check_exhaustive(n)?;
    let total = 1u64 << slot_count(n);
    Ok((0..total)
        .map(|m| m as u32)
        .filter(move |&mask| keep(n, mask, m_filter))
        .map(move |mask| digraph_from_mask(n, mask)))
}

pub(crate) fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::InvalidParameters("worker count must be >= 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))
}

/// Bitmasks of the strongly connected digraphs, in increasing order. The
/// space is split into fixed contiguous ranges, scanned in parallel and
/// concatenated by range start, so the output does not depend on `workers`.
pub fn strong_masks(n: usize, m_filter: Option<usize>, workers: usize) -> Result<Vec<u32>> {
    check_exhaustive(n)?;
    let total = 1u64 << slot_count(n);
    let chunk = 1u64 << CHUNK_BITS;
    let chunks = total.div_ceil(chunk);
    let pool = thread_pool(workers)?;
    let parts: Vec<Vec<u32>> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * chunk;
                let end = (start + chunk).min(total);
                (start..end)
                    .map(|m| m as u32)
                    .filter(|&mask| keep(n, mask, m_filter))
                    .collect()
            })
            .collect()
    });
    Ok(parts.concat())
}

/// [`strong_masks`] expanded into digraphs.
pub fn strong_population(n: usize, m_filter: Option<usize>, workers: usize) -> Result<Vec<Digraph>> {
    Ok(strong_masks(n, m_filter, workers)?
        .into_iter()
        .map(|mask| digraph_from_mask(n, mask))
        .collect())
}

fn check_random(n: usize, m: usize) -> Result<()> {
    if n < 2 || m < n || m > slot_count(n) {
        return Err(Error::InvalidParameters(format!(
            "random strongly connected digraph needs n >= 2 and n <= m <= n(n-1); got n = {n}, m = {m}"
        )));
    }
    Ok(())
}

/// A random strongly connected digraph with `n` vertices and `m` arcs.
///
/// A Hamiltonian cycle through a random vertex permutation guarantees
/// strong connectivity; the remaining `m − n` arcs are drawn uniformly
/// without replacement from the non-cycle slots.
pub fn random_strong_digraph(n: usize, m: usize, seed: u64) -> Result<Digraph> {
    random_strong_digraph_with(n, m, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_strong_digraph_with<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Digraph> {
    check_random(n, m)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let cycle: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let mut on_cycle = vec![false; n * n];
    for &(u, v) in &cycle {
        on_cycle[u * n + v] = true;
    }
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && !on_cycle[i * n + j])
        .collect();
    let extra = rand::seq::index::sample(rng, free.len(), m - n);
    Digraph::new(n, cycle.into_iter().chain(extra.into_iter().map(|i| free[i])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_strong_digraphs(1, None).unwrap().count(), 1);
        let two: Vec<Digraph> = enumerate_strong_digraphs(2, None).unwrap().collect();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].m(), 2);
        assert_eq!(enumerate_strong_digraphs(3, Some(3)).unwrap().count(), 2);
    }

    #[test]
    fn n6_rejected() {
        assert!(matches!(
            enumerate_strong_digraphs(6, None),
            Err(Error::EnumerationTooLarge(6))
        ));
        assert!(strong_masks(6, None, 1).is_err());
    }

    #[test]
    fn mask_round_trip() {
        let g = digraph_from_mask(3, 0b101101);
        let mut mask = 0u32;
        for (u, v) in g.arcs() {
            mask |= 1 << slot(3, u, v);
        }
        assert_eq!(mask, 0b101101);
    }

    #[test]
    fn parallel_population_matches_sequential() {
        let seq: Vec<Digraph> = enumerate_strong_digraphs(4, None).unwrap().collect();
        for workers in [1, 3, 8] {
            assert_eq!(strong_population(4, None, workers).unwrap(), seq);
        }
    }

    #[test]
    fn random_cycle_when_m_equals_n() {
        for seed in 0..20 {
            let g = random_strong_digraph(4, 4, seed).unwrap();
            assert_eq!(g.m(), 4);
            assert!(g.is_strongly_connected());
            assert!(g.is_out_regular());
        }
    }

    #[test]
    fn random_complete_when_m_is_max() {
        assert_eq!(
            random_strong_digraph(4, 12, 7).unwrap(),
            Digraph::complete(4).unwrap()
        );
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(
            random_strong_digraph(5, 8, 42).unwrap(),
            random_strong_digraph(5, 8, 42).unwrap()
        );
    }

    #[test]
    fn random_rejects_bad_ranges() {
        assert!(random_strong_digraph(4, 3, 0).is_err());
        assert!(random_strong_digraph(4, 13, 0).is_err());
        assert!(random_strong_digraph(1, 1, 0).is_err());
    }
}
