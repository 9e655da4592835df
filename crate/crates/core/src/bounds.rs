//! Closed-form upper bounds on `λ_α` and their comparison with the measured
//! Perron root.
//!
//! Applicability is data, not control flow: a bound whose hypotheses fail
//! still produces a [`BoundReport`] with `applicable = false` and the list of
//! failed hypotheses in `reason`.

use num_rational::Ratio;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::Result;
use crate::scalar::{Field, Scalar};
use crate::spectral::{spectral_radius, SpectralResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `λ ≤ bound`; slack is `bound − λ`.
    Upper,
    /// `λ > bound`; slack is `λ − bound`.
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub bound_name: &'static str,
    pub kind: BoundKind,
    pub alpha: T,
    pub k: Option<usize>,
    pub applicable: bool,
    pub reason: String,
    pub bound_value: Option<T>,
    pub lambda: T,
    pub cw_lower: T,
    pub cw_upper: T,
    pub slack: Option<T>,
    pub violated: bool,
}

impl<T: Scalar> BoundReport<T> {
    /// `failed` lists the hypotheses that do not hold. A violation needs an
    /// applicable bound and a slack below `−threshold` (or `≤ −threshold`
    /// when `inclusive`).
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn evaluate(
        bound_name: &'static str,
        kind: BoundKind,
        alpha: T,
        k: Option<usize>,
        failed: Vec<String>,
        bound_value: Option<T>,
        spectral: &SpectralResult<T>,
        threshold: T,
        inclusive: bool,
    ) -> Self {
        let bound_value = bound_value.filter(|b| b.is_finite());
        let applicable = failed.is_empty() && bound_value.is_some();
        let reason = if applicable {
            "applicable".to_string()
        } else if failed.is_empty() {
            "bound undefined".to_string()
        } else {
            failed.join("; ")
        };
        let slack = bound_value.map(|b| match kind {
            BoundKind::Upper => b - spectral.lambda,
            BoundKind::Lower => spectral.lambda - b,
        });
        let violated = applicable
            && slack.is_some_and(|s| {
                if inclusive {
                    s <= -threshold
                } else {
                    s < -threshold
                }
            });
        BoundReport {
            bound_name,
            kind,
            alpha,
            k,
            applicable,
            reason,
            bound_value,
            lambda: spectral.lambda,
            cw_lower: spectral.cw_lower,
            cw_upper: spectral.cw_upper,
            slack,
            violated,
        }
    }
}

/// Closed-form expressions, generic so they can be evaluated exactly.
pub mod formula {
    use crate::scalar::Field;

    fn max<F: Field>(a: F, b: F) -> F {
        if a >= b {
            a
        } else {
            b
        }
    }

    /// `max{αΔ⁺, (1−α)(m−n+1)/2} + 2α`.
    pub fn theorem31<F: Field>(alpha: F, n: usize, m: usize, max_out: usize) -> F {
        let two = F::of(2);
        let excess = F::of(m) + F::one() - F::of(n);
        max(alpha * F::of(max_out), (F::one() - alpha) * excess / two) + two * alpha
    }

    /// `max{Δ⁺, (m−n+1)/2} + 2`, a bound on `q = 2λ_{1/2}`.
    pub fn corollary31<F: Field>(n: usize, m: usize, max_out: usize) -> F {
        let two = F::of(2);
        max(F::of(max_out), (F::of(m) + F::one() - F::of(n)) / two) + two
    }

    /// `α(m−k) + (1−α)k/(m−k) + 1 − α`; `None` when `m ≤ k`.
    pub fn theorem41<F: Field>(alpha: F, m: usize, k: usize) -> Option<F> {
        if m <= k {
            return None;
        }
        let rest = F::of(m - k);
        let co = F::one() - alpha;
        Some(alpha * rest + co * F::of(k) / rest + co)
    }

    /// `m − k + 1 + k/(m−k)`, a bound on `q`; `None` when `m ≤ k`.
    pub fn corollary41<F: Field>(m: usize, k: usize) -> Option<F> {
        if m <= k {
            return None;
        }
        let rest = F::of(m - k);
        Some(rest + F::one() + F::of(k) / rest)
    }
}

fn alpha_in_half_open<T: Scalar>(alpha: T, failed: &mut Vec<String>) {
    if !(alpha >= T::lit(0.5) && alpha < T::one()) {
        failed.push(format!("alpha = {alpha} outside [1/2, 1)"));
    }
}

/// Upper bound `max{αΔ⁺, (1−α)(m−n+1)/2} + 2α`, for `n ≥ 4` and `α ∈ [1/2, 1)`.
pub fn theorem31_bound<T: Scalar>(g: &Digraph, alpha: T) -> Result<BoundReport<T>> {
    let spectral = spectral_radius(g, alpha, T::default_tol())?;
    Ok(theorem31_report(g, alpha, &spectral))
}

pub fn theorem31_report<T: Scalar>(
    g: &Digraph,
    alpha: T,
    spectral: &SpectralResult<T>,
) -> BoundReport<T> {
    let mut failed = Vec::new();
    if g.n() < 4 {
        failed.push(format!("n = {} but n >= 4 vertices required", g.n()));
    }
    alpha_in_half_open(alpha, &mut failed);
    let value = formula::theorem31(alpha, g.n(), g.m(), g.max_out_degree());
    BoundReport::evaluate(
        "theorem31",
        BoundKind::Upper,
        alpha,
        None,
        failed,
        Some(value),
        spectral,
        T::violation_eps(),
        false,
    )
}

/// `q(g) ≤ max{Δ⁺, (m−n+1)/2} + 2` for `n ≥ 4`. The report's `lambda` and
/// enclosure are those of `q`.
pub fn corollary31_bound<T: Scalar>(g: &Digraph) -> Result<BoundReport<T>> {
    let half = spectral_radius(g, T::lit(0.5), T::default_tol())?;
    Ok(corollary31_report(g, &half))
}

/// `half` is the spectral result at `α = 1/2`.
pub fn corollary31_report<T: Scalar>(g: &Digraph, half: &SpectralResult<T>) -> BoundReport<T> {
    let (n, m, d) = (g.n(), g.m(), g.max_out_degree());
    let exact: Ratio<i64> = formula::corollary31(n, m, d);
    let via_theorem: Ratio<i64> = formula::theorem31(Ratio::new(1, 2), n, m, d) * 2;
    assert_eq!(exact, via_theorem, "corollary31 must equal twice theorem31 at 1/2");

    let mut failed = Vec::new();
    if n < 4 {
        failed.push(format!("n = {n} but n >= 4 vertices required"));
    }
    let q = half.scaled(T::count(2));
    BoundReport::evaluate(
        "corollary31",
        BoundKind::Upper,
        T::lit(0.5),
        None,
        failed,
        Some(formula::corollary31(n, m, d)),
        &q,
        T::violation_eps(),
        false,
    )
}

fn theorem41_failures<T: Scalar>(g: &Digraph, alpha: Option<T>, k: usize) -> Vec<String> {
    let (m, d) = (g.m(), g.max_out_degree());
    let mut failed = Vec::new();
    if k < 1 {
        failed.push("k >= 1 required".to_string());
    }
    if d + k > m {
        failed.push(format!("max outdegree {d} exceeds m - k = {}", m as i64 - k as i64));
    }
    if m < 3 * k {
        failed.push(format!("m = {m} < 3k = {}", 3 * k));
    }
    if let Some(alpha) = alpha {
        alpha_in_half_open(alpha, &mut failed);
    }
    failed
}

/// Upper bound `α(m−k) + (1−α)k/(m−k) + 1 − α`, for `Δ⁺ ≤ m−k`, `m ≥ 3k`
/// and `α ∈ [1/2, 1)`.
pub fn theorem41_bound<T: Scalar>(g: &Digraph, alpha: T, k: usize) -> Result<BoundReport<T>> {
    let spectral = spectral_radius(g, alpha, T::default_tol())?;
    Ok(theorem41_report(g, alpha, k, &spectral))
}

pub fn theorem41_report<T: Scalar>(
    g: &Digraph,
    alpha: T,
    k: usize,
    spectral: &SpectralResult<T>,
) -> BoundReport<T> {
    BoundReport::evaluate(
        "theorem41",
        BoundKind::Upper,
        alpha,
        Some(k),
        theorem41_failures(g, Some(alpha), k),
        formula::theorem41(alpha, g.m(), k),
        spectral,
        T::violation_eps(),
        false,
    )
}

/// `q(g) ≤ m − k + 1 + k/(m−k)` under the same hypotheses on `k`.
pub fn corollary41_bound<T: Scalar>(g: &Digraph, k: usize) -> Result<BoundReport<T>> {
    let half = spectral_radius(g, T::lit(0.5), T::default_tol())?;
    Ok(corollary41_report(g, k, &half))
}

pub fn corollary41_report<T: Scalar>(
    g: &Digraph,
    k: usize,
    half: &SpectralResult<T>,
) -> BoundReport<T> {
    let m = g.m();
    let exact: Option<Ratio<i64>> = formula::corollary41(m, k);
    let via_theorem: Option<Ratio<i64>> =
        formula::theorem41(Ratio::new(1, 2), m, k).map(|v| v * 2);
    assert_eq!(exact, via_theorem, "corollary41 must equal twice theorem41 at 1/2");

    let q = half.scaled(T::count(2));
    BoundReport::evaluate(
        "corollary41",
        BoundKind::Upper,
        T::lit(0.5),
        Some(k),
        theorem41_failures::<T>(g, None, k),
        formula::corollary41(m, k),
        &q,
        T::violation_eps(),
        false,
    )
}

/// Values of `k` for which the `k`-parametrised bound applies:
/// `1 ≤ k ≤ min(m − Δ⁺, ⌊m/3⌋)`.
pub fn applicable_k_range(g: &Digraph) -> std::ops::RangeInclusive<usize> {
    let m = g.m();
    let top = m.saturating_sub(g.max_out_degree()).min(m / 3);
    1..=top
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BestK<T> {
    pub k: Option<usize>,
    pub report: BoundReport<T>,
}

/// The tightest `k`-parametrised bound over every applicable `k`.
pub fn best_k<T: Scalar>(g: &Digraph, alpha: T) -> Result<BestK<T>> {
    let spectral = spectral_radius(g, alpha, T::default_tol())?;
    Ok(best_k_report(g, alpha, &spectral))
}

pub fn best_k_report<T: Scalar>(g: &Digraph, alpha: T, spectral: &SpectralResult<T>) -> BestK<T> {
    let mut best: Option<BoundReport<T>> = None;
    for k in applicable_k_range(g) {
        let r = theorem41_report(g, alpha, k, spectral);
        if !r.applicable {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => r.bound_value < b.bound_value,
        };
        if better {
            best = Some(r);
        }
    }
    match best {
        Some(report) => BestK {
            k: report.k,
            report,
        },
        None => {
            let mut failed = theorem41_failures(g, Some(alpha), 1);
            failed.insert(
                0,
                format!(
                    "no k with 1 <= k <= min(m - max outdegree, m/3) = {}",
                    applicable_k_range(g).end()
                ),
            );
            failed.dedup();
            BestK {
                k: None,
                report: BoundReport::evaluate(
                    "theorem41",
                    BoundKind::Upper,
                    alpha,
                    None,
                    failed,
                    None,
                    spectral,
                    T::violation_eps(),
                    false,
                ),
            }
        }
    }
}

/// Convenience: does `F` evaluate `theorem31` at `α = 1/2` to exactly half
/// of `corollary31`?
pub fn corollary31_identity<F: Field>(n: usize, m: usize, max_out: usize) -> bool {
    let half = F::one() / F::of(2);
    formula::theorem31(half, n, m, max_out) * F::of(2) == formula::corollary31(n, m, max_out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d2() -> Digraph {
        Digraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap()
    }

    #[test]
    fn theorem31_needs_four_vertices() {
        let r = theorem31_bound(&Digraph::directed_cycle(3).unwrap(), 0.75).unwrap();
        assert!(!r.applicable);
        assert!(r.reason.contains("n >= 4"));
        assert!(!r.violated);
    }

    #[test]
    fn theorem31_d2() {
        let r = theorem31_bound(&d2(), 0.75_f64).unwrap();
        assert!(r.applicable);
        assert_eq!(r.bound_value, Some(3.0));
        assert!(r.slack.unwrap() > 0.0);
        assert!((r.slack.unwrap() - (3.0 - r.lambda)).abs() <= 1e-12);
    }

    #[test]
    fn theorem31_alpha_range() {
        let r = theorem31_bound(&d2(), 0.4).unwrap();
        assert!(!r.applicable);
        assert!(r.reason.contains("[1/2, 1)"));
    }

    #[test]
    fn corollary31_d2() {
        let r = corollary31_bound::<f64>(&d2()).unwrap();
        assert_eq!(r.bound_value, Some(4.0));
        assert!(r.slack.unwrap() > 0.0);
        let t = theorem31_bound(&d2(), 0.5).unwrap();
        assert_eq!(r.bound_value.unwrap(), 2.0 * t.bound_value.unwrap());
        assert!((r.lambda - 2.0 * t.lambda).abs() <= 1e-12);
    }

    #[test]
    fn theorem41_triangle_base_case() {
        let g = Digraph::directed_cycle(3).unwrap();
        for alpha in [0.5_f64, 0.6, 0.75, 0.9] {
            let r = theorem41_bound(&g, alpha, 1).unwrap();
            assert!(r.applicable, "{}", r.reason);
            let expect = alpha / 2.0 + 1.5;
            assert!((r.bound_value.unwrap() - expect).abs() <= 1e-15);
            assert!((r.lambda - 1.0).abs() <= 1e-12);
            assert!(r.slack.unwrap() > 0.0);
        }
    }

    #[test]
    fn theorem41_needs_m_at_least_3k() {
        let r = theorem41_bound(&d2(), 0.5, 2).unwrap();
        assert!(!r.applicable);
        assert!(r.reason.contains("3k"));
    }

    #[test]
    fn theorem41_d2() {
        let r = theorem41_bound(&d2(), 0.5, 1).unwrap();
        assert_eq!(r.bound_value, Some(2.625));
        assert!(r.lambda <= 2.625);
    }

    #[test]
    fn corollary41_values() {
        let tri = Digraph::directed_cycle(3).unwrap();
        let r = corollary41_bound::<f64>(&tri, 1).unwrap();
        assert_eq!(r.bound_value, Some(3.5));
        assert!((r.lambda - 2.0).abs() <= 1e-12);
        let r = corollary41_bound::<f64>(&d2(), 1).unwrap();
        assert_eq!(r.bound_value, Some(5.25));
        assert!(r.slack.unwrap() > 0.0);
    }

    #[test]
    fn best_k_triangle() {
        let b = best_k(&Digraph::directed_cycle(3).unwrap(), 0.5).unwrap();
        assert_eq!(b.k, Some(1));
        assert_eq!(b.report.bound_value, Some(1.75));
    }

    #[test]
    fn best_k_complete4() {
        let g = Digraph::complete(4).unwrap();
        assert_eq!(applicable_k_range(&g), 1..=4);
        let values: Vec<f64> = (1..=4)
            .map(|k| formula::theorem41(0.5, 12, k).unwrap())
            .collect();
        // 0.5(12−k) + 0.5k/(12−k) + 0.5, decreasing in k on 1..=4.
        let expect = [6.0 + 0.5 / 11.0, 5.5 + 1.0 / 10.0, 5.0 + 1.5 / 9.0, 4.5 + 0.25];
        for (v, e) in values.iter().zip(expect) {
            assert!((v - e).abs() < 1e-12);
        }
        let b = best_k(&g, 0.5_f64).unwrap();
        assert_eq!(b.k, Some(4));
        assert!((b.report.bound_value.unwrap() - 4.75).abs() < 1e-12);
    }

    #[test]
    fn best_k_out_of_range_alpha() {
        let b = best_k(&d2(), 0.3).unwrap();
        assert_eq!(b.k, None);
        assert!(!b.report.applicable);
    }

    #[test]
    fn exact_corollary_identities() {
        for n in 4..9 {
            for m in n..n * (n - 1) {
                for d in 1..n {
                    assert!(corollary31_identity::<Ratio<i64>>(n, m, d));
                }
            }
        }
    }
}
