//! The A_α matrix and its Perron root.
//!
//! `perron_root` runs power iteration on `M + sI` (default `s = 1`) from the
//! all-ones vector. The shift makes any irreducible nonnegative `M`
//! primitive, so the iteration converges even for periodic matrices such as
//! directed cycles at `α = 0`. Each step yields the Collatz–Wielandt ratios
//! `r_i = ((M + sI)x)_i / x_i`, and `[min r − s, max r − s]` always contains
//! the Perron root; iteration stops once that interval is narrower than the
//! tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::{BoundKind, BoundReport};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major `αD + (1−α)A`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaMatrix<T> {
    n: usize,
    alpha: T,
    entries: Vec<T>,
}

impl<T: Scalar> AlphaMatrix<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn entry(&self, i: usize, j: usize) -> T {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }
}

pub(crate) fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if alpha >= T::zero() && alpha < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha.to_f64().unwrap_or(f64::NAN)))
    }
}

fn check_tol<T: Scalar>(tol: T) -> Result<()> {
    if tol > T::zero() && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol.to_f64().unwrap_or(f64::NAN)))
    }
}

/// Assembles `A_α(g)`. Rejects `α ∉ [0, 1)` and digraphs that are not
/// strongly connected.
pub fn build_alpha_matrix<T: Scalar>(g: &Digraph, alpha: T) -> Result<AlphaMatrix<T>> {
    check_alpha(alpha)?;
    g.require_strongly_connected()?;
    let n = g.n();
    let off = T::one() - alpha;
    let mut entries = vec![T::zero(); n * n];
    for i in 0..n {
        entries[i * n + i] = alpha * T::count(g.out_degree(i));
        for &j in g.out_neighbors(i) {
            entries[i * n + j] = off;
        }
    }
    Ok(AlphaMatrix { n, alpha, entries })
}

/// `Q(g) = D + A`, row-major. Not checked for strong connectivity.
pub fn signless_laplacian_matrix<T: Scalar>(g: &Digraph) -> Vec<T> {
    let n = g.n();
    let mut q = vec![T::zero(); n * n];
    for i in 0..n {
        q[i * n + i] = T::count(g.out_degree(i));
        for &j in g.out_neighbors(i) {
            q[i * n + j] = T::one();
        }
    }
    q
}

#[derive(Clone, Copy, Debug)]
pub struct PerronOptions<T> {
    /// Stop once `cw_upper − cw_lower ≤ tol`.
    pub tol: T,
    pub max_iter: usize,
    /// Diagonal shift `s` in `M + sI`; must be positive.
    pub shift: T,
}

impl<T: Scalar> PerronOptions<T> {
    pub fn with_tol(tol: T) -> Self {
        PerronOptions {
            tol,
            ..Self::default()
        }
    }
}

impl<T: Scalar> Default for PerronOptions<T> {
    fn default() -> Self {
        PerronOptions {
            tol: T::default_tol(),
            max_iter: 1_000_000,
            shift: T::one(),
        }
    }
}

/// Perron root with its Collatz–Wielandt enclosure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralResult<T> {
    /// Midpoint of the enclosure.
    pub lambda: T,
    /// Positive, unit 2-norm.
    pub eigenvector: Vec<T>,
    pub cw_lower: T,
    pub cw_upper: T,
    pub iterations: usize,
    pub converged: bool,
}

impl<T: Scalar> SpectralResult<T> {
    pub fn width(&self) -> T {
        self.cw_upper - self.cw_lower
    }

    /// Multiplies value and enclosure by `c > 0` (e.g. `q = 2λ_{1/2}`).
    pub fn scaled(&self, c: T) -> SpectralResult<T> {
        SpectralResult {
            lambda: self.lambda * c,
            eigenvector: self.eigenvector.clone(),
            cw_lower: self.cw_lower * c,
            cw_upper: self.cw_upper * c,
            iterations: self.iterations,
            converged: self.converged,
        }
    }
}

/// Perron root of `A_α` with the default shift and iteration cap.
pub fn perron_root<T: Scalar>(mat: &AlphaMatrix<T>, tol: T) -> Result<SpectralResult<T>> {
    perron_root_dense(mat.n, &mat.entries, PerronOptions::with_tol(tol))
}

/// Perron root of an arbitrary irreducible nonnegative `n × n` matrix given
/// row-major.
///
/// Hitting `max_iter` is not an error: the result comes back with
/// `converged = false` and whatever enclosure was reached.
pub fn perron_root_dense<T: Scalar>(
    n: usize,
    entries: &[T],
    opts: PerronOptions<T>,
) -> Result<SpectralResult<T>> {
    check_tol(opts.tol)?;
    if n == 0 || entries.len() != n * n {
        return Err(Error::InvalidParameters(format!(
            "expected {} entries for n = {n}, got {}",
            n * n,
            entries.len()
        )));
    }
    if !(opts.shift > T::zero()) {
        return Err(Error::InvalidParameters("shift must be positive".into()));
    }
    let s = opts.shift;
    let mut x = vec![T::one() / T::count(n).sqrt(); n];
    let mut y = vec![T::zero(); n];
    let mut iterations = 0;
    let (mut lo, mut hi);
    loop {
        for i in 0..n {
            let row = &entries[i * n..(i + 1) * n];
            let mx: T = row.iter().zip(&x).map(|(&a, &b)| a * b).sum();
            y[i] = mx + s * x[i];
        }
        iterations += 1;
        lo = T::infinity();
        hi = T::neg_infinity();
        for (&yi, &xi) in y.iter().zip(&x) {
            let r = yi / xi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        lo = lo - s;
        hi = hi - s;
        let converged = hi - lo <= opts.tol;
        if converged || iterations >= opts.max_iter {
            return Ok(SpectralResult {
                lambda: (lo + hi) / T::count(2),
                eigenvector: x,
                cw_lower: lo,
                cw_upper: hi,
                iterations,
                converged,
            });
        }
        let norm = y.iter().map(|&v| v * v).sum::<T>().sqrt();
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }
}

/// `λ_α(g)` in one call.
pub fn spectral_radius<T: Scalar>(g: &Digraph, alpha: T, tol: T) -> Result<SpectralResult<T>> {
    perron_root(&build_alpha_matrix(g, alpha)?, tol)
}

/// `q(g) = 2·λ_{1/2}(g)`, the signless Laplacian spectral radius.
pub fn signless_laplacian_radius<T: Scalar>(g: &Digraph, tol: T) -> Result<T> {
    Ok(spectral_radius(g, T::lit(0.5), tol)?.lambda * T::count(2))
}

/// Compares `λ_α` against the lower bound `αΔ⁺`. The report's slack is
/// `λ_α − αΔ⁺`; it is flagged violated when the slack is `≤ −tol`.
pub fn lemma21_check<T: Scalar>(g: &Digraph, alpha: T, tol: T) -> Result<BoundReport<T>> {
    let spectral = spectral_radius(g, alpha, tol)?;
    Ok(lemma21_report(g, alpha, tol, &spectral))
}

pub(crate) fn lemma21_report<T: Scalar>(
    g: &Digraph,
    alpha: T,
    tol: T,
    spectral: &SpectralResult<T>,
) -> BoundReport<T> {
    let bound = alpha * T::count(g.max_out_degree());
    BoundReport::evaluate(
        "lemma21",
        BoundKind::Lower,
        alpha,
        None,
        Vec::new(),
        Some(bound),
        spectral,
        tol,
        true,
    )
}

/// Min/max over vertices of `α·d_i⁺ + (1−α)·m_i⁺`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma22Bounds<T> {
    pub alpha: T,
    pub lower: T,
    pub upper: T,
    pub argmin: usize,
    pub argmax: usize,
    /// All vertex values coincide (decided in exact rational arithmetic).
    pub equality: bool,
    pub vertex_values: Vec<T>,
}

/// Sandwich `lower ≤ λ_α ≤ upper` from outdegrees and
/// average 2-outdegrees.
///
/// Every finite binary float is a dyadic rational, so `alpha` is converted
/// exactly and the per-vertex values are compared without rounding.
pub fn lemma22_bounds<T: Scalar>(g: &Digraph, alpha: T) -> Result<Lemma22Bounds<T>> {
    check_alpha(alpha)?;
    g.require_strongly_connected()?;
    let stats = g.vertex_stats()?;
    let a = BigRational::from_float(alpha.to_f64().expect("finite alpha"))
        .expect("finite alpha");
    let one = BigRational::from_integer(BigInt::from(1));
    let exact: Vec<BigRational> = stats
        .iter()
        .map(|s| {
            let avg = BigRational::new(
                BigInt::from(s.two_out_degree),
                BigInt::from(s.out_degree),
            );
            &a * BigInt::from(s.out_degree) + (&one - &a) * avg
        })
        .collect();

    let mut argmin = 0;
    let mut argmax = 0;
    for (i, v) in exact.iter().enumerate() {
        if v < &exact[argmin] {
            argmin = i;
        }
        if v > &exact[argmax] {
            argmax = i;
        }
    }
    let equality = (exact[argmax].clone() - exact[argmin].clone()).is_zero();
    let vertex_values: Vec<T> = exact.iter().map(|v| to_scalar(v)).collect();
    Ok(Lemma22Bounds {
        alpha,
        lower: vertex_values[argmin],
        upper: vertex_values[argmax],
        argmin,
        argmax,
        equality,
        vertex_values,
    })
}

fn to_scalar<T: Scalar>(r: &BigRational) -> T {
    let v = r.to_f64().expect("rational fits a double");
    T::from_f64(v).expect("finite value")
}
