//! Comparators that predict `λ_α(G₁)` versus `λ_α(G₂)` from maximum
//! outdegrees, and the searches built around them.
//!
//! Each comparator first evaluates its hypotheses into a list of
//! [`Condition`]s. Spectral radii are only computed (and the prediction only
//! judged) when every hypothesis holds.

mod probe;
mod remark;

pub use probe::{thm12_satisfiability_probe, thm12_satisfiability_probe_with, ProbeLevel, ProbeReport};
pub use remark::{remark_search, remark_search_with, MarginStats, RemarkAlpha, RemarkReport, RemarkWitness};

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::Result;
use crate::scalar::{inv_sqrt2, Scalar};
use crate::spectral::{spectral_radius, SpectralResult};

/// One hypothesis with both numeric sides.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition<T> {
    pub name: String,
    pub lhs: T,
    pub relation: &'static str,
    pub rhs: T,
    pub satisfied: bool,
}

impl<T: Scalar> Condition<T> {
    fn new(name: &str, lhs: T, relation: &'static str, rhs: T, satisfied: bool) -> Self {
        Condition {
            name: name.to_string(),
            lhs,
            relation,
            rhs,
            satisfied,
        }
    }

    fn compare(name: &str, lhs: T, relation: &'static str, rhs: T) -> Self {
        let satisfied = match relation {
            "=" => lhs == rhs,
            ">" => lhs > rhs,
            ">=" => lhs >= rhs,
            "<" => lhs < rhs,
            "<=" => lhs <= rhs,
            _ => unreachable!("unknown relation {relation}"),
        };
        Self::new(name, lhs, relation, rhs, satisfied)
    }
}

/// A Perron root with its enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Enclosure<T> {
    pub lambda: T,
    pub lower: T,
    pub upper: T,
}

impl<T: Scalar> From<&SpectralResult<T>> for Enclosure<T> {
    fn from(s: &SpectralResult<T>) -> Self {
        Enclosure {
            lambda: s.lambda,
            lower: s.cw_lower,
            upper: s.cw_upper,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderingVerdict<T> {
    pub theorem: &'static str,
    pub alpha: T,
    pub preconditions_met: bool,
    pub conditions: Vec<Condition<T>>,
    pub predicted: &'static str,
    /// `m − Δ⁺(G₁)` and `m − Δ⁺(G₂)` for the two-thirds comparators.
    pub k1: Option<i64>,
    pub k2: Option<i64>,
    pub lambda1: Option<Enclosure<T>>,
    pub lambda2: Option<Enclosure<T>>,
    pub margin: Option<T>,
    pub holds: Option<bool>,
}

/// The ordering statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparator {
    /// `Δ⁺(G₁) ≥ 2α(1−α)(m−n+1) + 2α`, `Δ⁺(G₁) > Δ⁺(G₂)`, `α ∈ [1/√2, 1)`
    /// ⇒ `λ(G₁) > λ(G₂)`.
    Theorem11,
    /// `Δ⁺(G₁) > 2m/3 + 1`, `Δ⁺(G₁) > Δ⁺(G₂)`, `α ∈ [1/2, 1)`
    /// ⇒ `λ(G₁) + 1/4 > λ(G₂)`.
    Theorem12,
    /// As `Theorem12` with `α ∈ [3/5, 1)` ⇒ `λ(G₁) > λ(G₂)`.
    Corollary42,
    /// `Theorem11`'s hypotheses transplanted to `α ∈ [1/2, 1/√2)`, where the
    /// conclusion is an open question.
    Remark11,
}

impl Comparator {
    pub fn name(self) -> &'static str {
        match self {
            Comparator::Theorem11 => "theorem11",
            Comparator::Theorem12 => "theorem12",
            Comparator::Corollary42 => "corollary42",
            Comparator::Remark11 => "remark11",
        }
    }

    pub fn predicted(self) -> &'static str {
        match self {
            Comparator::Theorem12 => "lambda(g1) + 1/4 > lambda(g2)",
            _ => "lambda(g1) > lambda(g2)",
        }
    }

    fn offset<T: Scalar>(self) -> T {
        match self {
            Comparator::Theorem12 => T::lit(0.25),
            _ => T::zero(),
        }
    }

    /// Closed α-interval start and open end.
    pub fn alpha_range<T: Scalar>(self) -> (T, T) {
        match self {
            Comparator::Theorem11 => (inv_sqrt2(), T::one()),
            Comparator::Theorem12 => (T::lit(0.5), T::one()),
            Comparator::Corollary42 => (T::count(3) / T::count(5), T::one()),
            Comparator::Remark11 => (T::lit(0.5), inv_sqrt2()),
        }
    }

    pub fn alpha_in_range<T: Scalar>(self, alpha: T) -> bool {
        let (lo, hi) = self.alpha_range::<T>();
        alpha >= lo && alpha < hi
    }

    /// Whether `g` can play `G₁` at this α, judged from `g` alone.
    pub fn first_candidate<T: Scalar>(self, g: &Digraph, alpha: T) -> bool {
        match self {
            Comparator::Theorem11 | Comparator::Remark11 => {
                g.n() >= 4 && T::count(g.max_out_degree()) >= theorem11_threshold(alpha, g.n(), g.m())
            }
            Comparator::Theorem12 | Comparator::Corollary42 => two_thirds_exceeded(g.max_out_degree(), g.m()),
        }
    }

    pub fn conditions<T: Scalar>(self, g1: &Digraph, g2: &Digraph, alpha: T) -> Vec<Condition<T>> {
        let c = T::count;
        let (d1, d2) = (g1.max_out_degree(), g2.max_out_degree());
        let (lo, hi) = self.alpha_range::<T>();
        let lo_name = match self {
            Comparator::Theorem11 => "alpha >= 1/sqrt(2)",
            Comparator::Corollary42 => "alpha >= 3/5",
            _ => "alpha >= 1/2",
        };
        let hi_name = match self {
            Comparator::Remark11 => "alpha < 1/sqrt(2)",
            _ => "alpha < 1",
        };
        let mut conds = Vec::new();
        if matches!(self, Comparator::Theorem11 | Comparator::Remark11) {
            conds.push(Condition::compare("n(g1) = n(g2)", c(g1.n()), "=", c(g2.n())));
            conds.push(Condition::compare("n >= 4", c(g1.n()), ">=", c(4)));
        }
        conds.push(Condition::compare("m(g1) = m(g2)", c(g1.m()), "=", c(g2.m())));
        conds.push(Condition::compare(lo_name, alpha, ">=", lo));
        conds.push(Condition::compare(hi_name, alpha, "<", hi));
        match self {
            Comparator::Theorem11 | Comparator::Remark11 => conds.push(Condition::compare(
                "maxout(g1) >= 2a(1-a)(m-n+1) + 2a",
                c(d1),
                ">=",
                theorem11_threshold(alpha, g1.n(), g1.m()),
            )),
            Comparator::Theorem12 | Comparator::Corollary42 => {
                let m = g1.m();
                conds.push(Condition::new(
                    "maxout(g1) > 2m/3 + 1",
                    c(d1),
                    ">",
                    c(2 * m) / c(3) + T::one(),
                    two_thirds_exceeded(d1, m),
                ))
            }
        }
        conds.push(Condition::compare("maxout(g1) > maxout(g2)", c(d1), ">", c(d2)));
        conds
    }

    /// Verdict from spectral results computed by the caller at the same α.
    pub fn verdict<T: Scalar>(
        self,
        g1: &Digraph,
        s1: &SpectralResult<T>,
        g2: &Digraph,
        s2: &SpectralResult<T>,
        alpha: T,
    ) -> OrderingVerdict<T> {
        let mut v = self.unjudged(g1, g2, alpha);
        if v.preconditions_met {
            self.judge(&mut v, s1, s2);
        }
        v
    }

    /// Evaluates the hypotheses and, when they all hold, computes both
    /// spectral radii with the default tolerance.
    pub fn compare<T: Scalar>(self, g1: &Digraph, g2: &Digraph, alpha: T) -> Result<OrderingVerdict<T>> {
        g1.require_strongly_connected()?;
        g2.require_strongly_connected()?;
        let mut v = self.unjudged(g1, g2, alpha);
        if v.preconditions_met {
            let s1 = spectral_radius(g1, alpha, T::default_tol())?;
            let s2 = spectral_radius(g2, alpha, T::default_tol())?;
            self.judge(&mut v, &s1, &s2);
        }
        Ok(v)
    }

    fn unjudged<T: Scalar>(self, g1: &Digraph, g2: &Digraph, alpha: T) -> OrderingVerdict<T> {
        let conditions = self.conditions(g1, g2, alpha);
        let (k1, k2) = match self {
            Comparator::Theorem12 | Comparator::Corollary42 => (
                Some(g1.m() as i64 - g1.max_out_degree() as i64),
                Some(g2.m() as i64 - g2.max_out_degree() as i64),
            ),
            _ => (None, None),
        };
        OrderingVerdict {
            theorem: self.name(),
            alpha,
            preconditions_met: conditions.iter().all(|c| c.satisfied),
            conditions,
            predicted: self.predicted(),
            k1,
            k2,
            lambda1: None,
            lambda2: None,
            margin: None,
            holds: None,
        }
    }

    fn judge<T: Scalar>(self, v: &mut OrderingVerdict<T>, s1: &SpectralResult<T>, s2: &SpectralResult<T>) {
        let margin = s1.lambda + self.offset::<T>() - s2.lambda;
        v.lambda1 = Some(s1.into());
        v.lambda2 = Some(s2.into());
        v.margin = Some(margin);
        v.holds = Some(margin > -T::violation_eps());
    }
}

/// `2α(1−α)(m−n+1) + 2α`.
pub fn theorem11_threshold<T: Scalar>(alpha: T, n: usize, m: usize) -> T {
    let two = T::count(2);
    let excess = T::count(m) + T::one() - T::count(n);
    two * alpha * (T::one() - alpha) * excess + two * alpha
}

/// `Δ⁺ > 2m/3 + 1`, decided in integers as `3Δ⁺ > 2m + 3`.
pub fn two_thirds_exceeded(max_out: usize, m: usize) -> bool {
    3 * max_out > 2 * m + 3
}

pub fn theorem11_compare<T: Scalar>(g1: &Digraph, g2: &Digraph, alpha: T) -> Result<OrderingVerdict<T>> {
    Comparator::Theorem11.compare(g1, g2, alpha)
}

pub fn theorem12_compare<T: Scalar>(g1: &Digraph, g2: &Digraph, alpha: T) -> Result<OrderingVerdict<T>> {
    Comparator::Theorem12.compare(g1, g2, alpha)
}

pub fn corollary42_compare<T: Scalar>(g1: &Digraph, g2: &Digraph, alpha: T) -> Result<OrderingVerdict<T>> {
    Comparator::Corollary42.compare(g1, g2, alpha)
}
