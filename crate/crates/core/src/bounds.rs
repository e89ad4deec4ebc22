//! Closed-form quantities around the Bollobás–Nikiforov inequality for
//! G(n, p): the limiting values of λ₁, λ₂ and ω, the finite-n threshold
//! chain `m0..m4 → n0`, both sides of the comparison those thresholds
//! guarantee, and the Hoeffding tail on the edge count.
//!
//! **All logarithms are natural logarithms.**
//!
//! Thresholds can be astronomically large (beyond `u64`), so `n` is taken as
//! `f64` wherever it is compared against them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `eps` and `p` in (0, 1), `c0 > 0`. `c0` is the constant of the λ₂ bound,
/// which has no specified value; it defaults to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub eps: f64,
    pub p: f64,
    pub c0: f64,
}

pub const DEFAULT_C0: f64 = 1.0;

fn check_open_unit(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} = {x} is not in (0, 1)")))
    }
}

impl BoundParams {
    pub fn new(eps: f64, p: f64, c0: f64) -> Result<Self> {
        let params = Self { eps, p, c0 };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        check_open_unit("eps", self.eps)?;
        check_open_unit("p", self.p)?;
        if !(self.c0 > 0.0 && self.c0.is_finite()) {
            return Err(Error::invalid(format!("c0 = {} must be positive", self.c0)));
        }
        Ok(())
    }

    /// Largest edge probability for which the threshold chain closes:
    /// `(1 − eps)² / (1 + 2 eps)`.
    pub fn p_max(&self) -> f64 {
        p_max(self.eps)
    }

    pub fn p_admissible(&self) -> bool {
        self.p <= self.p_max()
    }
}

pub fn p_max(eps: f64) -> f64 {
    (1.0 - eps).powi(2) / (1.0 + 2.0 * eps)
}

/// `p · n`, the value λ₁ / n tends to almost surely.
pub fn juhasz_expected_lambda1(n: usize, p: f64) -> f64 {
    p * n as f64
}

/// `2 √(p(1−p)n) + c0 · n^{1/3} · ln n`.
pub fn fk_lambda2_bound(n: usize, params: &BoundParams) -> f64 {
    let n = n as f64;
    let p = params.p;
    2.0 * (p * (1.0 - p) * n).sqrt() + params.c0 * n.cbrt() * n.ln()
}

/// `2 ln n / ln(1/p)`, the almost-sure growth rate of the clique number.
pub fn clique_asymptote(n: usize, p: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("clique asymptote needs n >= 2"));
    }
    check_open_unit("p", p)?;
    Ok(2.0 * (n as f64).ln() / (1.0 / p).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub eps: f64,
    pub p: f64,
    pub c0: f64,
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    pub n0_prime: f64,
    pub n0_double_prime: f64,
    pub n0: f64,
    pub p_max: f64,
    pub p_admissible: bool,
    /// Some threshold overflowed to +∞ in double precision.
    pub overflow: bool,
}

/// The five thresholds beyond which each term of the finite-n comparison is
/// controlled, and their maxima.
///
/// | threshold | beyond it |
/// |-----------|-----------|
/// | `m0 = 12(1−p)/(εp)` | `4p(1−p)/n ≤ εp²/3` |
/// | `m1 = (12 c0 √(p(1−p)) / (εp²))⁶` | `4 c0 √(p(1−p)) n^{-1/6} ≤ εp²/3` |
/// | `m2 = (3 c0² / (εp²))³` | `c0² n^{-1/3} ≤ εp²/3` |
/// | `m3 = 1/(1 − √(1−ε))` | `1 − 1/n ≥ √(1−ε)` |
/// | `m4 = exp(ln(1/p) / ((1 − √(1−ε)) · 2(1−ε)))` | `1 − ln(1/p)/(2(1−ε) ln n) ≥ √(1−ε)` |
pub fn lemma31_thresholds(params: &BoundParams) -> ThresholdReport {
    let BoundParams { eps, p, c0 } = *params;
    let q = p * (1.0 - p);
    let eps_p2 = eps * p * p;
    let root = (1.0 - eps).sqrt();

    let m0 = 12.0 * (1.0 - p) / (eps * p);
    let m1 = (12.0 * c0 * q.sqrt() / eps_p2).powi(6);
    let m2 = (3.0 * c0 * c0 / eps_p2).powi(3);
    let m3 = 1.0 / (1.0 - root);
    let m4 = ((1.0 / p).ln() / ((1.0 - root) * 2.0 * (1.0 - eps))).exp();

    let n0_prime = m0.max(m1).max(m2);
    let n0_double_prime = m3.max(m4);
    let n0 = n0_prime.max(n0_double_prime);
    ThresholdReport {
        eps,
        p,
        c0,
        m0,
        m1,
        m2,
        m3,
        m4,
        n0_prime,
        n0_double_prime,
        n0,
        p_max: params.p_max(),
        p_admissible: params.p_admissible(),
        overflow: [m0, m1, m2, m3, m4].iter().any(|m| m.is_infinite()),
    }
}

/// Per-threshold term inequalities at `n`, in the order `m0..m4`. Each entry
/// is guaranteed true once `n` exceeds the corresponding threshold.
pub fn lemma31_term_checks(n: f64, params: &BoundParams) -> [bool; 5] {
    let BoundParams { eps, p, c0 } = *params;
    let q = p * (1.0 - p);
    let third = eps * p * p / 3.0;
    let root = (1.0 - eps).sqrt();
    [
        4.0 * q / n <= third,
        4.0 * c0 * q.sqrt() * n.powf(-1.0 / 6.0) <= third,
        c0 * c0 * n.powf(-1.0 / 3.0) <= third,
        1.0 - 1.0 / n >= root,
        1.0 - (1.0 / p).ln() / (2.0 * (1.0 - eps) * n.ln()) >= root,
    ]
}

/// Upper envelope for λ₁² + λ₂² built from the λ₁ and λ₂ bounds:
/// `(1+ε)p²n² + 4p(1−p)n + 4c0 √(p(1−p)) n^{5/6} ln n + c0² n^{2/3} (ln n)²`.
pub fn spectral_envelope(n: f64, params: &BoundParams) -> f64 {
    let BoundParams { eps, p, c0 } = *params;
    let q = p * (1.0 - p);
    let ln = n.ln();
    (1.0 + eps) * p * p * n * n
        + 4.0 * q * n
        + 4.0 * c0 * q.sqrt() * n.powf(5.0 / 6.0) * ln
        + c0 * c0 * n.powf(2.0 / 3.0) * ln * ln
}

/// `1 − ln(1/p) / (2(1−ε) ln n)`, the lower bound on `1 − 1/ω` implied by
/// `ω ≥ (1−ε) · 2 ln n / ln(1/p)`.
pub fn clique_factor_bound(n: f64, params: &BoundParams) -> f64 {
    1.0 - (1.0 / params.p).ln() / (2.0 * (1.0 - params.eps) * n.ln())
}

/// Both sides of the comparison guaranteed for `n > n0`:
/// `lhs = spectral_envelope(n)`,
/// `rhs = p(1−ε) n(n−1) (1 − ln(1/p)/(2(1−ε) ln n))`.
pub fn lemma31_sides(n: f64, params: &BoundParams) -> Result<(f64, f64)> {
    if n.is_nan() || n < 2.0 {
        return Err(Error::invalid(format!("n = {n} must be at least 2")));
    }
    let lhs = spectral_envelope(n, params);
    let rhs = params.p * (1.0 - params.eps) * n * (n - 1.0) * clique_factor_bound(n, params);
    Ok((lhs, rhs))
}

fn check_tail_args(n: usize, p: f64, eps: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid("edge tail needs n >= 2"));
    }
    check_open_unit("p", p)?;
    check_open_unit("eps", eps)
}

/// `exp(−ε²p² n(n−1))`, Hoeffding's bound on `P(e(G) ≤ (1−ε) p n(n−1)/2)`.
pub fn hoeffding_edge_tail(n: usize, p: f64, eps: f64) -> Result<f64> {
    check_tail_args(n, p, eps)?;
    let pairs = n as f64 * (n as f64 - 1.0);
    Ok((-(eps * eps * p * p) * pairs).exp())
}

/// `1 − exp(−C n(n−1))` with `C = ε²p²`.
pub fn theorem_lower_bound(n: usize, p: f64, eps: f64) -> Result<f64> {
    Ok(1.0 - hoeffding_edge_tail(n, p, eps)?)
}

/// Every closed-form value at one `(n, params)`; the CLI's `bounds` output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub eps: f64,
    pub p: f64,
    pub c0: f64,
    pub juhasz_lambda1: f64,
    pub fk_lambda2_bound: f64,
    pub clique_asymptote: f64,
    pub hoeffding_tail: f64,
    pub theorem_lower_bound: f64,
    pub lemma_lhs: f64,
    pub lemma_rhs: f64,
    pub lemma_holds: bool,
    pub edge_threshold: f64,
    pub thresholds: ThresholdReport,
}

pub fn bounds_report(n: usize, params: &BoundParams) -> Result<BoundsReport> {
    params.validate()?;
    let (lemma_lhs, lemma_rhs) = lemma31_sides(n as f64, params)?;
    let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    Ok(BoundsReport {
        n,
        eps: params.eps,
        p: params.p,
        c0: params.c0,
        juhasz_lambda1: juhasz_expected_lambda1(n, params.p),
        fk_lambda2_bound: fk_lambda2_bound(n, params),
        clique_asymptote: clique_asymptote(n, params.p)?,
        hoeffding_tail: hoeffding_edge_tail(n, params.p, params.eps)?,
        theorem_lower_bound: theorem_lower_bound(n, params.p, params.eps)?,
        lemma_lhs,
        lemma_rhs,
        lemma_holds: lemma_lhs <= lemma_rhs,
        edge_threshold: (1.0 - params.eps) * params.p * pairs,
        thresholds: lemma31_thresholds(params),
    })
}
