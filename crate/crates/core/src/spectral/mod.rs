//! Eigenvalues of the adjacency matrix.
//!
//! Two routes are provided. The dense route builds the full matrix and runs
//! Householder tridiagonalisation plus implicit QL; it is used for
//! `full_spectrum` and for `top_two` when `n <= dense_limit`. Above that,
//! `top_two` runs Lanczos with full reorthogonalisation twice: once for
//! (λ₁, v₁), then on the complement of v₁ for λ₂, so a repeated top
//! eigenvalue is reported twice.
//!
//! Every returned eigenvalue is backed by an explicit residual
//! `‖Av − λv‖₂ ≤ tol · max(1, λ₁)`.

mod dense;
mod lanczos;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use dense::{symmetric_eigen, SymmetricEigen};
use lanczos::{adjacency_matvec, largest_eigenpair, LanczosBudget};

pub const DEFAULT_DENSE_LIMIT: usize = 2048;
pub const DEFAULT_TOL: f64 = 1e-9;
/// Matrix-vector product cap for the iterative route, as a multiple of `n`.
pub const MATVEC_CAP_FACTOR: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralMethod {
    Dense,
    Iterative,
}

/// Route selection for [`top_two_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    /// Dense up to `dense_limit`, iterative above.
    #[default]
    Auto,
    Force(SpectralMethod),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConfig {
    pub tol: f64,
    pub dense_limit: usize,
    pub method: MethodChoice,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            dense_limit: DEFAULT_DENSE_LIMIT,
            method: MethodChoice::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub lambda1: f64,
    pub lambda2: f64,
    pub residual1: f64,
    pub residual2: f64,
    pub method: SpectralMethod,
}

/// All eigenvalues in descending order, with the worst residual over the
/// computed eigenpairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub max_residual: f64,
}

fn dense_adjacency(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut a = vec![0.0; n * n];
    for (i, j) in g.edges() {
        a[i * n + j] = 1.0;
        a[j * n + i] = 1.0;
    }
    a
}

fn residual(g: &Graph, lambda: f64, v: &[f64], scratch: &mut [f64]) -> f64 {
    adjacency_matvec(g, v, scratch);
    scratch
        .iter()
        .zip(v)
        .map(|(av, x)| (av - lambda * x).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Error-free `a + b` as `(sum, rounding error)`.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Double-double accumulator: `hi + lo` carries ~106 significant bits.
#[derive(Clone, Copy, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn add(self, x: f64) -> Dd {
        let (s, e) = two_sum(self.hi, x);
        let (hi, lo) = two_sum(s, e + self.lo);
        Dd { hi, lo }
    }

    fn add_prod(self, a: f64, b: f64) -> Dd {
        let p = a * b;
        let err = a.mul_add(b, -p);
        let d = self.add(p);
        let (hi, lo) = two_sum(d.hi, d.lo + err);
        Dd { hi, lo }
    }
}

/// Rayleigh quotient `vᵀAv / vᵀv` evaluated in double-double arithmetic.
///
/// For an approximate eigenvector its error is quadratic in the vector
/// error, so this polishes λ to (nearly) the last bit; integer eigenvalues
/// such as those of complete graphs come out exact.
fn rayleigh_quotient(g: &Graph, v: &[f64]) -> f64 {
    let mut num = Dd::default();
    let mut den = Dd::default();
    for (i, &vi) in v.iter().enumerate() {
        den = den.add_prod(vi, vi);
        let mut row = Dd::default();
        for j in g.neighbors(i) {
            row = row.add(v[j]);
        }
        num = num.add_prod(vi, row.hi).add_prod(vi, row.lo);
    }
    let q = num.hi / den.hi;
    // One correction step: q + (num − q·den) / den.
    let r = num.add_prod(-q, den.hi).add_prod(-q, den.lo);
    q + (r.hi + r.lo) / den.hi
}

fn dense_decomposition(g: &Graph, cfg: &SpectralConfig) -> Result<SymmetricEigen> {
    if g.n() > cfg.dense_limit {
        return Err(Error::Capacity {
            what: "vertex count for the dense eigensolver",
            actual: g.n(),
            limit: cfg.dense_limit,
        });
    }
    symmetric_eigen(dense_adjacency(g), g.n())
}

pub fn full_spectrum(g: &Graph) -> Result<Vec<f64>> {
    Ok(full_spectrum_with(g, &SpectralConfig::default())?.values)
}

pub fn full_spectrum_with(g: &Graph, cfg: &SpectralConfig) -> Result<Spectrum> {
    let eig = dense_decomposition(g, cfg)?;
    let n = g.n();
    let mut scratch = vec![0.0; n];
    let max_residual = (0..n)
        .map(|i| residual(g, eig.values[i], eig.vector(i), &mut scratch))
        .fold(0.0, f64::max);
    let lambda1 = eig.values[n - 1];
    if max_residual > cfg.tol * lambda1.max(1.0) {
        return Err(Error::Convergence {
            matvecs: 0,
            best_residual: max_residual,
        });
    }
    let mut values = eig.values;
    values.reverse();
    Ok(Spectrum {
        values,
        max_residual,
    })
}

fn polished(
    g: &Graph,
    v1: &[f64],
    v2: &[f64],
    method: SpectralMethod,
    scratch: &mut [f64],
) -> SpectralSummary {
    let (l1, l2) = (rayleigh_quotient(g, v1), rayleigh_quotient(g, v2));
    let ((l1, v1), (l2, v2)) = if l2 > l1 {
        ((l2, v2), (l1, v1))
    } else {
        ((l1, v1), (l2, v2))
    };
    SpectralSummary {
        lambda1: l1,
        lambda2: l2,
        residual1: residual(g, l1, v1, scratch),
        residual2: residual(g, l2, v2, scratch),
        method,
    }
}

pub fn top_two(g: &Graph) -> Result<SpectralSummary> {
    top_two_with(g, &SpectralConfig::default())
}

pub fn top_two_with(g: &Graph, cfg: &SpectralConfig) -> Result<SpectralSummary> {
    let n = g.n();
    if n < 2 {
        return Err(Error::invalid(
            "λ₂ needs a graph with at least two vertices",
        ));
    }
    let method = match cfg.method {
        MethodChoice::Auto if n <= cfg.dense_limit => SpectralMethod::Dense,
        MethodChoice::Auto => SpectralMethod::Iterative,
        MethodChoice::Force(m) => m,
    };
    let summary = match method {
        SpectralMethod::Dense => {
            let eig = dense_decomposition(g, cfg)?;
            let mut scratch = vec![0.0; n];
            let (v1, v2) = (eig.vector(n - 1), eig.vector(n - 2));
            polished(g, v1, v2, method, &mut scratch)
        }
        SpectralMethod::Iterative => {
            let mut budget = LanczosBudget {
                remaining_matvecs: MATVEC_CAP_FACTOR * n,
                used_matvecs: 0,
            };
            let tol = cfg.tol;
            let first = largest_eigenpair(g, &[], |theta| tol * theta.max(1.0), &mut budget)?;
            let scale = first.value.max(1.0);
            let second = largest_eigenpair(
                g,
                std::slice::from_ref(&first.vector),
                |_| tol * scale,
                &mut budget,
            )?;
            let (hi, lo) = if second.value > first.value {
                (second, first)
            } else {
                (first, second)
            };
            let mut scratch = vec![0.0; n];
            polished(g, &hi.vector, &lo.vector, method, &mut scratch)
        }
    };
    let bound = cfg.tol * summary.lambda1.max(1.0);
    let worst = summary.residual1.max(summary.residual2);
    if worst > bound {
        return Err(Error::Convergence {
            matvecs: 0,
            best_residual: worst,
        });
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named, NamedGraph};

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn empty_graph_spectrum_is_zero() {
        let g = make_named(NamedGraph::Empty, 4).unwrap();
        assert_close(&full_spectrum(&g).unwrap(), &[0.0; 4], 1e-15);
    }

    #[test]
    fn k4_spectrum() {
        let g = make_named(NamedGraph::Complete, 4).unwrap();
        assert_close(&full_spectrum(&g).unwrap(), &[3.0, -1.0, -1.0, -1.0], 1e-12);
    }

    #[test]
    fn p3_spectrum() {
        // Characteristic polynomial λ³ − 2λ.
        let g = make_named(NamedGraph::Path, 3).unwrap();
        let r = 2f64.sqrt();
        assert_close(&full_spectrum(&g).unwrap(), &[r, 0.0, -r], 1e-12);
    }

    #[test]
    fn c5_spectrum() {
        // 2cos(2πk/5), k = 0..4.
        let g = make_named(NamedGraph::Cycle, 5).unwrap();
        let want = [
            2.0,
            0.618033988749895,
            0.618033988749895,
            -1.618033988749895,
            -1.618033988749895,
        ];
        assert_close(&full_spectrum(&g).unwrap(), &want, 1e-12);
    }

    #[test]
    fn top_two_examples() {
        let k6 = make_named(NamedGraph::Complete, 6).unwrap();
        let s = top_two(&k6).unwrap();
        assert!((s.lambda1 - 5.0).abs() < 1e-12 && (s.lambda2 + 1.0).abs() < 1e-12);
        assert_eq!(s.method, SpectralMethod::Dense);

        let k33 = make_named(NamedGraph::CompleteBipartite(3, 3), 6).unwrap();
        let s = top_two(&k33).unwrap();
        assert!((s.lambda1 - 3.0).abs() < 1e-12 && s.lambda2.abs() < 1e-12);

        let c5 = make_named(NamedGraph::Cycle, 5).unwrap();
        let s = top_two(&c5).unwrap();
        assert!((s.lambda1 - 2.0).abs() < 1e-12);
        assert!((s.lambda2 - 0.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn complete_graph_top_two_is_exact() {
        for n in 2..=50 {
            let s = top_two(&make_named(NamedGraph::Complete, n).unwrap()).unwrap();
            assert_eq!((s.lambda1, s.lambda2), ((n - 1) as f64, -1.0), "K{n}");
        }
        let s = top_two_with(
            &make_named(NamedGraph::Complete, 30).unwrap(),
            &SpectralConfig {
                method: MethodChoice::Force(SpectralMethod::Iterative),
                ..SpectralConfig::default()
            },
        )
        .unwrap();
        assert_eq!((s.lambda1, s.lambda2), (29.0, -1.0));
    }

    #[test]
    fn top_two_needs_two_vertices() {
        let g = make_named(NamedGraph::Empty, 1).unwrap();
        assert!(matches!(top_two(&g), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn dense_limit_is_enforced() {
        let g = make_named(NamedGraph::Path, 10).unwrap();
        let cfg = SpectralConfig {
            dense_limit: 5,
            ..Default::default()
        };
        assert!(matches!(
            full_spectrum_with(&g, &cfg),
            Err(Error::Capacity { .. })
        ));
        let forced = SpectralConfig {
            method: MethodChoice::Force(SpectralMethod::Dense),
            ..cfg
        };
        assert!(matches!(
            top_two_with(&g, &forced),
            Err(Error::Capacity { .. })
        ));
        // Auto falls back to the iterative route above the limit.
        let s = top_two_with(&g, &cfg).unwrap();
        assert_eq!(s.method, SpectralMethod::Iterative);
        let want = 2.0 * (std::f64::consts::PI / 11.0).cos();
        assert!((s.lambda1 - want).abs() < 1e-9);
    }

    #[test]
    fn iterative_reports_tied_top_eigenvalue_twice() {
        // Two disjoint triangles: spectrum 2, 2, -1 x4.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let cfg = SpectralConfig {
            method: MethodChoice::Force(SpectralMethod::Iterative),
            ..Default::default()
        };
        let s = top_two_with(&g, &cfg).unwrap();
        assert!(
            (s.lambda1 - 2.0).abs() < 1e-9 && (s.lambda2 - 2.0).abs() < 1e-9,
            "{s:?}"
        );
        let d = top_two(&g).unwrap();
        assert!((d.lambda2 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn iterative_on_empty_and_complete() {
        let cfg = SpectralConfig {
            method: MethodChoice::Force(SpectralMethod::Iterative),
            ..Default::default()
        };
        let s = top_two_with(&make_named(NamedGraph::Empty, 9).unwrap(), &cfg).unwrap();
        assert_eq!((s.lambda1, s.lambda2), (0.0, 0.0));
        let s = top_two_with(&make_named(NamedGraph::Complete, 9).unwrap(), &cfg).unwrap();
        assert!((s.lambda1 - 8.0).abs() < 1e-9 && (s.lambda2 + 1.0).abs() < 1e-9);
    }
}
