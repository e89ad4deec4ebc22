//! Lanczos iteration with full reorthogonalisation for the largest
//! eigenpair of an adjacency matrix, optionally restricted to the orthogonal
//! complement of previously found eigenvectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dense::tridiagonal_eigen;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// y = A x for the adjacency matrix of `g`.
pub(crate) fn adjacency_matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (i, yi) in y.iter_mut().enumerate() {
        *yi = g.neighbors(i).map(|j| x[j]).sum();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn orthogonalize(w: &mut [f64], basis: &[Vec<f64>]) {
    for q in basis {
        let c = dot(w, q);
        axpy(-c, q, w);
    }
}

pub(crate) struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
}

pub(crate) struct LanczosBudget {
    pub remaining_matvecs: usize,
    pub used_matvecs: usize,
}

const CHECK_EVERY: usize = 8;
const START_SEED: u64 = 0x6C61_6E63_7A6F_7300;

/// Largest eigenpair of A restricted to the complement of `deflate`
/// (orthonormal vectors). Converged when `‖Ay − θy‖ ≤ threshold`.
pub(crate) fn largest_eigenpair(
    g: &Graph,
    deflate: &[Vec<f64>],
    threshold: impl Fn(f64) -> f64,
    budget: &mut LanczosBudget,
) -> Result<Eigenpair> {
    let n = g.n();
    let max_dim = n - deflate.len();
    assert!(max_dim >= 1);

    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED ^ deflate.len() as u64);
    let mut q: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    // Two passes keep the start vector orthogonal to `deflate` to working precision.
    orthogonalize(&mut q, deflate);
    orthogonalize(&mut q, deflate);
    let norm = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|x| *x /= norm);

    let mut basis: Vec<Vec<f64>> = vec![q];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let mut best_residual = f64::INFINITY;

    loop {
        if budget.remaining_matvecs == 0 {
            return Err(Error::Convergence {
                matvecs: budget.used_matvecs,
                best_residual,
            });
        }
        let j = basis.len() - 1;
        adjacency_matvec(g, &basis[j], &mut w);
        budget.remaining_matvecs -= 1;
        budget.used_matvecs += 1;

        let a = dot(&w, &basis[j]);
        axpy(-a, &basis[j], &mut w);
        if j > 0 {
            axpy(-beta[j - 1], &basis[j - 1], &mut w);
        }
        for _ in 0..2 {
            orthogonalize(&mut w, deflate);
            orthogonalize(&mut w, &basis);
        }
        alpha.push(a);
        let b = dot(&w, &w).sqrt();
        let dim = alpha.len();

        let scale = alpha
            .iter()
            .chain(&beta)
            .fold(1.0f64, |m, x| m.max(x.abs()));
        let invariant = b <= 1e-12 * scale || dim == max_dim;

        if invariant || dim.is_multiple_of(CHECK_EVERY) {
            let t = tridiagonal_eigen(&alpha, &beta)?;
            let top = dim - 1;
            let theta = t.values[top];
            let s = t.vector(top);
            let estimate = if invariant { 0.0 } else { b * s[dim - 1].abs() };
            let target = threshold(theta);
            if estimate <= 0.5 * target {
                let mut y = vec![0.0; n];
                for (coef, qk) in s.iter().zip(&basis) {
                    axpy(*coef, qk, &mut y);
                }
                let ny = dot(&y, &y).sqrt();
                y.iter_mut().for_each(|x| *x /= ny);
                let mut ay = vec![0.0; n];
                adjacency_matvec(g, &y, &mut ay);
                axpy(-theta, &y, &mut ay);
                let residual = dot(&ay, &ay).sqrt();
                best_residual = best_residual.min(residual);
                if residual <= target {
                    return Ok(Eigenpair {
                        value: theta,
                        vector: y,
                    });
                }
            }
            if invariant {
                return Err(Error::Convergence {
                    matvecs: budget.used_matvecs,
                    best_residual,
                });
            }
        }

        beta.push(b);
        w.iter_mut().for_each(|x| *x /= b);
        basis.push(std::mem::replace(&mut w, vec![0.0; n]));
    }
}
