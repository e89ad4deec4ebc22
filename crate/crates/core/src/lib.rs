//! Numerical checks of the Bollobás–Nikiforov inequality
//! `λ₁² + λ₂² ≤ 2e(G)(1 − 1/ω(G))` on explicit graphs and on Erdős–Rényi
//! samples, together with the closed-form bounds that control it for G(n, p).

pub mod bounds;
pub mod cli;
pub mod clique;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod spectral;

pub use error::{Error, Result};
