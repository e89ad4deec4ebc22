use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Parameters of one G(n, p) draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GnpParams {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        let params = Self { n, p, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::invalid(format!("p = {} is not in [0, 1]", self.p)));
        }
        Ok(())
    }

    /// The random-graph model proper requires 0 < p < 1; the endpoints are
    /// accepted for fixtures but produce deterministic graphs.
    pub fn outside_model(&self) -> bool {
        self.p <= 0.0 || self.p >= 1.0
    }
}

/// Samples G(n, p).
///
/// The generator is ChaCha8 seeded with `ChaCha8Rng::seed_from_u64(seed)`.
/// Pairs `(i, j)`, `i < j`, are visited row-major over the strict upper
/// triangle; each pair consumes exactly one uniform `f64` in `[0, 1)` and
/// becomes an edge iff that draw is `< p`. Changing any of this changes every
/// sampled graph, so it is part of the output contract.
pub fn sample_gnp(params: &GnpParams) -> Result<Graph> {
    params.validate()?;
    let mut g = Graph::empty(params.n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for i in 0..params.n {
        for j in (i + 1)..params.n {
            let draw: f64 = rng.gen();
            if draw < params.p {
                g.insert(i, j);
            }
        }
    }
    Ok(g)
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Per-trial seed for Monte Carlo runs.
///
/// Computes the SplitMix64 output for state `master + (trial + 1) * GAMMA`
/// (wrapping), with `GAMMA = 0x9E3779B97F4A7C15`. Since `GAMMA` is odd and the
/// SplitMix64 finaliser is a bijection on `u64`, distinct trial indices map to
/// distinct seeds for a fixed master seed.
pub fn derive_trial_seed(master: u64, trial: u64) -> u64 {
    let mut z = master.wrapping_add(trial.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
