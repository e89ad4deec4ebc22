//! Exact maximum clique.
//!
//! Branch and bound over bitset candidate sets in the style of Tomita's MCQ
//! as specialised to bit rows by San Segundo (BBMC). Vertices are relabelled
//! so that the highest-core vertices come first (reverse degeneracy order);
//! at every node the candidate set is greedily coloured class by class, and a
//! vertex is only branched on while `|C| + colour(v)` can beat the incumbent.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{iter_bits, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    pub omega: usize,
    /// Vertices of a clique of size `omega`, ascending.
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
    /// The time budget ran out; `omega` is then only a lower bound.
    pub time_limited: bool,
}

impl CliqueResult {
    pub fn certified(&self) -> bool {
        !self.time_limited
    }
}

/// Vertex order in which each vertex has minimum degree among those not yet
/// removed, reversed so the densest core comes first.
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| degree[v])
            .expect("a vertex remains");
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    order.reverse();
    order
}

const TIME_CHECK_INTERVAL: u64 = 1024;

struct Search {
    words: usize,
    rows: Vec<u64>,
    best: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl Search {
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Greedy sequential colouring of `p`. Only vertices whose colour reaches
    /// `kmin` are returned, in non-decreasing colour order.
    fn colour_sort(
        &self,
        p: &[u64],
        kmin: usize,
        order: &mut Vec<usize>,
        colours: &mut Vec<usize>,
    ) {
        let mut uncoloured = p.to_vec();
        let mut class = vec![0u64; self.words];
        let mut k = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            k += 1;
            class.copy_from_slice(&uncoloured);
            let mut w = 0;
            while w < self.words {
                if class[w] == 0 {
                    w += 1;
                    continue;
                }
                let bit = class[w].trailing_zeros() as usize;
                let v = w * 64 + bit;
                uncoloured[w] &= !(1 << bit);
                class[w] &= !(1 << bit);
                for (c, r) in class.iter_mut().zip(self.row(v)).skip(w) {
                    *c &= !r;
                }
                if k >= kmin {
                    order.push(v);
                    colours.push(k);
                }
            }
        }
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut p: Vec<u64>) {
        self.nodes += 1;
        if let Some(deadline) = self.deadline {
            if self.nodes.is_multiple_of(TIME_CHECK_INTERVAL) && Instant::now() >= deadline {
                self.timed_out = true;
            }
        }
        if self.timed_out {
            return;
        }

        let kmin = (self.best.len() + 1).saturating_sub(clique.len()).max(1);
        let mut order = Vec::new();
        let mut colours = Vec::new();
        self.colour_sort(&p, kmin, &mut order, &mut colours);

        for idx in (0..order.len()).rev() {
            if clique.len() + colours[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            clique.push(v);
            let next: Vec<u64> = p.iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            p[v / 64] &= !(1 << (v % 64));
            if self.timed_out {
                return;
            }
        }
    }
}

/// Maximum clique of `g`. With `limit`, the search stops once the budget is
/// spent and the result is flagged `time_limited`.
pub fn max_clique(g: &Graph, limit: Option<Duration>) -> CliqueResult {
    let start = Instant::now();
    let n = g.n();
    let order = degeneracy_order(g);
    let mut position = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }

    let words = g.words_per_row();
    let mut rows = vec![0u64; n * words];
    for (k, &v) in order.iter().enumerate() {
        for u in g.neighbors(v) {
            let pu = position[u];
            rows[k * words + pu / 64] |= 1 << (pu % 64);
        }
    }

    let mut search = Search {
        words,
        rows,
        best: Vec::new(),
        nodes: 0,
        deadline: limit.map(|d| start + d),
        timed_out: false,
    };

    // Greedy incumbent along the relabelled order.
    for v in 0..n {
        if search
            .best
            .iter()
            .all(|&u| search.rows[v * words + u / 64] >> (u % 64) & 1 == 1)
        {
            search.best.push(v);
        }
    }

    let mut all = vec![0u64; words];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    search.expand(&mut Vec::new(), all);

    let mut witness: Vec<usize> = search.best.iter().map(|&k| order[k]).collect();
    witness.sort_unstable();
    debug_assert!(g.is_clique(&witness));
    CliqueResult {
        omega: witness.len(),
        witness,
        nodes_explored: search.nodes,
        time_limited: search.timed_out,
    }
}

pub const BRUTEFORCE_LIMIT: usize = 20;

/// ω(G) by testing every vertex subset of size 2, 3, ... and stopping at the
/// first size with no clique. Independent of [`max_clique`]; used as its oracle.
pub fn max_clique_bruteforce(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::Capacity {
            what: "vertex count for brute-force clique search",
            actual: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let is_clique = |mask: u32| iter_bits(&[mask as u64]).all(|v| mask & !(1 << v) & !adj[v] == 0);

    let mut omega = 1;
    for k in 2..=n {
        let mut mask: u32 = (1 << k) - 1;
        let mut found = false;
        while mask < (1u32 << n) {
            if is_clique(mask) {
                found = true;
                break;
            }
            // Next subset of the same size (Gosper's hack).
            let low = mask & mask.wrapping_neg();
            let ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
        if !found {
            break;
        }
        omega = k;
    }
    Ok(omega)
}
