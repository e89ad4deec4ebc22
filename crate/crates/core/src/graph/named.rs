use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Families of fixture graphs on vertices `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedGraph {
    Empty,
    Complete,
    Cycle,
    Path,
    /// Parts `0..a` and `a..a+b`.
    CompleteBipartite(usize, usize),
}

pub fn make_named(kind: NamedGraph, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("graph must have at least one vertex"));
    }
    match kind {
        NamedGraph::Empty => Graph::empty(n),
        NamedGraph::Complete => {
            Graph::from_edges(n, (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))))
        }
        NamedGraph::Path => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
        NamedGraph::Cycle => {
            if n < 3 {
                return Err(Error::invalid(format!(
                    "cycle needs at least 3 vertices, got {n}"
                )));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        NamedGraph::CompleteBipartite(a, b) => {
            if a == 0 || b == 0 || a + b != n {
                return Err(Error::invalid(format!(
                    "complete bipartite parts ({a}, {b}) must be positive and sum to {n}"
                )));
            }
            Graph::from_edges(n, (0..a).flat_map(|i| (a..n).map(move |j| (i, j))))
        }
    }
}
