//! Simple undirected graphs stored as packed adjacency bit rows.
//!
//! Vertex `i`'s neighbourhood is a row of `ceil(n / 64)` words; bit `j` of the
//! row is set iff `{i, j}` is an edge. Rows are kept symmetric with an empty
//! diagonal, and the number of edges is cached at construction. Graphs are
//! immutable once built; operations that "modify" a graph return a new one.

mod gnp;
mod io;
mod named;

pub use gnp::{derive_trial_seed, sample_gnp, GnpParams};
pub use io::{read_edge_list, write_edge_list};
pub use named::{make_named, NamedGraph};

use crate::error::{Error, Result};

/// Largest vertex count accepted by constructors, the sampler and the parser.
pub const MAX_VERTICES: usize = 4096;

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Iterates the indices of set bits in a packed bit row, lowest first.
pub fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * WORD_BITS + bit)
        })
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edge_count", &self.edge_count)
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph must have at least one vertex"));
        }
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "vertex count",
                actual: n,
                limit: MAX_VERTICES,
            });
        }
        let words = words_for(n);
        Ok(Self {
            n,
            words,
            rows: vec![0; n * words],
            edge_count: 0,
        })
    }

    /// Builds a graph from 0-indexed vertex pairs. Repeated pairs are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (i, j) in edges {
            g.check_pair(i, j)?;
            g.insert(i, j);
        }
        Ok(g)
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::invalid(format!(
                "edge ({i}, {j}) out of range for {} vertices",
                self.n
            )));
        }
        if i == j {
            return Err(Error::invalid(format!("self-loop at vertex {i}")));
        }
        Ok(())
    }

    /// Sets both bits of `{i, j}`; returns false if the edge was already present.
    pub(crate) fn insert(&mut self, i: usize, j: usize) -> bool {
        debug_assert!(i != j && i < self.n && j < self.n);
        if self.has_edge(i, j) {
            return false;
        }
        self.rows[i * self.words + j / WORD_BITS] |= 1 << (j % WORD_BITS);
        self.rows[j * self.words + i / WORD_BITS] |= 1 << (i % WORD_BITS);
        self.edge_count += 1;
        true
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// e(G), the number of unordered edges.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of 64-bit words per adjacency row.
    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        (self.rows[i * self.words + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(i))
    }

    /// Edges `(i, j)` with `i < j`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    pub fn max_edges(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.max_edges()
    }

    /// A copy of this graph with `{i, j}` added.
    pub fn with_edge(&self, i: usize, j: usize) -> Result<Self> {
        self.check_pair(i, j)?;
        let mut g = self.clone();
        g.insert(i, j);
        Ok(g)
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::invalid(
                "permutation length differs from vertex count",
            ));
        }
        let mut seen = vec![false; self.n];
        for &v in perm {
            if v >= self.n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid("not a permutation of the vertex set"));
            }
        }
        Self::from_edges(self.n, self.edges().map(|(i, j)| (perm[i], perm[j])))
    }

    /// Returns true when `vertices` are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(k, &u)| {
            vertices[k + 1..]
                .iter()
                .all(|&v| u != v && u < self.n && v < self.n && self.has_edge(u, v))
        })
    }

    /// Checks the structural invariants: symmetric rows, empty diagonal, no
    /// stray bits past column `n`, and a consistent cached edge count.
    pub fn check_invariants(&self) -> bool {
        let tail = self.n % WORD_BITS;
        let mut upper = 0usize;
        for i in 0..self.n {
            if self.has_edge(i, i) {
                return false;
            }
            if tail != 0 && self.row(i)[self.words - 1] >> tail != 0 {
                return false;
            }
            for j in self.neighbors(i) {
                if !self.has_edge(j, i) {
                    return false;
                }
                if j > i {
                    upper += 1;
                }
            }
        }
        upper == self.edge_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_has_no_edges() {
        let g = Graph::empty(7).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(g.check_invariants());
        assert!(Graph::empty(0).is_err());
        assert!(matches!(
            Graph::empty(MAX_VERTICES + 1),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn from_edges_merges_duplicates_and_rejects_loops() {
        let g = Graph::from_edges(4, [(0, 1), (1, 0), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 0) && g.has_edge(3, 2));
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn rows_span_word_boundaries() {
        let g = Graph::from_edges(130, [(0, 129), (63, 64), (64, 128)]).unwrap();
        assert_eq!(g.words_per_row(), 3);
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 128]);
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 129), (63, 64), (64, 128)]
        );
        assert!(g.check_invariants());
    }

    #[test]
    fn permutation_preserves_edge_count() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let h = g.permuted(&[3, 2, 1, 0]).unwrap();
        assert!(h.has_edge(3, 2) && h.has_edge(2, 1));
        assert_eq!(h.edge_count(), 2);
        assert!(g.permuted(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn clique_predicate() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(g.is_clique(&[0, 1, 2]));
        assert!(!g.is_clique(&[0, 1, 3]));
        assert!(g.is_clique(&[3]));
    }
}
