//! Simple undirected graphs on labelled vertices `1..=n`.
//!
//! Adjacency is a symmetric bit matrix: row `v` holds one bit per vertex, so
//! an adjacency test is a single word lookup and neighbourhood differences
//! such as `N(a) \ N[b]` are word-wise `and-not`s. A per-vertex degree cache
//! is kept in step with every mutation.

use std::fmt;

use thiserror::Error;

/// Largest vertex count accepted by [`LabelledGraph::new`] unless a caller
/// supplies its own cap. Memory is `n^2 / 8` bytes.
pub const DEFAULT_MAX_VERTICES: usize = 20_000;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {n} exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("vertex {v} is outside 1..={n}")]
    BadVertex { v: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),
    #[error("size mismatch: graph has {graph} vertices, expected {expected}")]
    SizeMismatch { graph: usize, expected: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    degree: Vec<usize>,
}

impl LabelledGraph {
    /// Edgeless graph on `n` vertices, capped at [`DEFAULT_MAX_VERTICES`].
    pub fn new(n: usize) -> Result<Self, GraphError> {
        Self::with_cap(n, DEFAULT_MAX_VERTICES)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self, GraphError> {
        if n > cap {
            return Err(GraphError::TooLarge { n, cap });
        }
        let words = n.div_ceil(WORD).max(1);
        Ok(Self {
            n,
            words,
            bits: vec![0; n * words],
            degree: vec![0; n],
        })
    }

    /// Builds a graph from 1-indexed edges, rejecting loops and duplicates.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::new(n)?;
        for u in 1..=n {
            for v in u + 1..=n {
                g.insert(u, v);
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.degree.iter().sum::<usize>() / 2
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.degree[v - 1]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let b = v - 1;
        self.bits[(u - 1) * self.words + b / WORD] >> (b % WORD) & 1 == 1
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(GraphError::BadVertex { v: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u.min(v), u.max(v)));
        }
        self.flip(u, v);
        self.flip(v, u);
        self.degree[u - 1] -= 1;
        self.degree[v - 1] -= 1;
        Ok(())
    }

    // Caller guarantees u != v, both in range, edge absent.
    fn insert(&mut self, u: usize, v: usize) {
        self.flip(u, v);
        self.flip(v, u);
        self.degree[u - 1] += 1;
        self.degree[v - 1] += 1;
    }

    #[inline]
    fn flip(&mut self, u: usize, v: usize) {
        let b = v - 1;
        self.bits[(u - 1) * self.words + b / WORD] ^= 1 << (b % WORD);
    }

    /// Raw bit row of `v`; bit `j - 1` is set iff `v ~ j`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        let start = (v - 1) * self.words;
        &self.bits[start..start + self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v).iter().copied())
    }

    /// `N(a) \ N[b]` in increasing order.
    pub fn neighbors_not_closed(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        let ra = self.row(a);
        let rb = self.row(b);
        BitIter::new(ra.iter().zip(rb).map(|(x, y)| x & !y)).filter(move |&w| w != b)
    }

    /// `|N(v) ∩ {lo..=hi}|`.
    pub fn count_neighbors_in(&self, v: usize, lo: usize, hi: usize) -> usize {
        if lo > hi {
            return 0;
        }
        let row = self.row(v);
        let (lo, hi) = (lo - 1, hi - 1);
        let (wl, wh) = (lo / WORD, hi / WORD);
        let mut total = 0;
        for (w, &word) in row.iter().enumerate().take(wh + 1).skip(wl) {
            let mut x = word;
            if w == wl {
                x &= !0u64 << (lo % WORD);
            }
            if w == wh && hi % WORD != WORD - 1 {
                x &= (1u64 << (hi % WORD + 1)) - 1;
            }
            total += x.count_ones() as usize;
        }
        total
    }

    /// Smallest `j` in `lo..=hi`, `j != v`, with `v` not adjacent to `j`.
    pub fn first_non_neighbor_in(&self, v: usize, lo: usize, hi: usize) -> Option<usize> {
        if lo > hi {
            return None;
        }
        let row = self.row(v);
        let (l0, h0) = (lo - 1, hi - 1);
        let (wl, wh) = (l0 / WORD, h0 / WORD);
        for (w, &word) in row.iter().enumerate().take(wh + 1).skip(wl) {
            let mut x = !word;
            if w == wl {
                x &= !0u64 << (l0 % WORD);
            }
            if w == wh && h0 % WORD != WORD - 1 {
                x &= (1u64 << (h0 % WORD + 1)) - 1;
            }
            let b = v - 1;
            if b / WORD == w {
                x &= !(1u64 << (b % WORD));
            }
            if x != 0 {
                return Some(w * WORD + x.trailing_zeros() as usize + 1);
            }
        }
        None
    }

    /// All edges `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Re-derives symmetry, irreflexivity, padding and the degree cache from
    /// the bit matrix. Returns the first defect found.
    pub fn audit(&self) -> Result<(), String> {
        for v in 1..=self.n {
            if self.has_edge(v, v) {
                return Err(format!("loop at {v}"));
            }
            let row = self.row(v);
            let tail = self.n % WORD;
            if tail != 0 && row[self.words - 1] >> tail != 0 {
                return Err(format!("padding bits set in row {v}"));
            }
            let count: usize = row.iter().map(|w| w.count_ones() as usize).sum();
            if count != self.degree(v) {
                return Err(format!(
                    "degree cache of {v} is {} but row has {count}",
                    self.degree(v)
                ));
            }
            for u in self.neighbors(v) {
                if !self.has_edge(u, v) {
                    return Err(format!("asymmetric pair {v}-{u}"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LabelledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabelledGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Iterates set bits of a word stream as 1-indexed vertex labels.
pub struct BitIter<I> {
    words: I,
    base: usize,
    current: u64,
}

impl<I: Iterator<Item = u64>> BitIter<I> {
    fn new(mut words: I) -> Self {
        let current = words.next().unwrap_or(0);
        Self {
            words,
            base: 0,
            current,
        }
    }
}

impl<I: Iterator<Item = u64>> Iterator for BitIter<I> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let t = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.base + t + 1);
            }
            self.current = self.words.next()?;
            self.base += WORD;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_remove_keeps_cache() {
        let mut g = LabelledGraph::new(70).unwrap();
        g.add_edge(1, 70).unwrap();
        g.add_edge(65, 2).unwrap();
        assert!(g.has_edge(70, 1));
        assert_eq!(g.degree(1), 1);
        assert_eq!(g.edge_count(), 2);
        g.remove_edge(70, 1).unwrap();
        assert_eq!(g.degree(70), 0);
        g.audit().unwrap();
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = LabelledGraph::new(3).unwrap();
        assert_eq!(g.add_edge(2, 2), Err(GraphError::Loop(2)));
        g.add_edge(1, 2).unwrap();
        assert_eq!(g.add_edge(2, 1), Err(GraphError::DuplicateEdge(1, 2)));
        assert_eq!(g.remove_edge(1, 3), Err(GraphError::MissingEdge(1, 3)));
        assert!(matches!(
            g.add_edge(0, 1),
            Err(GraphError::BadVertex { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            LabelledGraph::with_cap(11, 10),
            Err(GraphError::TooLarge { n: 11, cap: 10 })
        ));
    }

    #[test]
    fn range_queries_cross_word_boundaries() {
        let n = 130;
        let mut g = LabelledGraph::new(n).unwrap();
        for v in [2, 63, 64, 65, 128, 130] {
            g.add_edge(1, v).unwrap();
        }
        assert_eq!(g.count_neighbors_in(1, 1, n), 6);
        assert_eq!(g.count_neighbors_in(1, 63, 65), 3);
        assert_eq!(g.count_neighbors_in(1, 66, 127), 0);
        assert_eq!(g.count_neighbors_in(1, 64, 64), 1);
        assert_eq!(g.first_non_neighbor_in(1, 63, 65), None);
        assert_eq!(g.first_non_neighbor_in(1, 1, 3), Some(3));
        assert_eq!(g.first_non_neighbor_in(1, 128, 130), Some(129));
        assert_eq!(
            g.neighbors(1).collect::<Vec<_>>(),
            vec![2, 63, 64, 65, 128, 130]
        );
    }

    #[test]
    fn closed_difference_excludes_b() {
        let g = LabelledGraph::from_edges(5, [(1, 2), (1, 3), (1, 4), (2, 4), (3, 5)]).unwrap();
        // N(1) = {2,3,4}, N[2] = {1,2,4}
        assert_eq!(g.neighbors_not_closed(1, 2).collect::<Vec<_>>(), vec![3]);
        assert_eq!(
            g.neighbors_not_closed(2, 1).collect::<Vec<_>>(),
            Vec::<usize>::new()
        );
    }

    #[test]
    fn edges_are_lexicographic() {
        let g = LabelledGraph::complete(4).unwrap();
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
        );
        g.audit().unwrap();
    }
}
