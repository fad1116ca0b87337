//! Target degree sequences and the clique-factor shape `H_h`.

use std::ops::RangeInclusive;

use thiserror::Error;

use crate::graph::{GraphError, LabelledGraph};

/// Why a list of degrees cannot be a [`DegreeSequence`] or [`FactorShape`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("sequence is empty")]
    Empty,
    #[error("not non-increasing at index {index} ({prev} < {value})")]
    NotSorted { index: usize, prev: u32, value: u32 },
    #[error("d_{index} = {value} is below h = {h}")]
    BelowH { index: usize, value: u32, h: u32 },
    #[error("d_1 = {value} exceeds n - 1 = {max}")]
    DegreeCeiling { value: u32, max: usize },
    #[error("n = {n} is not a multiple of h + 1 = {block}")]
    NotMultiple { n: usize, block: usize },
}

/// A non-increasing target sequence `(d_1, ..., d_n)` together with `h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
    h: u32,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>, h: u32) -> Result<Self, SequenceError> {
        if degrees.is_empty() {
            return Err(SequenceError::Empty);
        }
        if let Some(i) = degrees.windows(2).position(|w| w[0] < w[1]) {
            return Err(SequenceError::NotSorted {
                index: i + 2,
                prev: degrees[i],
                value: degrees[i + 1],
            });
        }
        let n = degrees.len();
        if degrees[n - 1] < h {
            return Err(SequenceError::BelowH {
                index: n,
                value: degrees[n - 1],
                h,
            });
        }
        if degrees[0] as usize > n - 1 {
            return Err(SequenceError::DegreeCeiling {
                value: degrees[0],
                max: n - 1,
            });
        }
        Ok(Self { degrees, h })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// `d_i`, 1-indexed.
    #[inline]
    pub fn d(&self, i: usize) -> usize {
        self.degrees[i - 1] as usize
    }

    pub fn total(&self) -> u64 {
        self.degrees.iter().map(|&d| u64::from(d)).sum()
    }

    pub fn shape(&self) -> Result<FactorShape, SequenceError> {
        FactorShape::new(self.n(), self.h)
    }
}

/// The block partition `V_1, ..., V_{n/(h+1)}` of consecutive labels; block
/// `i` covers `(i-1)(h+1)+1 ..= i(h+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FactorShape {
    n: usize,
    h: usize,
}

impl FactorShape {
    pub fn new(n: usize, h: u32) -> Result<Self, SequenceError> {
        let h = h as usize;
        if n == 0 {
            return Err(SequenceError::Empty);
        }
        if !n.is_multiple_of(h + 1) {
            return Err(SequenceError::NotMultiple { n, block: h + 1 });
        }
        Ok(Self { n, h })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn h(&self) -> usize {
        self.h
    }

    #[inline]
    pub fn block_size(&self) -> usize {
        self.h + 1
    }

    pub fn block_count(&self) -> usize {
        self.n / (self.h + 1)
    }

    /// `⌈k / (h+1)⌉`.
    #[inline]
    pub fn block_of(&self, k: usize) -> usize {
        (k - 1) / (self.h + 1) + 1
    }

    /// `k mod (h+1)`.
    #[inline]
    pub fn residue(&self, k: usize) -> usize {
        k % (self.h + 1)
    }

    #[inline]
    pub fn block(&self, b: usize) -> RangeInclusive<usize> {
        let start = (b - 1) * (self.h + 1) + 1;
        start..=start + self.h
    }

    #[inline]
    pub fn block_containing(&self, k: usize) -> RangeInclusive<usize> {
        self.block(self.block_of(k))
    }

    #[inline]
    pub fn same_block(&self, u: usize, v: usize) -> bool {
        self.block_of(u) == self.block_of(v)
    }

    /// Whether `uv` is an edge of `H_h`.
    #[inline]
    pub fn is_h_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.same_block(u, v)
    }

    /// Block-mates of `k` with a label greater than `r`.
    pub fn mates_after(&self, k: usize, r: usize) -> usize {
        let end = *self.block_containing(k).end();
        let start = (r + 1).max(*self.block_containing(k).start());
        (start..=end).filter(|&j| j != k).count()
    }

    /// `H_h` itself.
    pub fn h_graph(&self) -> Result<LabelledGraph, GraphError> {
        let mut g = LabelledGraph::new(self.n)?;
        for (u, v) in self.h_edges() {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Edges of `H_h`, lexicographic.
    pub fn h_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.block_count()).flat_map(move |b| {
            let range = self.block(b);
            let (lo, hi) = (*range.start(), *range.end());
            (lo..=hi).flat_map(move |u| (u + 1..=hi).map(move |v| (u, v)))
        })
    }

    /// `|E(H_h)| = n h / 2`.
    pub fn h_edge_count(&self) -> usize {
        self.n * self.h / 2
    }
}
