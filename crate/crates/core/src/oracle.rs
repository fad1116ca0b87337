//! Brute-force ground truth for small `n`.
//!
//! Realizations are enumerated by backtracking over the non-`H` vertex pairs
//! in lexicographic order, starting from `H_h`. A branch is cut when a vertex
//! would exceed its target or can no longer reach it with the pairs still
//! undecided; neither cut discards a valid graph.

use std::fmt;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::checker;
use crate::graph::{GraphError, LabelledGraph};
use crate::sequence::{DegreeSequence, FactorShape, SequenceError};

/// Default enumeration cap on `n`.
pub const DEFAULT_NMAX: usize = 12;

/// Adjacency rows are `u64` masks.
const HARD_NMAX: usize = 64;

/// Attempts [`gen_sequence`] makes before giving up.
pub const GEN_RETRY_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("no accepted sequence for n = {n}, h = {h} after {tries} draws")]
    RetryBudgetExceeded { n: usize, h: u32, tries: usize },
    #[error("graph does not contain H as a spanning subgraph")]
    NotSpanning,
    #[error(transparent)]
    Shape(#[from] SequenceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Search<'a, F> {
    n: usize,
    pairs: Vec<(usize, usize)>,
    target: &'a [u32],
    deg: Vec<u32>,
    remaining: Vec<u32>,
    adj: Vec<u64>,
    found: usize,
    limit: Option<usize>,
    visit: F,
}

impl<F> Search<'_, F>
where
    F: FnMut(&LabelledGraph) -> ControlFlow<()>,
{
    fn emit(&mut self) -> ControlFlow<()> {
        let mut g = LabelledGraph::with_cap(self.n, HARD_NMAX).expect("n within hard cap");
        for u in 0..self.n {
            let mut row = self.adj[u] >> (u + 1);
            while row != 0 {
                let v = u + 1 + row.trailing_zeros() as usize;
                row &= row - 1;
                g.add_edge(u + 1, v + 1).expect("fresh edge");
            }
        }
        self.found += 1;
        (self.visit)(&g)?;
        match self.limit {
            Some(l) if self.found >= l => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    }

    fn run(&mut self, idx: usize) -> ControlFlow<()> {
        if idx == self.pairs.len() {
            if (0..self.n).all(|v| self.deg[v] == self.target[v]) {
                return self.emit();
            }
            return ControlFlow::Continue(());
        }
        let (u, v) = self.pairs[idx];
        self.remaining[u] -= 1;
        self.remaining[v] -= 1;
        let mut flow = ControlFlow::Continue(());
        if self.deg[u] < self.target[u] && self.deg[v] < self.target[v] {
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
            flow = self.run(idx + 1);
            self.deg[u] -= 1;
            self.deg[v] -= 1;
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
        if flow.is_continue()
            && self.deg[u] + self.remaining[u] >= self.target[u]
            && self.deg[v] + self.remaining[v] >= self.target[v]
        {
            flow = self.run(idx + 1);
        }
        self.remaining[u] += 1;
        self.remaining[v] += 1;
        flow
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    let cap = cap.min(HARD_NMAX);
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    Ok(())
}

/// Calls `visit` on every simple `G ⊇ H_h` with `d_G(v_i) = d_i`, in
/// lexicographic order of the non-`H` pair choices, stopping after `limit`
/// graphs. Returns how many were visited.
pub fn for_each_realization<F>(
    seq: &DegreeSequence,
    cap: usize,
    limit: Option<usize>,
    visit: F,
) -> Result<usize, OracleError>
where
    F: FnMut(&LabelledGraph) -> ControlFlow<()>,
{
    let n = seq.n();
    check_cap(n, cap)?;
    let shape = seq.shape()?;
    let h = shape.h();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !shape.is_h_edge(u + 1, v + 1))
        .collect();
    let mut remaining = vec![0u32; n];
    for &(u, v) in &pairs {
        remaining[u] += 1;
        remaining[v] += 1;
    }
    let mut adj = vec![0u64; n];
    for (u, v) in shape.h_edges() {
        adj[u - 1] |= 1 << (v - 1);
        adj[v - 1] |= 1 << (u - 1);
    }
    let mut search = Search {
        n,
        pairs,
        target: seq.degrees(),
        deg: vec![h as u32; n],
        remaining,
        adj,
        found: 0,
        limit,
        visit,
    };
    if limit == Some(0) {
        return Ok(0);
    }
    let _ = search.run(0);
    Ok(search.found)
}

pub fn enumerate_realizations(
    seq: &DegreeSequence,
    cap: usize,
    limit: Option<usize>,
) -> Result<Vec<LabelledGraph>, OracleError> {
    let mut out = Vec::new();
    for_each_realization(seq, cap, limit, |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn count_realizations(seq: &DegreeSequence, cap: usize) -> Result<usize, OracleError> {
    for_each_realization(seq, cap, None, |_| ControlFlow::Continue(()))
}

pub fn decide_exists(seq: &DegreeSequence, cap: usize) -> Result<bool, OracleError> {
    Ok(for_each_realization(seq, cap, Some(1), |_| ControlFlow::Continue(()))? > 0)
}

/// Deletes the `H` edges whose endpoints both have labels above `k`.
pub fn residual_graph(
    g: &LabelledGraph,
    shape: &FactorShape,
    k: usize,
) -> Result<LabelledGraph, OracleError> {
    if !crate::verify::is_h_spanning(g, shape)? {
        return Err(OracleError::NotSpanning);
    }
    let mut out = g.clone();
    for (u, v) in shape.h_edges().filter(|&(u, _)| u > k) {
        out.remove_edge(u, v)?;
    }
    Ok(out)
}

/// The Erdős–Gallai counting bound over the first `k` labels of `g`:
/// `Σ_{i≤k} d(v_i) ≤ k(k-1) + Σ_{i>k} min(d(v_i), k)`. Returns both sides.
pub fn prefix_counting_bound(g: &LabelledGraph, k: usize) -> (u64, u64) {
    let kk = k as u64;
    let lhs = (1..=k).map(|i| g.degree(i) as u64).sum();
    let rhs = kk * (kk - 1)
        + (k + 1..=g.n())
            .map(|i| (g.degree(i) as u64).min(kk))
            .sum::<u64>();
    (lhs, rhs)
}

/// All non-increasing sequences of length `n` with entries in `lo..=hi`,
/// in lexicographically decreasing order.
pub fn sorted_sequences(n: usize, lo: u32, hi: u32) -> impl Iterator<Item = Vec<u32>> {
    let mut next = (lo <= hi).then(|| vec![hi; n]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        // decrement the last position that can drop, reset the tail to it
        let mut succ = current.clone();
        if let Some(pos) = succ.iter().rposition(|&d| d > lo) {
            let value = succ[pos] - 1;
            for d in &mut succ[pos..] {
                *d = value;
            }
            next = Some(succ);
        }
        Some(current)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub h: u32,
    pub n: usize,
    pub total: usize,
    pub accepted: usize,
    pub disagreements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub h: u32,
    pub degrees: Vec<u32>,
    pub checker: bool,
    pub oracle: bool,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub disagreements: Vec<Disagreement>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.total).sum()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(
                f,
                "h={} n={} total={} accepted={} disagreements={}",
                row.h, row.n, row.total, row.accepted, row.disagreements
            )?;
        }
        for d in &self.disagreements {
            let seq: Vec<String> = d.degrees.iter().map(|x| format!("{x:02}")).collect();
            writeln!(
                f,
                "disagreement h={} seq={} checker={} oracle={}",
                d.h,
                seq.join(","),
                d.checker,
                d.oracle
            )?;
        }
        Ok(())
    }
}

/// Compares the checker with brute-force existence on every non-increasing
/// sequence with `h ≤ d_i ≤ n - 1`, for every `h` in `hs` and every
/// `n ≤ nmax` divisible by `h + 1`. `jobs = 0` uses all cores.
pub fn sweep_equivalence(
    hs: &[u32],
    nmax: usize,
    cap: usize,
    jobs: usize,
) -> Result<SweepReport, OracleError> {
    check_cap(nmax, cap)?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for &h in hs {
        for n in (1..=nmax).filter(|n| n % (h as usize + 1) == 0) {
            let seqs: Vec<Vec<u32>> = sorted_sequences(n, h, n as u32 - 1).collect();
            let outcomes: Vec<Result<(bool, bool), OracleError>> = pool.install(|| {
                seqs.par_iter()
                    .map(|d| {
                        let accepted = checker::check_h_realizable(d, h).accepted;
                        let seq = DegreeSequence::new(d.clone(), h)?;
                        Ok((accepted, decide_exists(&seq, cap)?))
                    })
                    .collect()
            });
            let mut row = SweepRow {
                h,
                n,
                total: seqs.len(),
                accepted: 0,
                disagreements: 0,
            };
            for (d, outcome) in seqs.into_iter().zip(outcomes) {
                let (accepted, exists) = outcome?;
                row.accepted += usize::from(accepted);
                if accepted != exists {
                    row.disagreements += 1;
                    disagreements.push(Disagreement {
                        h,
                        degrees: d,
                        checker: accepted,
                        oracle: exists,
                    });
                }
            }
            rows.push(row);
        }
    }
    Ok(SweepReport {
        rows,
        disagreements,
        elapsed: start.elapsed(),
    })
}

/// Rejection sampling: draw `n` values uniformly in `h..=n-1`, sort them
/// non-increasing, keep the first draw the checker accepts. Deterministic in
/// `seed`.
pub fn gen_sequence(n: usize, h: u32, seed: u64) -> Result<DegreeSequence, OracleError> {
    FactorShape::new(n, h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi = n as u32 - 1;
    for _ in 0..GEN_RETRY_BUDGET {
        let mut d: Vec<u32> = (0..n).map(|_| rng.gen_range(h..=hi)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        if checker::check_h_realizable(&d, h).accepted {
            return Ok(DegreeSequence::new(d, h)?);
        }
    }
    Err(OracleError::RetryBudgetExceeded {
        n,
        h,
        tries: GEN_RETRY_BUDGET,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(d: &[u32], h: u32) -> DegreeSequence {
        DegreeSequence::new(d.to_vec(), h).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            count_realizations(&seq(&[2, 2, 2, 2], 1), DEFAULT_NMAX).unwrap(),
            2
        );
        let only = enumerate_realizations(&seq(&[1, 1, 1, 1], 1), DEFAULT_NMAX, None).unwrap();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].edges().collect::<Vec<_>>(), vec![(1, 2), (3, 4)]);
        assert_eq!(
            count_realizations(&seq(&[2, 2, 1, 1], 1), DEFAULT_NMAX).unwrap(),
            0
        );
    }

    #[test]
    fn decide_examples() {
        assert!(decide_exists(&seq(&[3, 3, 3, 3], 1), DEFAULT_NMAX).unwrap());
        assert!(!decide_exists(&seq(&[2, 2, 1, 1], 1), DEFAULT_NMAX).unwrap());
        assert!(decide_exists(&seq(&[2; 9], 2), DEFAULT_NMAX).unwrap());
    }

    #[test]
    fn limit_stops_early() {
        let s = seq(&[2, 2, 2, 2], 1);
        assert_eq!(
            enumerate_realizations(&s, DEFAULT_NMAX, Some(1))
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            for_each_realization(&s, DEFAULT_NMAX, Some(0), |_| ControlFlow::Continue(())).unwrap(),
            0
        );
    }

    #[test]
    fn cap_is_enforced() {
        let s = seq(&[1; 14], 1);
        assert_eq!(
            decide_exists(&s, DEFAULT_NMAX),
            Err(OracleError::CapExceeded { n: 14, cap: 12 })
        );
        assert!(decide_exists(&s, 14).unwrap());
    }

    #[test]
    fn residual_examples() {
        let shape = FactorShape::new(4, 1).unwrap();
        let k4 = LabelledGraph::complete(4).unwrap();
        assert_eq!(residual_graph(&k4, &shape, 4).unwrap(), k4);
        let g = residual_graph(&k4, &shape, 2).unwrap();
        assert!(!g.has_edge(3, 4));
        assert_eq!(g.edge_count(), 5);
        assert_eq!((g.degree(3), g.degree(4)), (2, 2));

        let shape = FactorShape::new(6, 2).unwrap();
        let h = shape.h_graph().unwrap();
        let g = residual_graph(&h, &shape, 3).unwrap();
        assert_eq!(g.degrees(), &[2, 2, 2, 0, 0, 0]);

        let cycle = LabelledGraph::from_edges(4, [(1, 3), (2, 4)]).unwrap();
        assert_eq!(
            residual_graph(&cycle, &FactorShape::new(4, 1).unwrap(), 1),
            Err(OracleError::NotSpanning)
        );
    }

    #[test]
    fn sorted_sequence_counts() {
        // C(hi - lo + n, n)
        assert_eq!(sorted_sequences(4, 1, 3).count(), 15);
        assert_eq!(sorted_sequences(1, 0, 0).collect::<Vec<_>>(), vec![vec![0]]);
        let all: Vec<_> = sorted_sequences(3, 0, 2).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![2, 2, 2]);
        assert_eq!(all[9], vec![0, 0, 0]);
        assert!(all.iter().all(|d| d.windows(2).all(|w| w[0] >= w[1])));
    }

    #[test]
    fn gen_examples() {
        let a = gen_sequence(6, 2, 7).unwrap();
        assert_eq!(a, gen_sequence(6, 2, 7).unwrap());
        assert!(checker::check(&a).accepted);
        assert_eq!(gen_sequence(4, 3, 1).unwrap().degrees(), &[3, 3, 3, 3]);
        assert!(matches!(gen_sequence(5, 2, 1), Err(OracleError::Shape(_))));
    }

    #[test]
    fn sweep_report_text() {
        let report = sweep_equivalence(&[1], 4, DEFAULT_NMAX, 1).unwrap();
        assert_eq!(
            report.to_string(),
            "h=1 n=2 total=1 accepted=1 disagreements=0\nh=1 n=4 total=15 accepted=3 disagreements=0\n"
        );
    }
}
