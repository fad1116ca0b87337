use std::fmt;

use crate::checker;
use crate::graph::LabelledGraph;
use crate::sequence::{DegreeSequence, FactorShape};

use super::RealizeError;

/// Which exchange produced a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Join `v_r` to a deficient non-neighbour.
    Case1,
    /// Companion search, cross-block neighbour of `v_i` swapped onto `v_r`.
    C2_1a,
    /// Companion search, swap through `v_ℓ ∈ N(v_i) \ N[v_k]`.
    C2_1b,
    /// Companion search, drain a neighbour of `v_k` onto `v_r`.
    C2_1c,
    /// `F ⊄ A`, deficiency at least 2: attach both ends of `v_ℓ v_i` to `v_r`.
    C2_2a,
    /// `F ⊄ A`, deficiency 1, `v_i ~ v_k`.
    C2_2b,
    /// `F ⊄ A`, deficiency 1, `v_i ≁ v_k`.
    C2_2c,
    /// `N(A) ∩ D ≠ ∅`.
    C2_3,
    C2_4a,
    C2_4b,
    C2_4c,
    C2_4d,
    C2_6a,
    C2_6b,
    C2_6c,
    C2_6d,
    C2_6e,
    C2_6f,
    C2_6g,
    C2_6h,
    /// Terminal exchange of Case 2.
    C2Final,
    Case3,
    Case4,
}

impl Rule {
    pub const ALL: [Rule; 23] = [
        Rule::Case1,
        Rule::C2_1a,
        Rule::C2_1b,
        Rule::C2_1c,
        Rule::C2_2a,
        Rule::C2_2b,
        Rule::C2_2c,
        Rule::C2_3,
        Rule::C2_4a,
        Rule::C2_4b,
        Rule::C2_4c,
        Rule::C2_4d,
        Rule::C2_6a,
        Rule::C2_6b,
        Rule::C2_6c,
        Rule::C2_6d,
        Rule::C2_6e,
        Rule::C2_6f,
        Rule::C2_6g,
        Rule::C2_6h,
        Rule::C2Final,
        Rule::Case3,
        Rule::Case4,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::Case1 => "Case1",
            Rule::C2_1a => "C2.1a",
            Rule::C2_1b => "C2.1b",
            Rule::C2_1c => "C2.1c",
            Rule::C2_2a => "C2.2a",
            Rule::C2_2b => "C2.2b",
            Rule::C2_2c => "C2.2c",
            Rule::C2_3 => "C2.3",
            Rule::C2_4a => "C2.4a",
            Rule::C2_4b => "C2.4b",
            Rule::C2_4c => "C2.4c",
            Rule::C2_4d => "C2.4d",
            Rule::C2_6a => "C2.6a",
            Rule::C2_6b => "C2.6b",
            Rule::C2_6c => "C2.6c",
            Rule::C2_6d => "C2.6d",
            Rule::C2_6e => "C2.6e",
            Rule::C2_6f => "C2.6f",
            Rule::C2_6g => "C2.6g",
            Rule::C2_6h => "C2.6h",
            Rule::C2Final => "C2.final",
            Rule::Case3 => "Case3",
            Rule::Case4 => "Case4",
        }
    }

    pub(crate) fn index(self) -> usize {
        Rule::ALL.iter().position(|&r| r == self).unwrap()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One edge exchange: `removed` go first, then `added`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub rule: Rule,
    pub removed: Vec<(usize, usize)>,
    pub added: Vec<(usize, usize)>,
    pub witnesses: Vec<(&'static str, usize)>,
}

/// A move as it was applied, with the critical index it was selected at and
/// the degree of that vertex afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoggedMove {
    pub seq: usize,
    pub r: usize,
    pub deg_r: usize,
    pub mv: Move,
}

fn fmt_pairs(pairs: &[(usize, usize)]) -> String {
    let mut ps: Vec<(usize, usize)> = pairs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    ps.sort_unstable();
    ps.iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for LoggedMove {
    /// `<seq#> <rule-id> -<removed pairs> +<added pairs> r=<r> deg(v_r)=<d(v_r)>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} -{} +{} r={} deg(v_r)={}",
            self.seq,
            self.mv.rule,
            fmt_pairs(&self.mv.removed),
            fmt_pairs(&self.mv.added),
            self.r,
            self.deg_r
        )
    }
}

/// Realizer state: a graph containing `H_h` whose degrees never exceed the
/// targets, all vertices before the critical index `r` saturated, and only
/// `H` edges among the vertices after `r`.
#[derive(Debug, Clone)]
pub struct Subrealization {
    pub(crate) graph: LabelledGraph,
    pub(crate) targets: DegreeSequence,
    pub(crate) shape: FactorShape,
    pub(crate) r: usize,
    pub(crate) log: Vec<LoggedMove>,
    pub(crate) keep_log: bool,
    // bit (v-1) set iff d(v) < d_v
    pub(crate) deficient: Vec<u64>,
    pub(crate) moves: usize,
}

impl Subrealization {
    /// Wraps an arbitrary graph as a subrealization of `targets`, computing
    /// the critical index and auditing every invariant.
    pub fn from_parts(graph: LabelledGraph, targets: DegreeSequence) -> Result<Self, RealizeError> {
        let shape = targets.shape()?;
        if graph.n() != targets.n() {
            return Err(crate::graph::GraphError::SizeMismatch {
                graph: graph.n(),
                expected: targets.n(),
            }
            .into());
        }
        let n = graph.n();
        let mut st = Subrealization {
            graph,
            targets,
            shape,
            r: 1,
            log: Vec::new(),
            keep_log: false,
            deficient: vec![0; n.div_ceil(64).max(1)],
            moves: 0,
        };
        for v in 1..=n {
            st.set_deficient_bit(v);
        }
        st.advance();
        st.audit()
            .map_err(|invariant| RealizeError::InvariantViolation {
                rule: None,
                invariant,
                detail: "from_parts".into(),
            })?;
        Ok(st)
    }

    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn targets(&self) -> &DegreeSequence {
        &self.targets
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    /// Critical index: the first deficient label, or `n + 1`.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn log(&self) -> &[LoggedMove] {
        &self.log
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn is_complete(&self) -> bool {
        self.r > self.n()
    }

    #[inline]
    pub fn deficiency(&self, v: usize) -> usize {
        self.targets.d(v) - self.graph.degree(v)
    }

    #[inline]
    pub(crate) fn is_deficient(&self, v: usize) -> bool {
        self.graph.degree(v) < self.targets.d(v)
    }

    /// Deficient labels `> after`, ascending.
    pub(crate) fn deficient_after(&self, after: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n();
        self.deficient_iter().filter(move |&v| v > after && v <= n)
    }

    fn deficient_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.deficient.iter().enumerate().flat_map(|(w, &word)| {
            let mut x = word;
            std::iter::from_fn(move || {
                if x == 0 {
                    return None;
                }
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(w * 64 + t + 1)
            })
        })
    }

    /// Smallest deficient `k > r` with `v_r ≁ v_k`.
    pub(crate) fn deficient_non_neighbor(&self, r: usize) -> Option<usize> {
        let row = self.graph.row(r);
        let start = r; // bit index of label r + 1
        let first_word = start / 64;
        for (w, (&def, &adj)) in self.deficient.iter().zip(row).enumerate().skip(first_word) {
            let mut x = def & !adj;
            if w == first_word {
                x &= !0u64 << (start % 64);
            }
            if x != 0 {
                return Some(w * 64 + x.trailing_zeros() as usize + 1);
            }
        }
        None
    }

    fn set_deficient_bit(&mut self, v: usize) {
        let b = v - 1;
        if self.is_deficient(v) {
            self.deficient[b / 64] |= 1 << (b % 64);
        } else {
            self.deficient[b / 64] &= !(1 << (b % 64));
        }
    }

    pub(crate) fn critical_index(&self) -> usize {
        (1..=self.n())
            .find(|&v| self.is_deficient(v))
            .unwrap_or(self.n() + 1)
    }

    /// Net degree change per vertex, in first-touched order.
    pub(crate) fn deltas(mv: &Move) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(8);
        let mut bump = |v: usize, by: i64| match out.iter_mut().find(|(w, _)| *w == v) {
            Some(e) => e.1 += by,
            None => out.push((v, by)),
        };
        for &(u, v) in &mv.removed {
            bump(u, -1);
            bump(v, -1);
        }
        for &(u, v) in &mv.added {
            bump(u, 1);
            bump(v, 1);
        }
        out
    }

    /// Checks that `mv` may be applied at the current critical index: every
    /// removed pair is a non-`H` edge, every added pair is absent after the
    /// removals and not inside `S`, the prefix before `r` keeps its degrees,
    /// `d(v_r)` rises by 1 or 2, and no target is exceeded.
    pub fn check_move(&self, mv: &Move) -> Result<(), &'static str> {
        let n = self.n();
        let r = self.r;
        let valid = |u: usize, v: usize| u != v && (1..=n).contains(&u) && (1..=n).contains(&v);
        let same = |a: (usize, usize), b: (usize, usize)| a == b || a == (b.1, b.0);
        for (x, &(u, v)) in mv.removed.iter().enumerate() {
            if !valid(u, v) || !self.graph.has_edge(u, v) {
                return Err("removed pair is not an edge");
            }
            if self.shape.is_h_edge(u, v) {
                return Err("M3: removes an H edge");
            }
            if mv.removed[..x].iter().any(|&p| same(p, (u, v))) {
                return Err("removed pair listed twice");
            }
        }
        for (x, &(u, v)) in mv.added.iter().enumerate() {
            if !valid(u, v) {
                return Err("added pair is not a vertex pair");
            }
            let was_removed = mv.removed.iter().any(|&p| same(p, (u, v)));
            if self.graph.has_edge(u, v) && !was_removed {
                return Err("added pair already an edge");
            }
            if mv.added[..x].iter().any(|&p| same(p, (u, v))) {
                return Err("added pair listed twice");
            }
            if u > r && v > r && !self.shape.is_h_edge(u, v) {
                return Err("M4: adds an edge inside S");
            }
        }
        let mut raised = 0;
        for (v, delta) in Self::deltas(mv) {
            let after = self.graph.degree(v) as i64 + delta;
            if v < r && delta != 0 {
                return Err("M1: changes a saturated prefix degree");
            }
            if after > self.targets.d(v) as i64 {
                return Err("M5: exceeds a target degree");
            }
            if v == r {
                raised = delta;
            }
        }
        if !(1..=2).contains(&raised) {
            return Err("M2: d(v_r) must rise by 1 or 2");
        }
        Ok(())
    }

    pub(crate) fn is_legal(&self, mv: &Move) -> bool {
        self.check_move(mv).is_ok()
    }

    /// Applies a move, then recomputes the critical index.
    pub fn apply_move(&mut self, mv: Move) -> Result<(), RealizeError> {
        if let Err(invariant) = self.check_move(&mv) {
            return Err(RealizeError::InvariantViolation {
                rule: Some(mv.rule),
                invariant,
                detail: format!("{mv:?} at r={}", self.r),
            });
        }
        let r = self.r;
        for &(u, v) in &mv.removed {
            self.graph.remove_edge(u, v)?;
        }
        for &(u, v) in &mv.added {
            self.graph.add_edge(u, v)?;
        }
        for (v, _) in Self::deltas(&mv) {
            self.set_deficient_bit(v);
        }
        self.moves += 1;
        if self.keep_log {
            self.log.push(LoggedMove {
                seq: self.moves,
                r,
                deg_r: self.graph.degree(r),
                mv,
            });
        }
        self.advance();
        Ok(())
    }

    /// Moves `r` forward past saturated labels.
    pub(crate) fn advance(&mut self) {
        while self.r <= self.n() && !self.is_deficient(self.r) {
            self.r += 1;
        }
    }

    /// Full re-audit of the subrealization invariants (M3, M4, M5, the
    /// critical-index definition and the degree cache).
    pub fn audit(&self) -> Result<(), &'static str> {
        let n = self.n();
        self.graph
            .audit()
            .map_err(|_| "graph is not simple or degree cache is stale")?;
        if self
            .shape
            .h_edges()
            .any(|(u, v)| !self.graph.has_edge(u, v))
        {
            return Err("M3: an H edge is missing");
        }
        if (1..=n).any(|v| self.graph.degree(v) > self.targets.d(v)) {
            return Err("M5: a degree exceeds its target");
        }
        if self.r != self.critical_index() {
            return Err("critical index is stale");
        }
        for v in self.r + 1..=n {
            let beyond = self.graph.count_neighbors_in(v, self.r + 1, n);
            if beyond != self.shape.mates_after(v, self.r) {
                return Err("M4: S contains a non-H edge");
            }
        }
        for v in 1..=n {
            let bit = self.deficient[(v - 1) / 64] >> ((v - 1) % 64) & 1 == 1;
            if bit != self.is_deficient(v) {
                return Err("deficiency bitset is stale");
            }
        }
        Ok(())
    }

    /// Whether the conditions that close out index `r` hold: `v_1..v_r`
    /// pairwise adjacent and every later vertex meets its quota of neighbours
    /// among `v_1..v_r`.
    pub fn saturation_holds(&self, r: usize) -> bool {
        let n = self.n();
        for i in 1..=r {
            if self.graph.count_neighbors_in(i, 1, r) != r - 1 {
                return false;
            }
        }
        (r + 1..=n).all(|k| self.graph.count_neighbors_in(k, 1, r) == self.quota(r, k))
    }

    /// `min(r, d_k - h + s)` for the rest of `v_r`'s block (or the next block
    /// when `s = 0`), `min(r, d_k - h)` beyond.
    pub(crate) fn quota(&self, r: usize, k: usize) -> usize {
        let h = self.shape.h();
        let s = self.shape.residue(r);
        let d = self.targets.d(k);
        if k <= r + 1 + h - s {
            r.min(d + s - h)
        } else {
            r.min(d - h)
        }
    }

    /// `Σ_{i≤r} d(v_i) ≤ rhs(r)` and `d(v_r) = d_r`; checked when `r` is closed out.
    pub(crate) fn closing_bound_holds(&self, r: usize) -> bool {
        let lhs: u64 = (1..=r).map(|i| self.graph.degree(i) as u64).sum();
        let bound = checker::rhs_bound(self.targets.degrees(), self.targets.h(), r).rhs();
        lhs <= bound && !self.is_deficient(r)
    }
}
