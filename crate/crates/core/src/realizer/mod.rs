//! Constructive realizer.
//!
//! Starts from `H_h` and repeatedly applies edge exchanges that raise the
//! degree of the critical vertex `v_r` (the first one below its target)
//! without touching the saturated prefix, keeping `H_h` inside the graph
//! and only `H_h` edges among the vertices after `r`. Every exchange is
//! checked for legality before it is applied; with `audit` on, the full set
//! of subrealization invariants is re-derived after every move.

mod case2;
mod rules;
mod state;

use thiserror::Error;

pub use case2::Case2Context;
pub use rules::{select_move, Step};
pub use state::{LoggedMove, Move, Rule, Subrealization};

use crate::checker::{self, Verdict};
use crate::graph::{GraphError, LabelledGraph};
use crate::sequence::{DegreeSequence, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("sequence is not realizable: {}", .0.to_json())]
    Unrealizable(Verdict),
    #[error("invariant violated ({invariant}) by {rule:?}: {detail}")]
    InvariantViolation {
        rule: Option<Rule>,
        invariant: &'static str,
        detail: String,
    },
    #[error("stuck at r = {r} with deficiency {deficiency}: {detail}")]
    StuckWithDeficiency {
        r: usize,
        deficiency: usize,
        detail: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Shape(#[from] SequenceError),
}

impl RealizeError {
    /// Errors that indicate a broken engine rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            RealizeError::InvariantViolation { .. } | RealizeError::StuckWithDeficiency { .. }
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RealizeOptions {
    /// Keep the full move log.
    pub trace: bool,
    /// Re-audit every invariant after every move.
    pub audit: bool,
}

#[derive(Debug, Clone)]
pub struct EngineReport {
    pub moves_applied: usize,
    pub per_rule: Vec<(Rule, usize)>,
    pub graph: LabelledGraph,
    pub trace: Option<Vec<LoggedMove>>,
}

impl EngineReport {
    pub fn count(&self, rule: Rule) -> usize {
        self.per_rule
            .iter()
            .find(|(r, _)| *r == rule)
            .map_or(0, |&(_, c)| c)
    }

    /// One line per move, newline-terminated.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for m in self.trace.iter().flatten() {
            out.push_str(&m.to_string());
            out.push('\n');
        }
        out
    }
}

/// `H_h` as the starting subrealization, for an accepted sequence.
pub fn initial_subrealization(seq: &DegreeSequence) -> Result<Subrealization, RealizeError> {
    let verdict = checker::check(seq);
    if !verdict.accepted {
        return Err(RealizeError::Unrealizable(verdict));
    }
    let shape = seq.shape()?;
    let graph = shape.h_graph()?;
    let n = seq.n();
    let mut st = Subrealization {
        graph,
        targets: seq.clone(),
        shape,
        r: 1,
        log: Vec::new(),
        keep_log: false,
        deficient: vec![0; n.div_ceil(64).max(1)],
        moves: 0,
    };
    for v in 1..=n {
        if st.is_deficient(v) {
            st.deficient[(v - 1) / 64] |= 1 << ((v - 1) % 64);
        }
    }
    st.advance();
    Ok(st)
}

/// Runs the exchange engine to completion.
pub fn realize(
    seq: &DegreeSequence,
    options: RealizeOptions,
) -> Result<EngineReport, RealizeError> {
    let mut st = initial_subrealization(seq)?;
    st.keep_log = options.trace;
    let budget = seq.total() as usize;
    let mut per_rule = [0usize; Rule::ALL.len()];
    if options.audit {
        audit(&st, None)?;
    }
    while !st.is_complete() {
        let r = st.r;
        match select_move(&st, options.audit)? {
            Step::AdvanceR => st.advance(),
            Step::Move(mv) => {
                let rule = mv.rule;
                let before = options.audit.then(|| st.graph.degrees().to_vec());
                st.apply_move(mv)?;
                per_rule[rule.index()] += 1;
                if st.moves > budget {
                    return Err(RealizeError::InvariantViolation {
                        rule: Some(rule),
                        invariant: "M6: more moves than Σ d_i",
                        detail: format!("{} moves", st.moves),
                    });
                }
                if let Some(before) = before {
                    audit_step(&st, rule, r, &before)?;
                }
            }
        }
        if options.audit {
            for closed in r..st.r.min(st.n() + 1) {
                if !st.closing_bound_holds(closed) {
                    return Err(RealizeError::InvariantViolation {
                        rule: None,
                        invariant: "M7: closing bound at advance",
                        detail: format!("index {closed}"),
                    });
                }
            }
        }
    }
    let report = EngineReport {
        moves_applied: st.moves,
        per_rule: Rule::ALL
            .iter()
            .zip(per_rule)
            .filter(|(_, c)| *c > 0)
            .map(|(&r, c)| (r, c))
            .collect(),
        graph: st.graph,
        trace: options.trace.then_some(st.log),
    };
    if options.audit {
        let shape = seq.shape()?;
        let verified = crate::verify::verify_realization(&report.graph, seq, &shape)?;
        if !verified.passed() {
            return Err(RealizeError::InvariantViolation {
                rule: None,
                invariant: "final graph fails verification",
                detail: format!("{verified:?}"),
            });
        }
    }
    Ok(report)
}

fn audit(st: &Subrealization, rule: Option<Rule>) -> Result<(), RealizeError> {
    st.audit()
        .map_err(|invariant| RealizeError::InvariantViolation {
            rule,
            invariant,
            detail: format!("r = {}", st.r),
        })
}

// M1 and M2 against the degrees before the move, then the state invariants.
fn audit_step(
    st: &Subrealization,
    rule: Rule,
    r: usize,
    before: &[usize],
) -> Result<(), RealizeError> {
    let now = st.graph.degrees();
    let fail = |invariant| RealizeError::InvariantViolation {
        rule: Some(rule),
        invariant,
        detail: format!("selected at r = {r}"),
    };
    if now[..r - 1] != before[..r - 1] {
        return Err(fail("M1: prefix degree changed"));
    }
    let gain = now[r - 1] as i64 - before[r - 1] as i64;
    if !(1..=2).contains(&gain) || now[r - 1] > st.targets.d(r) {
        return Err(fail("M2: d(v_r) did not rise by 1 or 2"));
    }
    audit(st, Some(rule))
}
