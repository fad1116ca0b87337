//! Rule selection. Rules are tried in priority order and the first one with
//! a legal witness wins; witnesses are scanned smallest label first.

use super::case2::{self, Case2Context};
use super::state::{Move, Rule, Subrealization};
use super::RealizeError;

/// Outcome of [`select_move`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Move(Move),
    /// `v_r` is already saturated; the critical index moves on.
    AdvanceR,
}

/// Builds a move and keeps it only if it passes [`Subrealization::check_move`].
pub(crate) fn propose(
    st: &Subrealization,
    rule: Rule,
    removed: &[(usize, usize)],
    added: &[(usize, usize)],
    witnesses: &[(&'static str, usize)],
) -> Option<Move> {
    let mv = Move {
        rule,
        removed: removed.to_vec(),
        added: added.to_vec(),
        witnesses: witnesses.to_vec(),
    };
    st.is_legal(&mv).then_some(mv)
}

pub fn select_move(st: &Subrealization, audit: bool) -> Result<Step, RealizeError> {
    let r = st.r;
    assert!(r <= st.n(), "select_move called on a complete realization");
    if !st.is_deficient(r) {
        return Ok(Step::AdvanceR);
    }
    if let Some(mv) = case1(st, r) {
        return Ok(Step::Move(mv));
    }
    if let Some(i) = st.graph.first_non_neighbor_in(r, 1, r - 1) {
        let ctx = Case2Context::new(st, i);
        return match case2::select(st, &ctx, audit)? {
            Some(mv) => Ok(Step::Move(mv)),
            None => Err(RealizeError::StuckWithDeficiency {
                r,
                deficiency: st.deficiency(r),
                detail: format!("no Case 2 exchange applies; {ctx:?}"),
            }),
        };
    }
    if let Some(mv) = case3(st, r) {
        return Ok(Step::Move(mv));
    }
    if let Some(mv) = case4(st, r) {
        return Ok(Step::Move(mv));
    }
    let detail = if st.saturation_holds(r) {
        "saturation conditions hold yet v_r is deficient".to_string()
    } else {
        "no rule applies and saturation conditions fail".to_string()
    };
    Err(RealizeError::StuckWithDeficiency {
        r,
        deficiency: st.deficiency(r),
        detail,
    })
}

fn case1(st: &Subrealization, r: usize) -> Option<Move> {
    let k = st.deficient_non_neighbor(r)?;
    propose(st, Rule::Case1, &[], &[(r, k)], &[("k", k)])
}

/// Some `v_k` after `r` is below its quota of neighbours among `v_1..v_r`.
fn case3(st: &Subrealization, r: usize) -> Option<Move> {
    let g = &st.graph;
    let n = st.n();
    for k in r + 1..=n {
        // Only H edges inside S, so the rest of N(v_k) lies in v_1..v_r.
        let toward_prefix = g.degree(k) - st.shape.mates_after(k, r);
        if toward_prefix >= st.quota(r, k) {
            continue;
        }
        let mut i = 0;
        while let Some(next) = g.first_non_neighbor_in(k, i + 1, r - 1) {
            i = next;
            for j in g.neighbors_not_closed(i, r) {
                let witnesses = [("k", k), ("i", i), ("j", j)];
                if let Some(mv) = propose(st, Rule::Case3, &[(j, i)], &[(j, r), (i, k)], &witnesses)
                {
                    return Some(mv);
                }
            }
        }
    }
    None
}

/// Two earlier vertices are non-adjacent.
fn case4(st: &Subrealization, r: usize) -> Option<Move> {
    let g = &st.graph;
    for i in 1..r {
        let mut j = i;
        while let Some(next) = g.first_non_neighbor_in(i, j + 1, r - 1) {
            j = next;
            for l in g.neighbors_not_closed(i, r) {
                for m in g.neighbors_not_closed(j, r) {
                    let witnesses = [("i", i), ("j", j), ("l", l), ("m", m)];
                    let removed = [(l, i), (m, j)];
                    if let Some(mv) =
                        propose(st, Rule::Case4, &removed, &[(i, j), (l, r)], &witnesses)
                    {
                        return Some(mv);
                    }
                }
            }
        }
    }
    None
}
