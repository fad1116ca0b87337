//! Witness checking: does a graph realize a sequence while containing `H_h`?

use serde::Serialize;

use crate::graph::{GraphError, LabelledGraph};
use crate::sequence::{DegreeSequence, FactorShape};

/// True iff every within-block pair is an edge of `g`.
pub fn is_h_spanning(g: &LabelledGraph, shape: &FactorShape) -> Result<bool, GraphError> {
    if g.n() != shape.n() {
        return Err(GraphError::SizeMismatch {
            graph: g.n(),
            expected: shape.n(),
        });
    }
    Ok(shape.h_edges().all(|(u, v)| g.has_edge(u, v)))
}

/// Three independent checks; the realization is valid iff all hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub degrees_match: bool,
    /// First label whose degree differs from its target.
    pub first_mismatch: Option<usize>,
    pub spanning: bool,
    pub simple: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.degrees_match && self.spanning && self.simple
    }
}

pub fn verify_realization(
    g: &LabelledGraph,
    seq: &DegreeSequence,
    shape: &FactorShape,
) -> Result<VerifyReport, GraphError> {
    if g.n() != seq.n() {
        return Err(GraphError::SizeMismatch {
            graph: g.n(),
            expected: seq.n(),
        });
    }
    if seq.h() as usize != shape.h() {
        // A shape for a different h is a caller bug, reported like a size mismatch.
        return Err(GraphError::SizeMismatch {
            graph: shape.h(),
            expected: seq.h() as usize,
        });
    }
    let first_mismatch = (1..=g.n()).find(|&i| g.degree(i) != seq.d(i));
    Ok(VerifyReport {
        degrees_match: first_mismatch.is_none(),
        first_mismatch,
        spanning: is_h_spanning(g, shape)?,
        simple: g.audit().is_ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> LabelledGraph {
        LabelledGraph::from_edges(6, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)]).unwrap()
    }

    #[test]
    fn spanning_examples() {
        let s2 = FactorShape::new(6, 2).unwrap();
        assert!(is_h_spanning(&two_triangles(), &s2).unwrap());
        let cycle =
            LabelledGraph::from_edges(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]).unwrap();
        assert!(!is_h_spanning(&cycle, &s2).unwrap());
        let s1 = FactorShape::new(4, 1).unwrap();
        assert!(is_h_spanning(&LabelledGraph::complete(4).unwrap(), &s1).unwrap());
        assert!(is_h_spanning(&cycle, &s1).is_err());
    }

    #[test]
    fn verify_examples() {
        let s1 = FactorShape::new(4, 1).unwrap();
        let seq = DegreeSequence::new(vec![3, 3, 3, 3], 1).unwrap();
        assert!(
            verify_realization(&LabelledGraph::complete(4).unwrap(), &seq, &s1)
                .unwrap()
                .passed()
        );

        let s2 = FactorShape::new(6, 2).unwrap();
        let all_h = DegreeSequence::new(vec![2; 6], 2).unwrap();
        assert!(verify_realization(&s2.h_graph().unwrap(), &all_h, &s2)
            .unwrap()
            .passed());

        let seq = DegreeSequence::new(vec![3, 2, 2, 2, 2, 2], 2).unwrap();
        let report = verify_realization(&two_triangles(), &seq, &s2).unwrap();
        assert!(!report.passed());
        assert!(!report.degrees_match);
        assert_eq!(report.first_mismatch, Some(1));
        assert!(report.spanning && report.simple);
    }
}
