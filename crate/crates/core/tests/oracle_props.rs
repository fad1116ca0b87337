use std::ops::ControlFlow;

use hfactor::checker::{check_h_realizable, rhs_bound};
use hfactor::oracle::{
    count_realizations, decide_exists, enumerate_realizations, for_each_realization, gen_sequence,
    prefix_counting_bound, residual_graph, sorted_sequences, sweep_equivalence, OracleError,
};
use hfactor::{verify_realization, DegreeSequence, FactorShape, LabelledGraph};

/// Every subset of the non-`H` pairs, no pruning.
fn unpruned_count(d: &[u32], shape: &FactorShape) -> usize {
    let n = d.len();
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|&(u, v)| !shape.is_h_edge(u, v))
        .collect();
    let h = shape.h() as u32;
    (0u64..1 << pairs.len())
        .filter(|mask| {
            let mut deg = vec![h; n];
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    deg[u - 1] += 1;
                    deg[v - 1] += 1;
                }
            }
            deg == d
        })
        .count()
}

fn shapes(nmax: usize) -> impl Iterator<Item = (u32, usize)> {
    (0..=3u32).flat_map(move |h| {
        (1..=nmax)
            .filter(move |n| n % (h as usize + 1) == 0)
            .map(move |n| (h, n))
    })
}

#[test]
fn pruning_is_complete_up_to_six() {
    for (h, n) in shapes(6) {
        let shape = FactorShape::new(n, h).unwrap();
        for d in sorted_sequences(n, h, n as u32 - 1) {
            let seq = DegreeSequence::new(d.clone(), h).unwrap();
            assert_eq!(
                count_realizations(&seq, 12).unwrap(),
                unpruned_count(&d, &shape),
                "h = {h}, d = {d:?}"
            );
        }
    }
}

#[test]
fn realizations_are_valid_and_distinct() {
    for (h, n) in shapes(7) {
        for d in sorted_sequences(n, h, n as u32 - 1) {
            let seq = DegreeSequence::new(d, h).unwrap();
            let shape = seq.shape().unwrap();
            let all = enumerate_realizations(&seq, 12, None).unwrap();
            for g in &all {
                assert!(verify_realization(g, &seq, &shape).unwrap().passed());
            }
            let mut edge_sets: Vec<Vec<_>> = all.iter().map(|g| g.edges().collect()).collect();
            edge_sets.sort();
            edge_sets.dedup();
            assert_eq!(edge_sets.len(), all.len());
            assert_eq!(decide_exists(&seq, 12).unwrap(), !all.is_empty());
        }
    }
}

#[test]
fn limit_stops_early() {
    let seq = DegreeSequence::new(vec![3; 6], 1).unwrap();
    let total = count_realizations(&seq, 12).unwrap();
    assert!(total > 2);
    assert_eq!(enumerate_realizations(&seq, 12, Some(2)).unwrap().len(), 2);
    let mut seen = 0;
    for_each_realization(&seq, 12, None, |_| {
        seen += 1;
        ControlFlow::Break(())
    })
    .unwrap();
    assert_eq!(seen, 1);
}

#[test]
fn cap_is_enforced() {
    let seq = DegreeSequence::new(vec![1; 14], 1).unwrap();
    assert_eq!(
        decide_exists(&seq, 12),
        Err(OracleError::CapExceeded { n: 14, cap: 12 })
    );
    assert!(decide_exists(&seq, 14).unwrap());
    let big = DegreeSequence::new(vec![1; 66], 1).unwrap();
    assert_eq!(
        decide_exists(&big, 100),
        Err(OracleError::CapExceeded { n: 66, cap: 64 })
    );
}

#[test]
fn residual_degrees_and_bound() {
    for (h, n) in shapes(7) {
        let shape = FactorShape::new(n, h).unwrap();
        let hh = h as usize;
        for d in sorted_sequences(n, h, n as u32 - 1) {
            if !check_h_realizable(&d, h).accepted {
                continue;
            }
            let seq = DegreeSequence::new(d.clone(), h).unwrap();
            for_each_realization(&seq, 12, None, |g| {
                for k in 1..=n {
                    let gp = residual_graph(g, &shape, k).unwrap();
                    let s = k % (hh + 1);
                    for i in 1..=n {
                        let lost = if i <= k {
                            0
                        } else if shape.same_block(i, k) || (s == 0 && i <= k + hh + 1) {
                            hh - s
                        } else {
                            hh
                        };
                        assert_eq!(
                            gp.degree(i),
                            g.degree(i) - lost,
                            "d = {d:?}, k = {k}, i = {i}"
                        );
                    }
                    let (lhs, rhs) = prefix_counting_bound(&gp, k);
                    assert!(lhs <= rhs);
                    assert_eq!(rhs, rhs_bound(&d, h, k).rhs());
                }
                ControlFlow::Continue(())
            })
            .unwrap();
        }
    }
}

#[test]
fn residual_examples() {
    let shape = FactorShape::new(4, 1).unwrap();
    let k4 = LabelledGraph::complete(4).unwrap();
    let gp = residual_graph(&k4, &shape, 2).unwrap();
    assert!(!gp.has_edge(3, 4));
    assert_eq!(gp.edge_count(), 5);
    assert_eq!(residual_graph(&k4, &shape, 4).unwrap(), k4);

    let shape = FactorShape::new(6, 2).unwrap();
    let h = shape.h_graph().unwrap();
    let gp = residual_graph(&h, &shape, 3).unwrap();
    assert_eq!(gp.degrees(), &[2, 2, 2, 0, 0, 0]);

    let path = LabelledGraph::from_edges(4, [(1, 2), (2, 3)]).unwrap();
    assert_eq!(
        residual_graph(&path, &shape_for(4, 1), 1),
        Err(OracleError::NotSpanning)
    );
}

fn shape_for(n: usize, h: u32) -> FactorShape {
    FactorShape::new(n, h).unwrap()
}

#[test]
fn small_sweeps_agree() {
    for h in 0..=2 {
        let report = sweep_equivalence(&[h], 6, 12, 1).unwrap();
        assert!(report.disagreements.is_empty(), "{report}");
    }
    let report = sweep_equivalence(&[1], 6, 12, 1).unwrap();
    assert_eq!(
        report.to_string(),
        "h=1 n=2 total=1 accepted=1 disagreements=0\n\
         h=1 n=4 total=15 accepted=3 disagreements=0\n\
         h=1 n=6 total=210 accepted=29 disagreements=0\n"
    );
}

#[test]
fn sweep_is_independent_of_jobs() {
    let a = sweep_equivalence(&[0, 1], 6, 12, 1).unwrap();
    let b = sweep_equivalence(&[0, 1], 6, 12, 3).unwrap();
    assert_eq!(a.to_string(), b.to_string());
}

#[test]
fn generator() {
    for seed in 0..20 {
        let a = gen_sequence(12, 2, seed).unwrap();
        assert_eq!(a, gen_sequence(12, 2, seed).unwrap());
        assert!(check_h_realizable(a.degrees(), 2).accepted);
        assert!(a.degrees().iter().all(|&x| (2..12).contains(&x)));
    }
    assert_eq!(gen_sequence(4, 3, 5).unwrap().degrees(), &[3, 3, 3, 3]);
    assert!(matches!(
        gen_sequence(1000, 2, 1),
        Err(OracleError::Shape(_))
    ));
}
