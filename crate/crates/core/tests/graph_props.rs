use hfactor::LabelledGraph;
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Op {
    Add(usize, usize),
    Remove(usize, usize),
}

fn ops(n: usize) -> impl Strategy<Value = Vec<Op>> {
    prop::collection::vec(
        (any::<bool>(), 1..=n, 1..=n)
            .prop_map(|(add, u, v)| if add { Op::Add(u, v) } else { Op::Remove(u, v) }),
        0..300,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Random edits against a plain adjacency matrix.
    #[test]
    fn matches_matrix_model(n in 1usize..140, script in ops(140)) {
        let mut g = LabelledGraph::new(n).unwrap();
        let mut m = vec![vec![false; n + 1]; n + 1];
        for op in script {
            match op {
                Op::Add(u, v) => {
                    let ok = u <= n && v <= n && u != v && !m[u][v];
                    prop_assert_eq!(g.add_edge(u, v).is_ok(), ok);
                    if ok {
                        m[u][v] = true;
                        m[v][u] = true;
                    }
                }
                Op::Remove(u, v) => {
                    let ok = u <= n && v <= n && u != v && m[u][v];
                    prop_assert_eq!(g.remove_edge(u, v).is_ok(), ok);
                    if ok {
                        m[u][v] = false;
                        m[v][u] = false;
                    }
                }
            }
        }
        prop_assert!(g.audit().is_ok());
        let mut edges = 0;
        for u in 1..=n {
            let row: Vec<usize> = (1..=n).filter(|&v| m[u][v]).collect();
            prop_assert_eq!(g.degree(u), row.len());
            prop_assert_eq!(g.neighbors(u).collect::<Vec<_>>(), row.clone());
            edges += row.len();
            for lo in [1, u / 2 + 1, u] {
                for hi in [u, n] {
                    let hi = hi.max(lo);
                    prop_assert_eq!(g.count_neighbors_in(u, lo, hi), (lo..=hi).filter(|&v| m[u][v]).count());
                    prop_assert_eq!(g.first_non_neighbor_in(u, lo, hi), (lo..=hi).find(|&v| v != u && !m[u][v]));
                }
            }
            for w in [1, n, (u % n) + 1] {
                let expect: Vec<usize> = (1..=n).filter(|&v| m[u][v] && !m[w][v] && v != w).collect();
                prop_assert_eq!(g.neighbors_not_closed(u, w).collect::<Vec<_>>(), expect);
            }
        }
        prop_assert_eq!(g.edge_count() * 2, edges);
        let listed: Vec<(usize, usize)> = g.edges().collect();
        let expect: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).filter(|&(u, v)| m[u][v]).collect();
        prop_assert_eq!(listed, expect);
    }
}
