//! Graph serialization.
//!
//! Edge lists start with `n m h`, then one `u v` line per edge (`u < v`),
//! `H` edges first, each group in lexicographic order.

use std::fmt::Write;

use thiserror::Error;

use crate::graph::{GraphError, LabelledGraph};
use crate::sequence::FactorShape;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn ordered_edges(g: &LabelledGraph, shape: &FactorShape) -> Vec<(usize, usize)> {
    let (mut edges, rest): (Vec<_>, Vec<_>) = g.edges().partition(|&(u, v)| shape.is_h_edge(u, v));
    edges.extend(rest);
    edges
}

pub fn emit_edgelist(g: &LabelledGraph, shape: &FactorShape) -> String {
    let mut out = format!("{} {} {}\n", g.n(), g.edge_count(), shape.h());
    for (u, v) in ordered_edges(g, shape) {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn emit_dot(g: &LabelledGraph, shape: &FactorShape) -> String {
    let mut out = String::from("graph G {\n");
    for b in 1..=shape.block_count() {
        writeln!(out, "  subgraph cluster_{b} {{").unwrap();
        writeln!(out, "    label=\"V_{b}\";").unwrap();
        let members: Vec<String> = shape.block(b).map(|v| v.to_string()).collect();
        writeln!(out, "    {};", members.join("; ")).unwrap();
        out.push_str("  }\n");
    }
    for (u, v) in ordered_edges(g, shape) {
        if shape.is_h_edge(u, v) {
            writeln!(out, "  {u} -- {v} [style=bold];").unwrap();
        } else {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

fn numbers(line: &str, lineno: usize, want: usize) -> Result<Vec<usize>, EdgeListError> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != want {
        return Err(EdgeListError::Syntax {
            line: lineno,
            reason: format!("expected {want} fields, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse().map_err(|_| EdgeListError::Syntax {
                line: lineno,
                reason: format!("{f:?} is not a number"),
            })
        })
        .collect()
}

/// Reads an edge list back; returns the graph and the `h` from its header.
pub fn read_edgelist(text: &str) -> Result<(LabelledGraph, usize), EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lineno, header) = lines.next().ok_or(EdgeListError::Syntax {
        line: 1,
        reason: "missing header".into(),
    })?;
    let head = numbers(header, lineno, 3)?;
    let (n, m, h) = (head[0], head[1], head[2]);
    let mut g = LabelledGraph::new(n)?;
    let mut found = 0;
    for (lineno, line) in lines {
        let e = numbers(line, lineno, 2)?;
        g.add_edge(e[0], e[1])?;
        found += 1;
    }
    if found != m {
        return Err(EdgeListError::EdgeCount { expected: m, found });
    }
    Ok((g, h))
}
