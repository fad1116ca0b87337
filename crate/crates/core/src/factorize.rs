//! Splitting the `H_h` factor into `h` disjoint perfect matchings (odd `h`).

use thiserror::Error;

use crate::graph::{GraphError, LabelledGraph};
use crate::sequence::FactorShape;
use crate::verify::is_h_spanning;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizeError {
    #[error("h = {0} is even; only odd h is supported")]
    UnsupportedEvenH(usize),
    #[error("graph does not contain H_h")]
    NotSpanning,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Circle-method 1-factorization of `K_{h+1}` on labels `0..=h`.
///
/// Round `t` pairs `h` with `t`, and `(t + j) mod h` with `(t - j) mod h`.
pub fn round_robin_block(h: usize) -> Result<Vec<Vec<(usize, usize)>>, FactorizeError> {
    if h.is_multiple_of(2) {
        return Err(FactorizeError::UnsupportedEvenH(h));
    }
    Ok((0..h)
        .map(|t| {
            let mut round = vec![(h, t)];
            round.extend((1..=(h - 1) / 2).map(|j| ((t + j) % h, (t + h - j) % h)));
            round
        })
        .collect())
}

/// `h` perfect matchings of `g` whose union is `E(H_h)`, 1-indexed, each
/// sorted with `u < v` in every pair.
pub fn extract_matchings(
    g: &LabelledGraph,
    shape: &FactorShape,
) -> Result<Vec<Vec<(usize, usize)>>, FactorizeError> {
    let rounds = round_robin_block(shape.h())?;
    if !is_h_spanning(g, shape)? {
        return Err(FactorizeError::NotSpanning);
    }
    let size = shape.block_size();
    Ok(rounds
        .iter()
        .map(|round| {
            let mut m: Vec<(usize, usize)> = (0..shape.block_count())
                .flat_map(|b| {
                    let base = b * size + 1;
                    round.iter().map(move |&(x, y)| {
                        let (u, v) = (base + x, base + y);
                        (u.min(v), u.max(v))
                    })
                })
                .collect();
            m.sort_unstable();
            m
        })
        .collect())
}
