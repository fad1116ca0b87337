//! Exact realizability tests.
//!
//! Three criteria live here: the Erdős–Gallai test for plain graphic
//! sequences, the matching-factor test for `h = 1` in its two-branch form, and
//! the general clique-factor test for any `h`. For `H_h` the bound at index
//! `k` with residue `s = k mod (h+1)` is
//!
//! ```text
//! k(k-1) + Σ_{i=k+1}^{k+1+h-s} min(d_i - h + s, k) + Σ_{i=k+h-s+2}^{n} min(d_i - h, k)
//! ```
//!
//! with both sums truncated at `n` and empty sums equal to zero. All
//! structural checks run in a fixed order so the first failure is stable:
//! `NotSorted`, `BelowH`, `NotMultiple`, `ParityOdd`, `DegreeCeiling`,
//! `Inequality` (smallest `k`).

use serde::Serialize;

use crate::sequence::DegreeSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FailureKind {
    NotSorted,
    BelowH,
    ParityOdd,
    NotMultiple,
    DegreeCeiling,
    Inequality,
}

/// Checker outcome. On failure `k`, `lhs` and `rhs` carry whatever is
/// meaningful for the failure kind:
///
/// * `NotSorted`: `k` is the first index with `d_k > d_{k-1}`, `lhs = d_k`, `rhs = d_{k-1}`.
/// * `BelowH`: `k` is the first index with `d_k < h`, `lhs = d_k`, `rhs = h`.
/// * `NotMultiple`: `lhs = n`, `rhs = h + 1`.
/// * `ParityOdd`: `lhs` is the degree sum.
/// * `DegreeCeiling`: `k = 1`, `lhs = d_1`, `rhs = n - 1`.
/// * `Inequality`: the first violated `k` with both sides, `lhs > rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Verdict {
    pub accepted: bool,
    pub failure: Option<FailureKind>,
    pub k: Option<usize>,
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
}

impl Verdict {
    pub const ACCEPTED: Verdict = Verdict {
        accepted: true,
        failure: None,
        k: None,
        lhs: None,
        rhs: None,
    };

    fn fail(kind: FailureKind, k: Option<usize>, lhs: Option<u64>, rhs: Option<u64>) -> Self {
        Verdict {
            accepted: false,
            failure: Some(kind),
            k,
            lhs,
            rhs,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

/// Per-`k` right side of the clique-factor inequality, split into its terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundBreakdown {
    pub k: usize,
    pub s: usize,
    pub quadratic: u64,
    pub block_tail: u64,
    pub remainder: u64,
}

impl BoundBreakdown {
    pub fn rhs(&self) -> u64 {
        self.quadratic + self.block_tail + self.remainder
    }
}

/// `k mod (h+1)`.
pub fn residue(k: usize, h: u32) -> usize {
    k % (h as usize + 1)
}

/// Right side at index `k` (1-indexed), evaluated term by term.
///
/// Expects every `d_i ≥ h`; smaller entries are clamped at zero.
pub fn rhs_bound(degrees: &[u32], h: u32, k: usize) -> BoundBreakdown {
    let n = degrees.len();
    assert!((1..=n).contains(&k), "k = {k} outside 1..={n}");
    let h = h as u64;
    let s = residue(k, h as u32);
    let kk = k as u64;
    let tail_end = (k + 1 + h as usize - s).min(n);
    let block_tail = (k + 1..=tail_end)
        .map(|i| {
            (u64::from(degrees[i - 1]) + s as u64)
                .saturating_sub(h)
                .min(kk)
        })
        .sum();
    let remainder = (k + h as usize - s + 2..=n)
        .map(|i| u64::from(degrees[i - 1]).saturating_sub(h).min(kk))
        .sum();
    BoundBreakdown {
        k,
        s,
        quadratic: kk * (kk - 1),
        block_tail,
        remainder,
    }
}

fn structural(degrees: &[u32], h: u32) -> Option<Verdict> {
    use FailureKind::*;
    let n = degrees.len();
    if let Some(i) = degrees.windows(2).position(|w| w[0] < w[1]) {
        return Some(Verdict::fail(
            NotSorted,
            Some(i + 2),
            Some(u64::from(degrees[i + 1])),
            Some(u64::from(degrees[i])),
        ));
    }
    if let Some(i) = degrees.iter().position(|&d| d < h) {
        return Some(Verdict::fail(
            BelowH,
            Some(i + 1),
            Some(u64::from(degrees[i])),
            Some(u64::from(h)),
        ));
    }
    if !n.is_multiple_of(h as usize + 1) {
        return Some(Verdict::fail(
            NotMultiple,
            None,
            Some(n as u64),
            Some(u64::from(h) + 1),
        ));
    }
    let total: u64 = degrees.iter().map(|&d| u64::from(d)).sum();
    if total % 2 == 1 {
        return Some(Verdict::fail(ParityOdd, None, Some(total), None));
    }
    if n > 0 && degrees[0] as usize > n - 1 {
        return Some(Verdict::fail(
            DegreeCeiling,
            Some(1),
            Some(u64::from(degrees[0])),
            Some(n as u64 - 1),
        ));
    }
    None
}

fn first_violation<F>(degrees: &[u32], mut rhs_at: F) -> Verdict
where
    F: FnMut(usize) -> u64,
{
    let mut lhs = 0u64;
    for k in 1..=degrees.len() {
        lhs += u64::from(degrees[k - 1]);
        let rhs = rhs_at(k);
        if lhs > rhs {
            return Verdict::fail(FailureKind::Inequality, Some(k), Some(lhs), Some(rhs));
        }
    }
    Verdict::ACCEPTED
}

/// Erdős–Gallai: even sum and `Σ_{i≤k} d_i ≤ k(k-1) + Σ_{i>k} min(d_i, k)`.
pub fn check_graphic(degrees: &[u32]) -> Verdict {
    if let Some(v) = structural(degrees, 0) {
        return v;
    }
    first_violation(degrees, |k| {
        let kk = k as u64;
        kk * (kk - 1)
            + degrees[k..]
                .iter()
                .map(|&d| u64::from(d).min(kk))
                .sum::<u64>()
    })
}

/// The two-branch criterion for a spanning perfect matching `{v_1v_2, v_3v_4, ...}`.
pub fn check_h1(degrees: &[u32]) -> Verdict {
    if let Some(v) = structural(degrees, 1) {
        return v;
    }
    let n = degrees.len();
    first_violation(degrees, |k| {
        let kk = k as u64;
        let reduced = |i: usize| (u64::from(degrees[i - 1]) - 1).min(kk);
        let mut rhs = kk * (kk - 1);
        if k % 2 == 0 {
            rhs += (k + 1..=n).map(reduced).sum::<u64>();
        } else {
            // n is even here, so k + 1 ≤ n
            rhs += u64::from(degrees[k]).min(kk);
            rhs += (k + 2..=n).map(reduced).sum::<u64>();
        }
        rhs
    })
}

/// Clique-factor test, evaluating every bound term by term: `O(n^2)`.
pub fn check_h_realizable_naive(degrees: &[u32], h: u32) -> Verdict {
    if let Some(v) = structural(degrees, h) {
        return v;
    }
    first_violation(degrees, |k| rhs_bound(degrees, h, k).rhs())
}

/// Clique-factor test using prefix sums and a threshold search for the
/// remainder term: `O(n (h + log n))`. Same verdicts as
/// [`check_h_realizable_naive`].
pub fn check_h_realizable(degrees: &[u32], h: u32) -> Verdict {
    if let Some(v) = structural(degrees, h) {
        return v;
    }
    let bounds = FastBounds::new(degrees, h);
    first_violation(degrees, |k| bounds.rhs(k))
}

pub fn check(seq: &DegreeSequence) -> Verdict {
    check_h_realizable(seq.degrees(), seq.h())
}

/// `rhs(k) - Σ_{i≤k} d_i` for every `k`; all non-negative iff the
/// inequalities hold. Only meaningful once the structural checks pass.
pub fn slack_profile(degrees: &[u32], h: u32) -> Vec<i64> {
    let bounds = FastBounds::new(degrees, h);
    let mut lhs = 0i64;
    (1..=degrees.len())
        .map(|k| {
            lhs += i64::from(degrees[k - 1]);
            bounds.rhs(k) as i64 - lhs
        })
        .collect()
}

struct FastBounds<'a> {
    degrees: &'a [u32],
    h: u64,
    // reduced[i] = d_{i+1} - h (non-increasing); prefix[i] = Σ reduced[..i]
    reduced: Vec<u64>,
    prefix: Vec<u64>,
}

impl<'a> FastBounds<'a> {
    fn new(degrees: &'a [u32], h: u32) -> Self {
        let h = u64::from(h);
        let reduced: Vec<u64> = degrees
            .iter()
            .map(|&d| u64::from(d).saturating_sub(h))
            .collect();
        let mut prefix = Vec::with_capacity(reduced.len() + 1);
        prefix.push(0);
        let mut acc = 0;
        for &e in &reduced {
            acc += e;
            prefix.push(acc);
        }
        Self {
            degrees,
            h,
            reduced,
            prefix,
        }
    }

    fn rhs(&self, k: usize) -> u64 {
        let n = self.degrees.len();
        let h = self.h as usize;
        let s = k % (h + 1);
        let kk = k as u64;
        let tail_end = (k + 1 + h - s).min(n);
        let block_tail: u64 = (k + 1..=tail_end)
            .map(|i| {
                (u64::from(self.degrees[i - 1]) + s as u64)
                    .saturating_sub(self.h)
                    .min(kk)
            })
            .sum();
        // remainder over labels a..=n, i.e. 0-based a-1..n
        let a = k + h - s + 2;
        let remainder = if a > n {
            0
        } else {
            // labels 1..=t have reduced value ≥ k
            let t = self.reduced.partition_point(|&e| e >= kk);
            let capped = t.saturating_sub(a - 1);
            let tail_from = t.max(a - 1);
            kk * capped as u64 + (self.prefix[n] - self.prefix[tail_from])
        };
        kk * (kk - 1) + block_tail + remainder
    }
}
