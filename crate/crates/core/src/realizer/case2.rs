//! Case 2: some `v_i` with `i < r` is not adjacent to `v_r`.
//!
//! With `v_i ∈ V_p` and `v_r ∈ V_q` (`p < q`), the exchanges below each fire
//! when one structural property fails; once none fires, the properties hold
//! and the terminal exchange raises `d(v_r)` by two.
//!
//! * companion: with deficiency 1 there is a deficient `v_k ∈ V_q`, `k > r`,
//!   `N(v_k) ⊆ N[v_r]`;
//! * `F ⊆ A` where `F = N(v_i) \ N(v_r)`;
//! * `N(A) ∩ D = ∅`;
//! * `N(A) \ (V_p ∪ V_q) ⊆ N(v)` for all `v ∈ C`;
//! * no `v_ℓ ∈ V_p`, `v_m ∈ C` with `|N(v_ℓ) ∩ C| < |N(v_m) ∩ V_p|`.

use crate::graph::LabelledGraph;

use super::rules::propose;
use super::state::{Move, Rule, Subrealization};
use super::RealizeError;

/// The sets Case 2 reasons about. `q` is the block of `v_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case2Context {
    pub r: usize,
    pub i: usize,
    pub p: usize,
    pub q: usize,
    pub deficiency: usize,
    /// `V_p \ N(v_r)`
    pub a: Vec<usize>,
    /// `V_p ∩ N(v_r)`
    pub b: Vec<usize>,
    /// `{v_j ∈ V_q : j ≤ r}`
    pub c: Vec<usize>,
    /// `{v_j ∈ V_q : j > r}`
    pub d: Vec<usize>,
    /// `N(v_i) \ N(v_r)`
    pub f: Vec<usize>,
}

impl Case2Context {
    pub fn new(st: &Subrealization, i: usize) -> Self {
        let g = &st.graph;
        let shape = &st.shape;
        let r = st.r;
        let p = shape.block_of(i);
        let q = shape.block_of(r);
        let (a, b) = shape.block(p).partition(|&v| !g.has_edge(v, r));
        let (c, d) = shape.block(q).partition(|&v| v <= r);
        let f = g.neighbors_not_closed(i, r).collect();
        Self {
            r,
            i,
            p,
            q,
            deficiency: st.deficiency(r),
            a,
            b,
            c,
            d,
            f,
        }
    }

    fn in_pq(&self, st: &Subrealization, u: usize) -> bool {
        let block = st.shape.block_of(u);
        block == self.p || block == self.q
    }
}

enum Companion {
    Move(Move),
    Found(usize),
    Missing,
}

pub(crate) fn select(
    st: &Subrealization,
    ctx: &Case2Context,
    audit: bool,
) -> Result<Option<Move>, RealizeError> {
    let companion = if ctx.deficiency == 1 {
        match companion(st, ctx, audit)? {
            Companion::Move(mv) => return Ok(Some(mv)),
            Companion::Found(k) => Some(k),
            Companion::Missing => None,
        }
    } else {
        None
    };
    let found = f_escape(st, ctx, companion)
        .or_else(|| ad_purge(st, ctx))
        .or_else(|| ac_coverage(st, ctx, companion))
        .or_else(|| degree_balance(st, ctx, companion));
    if found.is_some() {
        return Ok(found);
    }
    let terminal = terminal(st, ctx);
    if audit && terminal.is_some() {
        terminal_claims(st, ctx)?;
    }
    Ok(terminal)
}

fn claim_failure(ctx: &Case2Context, invariant: &'static str) -> RealizeError {
    RealizeError::InvariantViolation {
        rule: None,
        invariant,
        detail: format!("{ctx:?}"),
    }
}

/// Deficiency 1: find a deficient `v_k ∈ V_q` after `r` whose neighbourhood
/// lies in `N[v_r]`, or an exchange that makes progress on the way.
fn companion(
    st: &Subrealization,
    ctx: &Case2Context,
    audit: bool,
) -> Result<Companion, RealizeError> {
    let g = &st.graph;
    let shape = &st.shape;
    let (r, i) = (ctx.r, ctx.i);
    let mut any = false;
    for k in st.deficient_after(r) {
        any = true;
        let t = shape.block_of(k);
        if t != ctx.q {
            for j in shape.block(t).filter(|&j| g.has_edge(i, j)) {
                let w = [("i", i), ("k", k), ("j", j)];
                if let Some(mv) = propose(st, Rule::C2_1a, &[(j, i)], &[(i, r)], &w) {
                    return Ok(Companion::Move(mv));
                }
            }
            for l in g
                .neighbors_not_closed(i, k)
                .filter(|&l| shape.block_of(l) != ctx.p)
            {
                let w = [("i", i), ("k", k), ("l", l)];
                let added: &[(usize, usize)] = if l < r { &[(l, k), (i, r)] } else { &[(i, r)] };
                if let Some(mv) = propose(st, Rule::C2_1b, &[(l, i)], added, &w) {
                    return Ok(Companion::Move(mv));
                }
            }
        } else {
            let mut outside = g.neighbors_not_closed(k, r).peekable();
            if outside.peek().is_none() {
                return Ok(Companion::Found(k));
            }
            for u3 in outside {
                let w = [("k", k), ("u3", u3)];
                if let Some(mv) = propose(st, Rule::C2_1c, &[(u3, k)], &[(u3, r)], &w) {
                    return Ok(Companion::Move(mv));
                }
            }
        }
    }
    if audit && !any {
        // Σ d_i - Σ d(v_i) is even, so deficiency 1 at v_r needs a partner.
        return Err(claim_failure(ctx, "parity: no second deficient vertex"));
    }
    Ok(Companion::Missing)
}

/// `F ⊆ A`.
fn f_escape(st: &Subrealization, ctx: &Case2Context, companion: Option<usize>) -> Option<Move> {
    let g = &st.graph;
    let (r, i) = (ctx.r, ctx.i);
    for &l in ctx.f.iter().filter(|&&l| st.shape.block_of(l) != ctx.p) {
        let mv = if ctx.deficiency >= 2 {
            propose(
                st,
                Rule::C2_2a,
                &[(l, i)],
                &[(l, r), (i, r)],
                &[("i", i), ("l", l)],
            )
        } else if let Some(k) = companion {
            let w = [("i", i), ("l", l), ("k", k)];
            if g.has_edge(i, k) {
                propose(st, Rule::C2_2b, &[(i, k)], &[(i, r)], &w)
            } else {
                propose(st, Rule::C2_2c, &[(i, l)], &[(l, r), (i, k)], &w)
            }
        } else {
            None
        };
        if mv.is_some() {
            return mv;
        }
    }
    None
}

/// `N(A) ∩ D = ∅`.
fn ad_purge(st: &Subrealization, ctx: &Case2Context) -> Option<Move> {
    let g = &st.graph;
    for &a in &ctx.a {
        for &u in ctx.d.iter().filter(|&&u| g.has_edge(a, u)) {
            if let Some(mv) = propose(
                st,
                Rule::C2_3,
                &[(a, u)],
                &[(a, ctx.r)],
                &[("a", a), ("u", u)],
            ) {
                return Some(mv);
            }
        }
    }
    None
}

/// `N(A) \ (V_p ∪ V_q) ⊆ N(v)` for every `v ∈ C`.
fn ac_coverage(st: &Subrealization, ctx: &Case2Context, companion: Option<usize>) -> Option<Move> {
    let g = &st.graph;
    let r = ctx.r;
    let big = ctx.deficiency >= 2;
    for &j in &ctx.c {
        for &a in &ctx.a {
            let outside = g
                .neighbors(a)
                .filter(|&u| !ctx.in_pq(st, u) && !g.has_edge(u, j));
            for u in outside {
                if j == r {
                    let mv = if big {
                        propose(
                            st,
                            Rule::C2_4a,
                            &[(u, a)],
                            &[(a, r), (u, r)],
                            &[("a", a), ("u", u)],
                        )
                    } else if let Some(k) = companion {
                        let w = [("a", a), ("u", u), ("k", k)];
                        propose(st, Rule::C2_4b, &[(a, u)], &[(u, r), (a, k)], &w)
                    } else {
                        None
                    };
                    if mv.is_some() {
                        return mv;
                    }
                    continue;
                }
                for x in g.neighbors_not_closed(j, r) {
                    let mv = if big {
                        if x == a {
                            continue;
                        }
                        let w = [("a", a), ("u", u), ("j", j), ("x", x)];
                        propose(
                            st,
                            Rule::C2_4c,
                            &[(u, a), (j, x)],
                            &[(u, j), (a, r), (x, r)],
                            &w,
                        )
                    } else if let Some(k) = companion {
                        let w = [("a", a), ("u", u), ("j", j), ("x", x), ("k", k)];
                        propose(
                            st,
                            Rule::C2_4d,
                            &[(u, a), (j, x)],
                            &[(u, j), (x, r), (a, k)],
                            &w,
                        )
                    } else {
                        None
                    };
                    if mv.is_some() {
                        return mv;
                    }
                }
            }
        }
    }
    None
}

fn count_in(g: &LabelledGraph, v: usize, set: &[usize]) -> usize {
    set.iter().filter(|&&w| g.has_edge(v, w)).count()
}

/// No `v_ℓ ∈ V_p`, `v_m ∈ C` with `|N(v_ℓ) ∩ C| < |N(v_m) ∩ V_p|`.
fn degree_balance(
    st: &Subrealization,
    ctx: &Case2Context,
    companion: Option<usize>,
) -> Option<Move> {
    let g = &st.graph;
    let r = ctx.r;
    let big = ctx.deficiency >= 2;
    let vp: Vec<usize> = st.shape.block(ctx.p).collect();
    for &l in &ctx.b {
        let l_into_c = count_in(g, l, &ctx.c);
        for &m in &ctx.c {
            if l_into_c >= count_in(g, m, &vp) {
                continue;
            }
            let ts = ctx
                .c
                .iter()
                .copied()
                .filter(|&t| t != r && t != m && !g.has_edge(l, t));
            for t in ts {
                let outside = g
                    .neighbors(l)
                    .filter(|&u| !ctx.in_pq(st, u) && !g.has_edge(u, m));
                for u in outside {
                    for v in g.neighbors_not_closed(t, r) {
                        if big && v == u {
                            continue;
                        }
                        let mv = if m == r {
                            balance_at_r(st, ctx, companion, (l, u, t, v))
                        } else {
                            balance_elsewhere(st, ctx, companion, (l, u, t, v, m))
                        };
                        if mv.is_some() {
                            return mv;
                        }
                    }
                }
                for &u in ctx.d.iter().filter(|&&u| g.has_edge(l, u)) {
                    for v in g.neighbors_not_closed(t, r) {
                        let rule = if m == r { Rule::C2_6d } else { Rule::C2_6h };
                        let w = [("l", l), ("m", m), ("t", t), ("u", u), ("v", v)];
                        if let Some(mv) =
                            propose(st, rule, &[(l, u), (t, v)], &[(t, l), (v, r)], &w)
                        {
                            return Some(mv);
                        }
                    }
                }
            }
        }
    }
    None
}

fn balance_at_r(
    st: &Subrealization,
    ctx: &Case2Context,
    companion: Option<usize>,
    (l, u, t, v): (usize, usize, usize, usize),
) -> Option<Move> {
    let r = ctx.r;
    let removed = [(l, u), (t, v)];
    if ctx.deficiency >= 2 {
        let w = [("l", l), ("m", r), ("t", t), ("u", u), ("v", v)];
        return propose(st, Rule::C2_6a, &removed, &[(l, t), (u, r), (v, r)], &w);
    }
    let k = companion?;
    let w = [("l", l), ("m", r), ("t", t), ("u", u), ("v", v), ("k", k)];
    if v < r {
        propose(st, Rule::C2_6b, &removed, &[(t, l), (u, r), (v, k)], &w)
    } else {
        propose(st, Rule::C2_6c, &removed, &[(t, l), (u, r)], &w)
    }
}

fn balance_elsewhere(
    st: &Subrealization,
    ctx: &Case2Context,
    companion: Option<usize>,
    (l, u, t, v, m): (usize, usize, usize, usize, usize),
) -> Option<Move> {
    let r = ctx.r;
    let g = &st.graph;
    for x in g.neighbors_not_closed(m, r) {
        let removed = [(l, u), (t, v), (m, x)];
        let mv = if ctx.deficiency >= 2 {
            if x == v {
                continue;
            }
            let w = [("l", l), ("m", m), ("t", t), ("u", u), ("v", v), ("w", x)];
            propose(
                st,
                Rule::C2_6e,
                &removed,
                &[(l, t), (u, m), (v, r), (x, r)],
                &w,
            )
        } else {
            let k = companion?;
            let w = [
                ("l", l),
                ("m", m),
                ("t", t),
                ("u", u),
                ("v", v),
                ("w", x),
                ("k", k),
            ];
            if v < r {
                propose(
                    st,
                    Rule::C2_6f,
                    &removed,
                    &[(t, l), (u, m), (x, r), (v, k)],
                    &w,
                )
            } else {
                propose(st, Rule::C2_6g, &removed, &[(t, l), (u, m), (x, r)], &w)
            }
        };
        if mv.is_some() {
            return mv;
        }
    }
    None
}

/// Replace `{v_ℓ u, v_t v, v_m w}` with `{v_ℓ v_t, u v_m, v v_r, w v_r}`.
fn terminal(st: &Subrealization, ctx: &Case2Context) -> Option<Move> {
    let g = &st.graph;
    let r = ctx.r;
    let vp: Vec<usize> = st.shape.block(ctx.p).collect();
    let vq: Vec<usize> = st.shape.block(ctx.q).collect();
    for u in 1..=st.n() {
        if ctx.in_pq(st, u) || count_in(g, u, &vp) <= count_in(g, u, &vq) {
            continue;
        }
        for &l in vp.iter().filter(|&&l| g.has_edge(l, u)) {
            for &t in vq.iter().filter(|&&t| t != r && !g.has_edge(l, t)) {
                for &m in vq
                    .iter()
                    .filter(|&&m| m != r && m != t && !g.has_edge(m, u))
                {
                    for v in g.neighbors_not_closed(t, r) {
                        for w in g.neighbors_not_closed(m, r).filter(|&w| w != v) {
                            let removed = [(l, u), (t, v), (m, w)];
                            let added = [(l, t), (u, m), (v, r), (w, r)];
                            let wit = [("l", l), ("u", u), ("t", t), ("m", m), ("v", v), ("w", w)];
                            if let Some(mv) = propose(st, Rule::C2Final, &removed, &added, &wit) {
                                return Some(mv);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Structural facts that must hold whenever the terminal exchange is reached.
fn terminal_claims(st: &Subrealization, ctx: &Case2Context) -> Result<(), RealizeError> {
    let g = &st.graph;
    let h = st.shape.h();
    let c = ctx.c.len();
    if c != h + 1 {
        return Err(claim_failure(ctx, "M8: |C| = h + 1"));
    }
    if st.shape.residue(ctx.r) != 0 {
        return Err(claim_failure(ctx, "M8: r ≡ 0 mod (h + 1)"));
    }
    if ctx.deficiency < 2 {
        return Err(claim_failure(ctx, "M8: deficiency ≥ 2"));
    }
    if c < 3 {
        return Err(claim_failure(ctx, "M8: |C| ≥ 3"));
    }
    if ctx.b.len() + 2 > c {
        return Err(claim_failure(ctx, "M8: |B| ≤ |C| - 2"));
    }
    let vq: Vec<usize> = st.shape.block(ctx.q).collect();
    if st.shape.block(ctx.p).any(|j| count_in(g, j, &vq) > h) {
        return Err(claim_failure(ctx, "M8: |N(v_j) ∩ V_q| ≤ h on V_p"));
    }
    Ok(())
}
