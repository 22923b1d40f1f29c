//! Parity solvers: the fair-edge fixpoint and the classic one.
//!
//! Colors partition the vertices; `colors[i]` holds the vertices of color
//! i+1, and Player 0 wins a play iff the highest color seen infinitely often
//! is even. Both solvers share the alternating variable nesting
//! νY_{2k}.µX_{2k−1}. … νY₂.µX₁ over an internally even-padded color list.

use super::{check, AccelCache, Ctx, SolveError, SolveOpts, SolveResult};
use crate::cond::WinningCondition;
use crate::graph::GameGraph;
use crate::sets::VertexSet;

/// Winning region under fair edges:
/// ⋃_a of (C_{2a} ∩ Cpre(Y_{2a})) ∪ ((C₁ ∪ … ∪ C_{2a−1}) ∩ Apre(Y_{2a}, X_{2a−1}))
/// inside the alternating nesting. Runs in O(n^{k+1}) for 2k colors.
pub fn solve_parity(
    g: &GameGraph,
    colors: &[VertexSet],
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, &WinningCondition::Parity { colors: colors.to_vec() })?;
    Ok(run(g, colors, false, opts))
}

/// Winning region when fairness is ignored: the same nesting with body
/// ⋃_{odd i} (C_i ∩ Cpre(X_i)) ∪ ⋃_{even i} (C_i ∩ Cpre(Y_i)).
pub fn solve_parity_classic(
    g: &GameGraph,
    colors: &[VertexSet],
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, &WinningCondition::Parity { colors: colors.to_vec() })?;
    Ok(run(g, colors, true, opts))
}

fn run(g: &GameGraph, colors: &[VertexSet], classic: bool, opts: SolveOpts) -> SolveResult {
    let n = g.n();
    let mut padded: Vec<VertexSet> = colors.to_vec();
    if padded.len() % 2 == 1 {
        padded.push(VertexSet::empty(n));
    }
    // Prefix unions D_a = C₁ ∪ … ∪ C_{2a−1}, used by the fair body.
    let k = padded.len() / 2;
    let mut prefixes = Vec::with_capacity(k);
    let mut run_union = VertexSet::empty(n);
    for a in 1..=k {
        run_union.union_with(&padded[2 * a - 2]); // C_{2a−1}
        prefixes.push(run_union.clone());
        if 2 * a < padded.len() {
            run_union.union_with(&padded[2 * a - 1]); // C_{2a} for the next prefix
        }
    }
    let mut eng = ParityEngine {
        ctx: Ctx::new(g),
        cache: AccelCache::new(opts.accel),
        colors: padded,
        prefixes,
        classic,
        top: VertexSet::full(n),
        bottom: VertexSet::empty(n),
    };
    let region = eng.eval_y(k, &eng.bottom.clone(), &mut Walk::default());
    SolveResult { region, stats: eng.ctx.stats(), frames: None }
}

/// Iteration counters in scope, used as warm-start cache keys (the level
/// index plays the role of the branch word).
#[derive(Default)]
struct Walk {
    mword: Vec<u32>,
    iword: Vec<u32>,
    counters: Vec<u32>,
}

struct ParityEngine<'g> {
    ctx: Ctx<'g>,
    cache: AccelCache,
    colors: Vec<VertexSet>,
    prefixes: Vec<VertexSet>,
    classic: bool,
    top: VertexSet,
    bottom: VertexSet,
}

impl<'g> ParityEngine<'g> {
    /// νY_{2a}. µX_{2a−1}. (own terms ∪ acc ∪ deeper).
    fn eval_y(&mut self, a: usize, acc: &VertexSet, walk: &mut Walk) -> VertexSet {
        let pword = [a as u8];
        let yname = format!("Y{}", 2 * a);
        let mut y = self
            .cache
            .nu_start(&pword, &walk.iword, &walk.counters, &self.top);
        let mut m_count = 0u32;
        loop {
            // (C_{2a} ∩ Cpre(Y_{2a})) only moves per outer iterate.
            let mut even_term = self.ctx.cpre(&y);
            even_term.intersect_with(&self.colors[2 * a - 1]);
            walk.mword.push(m_count);
            walk.counters.push(m_count);
            let mut new_y = self.eval_x(a, acc, &y, &even_term, walk);
            // Clamp to the running iterate so cached (warm) starts keep the
            // descent monotone; the limit is unchanged.
            new_y.intersect_with(&y);
            walk.mword.pop();
            walk.counters.pop();
            self.ctx.tick(&yname);
            self.cache
                .nu_store(&pword, &walk.iword, &walk.counters, &new_y);
            debug_assert!(new_y.is_subset(&y));
            if new_y == y {
                break;
            }
            y = new_y;
            m_count += 1;
            debug_assert!((m_count as usize) <= self.ctx.g.n() + 1);
        }
        y
    }

    fn eval_x(
        &mut self,
        a: usize,
        acc: &VertexSet,
        y: &VertexSet,
        even_term: &VertexSet,
        walk: &mut Walk,
    ) -> VertexSet {
        let pword = [a as u8];
        let xname = format!("X{}", 2 * a - 1);
        let mut x = self
            .cache
            .mu_start(&pword, &walk.mword, &walk.counters, &self.bottom);
        let mut i_count = 0u32;
        loop {
            let mut own = if self.classic {
                // (C_{2a−1} ∩ Cpre(X_{2a−1}))
                let mut t = self.ctx.cpre(&x);
                t.intersect_with(&self.colors[2 * a - 2]);
                t
            } else {
                // ((C₁ ∪ … ∪ C_{2a−1}) ∩ Apre(Y_{2a}, X_{2a−1}))
                let mut t = self.ctx.apre(y, &x);
                t.intersect_with(&self.prefixes[a - 1]);
                t
            };
            own.union_with(even_term);
            own.union_with(acc);
            let mut new_x = if a == 1 {
                own
            } else {
                walk.iword.push(i_count);
                walk.counters.push(i_count);
                let r = self.eval_y(a - 1, &own, walk);
                walk.iword.pop();
                walk.counters.pop();
                r
            };
            // Dual clamp: keep the ascent monotone under cached starts.
            new_x.union_with(&x);
            self.ctx.tick(&xname);
            self.cache
                .mu_store(&pword, &walk.mword, &walk.counters, &new_x);
            debug_assert!(x.is_subset(&new_x));
            if new_x == x {
                break;
            }
            x = new_x;
            i_count += 1;
            debug_assert!((i_count as usize) <= self.ctx.g.n() + 1);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;

    #[test]
    fn triangle_is_fairly_won_everywhere() {
        let (g, colors) = demo::parity_triangle();
        let fair = solve_parity(&g, &colors, SolveOpts::default()).unwrap();
        assert!(fair.region.is_full());
    }

    #[test]
    fn classic_triangle_matches_chain_reduction() {
        let (g, colors) = demo::parity_triangle();
        let classic = solve_parity_classic(&g, &colors, SolveOpts::default()).unwrap();
        // Without fairness the reduction to a Rabin chain on the
        // fairness-free graph must agree.
        let chain = crate::cond::parity_to_rabin_chain(&colors);
        let stripped = g.without_live_edges();
        let via_chain =
            crate::solver::solve_rabin_chain(&stripped, &chain, SolveOpts::default()).unwrap();
        let direct =
            solve_parity_classic(&stripped, &colors, SolveOpts::default()).unwrap();
        assert_eq!(via_chain.region, direct.region);
        // Fairness only ever helps Player 0.
        assert!(classic.region.is_subset(
            &solve_parity(&g, &colors, SolveOpts::default()).unwrap().region
        ));
    }

    #[test]
    fn odd_color_counts_are_padded() {
        // Single odd color everywhere: the highest recurring color is 1, so
        // Player 0 loses everywhere.
        let g = GameGraph::new(
            vec![crate::graph::Owner::P1, crate::graph::Owner::P1],
            &[(0, 1), (1, 0)],
            &[],
        )
        .unwrap();
        let colors = vec![VertexSet::full(2)];
        let r = solve_parity(&g, &colors, SolveOpts::default()).unwrap();
        assert!(r.region.is_empty());
        // Two colors, the even one recurring under Player 1's forced moves.
        let colors = vec![VertexSet::singleton(2, 0), VertexSet::singleton(2, 1)];
        let r = solve_parity(&g, &colors, SolveOpts::default()).unwrap();
        assert!(r.region.is_full());
    }
}
