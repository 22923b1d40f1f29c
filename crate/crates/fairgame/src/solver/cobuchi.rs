//! Co-Büchi and generalized co-Büchi solvers.
//!
//! The objective: eventually stay inside one of the allowed sets forever.
//! Fixpoint: νY₀.µX₀. ⋃_{a∈[1;r]} νY_a. Apre(Y₀, X₀) ∪ (A_a ∩ Cpre(Y_a)),
//! in O(r·n²). Winning is memoryless; strategies are extracted through the
//! reduction to a Rabin game with pairs ⟨V, A̅_a⟩.

use super::{check, AccelCache, Ctx, SolveError, SolveOpts, SolveResult};
use crate::cond::WinningCondition;
use crate::graph::GameGraph;
use crate::sets::VertexSet;

/// Winning region of "eventually remain in `allowed` forever" under fair
/// edges.
pub fn solve_cobuchi(
    g: &GameGraph,
    allowed: &VertexSet,
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, &WinningCondition::CoBuchi { allowed: allowed.clone() })?;
    Ok(core(g, std::slice::from_ref(allowed), opts))
}

/// Winning region of "eventually remain inside one of the `allowed` sets
/// forever" under fair edges.
pub fn solve_gen_cobuchi(
    g: &GameGraph,
    allowed: &[VertexSet],
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, &WinningCondition::GenCoBuchi { allowed: allowed.to_vec() })?;
    Ok(core(g, allowed, opts))
}

fn core(g: &GameGraph, allowed: &[VertexSet], opts: SolveOpts) -> SolveResult {
    let n = g.n();
    let mut ctx = Ctx::new(g);
    let mut cache = AccelCache::new(opts.accel);
    let top = VertexSet::full(n);

    let mut y0 = top.clone();
    let mut m0 = 0u32;
    loop {
        let mut x0 = VertexSet::empty(n);
        let mut i0 = 0u32;
        let new_y0 = loop {
            // The stay-or-progress term is shared by every branch of the
            // union and only depends on the outer iterates.
            let t = ctx.apre(&y0, &x0);
            let mut new_x0 = VertexSet::empty(n);
            for (a, stay) in allowed.iter().enumerate() {
                let pword = [(a + 1) as u8];
                let counters = [m0, i0];
                let mut ya = cache.nu_start(&pword, &[i0], &counters, &top);
                let yname = format!("Y{}", a + 1);
                loop {
                    let mut new_ya = ctx.cpre(&ya);
                    new_ya.intersect_with(stay);
                    new_ya.union_with(&t);
                    // Clamp so a warm start below ⊤ still descends monotonely.
                    new_ya.intersect_with(&ya);
                    ctx.tick(&yname);
                    cache.nu_store(&pword, &[i0], &counters, &new_ya);
                    debug_assert!(new_ya.is_subset(&ya));
                    if new_ya == ya {
                        break;
                    }
                    ya = new_ya;
                }
                new_x0.union_with(&ya);
            }
            ctx.tick("X0");
            debug_assert!(x0.is_subset(&new_x0));
            if new_x0 == x0 {
                break x0;
            }
            x0 = new_x0;
            i0 += 1;
        };
        ctx.tick("Y0");
        debug_assert!(new_y0.is_subset(&y0));
        if new_y0 == y0 {
            break;
        }
        y0 = new_y0;
        m0 += 1;
    }
    SolveResult { region: y0, stats: ctx.stats(), frames: None }
}
