//! Solver for generalized reactivity of rank 1.
//!
//! Player 0 must visit every guarantee set F_b infinitely often — unless
//! some assumption set A_a is eventually avoided forever, which excuses the
//! guarantees. Fixpoint:
//!
//! νY. ⋂_b µ ᵇX. ⋃_a νY_a. (F_b ∩ Cpre(Y)) ∪ Apre(Y, ᵇX) ∪ (A̅_a ∩ Cpre(Y_a))
//!
//! in O(n²·r·s) for r assumptions and s guarantees. Winning may need a
//! counter over the guarantees; strategy extraction goes through the
//! generalized-Rabin encoding.

use super::{check, AccelCache, Ctx, SolveError, SolveOpts, SolveResult};
use crate::cond::WinningCondition;
use crate::graph::GameGraph;
use crate::sets::VertexSet;

/// Winning region of the GR(1) objective under fair edges.
pub fn solve_gr1(
    g: &GameGraph,
    assumptions: &[VertexSet],
    guarantees: &[VertexSet],
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(
        g,
        &WinningCondition::Gr1 {
            assumptions: assumptions.to_vec(),
            guarantees: guarantees.to_vec(),
        },
    )?;
    let n = g.n();
    let mut ctx = Ctx::new(g);
    let mut cache = AccelCache::new(opts.accel);
    let top = VertexSet::full(n);
    let abars: Vec<VertexSet> = assumptions.iter().map(|a| !a).collect();

    let mut y = top.clone();
    let mut m0 = 0u32;
    loop {
        let cp = ctx.cpre(&y);
        let mut new_y: Option<VertexSet> = None;
        for (b, guarantee) in guarantees.iter().enumerate() {
            let xname = format!("X{}", b + 1);
            let goal_term = guarantee & &cp;
            let mut x = VertexSet::empty(n);
            let mut i0 = 0u32;
            loop {
                // Progress toward guarantee b, available to every branch.
                let mut t = ctx.apre(&y, &x);
                t.union_with(&goal_term);
                let mut new_x = VertexSet::empty(n);
                for (a, abar) in abars.iter().enumerate() {
                    let pword = [(b + 1) as u8, (a + 1) as u8];
                    let counters = [m0, i0];
                    let mut ya = cache.nu_start(&pword, &[i0], &counters, &top);
                    let yname = format!("Y{}", a + 1);
                    loop {
                        // Dodging assumption a forever also wins.
                        let mut new_ya = ctx.cpre(&ya);
                        new_ya.intersect_with(abar);
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
                    new_x.union_with(&ya);
                }
                ctx.tick(&xname);
                debug_assert!(x.is_subset(&new_x));
                if new_x == x {
                    break;
                }
                x = new_x;
                i0 += 1;
            }
            new_y = Some(match new_y {
                None => x,
                Some(mut meet) => {
                    meet.intersect_with(&x);
                    meet
                }
            });
        }
        let new_y = new_y.expect("validation rejects empty guarantee lists");
        ctx.tick("Y");
        debug_assert!(new_y.is_subset(&y));
        if new_y == y {
            break;
        }
        y = new_y;
        m0 += 1;
        debug_assert!((m0 as usize) <= n + 1);
    }
    Ok(SolveResult { region: y, stats: ctx.stats(), frames: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;

    #[test]
    fn matches_gen_rabin_encoding_on_fixtures() {
        let (g, _, safe, goal) = demo::reach_arena();
        let assumptions = vec![safe.clone()];
        let guarantees = vec![goal.clone()];
        let direct = solve_gr1(&g, &assumptions, &guarantees, SolveOpts::default()).unwrap();
        let pairs = crate::cond::gr1_to_gen_rabin(g.n(), &assumptions, &guarantees);
        let encoded = crate::solver::solve_gen_rabin(&g, &pairs, SolveOpts::default()).unwrap();
        assert_eq!(direct.region, encoded.region);
    }

    #[test]
    fn unavoidable_assumption_forces_the_guarantee() {
        // On the fair loop with assumption {0} (always hit) the guarantee
        // {1} must be delivered — fairness delivers it, so all vertices win.
        // With guarantee {1} on the fairness-stripped loop, Player 1 parks
        // at 0 forever; the assumption keeps firing and Player 0 loses 0.
        let (g, goal) = demo::live_loop();
        let assumptions = vec![VertexSet::singleton(2, 0)];
        let r = solve_gr1(&g, &assumptions, &[goal.clone()], SolveOpts::default()).unwrap();
        assert!(r.region.is_full());
        let stripped = g.without_live_edges();
        let r = solve_gr1(&stripped, &assumptions, &[goal], SolveOpts::default()).unwrap();
        assert!(r.region.is_empty());
    }

    #[test]
    fn avoiding_the_assumption_excuses_the_guarantee() {
        // Player 0 sits at vertex 1 forever, never meeting assumption {0};
        // the unreached guarantee {2} is then irrelevant. Vertex 2 delivers
        // the guarantee outright. Everything wins, for two different
        // reasons.
        let g = GameGraph::new(
            vec![crate::graph::Owner::P1, crate::graph::Owner::P0, crate::graph::Owner::P0],
            &[(0, 1), (1, 1), (2, 2)],
            &[],
        )
        .unwrap();
        let r = solve_gr1(
            &g,
            &[VertexSet::singleton(3, 0)],
            &[VertexSet::singleton(3, 2)],
            SolveOpts::default(),
        )
        .unwrap();
        assert!(r.region.is_full());
        // Forcing the play through the assumption instead: a round-robin
        // 0 ↔ 1 where 0 recurs unavoidably, with the guarantee unreachable.
        let g = GameGraph::new(
            vec![crate::graph::Owner::P1, crate::graph::Owner::P0, crate::graph::Owner::P0],
            &[(0, 1), (1, 0), (2, 2)],
            &[],
        )
        .unwrap();
        let r = solve_gr1(
            &g,
            &[VertexSet::singleton(3, 0)],
            &[VertexSet::singleton(3, 2)],
            SolveOpts::default(),
        )
        .unwrap();
        assert_eq!(r.region, VertexSet::singleton(3, 2));
    }
}
