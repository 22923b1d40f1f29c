//! Reachability solvers: fair, classic, and the dual (Player 1) view.

use super::{check, Ctx, Frames, SolveError, SolveOpts, SolveResult};
use crate::cond::WinningCondition;
use crate::graph::GameGraph;
use crate::sets::VertexSet;

/// Winning region of "stay in `safe` until `target`" under fair edges:
/// the fixpoint νY.µX. T ∪ (Q ∩ Apre(Y, X)).
///
/// Acceleration has no effect on this two-level shape; `opts.accel` is
/// accepted for uniformity and ignored.
pub fn solve_safe_reach(
    g: &GameGraph,
    target: &VertexSet,
    safe: &VertexSet,
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(
        g,
        &WinningCondition::SafeReach { target: target.clone(), safe: safe.clone() },
    )?;
    let mut ctx = Ctx::new(g);
    let mut y = VertexSet::full(g.n());
    loop {
        let new_y = ascend(&mut ctx, target, safe, &y, false, None);
        ctx.tick("Y");
        debug_assert!(new_y.is_subset(&y));
        if new_y == y {
            break;
        }
        y = new_y;
    }
    let frames = opts.frames.then(|| {
        let mut ascent = Vec::new();
        ascend(&mut ctx, target, safe, &y, false, Some(&mut ascent));
        Frames::Reach { ascent }
    });
    Ok(SolveResult { region: y, stats: ctx.stats(), frames })
}

/// Winning region of the same objective when fairness is ignored:
/// µX. T ∪ (Q ∩ Cpre(X)).
pub fn solve_reach(
    g: &GameGraph,
    target: &VertexSet,
    safe: &VertexSet,
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(
        g,
        &WinningCondition::SafeReach { target: target.clone(), safe: safe.clone() },
    )?;
    let mut ctx = Ctx::new(g);
    let top = VertexSet::full(g.n());
    let region = ascend(&mut ctx, target, safe, &top, true, None);
    let frames = opts.frames.then(|| {
        let mut ascent = Vec::new();
        ascend(&mut ctx, target, safe, &top, true, Some(&mut ascent));
        Frames::Reach { ascent }
    });
    Ok(SolveResult { region, stats: ctx.stats(), frames })
}

/// One µ-ascent of the reach fixpoint under envelope `y`. With `classic` the
/// fair step Apre(Y, X) degrades to Cpre(X). When `ascent` is given, the
/// strictly growing iterates X¹ ⊆ X² ⊆ … are pushed onto it (X¹ ⊇ T, and a
/// vertex's 1-based rank is the first iterate containing it).
fn ascend(
    ctx: &mut Ctx,
    target: &VertexSet,
    safe: &VertexSet,
    y: &VertexSet,
    classic: bool,
    mut ascent: Option<&mut Vec<VertexSet>>,
) -> VertexSet {
    let mut x = VertexSet::empty(ctx.g.n());
    loop {
        let mut new_x = if classic { ctx.cpre(&x) } else { ctx.apre(y, &x) };
        new_x.intersect_with(safe);
        new_x.union_with(target);
        ctx.tick("X");
        if new_x == x {
            return x;
        }
        debug_assert!(x.is_subset(&new_x));
        if let Some(frames) = ascent.as_deref_mut() {
            frames.push(new_x.clone());
        }
        x = new_x;
    }
}

/// Player 1's region for spoiling "stay in `safe` until `target`": the dual
/// fixpoint µY̅.νX̅. T̅ ∩ (Q̅ ∪ Pre∀₀(X̅) ∪ Pre∃₁∖ℓ(X̅) ∪ Lpre∀(X̅) ∪ Pre∃ℓ(Y̅) ∪ Dead).
///
/// The dead-end term makes the result the exact complement of
/// [`solve_safe_reach`]: dead ends outside the target spoil the objective by
/// getting the play stuck, but no predecessor operator ever admits them.
pub fn solve_dual_reach(
    g: &GameGraph,
    target: &VertexSet,
    safe: &VertexSet,
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(
        g,
        &WinningCondition::SafeReach { target: target.clone(), safe: safe.clone() },
    )?;
    let mut ctx = Ctx::new(g);
    let n = g.n();
    let tbar = !target;
    let qbar = !safe;
    let mut dead = g.dead_ends();
    dead.intersect_with(&tbar);

    let mut levels = Vec::new();
    let mut y = VertexSet::empty(n);
    loop {
        // Vertices of Player 1 with a live edge into Y̅ may leak there even
        // against fairness; this term only depends on the outer iterate.
        let leak = ctx.pre_exists_l(&y);
        let mut x = VertexSet::full(n);
        loop {
            let mut new_x = ctx.pre_forall_0(&x);
            new_x.union_with(&ctx.pre_exists_1_minus_l(&x));
            new_x.union_with(&ctx.lpre_forall(&x));
            new_x.union_with(&leak);
            new_x.union_with(&qbar);
            new_x.union_with(&dead);
            new_x.intersect_with(&tbar);
            ctx.tick("Xbar");
            if new_x == x {
                break;
            }
            debug_assert!(new_x.is_subset(&x));
            x = new_x;
        }
        ctx.tick("Ybar");
        if x == y {
            break;
        }
        debug_assert!(y.is_subset(&x));
        if opts.frames {
            levels.push(x.clone());
        }
        y = x;
    }
    let frames = opts.frames.then_some(Frames::DualReach { levels });
    Ok(SolveResult { region: y, stats: ctx.stats(), frames })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;
    use crate::oracle;

    #[test]
    fn reach_arena_regions() {
        let (g, target, safe, _) = demo::reach_arena();
        let fair = solve_safe_reach(&g, &target, &safe, SolveOpts::default()).unwrap();
        assert_eq!(fair.region, VertexSet::from_ids(9, [3, 4, 5, 6, 7, 8]));
        let classic = solve_reach(&g, &target, &safe, SolveOpts::default()).unwrap();
        assert_eq!(classic.region, VertexSet::from_ids(9, [5, 7, 8]));
        let dual = solve_dual_reach(&g, &target, &safe, SolveOpts::default()).unwrap();
        assert_eq!(dual.region, VertexSet::from_ids(9, [0, 1, 2]));
    }

    #[test]
    fn dual_complements_primal() {
        let (g, target, safe, _) = demo::reach_arena();
        let fair = solve_safe_reach(&g, &target, &safe, SolveOpts::default()).unwrap();
        let dual = solve_dual_reach(&g, &target, &safe, SolveOpts::default()).unwrap();
        assert_eq!(dual.region, !&fair.region);
    }

    #[test]
    fn matches_oracle_on_fixtures() {
        let (g, target, safe, _) = demo::reach_arena();
        let fair = solve_safe_reach(&g, &target, &safe, SolveOpts::default()).unwrap();
        assert_eq!(
            fair.region,
            oracle::brute_force_reach_region(&g, &target, &safe).unwrap()
        );
    }

    #[test]
    fn ascent_frames_start_at_target() {
        let (g, target, safe, _) = demo::reach_arena();
        let fair = solve_safe_reach(&g, &target, &safe, SolveOpts::with_frames()).unwrap();
        match fair.frames.unwrap() {
            Frames::Reach { ascent } => {
                assert_eq!(ascent[0], target);
                assert_eq!(*ascent.last().unwrap(), fair.region);
                for w in ascent.windows(2) {
                    assert!(w[0].is_subset(&w[1]));
                }
            }
            _ => panic!("expected reach frames"),
        }
    }

    #[test]
    fn dead_end_in_target_wins_outside_loses() {
        // 0 → 1, 1 is a dead end inside the target: reaching it satisfies
        // the objective. Dead end 2 outside the target never does.
        let g = GameGraph::new(
            vec![crate::graph::Owner::P0, crate::graph::Owner::P1, crate::graph::Owner::P0],
            &[(0, 1)],
            &[],
        )
        .unwrap();
        let target = VertexSet::singleton(3, 1);
        let safe = VertexSet::full(3);
        let r = solve_safe_reach(&g, &target, &safe, SolveOpts::default()).unwrap();
        assert_eq!(r.region, VertexSet::from_ids(3, [0, 1]));
        let d = solve_dual_reach(&g, &target, &safe, SolveOpts::default()).unwrap();
        assert_eq!(d.region, VertexSet::from_ids(3, [2]));
    }
}
