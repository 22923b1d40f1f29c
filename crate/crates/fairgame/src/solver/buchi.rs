//! Safety and (generalized) Büchi solvers.

use super::{check, Ctx, Frames, SolveError, SolveOpts, SolveResult};
use crate::cond::WinningCondition;
use crate::graph::GameGraph;
use crate::sets::VertexSet;

/// Winning region of "stay in `safe` forever": νY. Q ∩ Cpre(Y).
pub fn solve_safety(
    g: &GameGraph,
    safe: &VertexSet,
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, &WinningCondition::Safety { safe: safe.clone() })?;
    let _ = opts; // no inner fixpoint to accelerate, nothing to record
    let mut ctx = Ctx::new(g);
    let mut y = VertexSet::full(g.n());
    loop {
        let mut new_y = ctx.cpre(&y);
        new_y.intersect_with(safe);
        ctx.tick("Y");
        if new_y == y {
            break;
        }
        debug_assert!(new_y.is_subset(&y));
        y = new_y;
    }
    Ok(SolveResult { region: y, stats: ctx.stats(), frames: None })
}

/// Winning region of "visit `goal` infinitely often" under fair edges.
pub fn solve_buchi(
    g: &GameGraph,
    goal: &VertexSet,
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, &WinningCondition::Buchi { goal: goal.clone() })?;
    let goals = [goal.clone()];
    Ok(gen_buchi_core(g, &goals, &VertexSet::full(g.n()), opts))
}

/// Winning region of "stay in `safe` and visit `goal` infinitely often":
/// νY.µX. Q ∩ [(G ∩ Cpre(Y)) ∪ Apre(Y, X)].
pub fn solve_safe_buchi(
    g: &GameGraph,
    goal: &VertexSet,
    safe: &VertexSet,
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(
        g,
        &WinningCondition::SafeBuchi { goal: goal.clone(), safe: safe.clone() },
    )?;
    let goals = [goal.clone()];
    Ok(gen_buchi_core(g, &goals, safe, opts))
}

/// Winning region of "stay in `safe` and visit every goal set infinitely
/// often": νY. ⋂_b µ ᵇX. Q ∩ [(ᵇF ∩ Cpre(Y)) ∪ Apre(Y, ᵇX)].
///
/// Runs in O(s·n²) operator applications for s goals. Acceleration has no
/// effect on this shape; `opts.accel` is ignored.
pub fn solve_safe_gen_buchi(
    g: &GameGraph,
    goals: &[VertexSet],
    safe: &VertexSet,
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, &WinningCondition::GenBuchi { goals: goals.to_vec() })?;
    if safe.universe() != g.n() {
        return Err(SolveError::Invalid {
            summary: format!(
                "safe set universe {} does not match the {}-vertex graph",
                safe.universe(),
                g.n()
            ),
            issues: Vec::new(),
        });
    }
    Ok(gen_buchi_core(g, goals, safe, opts))
}

/// Shared core; inputs are already validated.
fn gen_buchi_core(
    g: &GameGraph,
    goals: &[VertexSet],
    safe: &VertexSet,
    opts: SolveOpts,
) -> SolveResult {
    let mut ctx = Ctx::new(g);
    let mut y = VertexSet::full(g.n());
    loop {
        let cp = ctx.cpre(&y);
        let mut new_y: Option<VertexSet> = None;
        for (b, goal) in goals.iter().enumerate() {
            let xb = ascend(&mut ctx, goal, safe, &y, &cp, b, None);
            new_y = Some(match new_y {
                None => xb,
                Some(mut acc) => {
                    acc.intersect_with(&xb);
                    acc
                }
            });
        }
        let new_y = new_y.expect("validation rejects empty goal lists");
        ctx.tick("Y");
        if new_y == y {
            break;
        }
        debug_assert!(new_y.is_subset(&y));
        y = new_y;
    }
    let frames = opts.frames.then(|| {
        // Re-derive each goal's ascent under the converged outer value; the
        // counter strategy reads its per-goal ranks off these iterates.
        let cp = ctx.cpre(&y);
        let ascents = goals
            .iter()
            .enumerate()
            .map(|(b, goal)| {
                let mut ascent = Vec::new();
                ascend(&mut ctx, goal, safe, &y, &cp, b, Some(&mut ascent));
                ascent
            })
            .collect();
        Frames::GenBuchi { ascents }
    });
    SolveResult { region: y, stats: ctx.stats(), frames }
}

/// One µ-ascent for goal `b` under outer iterate `y` (with `cp` = Cpre(y)
/// hoisted by the caller). Records the strictly growing iterates when
/// `ascent` is given.
fn ascend(
    ctx: &mut Ctx,
    goal: &VertexSet,
    safe: &VertexSet,
    y: &VertexSet,
    cp: &VertexSet,
    b: usize,
    mut ascent: Option<&mut Vec<VertexSet>>,
) -> VertexSet {
    let mut seed = goal & cp;
    seed.intersect_with(safe);
    let name = format!("X{}", b + 1);
    let mut x = VertexSet::empty(ctx.g.n());
    loop {
        let mut new_x = ctx.apre(y, &x);
        new_x.intersect_with(safe);
        new_x.union_with(&seed);
        ctx.tick(&name);
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;
    use crate::oracle;

    #[test]
    fn live_loop_buchi_toggles_with_fairness() {
        let (g, goal) = demo::live_loop();
        let fair = solve_buchi(&g, &goal, SolveOpts::default()).unwrap();
        assert!(fair.region.is_full());
        let classic = g.without_live_edges();
        let plain = solve_buchi(&classic, &goal, SolveOpts::default()).unwrap();
        assert!(plain.region.is_empty());
    }

    #[test]
    fn reach_arena_safe_buchi() {
        let (g, _, safe, goal) = demo::reach_arena();
        let r = solve_safe_buchi(&g, &goal, &safe, SolveOpts::default()).unwrap();
        assert_eq!(r.region, VertexSet::from_ids(9, [3, 4, 5, 7]));
        assert_eq!(
            r.region,
            oracle::brute_force_safe_buchi_region(&g, &goal, &safe).unwrap()
        );
    }

    #[test]
    fn safety_drops_dead_ends_and_escapes() {
        let (g, _, safe, _) = demo::reach_arena();
        let r = solve_safety(&g, &safe, SolveOpts::default()).unwrap();
        assert_eq!(r.region, oracle::brute_force_safety_region(&g, &safe).unwrap());
        assert!(!r.region.contains(8)); // dead end: no successor to stay with
    }

    #[test]
    fn gen_buchi_intersects_goals() {
        // Two goals on the fair loop: both vertices must recur. Fairness
        // delivers vertex 1 infinitely often, vertex 0 is the hub.
        let (g, goal) = demo::live_loop();
        let goals = vec![goal, VertexSet::singleton(2, 0)];
        let r = solve_safe_gen_buchi(&g, &goals, &VertexSet::full(2), SolveOpts::default())
            .unwrap();
        assert!(r.region.is_full());
        match solve_safe_gen_buchi(&g, &goals, &VertexSet::full(2), SolveOpts::with_frames())
            .unwrap()
            .frames
            .unwrap()
        {
            Frames::GenBuchi { ascents } => assert_eq!(ascents.len(), 2),
            _ => panic!("expected generalized Büchi frames"),
        }
    }

    #[test]
    fn gen_buchi_matches_counter_product_buchi() {
        let (g, _, safe, goal) = demo::reach_arena();
        let goals = vec![goal.clone(), safe.clone()];
        let direct =
            solve_safe_gen_buchi(&g, &goals, &VertexSet::full(9), SolveOpts::default()).unwrap();
        let prod = crate::cond::gen_buchi_counter_product(&g, &goals).unwrap();
        let lifted = solve_buchi(&prod.game, &prod.goal, SolveOpts::default()).unwrap();
        let projected = VertexSet::from_ids(
            9,
            (0..9).filter(|&v| lifted.region.contains(prod.embed(v))),
        );
        assert_eq!(direct.region, projected);
    }
}
