//! Predecessor operators over a game graph.
//!
//! These are the primitive "symbolic steps" of every solver. All of them
//! follow one dead-end rule: a vertex with no successors is never a member of
//! any result, existential or universal, so dead ends can never be controlled
//! into a winning region by either player.

use crate::graph::{GameGraph, Owner};
use crate::sets::VertexSet;
use std::fmt;

/// Vertices from which Player 0 can pick a successor in `s`.
pub fn pre_exists_0(g: &GameGraph, s: &VertexSet) -> VertexSet {
    scan(g, s, |g, v, s| {
        g.owner(v) == Owner::P0 && g.successors(v).iter().any(|&w| s.contains(w))
    })
}

/// Player 1 vertices whose every successor lies in `s` (and that have one).
pub fn pre_forall_1(g: &GameGraph, s: &VertexSet) -> VertexSet {
    scan(g, s, |g, v, s| {
        g.owner(v) == Owner::P1
            && !g.successors(v).is_empty()
            && g.successors(v).iter().all(|&w| s.contains(w))
    })
}

/// Controllable predecessor: Player 0 can force the next vertex into `s`.
pub fn cpre(g: &GameGraph, s: &VertexSet) -> VertexSet {
    &pre_exists_0(g, s) | &pre_forall_1(g, s)
}

/// Vertices with a live edge into `s`.
pub fn lpre_exists(g: &GameGraph, s: &VertexSet) -> VertexSet {
    scan(g, s, |g, v, s| g.live_successors(v).iter().any(|&w| s.contains(w)))
}

/// Almost-sure predecessor: either Player 0 forces the next vertex into `t`,
/// or the vertex has a live edge into `t` while all of Player 1's alternatives
/// stay inside `s`. Fairness then drives the play into `t` eventually.
pub fn apre(g: &GameGraph, s: &VertexSet, t: &VertexSet) -> VertexSet {
    let mut out = cpre(g, t);
    for v in pre_forall_1(g, s).iter() {
        if g.live_successors(v).iter().any(|&w| t.contains(w)) {
            out.insert(v);
        }
    }
    out
}

/// Player 0 vertices whose every successor lies in `s` (and that have one).
pub fn pre_forall_0(g: &GameGraph, s: &VertexSet) -> VertexSet {
    scan(g, s, |g, v, s| {
        g.owner(v) == Owner::P0
            && !g.successors(v).is_empty()
            && g.successors(v).iter().all(|&w| s.contains(w))
    })
}

/// Player 1 vertices with a successor in `s`.
pub fn pre_exists_1(g: &GameGraph, s: &VertexSet) -> VertexSet {
    scan(g, s, |g, v, s| {
        g.owner(v) == Owner::P1 && g.successors(v).iter().any(|&w| s.contains(w))
    })
}

/// Player 1 vertices *without* live edges that have a successor in `s`.
pub fn pre_exists_1_minus_l(g: &GameGraph, s: &VertexSet) -> VertexSet {
    scan(g, s, |g, v, s| {
        g.owner(v) == Owner::P1
            && g.live_successors(v).is_empty()
            && g.successors(v).iter().any(|&w| s.contains(w))
    })
}

/// Live-edge vertices with *any* successor (live or not) in `s`.
pub fn pre_exists_l(g: &GameGraph, s: &VertexSet) -> VertexSet {
    scan(g, s, |g, v, s| {
        !g.live_successors(v).is_empty() && g.successors(v).iter().any(|&w| s.contains(w))
    })
}

/// Live-edge vertices whose every *live* successor lies in `s`.
pub fn lpre_forall(g: &GameGraph, s: &VertexSet) -> VertexSet {
    scan(g, s, |g, v, s| {
        !g.live_successors(v).is_empty() && g.live_successors(v).iter().all(|&w| s.contains(w))
    })
}

fn scan(
    g: &GameGraph,
    s: &VertexSet,
    pred: impl Fn(&GameGraph, usize, &VertexSet) -> bool,
) -> VertexSet {
    assert_eq!(s.universe(), g.n(), "set universe does not match the graph");
    VertexSet::from_ids(g.n(), (0..g.n()).filter(|&v| pred(g, v, s)))
}

/// The operator kinds a [`StepCounter`] breaks its totals down by.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PreOp {
    PreExists0,
    PreForall1,
    Cpre,
    LpreExists,
    Apre,
    PreForall0,
    PreExists1,
    PreExists1MinusL,
    PreExistsL,
    LpreForall,
}

const OP_COUNT: usize = 10;

const OP_NAMES: [&str; OP_COUNT] = [
    "pre_exists_0",
    "pre_forall_1",
    "cpre",
    "lpre_exists",
    "apre",
    "pre_forall_0",
    "pre_exists_1",
    "pre_exists_1_minus_l",
    "pre_exists_l",
    "lpre_forall",
];

/// Counts predecessor-operator applications during one solve.
///
/// One application of a composite operator (`cpre`, `apre`) counts as one
/// step, mirroring how the complexity bounds count them.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct StepCounter {
    counts: [u64; OP_COUNT],
}

impl StepCounter {
    pub fn new() -> Self {
        StepCounter::default()
    }

    pub fn record(&mut self, op: PreOp) {
        self.counts[op as usize] += 1;
    }

    pub fn get(&self, op: PreOp) -> u64 {
        self.counts[op as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Non-zero entries as `(name, count)`, in fixed operator order.
    pub fn breakdown(&self) -> Vec<(&'static str, u64)> {
        OP_NAMES
            .iter()
            .zip(self.counts.iter())
            .filter(|(_, &c)| c > 0)
            .map(|(&n, &c)| (n, c))
            .collect()
    }

    pub fn add(&mut self, other: &StepCounter) {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
    }
}

impl fmt::Display for StepCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "steps total={}", self.total())?;
        for (name, c) in self.breakdown() {
            write!(f, " {name}={c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;

    #[test]
    fn live_loop_cpre_of_goal_is_empty() {
        // The controllable predecessor of {q} is empty: p self-loops away and
        // q's only edge leaves the set.
        let (g, goal) = demo::live_loop();
        assert!(cpre(&g, &goal).is_empty());
    }

    #[test]
    fn live_loop_apre_credits_the_live_edge() {
        let (g, goal) = demo::live_loop();
        let all = VertexSet::full(2);
        assert_eq!(apre(&g, &all, &goal), VertexSet::from_ids(2, [0]));
    }

    #[test]
    fn apre_of_empty_target_is_empty() {
        let (g, _) = demo::live_loop();
        let all = VertexSet::full(2);
        assert!(apre(&g, &all, &VertexSet::empty(2)).is_empty());
    }

    #[test]
    fn apre_equals_cpre_without_live_edges() {
        let (g, _, _, _) = demo::reach_arena();
        let g = g.without_live_edges();
        let s = VertexSet::from_ids(9, [0, 3, 4, 5]);
        let t = VertexSet::from_ids(9, [3, 5]);
        assert_eq!(apre(&g, &s, &t), cpre(&g, &t));
    }

    #[test]
    fn dead_ends_never_qualify() {
        let (g, _, _, _) = demo::reach_arena();
        let full = VertexSet::full(9);
        // Vertex 8 is a dead end in the reach arena.
        for op in [pre_exists_0, pre_forall_1, cpre, pre_forall_0, pre_exists_1] {
            assert!(!op(&g, &full).contains(8));
        }
    }

    #[test]
    fn reach_arena_cpre_matches_hand_computation() {
        // With Y = V∖{0}, the controllable predecessor drops 0 (self-loop
        // outside), 1 (can move to 0) and the dead end 8.
        let (g, _, _, _) = demo::reach_arena();
        let y = &VertexSet::full(9) - &VertexSet::singleton(9, 0);
        assert_eq!(cpre(&g, &y), &y - &VertexSet::from_ids(9, [1, 8]));
    }

    #[test]
    fn exists_split_partitions_p1() {
        let (g, _) = demo::live_escape_pair();
        let s = VertexSet::from_ids(7, [1, 2, 4]);
        let split = &pre_exists_1_minus_l(&g, &s) | &pre_exists_l(&g, &s);
        assert_eq!(split, pre_exists_1(&g, &s));
    }

    #[test]
    fn step_counter_breakdown() {
        let mut c = StepCounter::new();
        c.record(PreOp::Cpre);
        c.record(PreOp::Cpre);
        c.record(PreOp::Apre);
        assert_eq!(c.total(), 3);
        assert_eq!(c.get(PreOp::Cpre), 2);
        assert_eq!(c.breakdown(), vec![("cpre", 2), ("apre", 1)]);
    }
}
