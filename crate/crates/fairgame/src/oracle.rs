//! Independent ground truth for small instances.
//!
//! The oracle never runs a fixpoint. It enumerates Player 0's memoryless
//! strategies outright and searches exhaustively for a fair play of Player 1
//! that defeats the fixed strategy, by looking for "traps": vertex sets the
//! play can reach and then tour forever without violating fairness. This is
//! exponential and deliberately so — it is the measuring stick the symbolic
//! solvers are tested against, so it shares no code with them.
//!
//! A play that reaches a vertex without successors cannot continue; the
//! search counts that against Player 0, matching the solvers' treatment of
//! dead ends.

use crate::cond::RabinPair;
use crate::graph::{GameGraph, Owner};
use crate::sets::VertexSet;
use thiserror::Error;

/// Hard cap on the universe size for subset enumeration.
pub const SUBSET_CAP: usize = 16;

/// Default cap on the number of enumerated Player 0 strategies.
pub const DEFAULT_STRATEGY_BUDGET: u64 = 1_000_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices; the oracle enumerates subsets and is capped at {SUBSET_CAP}")]
    TooLarge { n: usize },
    #[error("instance needs {needed} strategies, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("strategy undefined at reachable Player 0 vertex {vertex}")]
    PartialStrategy { vertex: usize },
    #[error("game is not one-player: vertex {vertex} still has a choice")]
    NotOnePlayer { vertex: usize },
}

/// Bitmask view of a small game graph.
struct Masks {
    n: usize,
    succ: Vec<u32>,
    live: Vec<u32>,
    p0: u32,
    dead: u32,
}

impl Masks {
    fn build(g: &GameGraph) -> Result<Masks, OracleError> {
        let n = g.n();
        if n > SUBSET_CAP {
            return Err(OracleError::TooLarge { n });
        }
        let to_mask = |vs: &[usize]| vs.iter().fold(0u32, |m, &v| m | 1 << v);
        Ok(Masks {
            n,
            succ: (0..n).map(|v| to_mask(g.successors(v))).collect(),
            live: (0..n).map(|v| to_mask(g.live_successors(v))).collect(),
            p0: (0..n).fold(0u32, |m, v| {
                if g.owner(v) == Owner::P0 { m | 1 << v } else { m }
            }),
            dead: (0..n).fold(0u32, |m, v| {
                if g.successors(v).is_empty() { m | 1 << v } else { m }
            }),
        })
    }

    fn set(&self, mask: u32) -> VertexSet {
        VertexSet::from_ids(self.n, BitIter(mask))
    }

    fn mask(&self, s: &VertexSet) -> u32 {
        s.iter().fold(0u32, |m, v| m | 1 << v)
    }
}

struct BitIter(u32);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// What counts as a violation for the fixed objective.
struct LassoSpec<'a> {
    /// Vertices whose mere visit violates the objective (plus dead ends).
    bad: u32,
    /// Vertices a violating play must never touch (the reach target).
    removed: u32,
    /// Whether an infinity set `s` violates the objective.
    qualifies: &'a dyn Fn(u32) -> bool,
}

/// A trap: reachable-and-tourable infinity-set candidate for a fair play of
/// Player 1 against the fixed strategy. `allowed[v]` holds the strategy edge
/// for Player 0 vertices and every edge for Player 1 vertices.
fn is_trap(s: u32, allowed: &[u32], m: &Masks, spec: &LassoSpec) -> bool {
    if s & spec.removed != 0 || !(spec.qualifies)(s) {
        return false;
    }
    let mut it = BitIter(s);
    // Every member can keep the play inside, and fairness keeps it inside:
    // all live successors of a member must be members.
    for v in &mut it {
        if allowed[v] & s == 0 {
            return false;
        }
        if m.live[v] != 0 && m.live[v] & !s != 0 {
            return false;
        }
    }
    strongly_connected(s, allowed)
}

/// Strong connectivity of the allowed subgraph on `s` (a singleton needs a
/// self-loop, which the caller's closure check already guarantees).
fn strongly_connected(s: u32, allowed: &[u32]) -> bool {
    let v0 = s.trailing_zeros();
    if s.count_ones() == 1 {
        return allowed[v0 as usize] & s != 0;
    }
    let mut fwd = 1u32 << v0;
    loop {
        let mut next = fwd;
        for v in BitIter(fwd) {
            next |= allowed[v] & s;
        }
        if next == fwd {
            break;
        }
        fwd = next;
    }
    if fwd & s != s {
        return false;
    }
    let mut bwd = 1u32 << v0;
    loop {
        let mut next = bwd;
        for v in BitIter(s & !bwd) {
            if allowed[v] & bwd != 0 {
                next |= 1 << v;
            }
        }
        if next == bwd {
            break;
        }
        bwd = next;
    }
    bwd & s == s
}

/// All vertices from which Player 1 can force a violation against the fixed
/// strategy: reach a bad vertex, get the play stuck, or steer into a trap and
/// tour it fairly forever — all without touching `removed`.
fn losing_starts(allowed: &[u32], m: &Masks, spec: &LassoSpec) -> u32 {
    let mut target = (spec.bad | m.dead) & !spec.removed;
    // A Player 0 vertex whose strategy has nowhere to go behaves like a dead
    // end (only possible for partial strategies; full enumeration never
    // produces one).
    for v in 0..m.n {
        if allowed[v] == 0 && 1 << v & m.dead == 0 && 1 << v & spec.removed == 0 {
            target |= 1 << v;
        }
    }
    let full = if m.n == 32 { u32::MAX } else { (1u32 << m.n) - 1 };
    let mut s = full;
    while s != 0 {
        if s & !target != 0 && is_trap(s, allowed, m, spec) {
            target |= s;
        }
        s -= 1;
    }
    // Backward closure avoiding `removed`.
    let mut losing = target;
    loop {
        let mut next = losing;
        for v in BitIter(full & !losing & !spec.removed) {
            if allowed[v] & losing != 0 {
                next |= 1 << v;
            }
        }
        if next == losing {
            break;
        }
        losing = next;
    }
    losing
}

fn rabin_qualifier(m: &Masks, pairs: &[RabinPair]) -> impl Fn(u32) -> bool {
    let gs: Vec<u32> = pairs.iter().map(|p| m.mask(&p.goal)).collect();
    let rs: Vec<u32> = pairs.iter().map(|p| m.mask(&p.avoid)).collect();
    move |s: u32| gs.iter().zip(&rs).all(|(&g, &r)| s & r != 0 || s & g == 0)
}

/// Builds `allowed` from a move table: strategy edges for Player 0, all
/// edges for Player 1.
fn allowed_of(m: &Masks, g: &GameGraph, strategy: &[Option<usize>]) -> Vec<u32> {
    (0..m.n)
        .map(|v| match g.owner(v) {
            Owner::P1 => m.succ[v],
            Owner::P0 => match strategy.get(v).copied().flatten() {
                Some(w) => 1 << w,
                None => 0,
            },
        })
        .collect()
}

/// Searches for a fair play of Player 1 from `start` that defeats `strategy`
/// with respect to the Rabin `pairs`. Returns a witness: either a trap the
/// play can tour forever while every pair fails, or the vertex where the play
/// gets stuck.
///
/// The strategy must cover every Player 0 vertex reachable under it.
pub fn fair_violating_witness(
    g: &GameGraph,
    strategy: &[Option<usize>],
    pairs: &[RabinPair],
    start: usize,
) -> Result<Option<VertexSet>, OracleError> {
    let m = Masks::build(g)?;
    let allowed = allowed_of(&m, g, strategy);

    // Forward reachability from `start`, checking strategy totality.
    let mut reach = 1u32 << start;
    loop {
        let mut next = reach;
        for v in BitIter(reach) {
            next |= allowed[v];
        }
        if next == reach {
            break;
        }
        reach = next;
    }
    for v in BitIter(reach & m.p0 & !m.dead) {
        if strategy.get(v).copied().flatten().is_none() {
            return Err(OracleError::PartialStrategy { vertex: v });
        }
    }

    if reach & m.dead != 0 {
        let stuck = (reach & m.dead).trailing_zeros() as usize;
        return Ok(Some(VertexSet::singleton(g.n(), stuck)));
    }

    let qualifies = rabin_qualifier(&m, pairs);
    let spec = LassoSpec { bad: 0, removed: 0, qualifies: &qualifies };
    let mut s = reach;
    loop {
        if s != 0 && is_trap(s, &allowed, &m, &spec) {
            return Ok(Some(m.set(s)));
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & reach;
    }
    Ok(None)
}

/// Enumerates every strategy of Player 0 and unions the starts each one
/// defends, for the objective described by `spec`.
fn region_by_enumeration(
    g: &GameGraph,
    budget: u64,
    spec: &LassoSpec,
) -> Result<VertexSet, OracleError> {
    let m = Masks::build(g)?;
    let full = if m.n == 32 { u32::MAX } else { (1u32 << m.n) - 1 };

    let choosers: Vec<usize> = (0..m.n)
        .filter(|&v| g.owner(v) == Owner::P0 && !g.successors(v).is_empty())
        .collect();
    let needed: u128 = choosers
        .iter()
        .map(|&v| g.successors(v).len() as u128)
        .product();
    if needed > budget as u128 {
        return Err(OracleError::BudgetExceeded { needed, budget });
    }

    let mut allowed: Vec<u32> = (0..m.n)
        .map(|v| if g.owner(v) == Owner::P1 { m.succ[v] } else { 0 })
        .collect();
    let mut pick = vec![0usize; choosers.len()];
    let mut winning = 0u32;

    loop {
        for (i, &v) in choosers.iter().enumerate() {
            allowed[v] = 1 << g.successors(v)[pick[i]];
        }
        winning |= full & !losing_starts(&allowed, &m, spec);
        if winning == full {
            break;
        }
        // Odometer over successor choices.
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(m.set(winning));
            }
            pick[i] += 1;
            if pick[i] < g.successors(choosers[i]).len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
    Ok(m.set(winning))
}

/// The set of vertices from which some memoryless Player 0 strategy wins the
/// fair-adversarial Rabin game — by exhaustive enumeration.
pub fn brute_force_region(g: &GameGraph, pairs: &[RabinPair]) -> Result<VertexSet, OracleError> {
    let m = Masks::build(g)?;
    let qualifies = rabin_qualifier(&m, pairs);
    region_by_enumeration(
        g,
        DEFAULT_STRATEGY_BUDGET,
        &LassoSpec { bad: 0, removed: 0, qualifies: &qualifies },
    )
}

/// Brute-force region for "reach `target`, staying in `safe` before that".
pub fn brute_force_reach_region(
    g: &GameGraph,
    target: &VertexSet,
    safe: &VertexSet,
) -> Result<VertexSet, OracleError> {
    let m = Masks::build(g)?;
    let t = m.mask(target);
    let bad = !m.mask(safe) & !t;
    let always = |_: u32| true; // any tour that avoids the target violates
    region_by_enumeration(
        g,
        DEFAULT_STRATEGY_BUDGET,
        &LassoSpec { bad, removed: t, qualifies: &always },
    )
}

/// Brute-force region for "stay in `safe` forever".
pub fn brute_force_safety_region(g: &GameGraph, safe: &VertexSet) -> Result<VertexSet, OracleError> {
    let m = Masks::build(g)?;
    let bad = !m.mask(safe);
    let never = |_: u32| false; // only escaping (or getting stuck) violates
    region_by_enumeration(
        g,
        DEFAULT_STRATEGY_BUDGET,
        &LassoSpec { bad, removed: 0, qualifies: &never },
    )
}

/// Brute-force region for "stay in `safe` and visit `goal` infinitely often".
pub fn brute_force_safe_buchi_region(
    g: &GameGraph,
    goal: &VertexSet,
    safe: &VertexSet,
) -> Result<VertexSet, OracleError> {
    let m = Masks::build(g)?;
    let bad = !m.mask(safe);
    let goal_mask = m.mask(goal);
    let misses_goal = move |s: u32| s & goal_mask == 0;
    region_by_enumeration(
        g,
        DEFAULT_STRATEGY_BUDGET,
        &LassoSpec { bad, removed: 0, qualifies: &misses_goal },
    )
}

/// Certifies a strategy: no vertex of `region` admits a fair violating play
/// when Player 0 follows `strategy`.
pub fn verify_strategy_sound(
    g: &GameGraph,
    pairs: &[RabinPair],
    region: &VertexSet,
    strategy: &[Option<usize>],
) -> Result<bool, OracleError> {
    for v in region.iter() {
        if fair_violating_witness(g, strategy, pairs, v)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Muller region ("the infinity set equals one of `sets`") for one-player
/// games.
///
/// If Player 1 has no choices (out-degree ≤ 1 everywhere), Player 0 — who may
/// use memory — wins exactly from where it can steer the play into a tourable
/// candidate set. If instead Player 0 has no choices, the generic violation
/// search runs with the single trivial strategy. Anything else is rejected.
pub fn muller_one_player_region(
    g: &GameGraph,
    sets: &[VertexSet],
) -> Result<VertexSet, OracleError> {
    let m = Masks::build(g)?;
    let full = if m.n == 32 { u32::MAX } else { (1u32 << m.n) - 1 };

    let p1_free = (0..m.n).all(|v| g.owner(v) == Owner::P0 || g.successors(v).len() <= 1);
    let p0_free = (0..m.n).all(|v| g.owner(v) == Owner::P1 || g.successors(v).len() <= 1);

    if p1_free {
        // Player 0 tours a candidate set: every forced vertex stays inside,
        // every owned vertex can stay inside, and the inside subgraph is
        // strongly connected.
        let mut good = 0u32;
        for f in sets {
            let s = m.mask(f);
            if s == 0 || s & m.dead != 0 {
                continue;
            }
            let closed = BitIter(s).all(|v| {
                if g.owner(v) == Owner::P1 {
                    m.succ[v] & !s == 0 && m.succ[v] != 0
                } else {
                    m.succ[v] & s != 0
                }
            });
            if closed && strongly_connected(s, &m.succ) {
                good |= s;
            }
        }
        // Player 0 steers, Player 1 is forced: plain forward-possible reach.
        let mut region = good;
        loop {
            let mut next = region;
            for v in BitIter(full & !region) {
                if m.succ[v] & region != 0 {
                    next |= 1 << v;
                }
            }
            if next == region {
                break;
            }
            region = next;
        }
        Ok(m.set(region))
    } else if p0_free {
        let candidates: Vec<u32> = sets.iter().map(|f| m.mask(f)).collect();
        let not_in_family = move |s: u32| !candidates.contains(&s);
        region_by_enumeration(
            g,
            DEFAULT_STRATEGY_BUDGET,
            &LassoSpec { bad: 0, removed: 0, qualifies: &not_in_family },
        )
    } else {
        let vertex = (0..m.n)
            .find(|&v| g.successors(v).len() > 1)
            .unwrap_or(0);
        Err(OracleError::NotOnePlayer { vertex })
    }
}
