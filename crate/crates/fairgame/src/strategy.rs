//! Ranking construction and winning-strategy extraction.
//!
//! Solvers run with [`SolveOpts::with_frames`] record per-iteration data
//! that strategies are read off from: reachability ascents give integer
//! ranks, the Rabin family gives lexicographic configuration words. Player 0
//! wins by always moving to a rank-minimal successor; conditions that cycle
//! through several goal sets (generalized Büchi/Rabin, GR(1), Muller) wrap
//! one memoryless table per goal-index vector in a finite memory that
//! advances whenever the currently chased goal is visited.

use std::collections::BTreeMap;
use std::fmt;

use crate::cond::{self, GenRabinPair, RabinPair, WinningCondition};
use crate::graph::{GameGraph, Owner};
use crate::sets::VertexSet;
use crate::solver::{
    solve_dual_reach, solve_rabin, solve_rabin_chain, solve_safe_gen_buchi, solve_safe_reach,
    Frames, SolveError, SolveOpts, SolveResult,
};
use thiserror::Error;

/// Error cases of strategy extraction; re-solving with frames can fail for
/// the same reasons the original solve could.
#[derive(Error, Debug)]
pub enum StrategyError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Transform(#[from] cond::TransformError),
}

/// Position of a vertex in a solved fixpoint: a finite configuration word
/// for winning vertices, infinite for the rest. Finite words compare
/// lexicographically; `Infinite` is the maximum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Rank {
    Finite(Vec<u32>),
    Infinite,
}

impl Rank {
    pub fn is_finite(&self) -> bool {
        matches!(self, Rank::Finite(_))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Infinite => write!(f, "inf"),
            Rank::Finite(w) if w.iter().all(|&d| d <= 9) => {
                for d in w {
                    write!(f, "{d}")?;
                }
                Ok(())
            }
            Rank::Finite(w) => {
                let digits: Vec<String> = w.iter().map(|d| d.to_string()).collect();
                write!(f, "{}", digits.join("."))
            }
        }
    }
}

/// Per-vertex ranks. Memoryless conditions use a single table (stored under
/// the empty index vector); goal-cycling conditions hold one table per
/// goal-index vector.
#[derive(Clone, Debug)]
pub struct RankTable {
    tables: BTreeMap<Vec<usize>, Vec<Rank>>,
}

impl RankTable {
    fn single(ranks: Vec<Rank>) -> RankTable {
        let mut tables = BTreeMap::new();
        tables.insert(Vec::new(), ranks);
        RankTable { tables }
    }

    /// The table stored under the empty index vector; empty slice if this is
    /// a per-chain table collection.
    pub fn plain(&self) -> &[Rank] {
        self.tables.get(&[] as &[usize]).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// The table for one goal-index vector.
    pub fn chain(&self, l: &[usize]) -> Option<&[Rank]> {
        self.tables.get(l).map(|v| v.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Rank>)> {
        self.tables.iter()
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }
}

/// A positional strategy for one player, optionally wrapped in finite
/// memory. Memoryless strategies fill `moves`; finite-memory ones leave it
/// empty and fill `memory`.
#[derive(Clone, Debug)]
pub struct Strategy {
    pub player: Owner,
    /// Winning-region vertices of `player` mapped to the successor to take.
    pub moves: BTreeMap<usize, usize>,
    pub memory: Option<MemoryStrategy>,
}

/// Finite memory wrapped around per-state move tables. While the play sits
/// at `v` in state `m`, the prescribed move is `output[m][v]`; when the play
/// leaves `v` — no matter who owns it — the state becomes `update[m][v]`.
#[derive(Clone, Debug)]
pub struct MemoryStrategy {
    /// The goal-index vector each state stands for.
    pub alphabet: Vec<Vec<usize>>,
    pub initial: usize,
    pub output: Vec<BTreeMap<usize, usize>>,
    /// `update[m][v]`: the state after leaving vertex `v` in state `m`.
    pub update: Vec<Vec<usize>>,
}

impl Strategy {
    /// Flattens a memoryless strategy into the oracle's move-table shape;
    /// `None` when the strategy carries memory.
    pub fn as_move_table(&self, n: usize) -> Option<Vec<Option<usize>>> {
        if self.memory.is_some() {
            return None;
        }
        Some((0..n).map(|v| self.moves.get(&v).copied()).collect())
    }

    /// The move prescribed at `v` in memory state `state` (ignored for
    /// memoryless strategies).
    pub fn move_at(&self, v: usize, state: usize) -> Option<usize> {
        match &self.memory {
            None => self.moves.get(&v).copied(),
            Some(m) => m.output[state].get(&v).copied(),
        }
    }

    /// Serializes the strategy as one move per line, `v -> w`, suffixed with
    /// `@ (state)` for finite-memory strategies; state advances follow as
    /// comment lines. `name` maps vertex ids to display names.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        let mut out = String::new();
        match &self.memory {
            None => {
                for (&v, &w) in &self.moves {
                    out.push_str(&format!("{} -> {}\n", name(v), name(w)));
                }
            }
            Some(m) => {
                out.push_str(&format!(
                    "# memory states: {}, initial {}\n",
                    m.alphabet.len(),
                    fmt_state(&m.alphabet[m.initial])
                ));
                for (s, table) in m.output.iter().enumerate() {
                    for (&v, &w) in table {
                        out.push_str(&format!(
                            "{} -> {} @ {}\n",
                            name(v),
                            name(w),
                            fmt_state(&m.alphabet[s])
                        ));
                    }
                }
                for (s, row) in m.update.iter().enumerate() {
                    for (v, &t) in row.iter().enumerate() {
                        if t != s {
                            out.push_str(&format!(
                                "# leaving {} in {} advances to {}\n",
                                name(v),
                                fmt_state(&m.alphabet[s]),
                                fmt_state(&m.alphabet[t])
                            ));
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| v.to_string()))
    }
}

fn fmt_state(l: &[usize]) -> String {
    let inner: Vec<String> = l.iter().map(|d| d.to_string()).collect();
    format!("({})", inner.join(","))
}

/// Integer ranks from the recorded ascent of a reachability-shaped fixpoint
/// ([`Frames::Reach`] or [`Frames::DualReach`]): a vertex's rank is the
/// first iterate containing it, 1-based; `None` if the result carries no
/// such frames.
pub fn extract_reach_ranks(result: &SolveResult) -> Option<RankTable> {
    let levels = match &result.frames {
        Some(Frames::Reach { ascent }) => ascent,
        Some(Frames::DualReach { levels }) => levels,
        _ => return None,
    };
    let n = result.region.universe();
    let ranks: Vec<Rank> = (0..n).map(|v| level_rank(levels, v)).collect();
    for v in 0..n {
        debug_assert_eq!(ranks[v].is_finite(), result.region.contains(v));
    }
    Some(RankTable::single(ranks))
}

/// Configuration-word ranks recorded by the Rabin-family solvers
/// ([`Frames::Rabin`]); `None` if the result carries no such frames.
pub fn extract_rabin_ranks(result: &SolveResult) -> Option<RankTable> {
    let words = match &result.frames {
        Some(Frames::Rabin { ranks, .. }) => ranks,
        _ => return None,
    };
    let ranks: Vec<Rank> = words
        .iter()
        .map(|w| match w {
            Some(d) => Rank::Finite(d.clone()),
            None => Rank::Infinite,
        })
        .collect();
    for (v, r) in ranks.iter().enumerate() {
        debug_assert_eq!(r.is_finite(), result.region.contains(v));
    }
    Some(RankTable::single(ranks))
}

fn level_rank(levels: &[VertexSet], v: usize) -> Rank {
    levels
        .iter()
        .position(|s| s.contains(v))
        .map(|i| Rank::Finite(vec![i as u32 + 1]))
        .unwrap_or(Rank::Infinite)
}

/// Winning strategy for Player 0 on a solved game.
///
/// Uses the frames of `result` when present and compatible; otherwise
/// re-solves with frames enabled (always unaccelerated, so the extracted
/// strategy is independent of acceleration settings). The returned strategy
/// is memoryless for reach/safety/Büchi/co-Büchi/Rabin/chain/parity and
/// carries goal-cycling memory for generalized Büchi/Rabin, GR(1) and
/// Muller; its move map covers exactly the Player 0 vertices of the winning
/// region that have somewhere to move.
pub fn extract_p0_strategy(
    g: &GameGraph,
    cond: &WinningCondition,
    result: &SolveResult,
) -> Result<Strategy, StrategyError> {
    let full = VertexSet::full(g.n());
    match cond {
        WinningCondition::SafeReach { target, safe } => reach_strategy(g, target, safe, result),
        WinningCondition::Safety { .. } => Ok(safety_strategy(g, &result.region)),
        WinningCondition::Buchi { goal } => {
            gen_buchi_strategy(g, std::slice::from_ref(goal), &full, result)
        }
        WinningCondition::SafeBuchi { goal, safe } => {
            gen_buchi_strategy(g, std::slice::from_ref(goal), safe, result)
        }
        WinningCondition::GenBuchi { goals } => gen_buchi_strategy(g, goals, &full, result),
        WinningCondition::CoBuchi { allowed } => {
            let pairs = cond::gen_cobuchi_to_rabin(std::slice::from_ref(allowed));
            rabin_family_strategy(g, &pairs, false, result)
        }
        WinningCondition::GenCoBuchi { allowed } => {
            let pairs = cond::gen_cobuchi_to_rabin(allowed);
            rabin_family_strategy(g, &pairs, false, result)
        }
        WinningCondition::Rabin { pairs } => rabin_family_strategy(g, pairs, false, result),
        WinningCondition::RabinChain { pairs } => rabin_family_strategy(g, pairs, true, result),
        WinningCondition::Parity { colors } => {
            let pairs = cond::parity_to_rabin_chain(colors);
            rabin_family_strategy(g, &pairs, true, result)
        }
        WinningCondition::GenRabin { pairs } => gen_rabin_strategy(g, pairs, result),
        WinningCondition::Gr1 { assumptions, guarantees } => {
            let pairs = cond::gr1_to_gen_rabin(g.n(), assumptions, guarantees);
            gen_rabin_strategy(g, &pairs, result)
        }
        WinningCondition::Muller { sets } => {
            let pairs = cond::muller_to_gen_rabin(sets)?;
            gen_rabin_strategy(g, &pairs, result)
        }
    }
}

/// Spoiling strategy for Player 1 on the dual reachability solve: from every
/// vertex of the dual region, move to a successor of minimal dual rank,
/// which keeps the play away from the target (or inside the already-violated
/// unsafe part). `result` should come from [`solve_dual_reach`]; it is
/// re-solved with frames when they are missing.
pub fn extract_p1_spoiler_reach(
    g: &GameGraph,
    target: &VertexSet,
    safe: &VertexSet,
    result: &SolveResult,
) -> Result<Strategy, StrategyError> {
    let table = match &result.frames {
        Some(Frames::DualReach { .. }) => extract_reach_ranks(result).expect("just matched"),
        _ => {
            let solved = solve_dual_reach(g, target, safe, SolveOpts::with_frames())?;
            debug_assert_eq!(solved.region, result.region);
            extract_reach_ranks(&solved).expect("frames were requested")
        }
    };
    let ranks = table.plain();
    let mut moves = BTreeMap::new();
    for v in 0..g.n() {
        if g.owner(v) != Owner::P1 || !ranks[v].is_finite() {
            continue;
        }
        let succ = g.successors(v);
        if succ.is_empty() {
            continue; // a dead end spoils by itself
        }
        let w = succ
            .iter()
            .copied()
            .filter(|&w| ranks[w].is_finite())
            .min_by_key(|&w| (&ranks[w], w))
            .unwrap_or_else(|| {
                // Every successor is winning for Player 0; this only happens
                // once the play already left the safe set, where any move is
                // as spoiled as any other.
                debug_assert!(!safe.contains(v));
                succ[0]
            });
        moves.insert(v, w);
    }
    Ok(Strategy { player: Owner::P1, moves, memory: None })
}

/// Moves for "stay safe until the target": descend the recorded ascent, and
/// once inside the target take the lowest-numbered successor.
fn reach_strategy(
    g: &GameGraph,
    target: &VertexSet,
    safe: &VertexSet,
    result: &SolveResult,
) -> Result<Strategy, StrategyError> {
    let table = match &result.frames {
        Some(Frames::Reach { .. }) => extract_reach_ranks(result).expect("just matched"),
        _ => {
            let solved = solve_safe_reach(g, target, safe, SolveOpts::with_frames())?;
            debug_assert_eq!(solved.region, result.region);
            extract_reach_ranks(&solved).expect("frames were requested")
        }
    };
    let ranks = table.plain();
    let mut moves = BTreeMap::new();
    for v in 0..g.n() {
        if g.owner(v) != Owner::P0 || !ranks[v].is_finite() {
            continue;
        }
        let succ = g.successors(v);
        if succ.is_empty() {
            continue; // only reachable for dead ends inside the target
        }
        let w = if target.contains(v) {
            succ[0] // reached; anything goes, lowest id for determinism
        } else {
            let w = succ
                .iter()
                .copied()
                .filter(|&w| ranks[w].is_finite())
                .min_by_key(|&w| (&ranks[w], w))
                .expect("a ranked non-target vertex has a ranked successor");
            debug_assert!(ranks[w] < ranks[v], "moves outside the target make progress");
            w
        };
        moves.insert(v, w);
    }
    Ok(Strategy { player: Owner::P0, moves, memory: None })
}

/// Moves for "stay in the region forever": any successor inside it, lowest
/// id for determinism.
fn safety_strategy(g: &GameGraph, region: &VertexSet) -> Strategy {
    let mut moves = BTreeMap::new();
    for v in region.iter() {
        if g.owner(v) != Owner::P0 {
            continue;
        }
        let w = g
            .successors(v)
            .iter()
            .copied()
            .find(|&w| region.contains(w))
            .expect("every region vertex can stay inside it");
        moves.insert(v, w);
    }
    Strategy { player: Owner::P0, moves, memory: None }
}

/// Goal-cycling strategy for (safe) generalized Büchi: one move table per
/// goal, descending that goal's recorded ascent, re-armed through any
/// region successor once the goal is reached. At the converged outer value
/// every per-goal limit equals the winning region itself, so finite per-goal
/// ranks characterize region membership and every move stays inside it. A
/// single goal collapses to the memoryless Büchi strategy.
fn gen_buchi_strategy(
    g: &GameGraph,
    goals: &[VertexSet],
    safe: &VertexSet,
    result: &SolveResult,
) -> Result<Strategy, StrategyError> {
    let ascents: Vec<Vec<VertexSet>> = match &result.frames {
        Some(Frames::GenBuchi { ascents }) => ascents.clone(),
        _ => {
            let solved = solve_safe_gen_buchi(g, goals, safe, SolveOpts::with_frames())?;
            debug_assert_eq!(solved.region, result.region);
            match solved.frames {
                Some(Frames::GenBuchi { ascents }) => ascents,
                _ => unreachable!("frames were requested"),
            }
        }
    };
    let region = &result.region;
    let n = g.n();
    let s = goals.len();
    let mut output = Vec::with_capacity(s);
    for ascent in &ascents {
        let ranks: Vec<Rank> = (0..n).map(|v| level_rank(ascent, v)).collect();
        let mut table = BTreeMap::new();
        for v in region.iter() {
            if g.owner(v) != Owner::P0 {
                continue;
            }
            debug_assert!(ranks[v].is_finite());
            let w = if ranks[v] == Rank::Finite(vec![1]) {
                g.successors(v)
                    .iter()
                    .copied()
                    .find(|&w| region.contains(w))
                    .expect("a goal vertex of the region has a region successor")
            } else {
                g.successors(v)
                    .iter()
                    .copied()
                    .filter(|&w| ranks[w].is_finite())
                    .min_by_key(|&w| (&ranks[w], w))
                    .expect("a ranked vertex has a lower-ranked successor")
            };
            table.insert(v, w);
        }
        output.push(table);
    }
    if s == 1 {
        let moves = output.pop().expect("one goal, one table");
        return Ok(Strategy { player: Owner::P0, moves, memory: None });
    }
    let update: Vec<Vec<usize>> = (0..s)
        .map(|b| {
            (0..n)
                .map(|v| if goals[b].contains(v) { (b + 1) % s } else { b })
                .collect()
        })
        .collect();
    Ok(Strategy {
        player: Owner::P0,
        moves: BTreeMap::new(),
        memory: Some(MemoryStrategy {
            alphabet: (0..s).map(|b| vec![b]).collect(),
            initial: 0,
            output,
            update,
        }),
    })
}

/// Memoryless min-rank strategy for a plain Rabin or Rabin-chain condition;
/// reuses recorded word ranks or re-solves for them.
fn rabin_family_strategy(
    g: &GameGraph,
    pairs: &[RabinPair],
    chain: bool,
    result: &SolveResult,
) -> Result<Strategy, StrategyError> {
    if pairs.is_empty() {
        // Only reachable through condition encodings that may degenerate
        // (a parity condition with no even color); nothing is winning then.
        debug_assert!(result.region.is_empty());
        return Ok(Strategy { player: Owner::P0, moves: BTreeMap::new(), memory: None });
    }
    let table = match extract_rabin_ranks(result) {
        Some(t) => t,
        None => {
            let solved = if chain {
                solve_rabin_chain(g, pairs, SolveOpts::with_frames())?
            } else {
                solve_rabin(g, pairs, SolveOpts::with_frames())?
            };
            debug_assert_eq!(solved.region, result.region);
            extract_rabin_ranks(&solved).expect("frames were requested")
        }
    };
    let moves = min_rank_moves(g, table.plain());
    Ok(Strategy { player: Owner::P0, moves, memory: None })
}

/// Per-goal-index rank tables for a generalized Rabin condition.
///
/// For each goal-index vector ℓ the plain Rabin game "pair j chases goal
/// `goals[j][ℓ_j]`" is solved on the subgame induced by the winning region.
/// The region is closed under every Player 1 move and contains a certified
/// move for every Player 0 vertex, so the restriction is well-formed, keeps
/// fairness intact, and makes each per-index region the full region — the
/// tables therefore cover the region for every ℓ and their min-rank moves
/// never leave it, which is what lets the goal-cycling memory switch tables
/// at will.
pub fn extract_gen_rabin_ranks(
    g: &GameGraph,
    pairs: &[GenRabinPair],
    region: &VertexSet,
) -> Result<RankTable, StrategyError> {
    let radices: Vec<usize> = pairs.iter().map(|p| p.goals.len()).collect();
    let n = g.n();
    let mut tables = BTreeMap::new();
    if region.is_empty() {
        for l in index_vectors(&radices) {
            tables.insert(l, vec![Rank::Infinite; n]);
        }
        return Ok(RankTable { tables });
    }
    let (sub, _orig_of, sub_of) = region_subgame(g, region);
    let sn = sub.n();
    let restrict =
        |s: &VertexSet| VertexSet::from_ids(sn, s.iter().filter_map(|v| sub_of[v]));
    for l in index_vectors(&radices) {
        let sub_pairs: Vec<RabinPair> = pairs
            .iter()
            .zip(&l)
            .map(|(p, &d)| RabinPair { goal: restrict(&p.goals[d]), avoid: restrict(&p.avoid) })
            .collect();
        let solved = solve_rabin(&sub, &sub_pairs, SolveOpts::with_frames())?;
        debug_assert!(
            solved.region.is_full(),
            "every region vertex stays winning for each goal choice"
        );
        let sub_table = extract_rabin_ranks(&solved).expect("frames were requested");
        let sub_ranks = sub_table.plain();
        let ranks: Vec<Rank> = (0..n)
            .map(|v| match sub_of[v] {
                Some(i) => sub_ranks[i].clone(),
                None => Rank::Infinite,
            })
            .collect();
        tables.insert(l, ranks);
    }
    Ok(RankTable { tables })
}

/// Goal-cycling strategy for generalized Rabin (and the GR(1)/Muller
/// encodings into it): one min-rank table per goal-index vector, with the
/// memory advancing index j cyclically whenever the play leaves a vertex of
/// the currently chased goal of pair j. Collapses to memoryless when every
/// pair has a single goal.
fn gen_rabin_strategy(
    g: &GameGraph,
    pairs: &[GenRabinPair],
    result: &SolveResult,
) -> Result<Strategy, StrategyError> {
    let region = &result.region;
    if region.is_empty() {
        return Ok(Strategy { player: Owner::P0, moves: BTreeMap::new(), memory: None });
    }
    let table = extract_gen_rabin_ranks(g, pairs, region)?;
    let states: Vec<Vec<usize>> = table.iter().map(|(l, _)| l.clone()).collect();
    let index: BTreeMap<&[usize], usize> =
        states.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect();
    let mut output = Vec::with_capacity(states.len());
    for l in &states {
        let ranks = table.chain(l).expect("the table holds every index vector");
        output.push(min_rank_moves(g, ranks));
    }
    if states.len() == 1 {
        let moves = output.pop().expect("one state, one table");
        return Ok(Strategy { player: Owner::P0, moves, memory: None });
    }
    let n = g.n();
    let update: Vec<Vec<usize>> = states
        .iter()
        .map(|l| {
            (0..n)
                .map(|v| {
                    let mut next = l.clone();
                    for (j, p) in pairs.iter().enumerate() {
                        if p.goals[l[j]].contains(v) {
                            next[j] = (l[j] + 1) % p.goals.len();
                        }
                    }
                    index[next.as_slice()]
                })
                .collect()
        })
        .collect();
    Ok(Strategy {
        player: Owner::P0,
        moves: BTreeMap::new(),
        memory: Some(MemoryStrategy { alphabet: states, initial: 0, output, update }),
    })
}

/// Minimal-rank move for every Player 0 vertex with a finite rank, ties
/// broken by the lowest successor id.
fn min_rank_moves(g: &GameGraph, ranks: &[Rank]) -> BTreeMap<usize, usize> {
    let mut moves = BTreeMap::new();
    for v in 0..g.n() {
        if g.owner(v) != Owner::P0 || !ranks[v].is_finite() {
            continue;
        }
        let best = g
            .successors(v)
            .iter()
            .copied()
            .filter(|&w| ranks[w].is_finite())
            .min_by_key(|&w| (&ranks[w], w));
        match best {
            Some(w) => {
                moves.insert(v, w);
            }
            None => debug_assert!(false, "vertex {v} is ranked but has no ranked successor"),
        }
    }
    moves
}

/// The subgame induced by `region`: vertices renumbered compactly, Player 0
/// edges filtered to the region, Player 1 edges (which never leave it) kept
/// along with their liveness. Returns the subgame, the original id of each
/// new vertex, and the new id of each original vertex.
fn region_subgame(
    g: &GameGraph,
    region: &VertexSet,
) -> (GameGraph, Vec<usize>, Vec<Option<usize>>) {
    let orig_of: Vec<usize> = region.iter().collect();
    let mut sub_of: Vec<Option<usize>> = vec![None; g.n()];
    for (i, &v) in orig_of.iter().enumerate() {
        sub_of[v] = Some(i);
    }
    let owner: Vec<Owner> = orig_of.iter().map(|&v| g.owner(v)).collect();
    let mut edges = Vec::new();
    let mut live = Vec::new();
    for (i, &v) in orig_of.iter().enumerate() {
        for &w in g.successors(v) {
            match sub_of[w] {
                Some(j) => edges.push((i, j)),
                None => debug_assert_eq!(
                    g.owner(v),
                    Owner::P0,
                    "winning regions are closed under Player 1 moves"
                ),
            }
        }
        for &w in g.live_successors(v) {
            if let Some(j) = sub_of[w] {
                live.push((i, j));
            }
        }
    }
    let sub = GameGraph::new(owner, &edges, &live).expect("induced subgames are well-formed");
    (sub, orig_of, sub_of)
}

/// All index vectors of the given radices, in lexicographic order.
fn index_vectors(radices: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in radices {
        let mut next = Vec::with_capacity(out.len() * r);
        for base in &out {
            for d in 0..r {
                let mut v = base.clone();
                v.push(d);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
