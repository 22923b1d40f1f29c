//! Qualitative 2½-player games: almost-sure winning under full-support
//! randomness.
//!
//! Probabilities are deliberately not representable — for almost-sure
//! analysis only the support of the distributions matters, so a stochastic
//! game is a plain arena with a third owner kind. Randomness reduces to
//! fairness: reinterpreting every random vertex as a Player 1 vertex whose
//! outgoing edges are all live yields a fair game with the same almost-sure
//! winning region, solvable by the deterministic engines. An independent
//! oracle for the 1½-player (MDP) case cross-checks the reduction via
//! end-component analysis.

use std::collections::BTreeMap;

use crate::cond::{GenRabinPair, RabinPair, WinningCondition};
use crate::graph::{GameGraph, GraphError, Owner};
use crate::oracle::DEFAULT_STRATEGY_BUDGET;
use crate::sets::VertexSet;
use crate::solver::{solve, SolveError, SolveOpts, SolveResult};
use thiserror::Error;

/// Who picks the successor at a vertex of a stochastic game.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SOwner {
    P0,
    P1,
    /// The successor is drawn from a full-support distribution over the
    /// outgoing edges.
    Random,
}

/// A 2½-player game graph. Structurally a plain arena with random vertices;
/// fairness has no direct representation here (it appears after
/// [`derand`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochasticGameGraph {
    owner: Vec<SOwner>,
    succ: Vec<Vec<usize>>,
}

impl StochasticGameGraph {
    pub fn new(owner: Vec<SOwner>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = owner.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut succ = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { v: x, n });
                }
            }
            succ[u].push(v);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        Ok(StochasticGameGraph { owner, succ })
    }

    pub fn n(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, v: usize) -> SOwner {
        self.owner[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.succ[u].iter().map(move |&v| (u, v)))
            .collect()
    }
}

/// Errors of the 1½-player analyses.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum StochasticError {
    /// End-component analysis needs a 1½-player game: Player 1 vertices must
    /// be choice-free.
    #[error("vertex {v} is a Player 1 vertex with {degree} successors; end-component analysis needs choice-free Player 1")]
    NotAnMdp { v: usize, degree: usize },
    /// The memoryless strategy space is too large to enumerate.
    #[error("strategy enumeration needs {needed} candidates, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

/// The maximal end components of a 1½-player game: pairwise disjoint vertex
/// sets, each strongly connected in the induced subgraph and closed — random
/// successors stay inside, every player vertex keeps at least one edge
/// inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MecDecomposition {
    pub components: Vec<VertexSet>,
}

/// Reinterprets randomness as fairness: random vertices become Player 1
/// vertices and all their outgoing edges become live. A fair play leaves a
/// recurring random vertex through every edge infinitely often — exactly the
/// almost-sure behavior of full-support chance — so the derandomized game
/// has the same almost-sure winning region and strategies transfer verbatim.
pub fn derand(sg: &StochasticGameGraph) -> GameGraph {
    let owner: Vec<Owner> = sg
        .owner
        .iter()
        .map(|o| match o {
            SOwner::P0 => Owner::P0,
            SOwner::P1 | SOwner::Random => Owner::P1,
        })
        .collect();
    let mut edges = Vec::new();
    let mut live = Vec::new();
    for u in 0..sg.n() {
        for &v in sg.successors(u) {
            edges.push((u, v));
            if sg.owner(u) == SOwner::Random {
                live.push((u, v));
            }
        }
    }
    GameGraph::new(owner, &edges, &live).expect("stochastic graphs are well-formed arenas")
}

/// Almost-sure winning region of a stochastic game: solves the derandomized
/// fair game, whose region and strategies carry over unchanged.
pub fn solve_almost_sure(
    sg: &StochasticGameGraph,
    cond: &WinningCondition,
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    solve(&derand(sg), cond, opts)
}

fn check_mdp(sg: &StochasticGameGraph) -> Result<(), StochasticError> {
    for v in 0..sg.n() {
        if sg.owner(v) == SOwner::P1 && sg.successors(v).len() > 1 {
            return Err(StochasticError::NotAnMdp { v, degree: sg.successors(v).len() });
        }
    }
    Ok(())
}

/// Maximal end components of a 1½-player game, ordered by their smallest
/// vertex.
///
/// Classic refinement: split the vertex set into strongly connected pieces,
/// prune vertices that break closure (a random vertex with an escaping edge,
/// a player vertex with no inside edge), and repeat on the pieces until each
/// candidate is a closed strongly connected set; singletons need a
/// self-loop.
pub fn mec_decompose(sg: &StochasticGameGraph) -> Result<MecDecomposition, StochasticError> {
    check_mdp(sg)?;
    let n = sg.n();
    let mut work = vec![VertexSet::full(n)];
    let mut components = Vec::new();
    while let Some(mut cand) = work.pop() {
        // Prune closure violations until stable.
        loop {
            let mut changed = false;
            for v in cand.iter().collect::<Vec<_>>() {
                let keep = match sg.owner(v) {
                    SOwner::Random => {
                        !sg.successors(v).is_empty()
                            && sg.successors(v).iter().all(|&w| cand.contains(w))
                    }
                    SOwner::P0 | SOwner::P1 => {
                        sg.successors(v).iter().any(|&w| cand.contains(w))
                    }
                };
                if !keep {
                    cand.remove(v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if cand.is_empty() {
            continue;
        }
        let pieces = sccs(&cand, |v| {
            sg.successors(v).iter().copied().filter(|&w| cand.contains(w)).collect()
        });
        if pieces.len() == 1 && pieces[0] == cand {
            // Closed and strongly connected; reject stuck singletons.
            let ids: Vec<usize> = cand.iter().collect();
            if ids.len() > 1 || sg.successors(ids[0]).contains(&ids[0]) {
                components.push(cand);
                continue;
            }
            continue;
        }
        work.extend(pieces);
    }
    components.sort_by_key(|c| c.iter().next());
    Ok(MecDecomposition { components })
}

/// Strongly connected components of the subgraph induced by `members`,
/// via Kosaraju's two passes (iterative, so deep graphs cannot overflow the
/// stack).
fn sccs(members: &VertexSet, succ: impl Fn(usize) -> Vec<usize>) -> Vec<VertexSet> {
    let n = members.universe();
    let ids: Vec<usize> = members.iter().collect();
    let mut fwd: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut rev: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in &ids {
        let out = succ(v);
        for &w in &out {
            debug_assert!(members.contains(w));
            rev.entry(w).or_default().push(v);
        }
        fwd.insert(v, out);
    }
    // First pass: forward DFS post-order.
    let mut order = Vec::with_capacity(ids.len());
    let mut seen = VertexSet::empty(n);
    for &start in &ids {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start);
        let mut stack = vec![(start, 0usize)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            let out = &fwd[&v];
            if *i < out.len() {
                let w = out[*i];
                *i += 1;
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    // Second pass: reverse DFS in reverse post-order carves the components.
    let mut assigned = VertexSet::empty(n);
    let mut components = Vec::new();
    for &root in order.iter().rev() {
        if assigned.contains(root) {
            continue;
        }
        let mut comp = VertexSet::empty(n);
        comp.insert(root);
        assigned.insert(root);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in rev.get(&v).map(|r| r.as_slice()).unwrap_or(&[]) {
                if !assigned.contains(w) {
                    assigned.insert(w);
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        components.push(comp);
    }
    components
}

/// Independent almost-sure region for a 1½-player game with a generalized
/// Rabin condition.
///
/// Fixing a memoryless Player 0 strategy turns the MDP into a chain whose
/// plays almost surely settle in one of its maximal end components, visiting
/// all of it infinitely often; the strategy wins from `v` exactly when every
/// component reachable from `v` is *good* — it misses some pair's avoid set
/// while meeting every goal of that pair — and no dead end is reachable. The
/// region is the union over all memoryless strategies. Conditions with
/// multiple goals per pair need memory, so they are first lifted through a
/// per-pair goal-counter product, on which memoryless strategies suffice;
/// the region is read back at the initial counter values.
pub fn mdp_almost_sure_oracle(
    sg: &StochasticGameGraph,
    pairs: &[GenRabinPair],
) -> Result<VertexSet, StochasticError> {
    check_mdp(sg)?;
    if pairs.iter().any(|p| p.goals.len() > 1) {
        let (prod, prod_pairs, stride) = counter_product_mdp(sg, pairs);
        let flat: Vec<GenRabinPair> = prod_pairs
            .into_iter()
            .map(|p| GenRabinPair { goals: vec![p.goal], avoid: p.avoid })
            .collect();
        let prod_region = mdp_almost_sure_oracle(&prod, &flat)?;
        // A vertex wins iff its copy with all counters at the start does.
        return Ok(VertexSet::from_ids(
            sg.n(),
            (0..sg.n()).filter(|&v| prod_region.contains(v * stride)),
        ));
    }

    let n = sg.n();
    let choosers: Vec<usize> = (0..n)
        .filter(|&v| sg.owner(v) == SOwner::P0 && !sg.successors(v).is_empty())
        .collect();
    let mut needed: u128 = 1;
    for &v in &choosers {
        needed = needed.saturating_mul(sg.successors(v).len() as u128);
        if needed > DEFAULT_STRATEGY_BUDGET as u128 {
            return Err(StochasticError::BudgetExceeded {
                needed,
                budget: DEFAULT_STRATEGY_BUDGET,
            });
        }
    }

    let mut region = VertexSet::empty(n);
    let mut pick = vec![0usize; choosers.len()];
    loop {
        region.union_with(&winning_under(sg, &choosers, &pick, pairs));
        // Advance the mixed-radix strategy counter.
        let mut done = true;
        for (slot, &v) in pick.iter_mut().zip(&choosers) {
            *slot += 1;
            if *slot < sg.successors(v).len() {
                done = false;
                break;
            }
            *slot = 0;
        }
        if done {
            break;
        }
    }
    Ok(region)
}

/// Vertices from which the fixed memoryless strategy wins almost surely:
/// those that cannot reach a dead end or a bad end component in the induced
/// chain.
fn winning_under(
    sg: &StochasticGameGraph,
    choosers: &[usize],
    pick: &[usize],
    pairs: &[GenRabinPair],
) -> VertexSet {
    let n = sg.n();
    let mut chosen: Vec<Option<usize>> = vec![None; n];
    for (&v, &i) in choosers.iter().zip(pick) {
        chosen[v] = Some(sg.successors(v)[i]);
    }
    let induced = |v: usize| -> Vec<usize> {
        match chosen[v] {
            Some(w) => vec![w],
            None => sg.successors(v).to_vec(),
        }
    };

    // Bad sinks: dead ends, plus bottom components failing every pair.
    let mut bad = VertexSet::empty(n);
    for v in 0..n {
        if induced(v).is_empty() {
            bad.insert(v);
        }
    }
    let all = VertexSet::full(n);
    for comp in sccs(&all, |v| induced(v).into_iter().collect()) {
        let closed = comp.iter().all(|v| induced(v).iter().all(|&w| comp.contains(w)));
        let recurrent = closed && comp.iter().any(|v| !induced(v).is_empty());
        if !recurrent {
            continue;
        }
        let good = pairs.iter().any(|p| {
            comp.is_disjoint(&p.avoid) && p.goals.iter().all(|goal| !comp.is_disjoint(goal))
        });
        if !good {
            bad.union_with(&comp);
        }
    }

    // Backward closure: anything that can reach a bad sink loses.
    loop {
        let mut grew = false;
        for v in 0..n {
            if !bad.contains(v) && induced(v).iter().any(|&w| bad.contains(w)) {
                bad.insert(v);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let mut win = all;
    win.subtract(&bad);
    win
}

/// Lifts an MDP through per-pair goal counters so that every pair becomes
/// plain. State `(v, c)` is encoded as `v * stride + code(c)` where `c_j`
/// counts (0-based here) which goal of pair `j` is currently chased; leaving
/// a vertex of that goal advances the counter cyclically. Pair `j`'s product
/// goal is "counter j wraps here": within a recurrent class this happens
/// infinitely often exactly when all of the pair's goals are visited
/// infinitely often.
fn counter_product_mdp(
    sg: &StochasticGameGraph,
    pairs: &[GenRabinPair],
) -> (StochasticGameGraph, Vec<RabinPair>, usize) {
    let n = sg.n();
    let radices: Vec<usize> = pairs.iter().map(|p| p.goals.len()).collect();
    let stride: usize = radices.iter().product();
    let pn = n * stride;
    let code = |c: &[usize]| -> usize {
        c.iter().zip(&radices).fold(0, |acc, (&d, &r)| acc * r + d)
    };
    let mut configs = vec![vec![]];
    for &r in &radices {
        configs = configs
            .iter()
            .flat_map(|base: &Vec<usize>| {
                (0..r).map(move |d| {
                    let mut c = base.clone();
                    c.push(d);
                    c
                })
            })
            .collect();
    }
    let step = |v: usize, c: &[usize]| -> Vec<usize> {
        c.iter()
            .enumerate()
            .map(|(j, &d)| {
                if pairs[j].goals[d].contains(v) {
                    (d + 1) % radices[j]
                } else {
                    d
                }
            })
            .collect()
    };

    let mut owner = vec![SOwner::P0; pn];
    let mut edges = Vec::new();
    for v in 0..n {
        for c in &configs {
            let id = v * stride + code(c);
            owner[id] = sg.owner(v);
            let next = code(&step(v, c));
            for &w in sg.successors(v) {
                edges.push((id, w * stride + next));
            }
        }
    }
    let prod = StochasticGameGraph::new(owner, &edges).expect("product is well-formed");

    let prod_pairs = pairs
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let last = radices[j] - 1;
            let goal = VertexSet::from_ids(
                pn,
                configs.iter().filter(|c| c[j] == last).flat_map(|c| {
                    let cc = code(c);
                    p.goals[last].iter().map(move |v| v * stride + cc)
                }),
            );
            let avoid = VertexSet::from_ids(
                pn,
                configs.iter().flat_map(|c| {
                    let cc = code(c);
                    p.avoid.iter().map(move |v| v * stride + cc)
                }),
            );
            RabinPair { goal, avoid }
        })
        .collect();
    (prod, prod_pairs, stride)
}
