//! Symbolic fixpoint solvers.
//!
//! Every solver walks a nested µ/ν fixpoint over vertex sets, built from the
//! one-step operators in [`crate::ops`]. The shared [`Ctx`] counts operator
//! applications and fixpoint iterations; [`AccelCache`] warm-starts inner
//! fixpoints from earlier sibling runs, which never changes the result but
//! can cut the iteration count in deeply nested conditions.

mod buchi;
mod cobuchi;
mod gr1;
mod parity;
mod rabin;
mod reach;

pub use buchi::{solve_buchi, solve_safe_buchi, solve_safe_gen_buchi, solve_safety};
pub use cobuchi::{solve_cobuchi, solve_gen_cobuchi};
pub use gr1::solve_gr1;
pub use parity::{solve_parity, solve_parity_classic};
pub use rabin::{solve_gen_rabin, solve_rabin, solve_rabin_chain};
pub use reach::{solve_dual_reach, solve_reach, solve_safe_reach};

use crate::cond::{self, ValidationIssue, WinningCondition};
use crate::graph::GameGraph;
use crate::ops::{self, PreOp, StepCounter};
use crate::sets::VertexSet;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum SolveError {
    #[error("game validation failed: {summary}")]
    Invalid { summary: String, issues: Vec<ValidationIssue> },
    #[error(transparent)]
    Transform(#[from] cond::TransformError),
}

/// Tuning knobs shared by all solvers.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOpts {
    /// Warm-start bound for nested fixpoints; 0 disables acceleration.
    pub accel: u32,
    /// Record the per-iteration data strategy extraction needs. Accelerated
    /// runs re-derive it with one extra unaccelerated pass, so the recorded
    /// data never depends on the cache.
    pub frames: bool,
}

impl SolveOpts {
    pub fn accelerated(m: u32) -> SolveOpts {
        SolveOpts { accel: m, frames: false }
    }

    pub fn with_frames() -> SolveOpts {
        SolveOpts { accel: 0, frames: true }
    }
}

/// Work measures of a solve: one step per predecessor-operator application,
/// and per-variable counts of completed fixpoint iterations.
#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    pub steps: StepCounter,
    pub iterations: BTreeMap<String, u64>,
}

/// Iteration data recorded for strategy extraction.
#[derive(Clone, Debug)]
pub enum Frames {
    /// Ascent of a reachability fixpoint under the converged safety
    /// envelope: `ascent[i]` is the (i+1)-th iterate.
    Reach { ascent: Vec<VertexSet> },
    /// Ascent of the dual (Player 1) fixpoint: `levels[m]` is the (m+1)-th
    /// iterate; a vertex's level is the first iterate containing it.
    DualReach { levels: Vec<VertexSet> },
    /// Rabin-family ranks: for each vertex of the winning region, the
    /// lexicographically least configuration word of the nested fixpoint
    /// that materializes it, in display form
    /// `[0, d0, p1, d1, ..., pk, dk]` (pair numbers are 1-based; the
    /// innermost digit counts the producing iterate, outer digits the
    /// iterate being read). Vertices outside the region hold `None`.
    /// `nu_log` keeps the first converged inner ν-value per branch prefix.
    Rabin {
        ranks: Vec<Option<Vec<u32>>>,
        nu_log: BTreeMap<Vec<u8>, VertexSet>,
    },
    /// Per-goal ascents of the generalized Büchi fixpoint under the
    /// converged outer value: `ascents[b][i]` is the (i+1)-th iterate of
    /// goal b's inner fixpoint.
    GenBuchi { ascents: Vec<Vec<VertexSet>> },
}

/// Outcome of a solve: the winning region of Player 0 (for the dual reach
/// solver, of Player 1), plus work measures and optional strategy data.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub region: VertexSet,
    pub stats: SolveStats,
    pub frames: Option<Frames>,
}

/// Warm-start store for nested fixpoints.
///
/// A ν-variable may start from an earlier iterate of the same variable taken
/// at the *identical* enclosing µ-counter word, i.e. from a sibling context
/// that differs only by a lexicographically smaller ν-counter word. Between
/// two such contexts every binding the value depends on is equal or smaller,
/// so the earlier iterate is a superset of the new fixpoint and descending
/// from it converges to exactly that fixpoint. Dually, a µ-variable may
/// start from a sibling iterate under the identical ν-counter word.
///
/// Keys therefore pair the branch word with the opposite-kind counter word;
/// each slot holds the latest write, which under evaluation order is the
/// tightest qualifying value — provided the solvers clamp every iterate into
/// a monotone chain (`y ∩= body`, `x ∪= body`), since a warm-started chain
/// is not otherwise monotone step by step. Once any counter in scope reaches
/// the bound `m`, lookups and stores stop, capping memory at the cost of
/// falling back to ⊤/⊥ starts.
pub(crate) struct AccelCache {
    m: u32,
    y: HashMap<(Vec<u8>, Vec<u32>), VertexSet>,
    x: HashMap<(Vec<u8>, Vec<u32>), VertexSet>,
}

impl AccelCache {
    pub(crate) fn new(m: u32) -> AccelCache {
        AccelCache { m, y: HashMap::new(), x: HashMap::new() }
    }

    pub(crate) fn in_bounds(&self, counters: &[u32]) -> bool {
        self.m > 0 && counters.iter().all(|&c| c < self.m)
    }

    /// Initial value for a ν-variable at branch `pword` whose result may
    /// depend on the µ-counters `iword`; defaults to `top`.
    pub(crate) fn nu_start(
        &self,
        pword: &[u8],
        iword: &[u32],
        counters: &[u32],
        top: &VertexSet,
    ) -> VertexSet {
        if self.in_bounds(counters) {
            if let Some(v) = self.y.get(&(pword.to_vec(), iword.to_vec())) {
                return v.clone();
            }
        }
        top.clone()
    }

    pub(crate) fn nu_store(&mut self, pword: &[u8], iword: &[u32], counters: &[u32], v: &VertexSet) {
        if self.in_bounds(counters) {
            self.y.insert((pword.to_vec(), iword.to_vec()), v.clone());
        }
    }

    /// Initial value for a µ-variable at branch `pword` under ν-counters
    /// `mword`; defaults to the empty set.
    pub(crate) fn mu_start(
        &self,
        pword: &[u8],
        mword: &[u32],
        counters: &[u32],
        bottom: &VertexSet,
    ) -> VertexSet {
        if self.in_bounds(counters) {
            if let Some(v) = self.x.get(&(pword.to_vec(), mword.to_vec())) {
                return v.clone();
            }
        }
        bottom.clone()
    }

    pub(crate) fn mu_store(&mut self, pword: &[u8], mword: &[u32], counters: &[u32], v: &VertexSet) {
        if self.in_bounds(counters) {
            self.x.insert((pword.to_vec(), mword.to_vec()), v.clone());
        }
    }
}

/// Shared solver state: the arena plus work counters.
pub(crate) struct Ctx<'g> {
    pub g: &'g GameGraph,
    pub steps: StepCounter,
    pub iterations: BTreeMap<String, u64>,
}

impl<'g> Ctx<'g> {
    pub(crate) fn new(g: &'g GameGraph) -> Ctx<'g> {
        Ctx { g, steps: StepCounter::new(), iterations: BTreeMap::new() }
    }

    /// Counts one completed iteration of the named fixpoint variable.
    pub(crate) fn tick(&mut self, var: &str) {
        *self.iterations.entry(var.to_string()).or_insert(0) += 1;
    }

    pub(crate) fn cpre(&mut self, s: &VertexSet) -> VertexSet {
        self.steps.record(PreOp::Cpre);
        ops::cpre(self.g, s)
    }

    pub(crate) fn apre(&mut self, y: &VertexSet, x: &VertexSet) -> VertexSet {
        self.steps.record(PreOp::Apre);
        ops::apre(self.g, y, x)
    }

    pub(crate) fn pre_forall_0(&mut self, s: &VertexSet) -> VertexSet {
        self.steps.record(PreOp::PreForall0);
        ops::pre_forall_0(self.g, s)
    }

    pub(crate) fn pre_exists_1_minus_l(&mut self, s: &VertexSet) -> VertexSet {
        self.steps.record(PreOp::PreExists1MinusL);
        ops::pre_exists_1_minus_l(self.g, s)
    }

    pub(crate) fn pre_exists_l(&mut self, s: &VertexSet) -> VertexSet {
        self.steps.record(PreOp::PreExistsL);
        ops::pre_exists_l(self.g, s)
    }

    pub(crate) fn lpre_forall(&mut self, s: &VertexSet) -> VertexSet {
        self.steps.record(PreOp::LpreForall);
        ops::lpre_forall(self.g, s)
    }

    pub(crate) fn stats(self) -> SolveStats {
        SolveStats { steps: self.steps, iterations: self.iterations }
    }
}

/// Validates a game/condition pair, turning validation errors into
/// [`SolveError::Invalid`].
pub(crate) fn check(g: &GameGraph, cond: &WinningCondition) -> Result<(), SolveError> {
    let report = cond::validate(g, cond);
    if report.is_valid() {
        Ok(())
    } else {
        let summary = report
            .errors()
            .map(|i| i.message.clone())
            .collect::<Vec<_>>()
            .join("; ");
        Err(SolveError::Invalid { summary, issues: report.issues })
    }
}

/// Solves any supported condition by dispatching to the matching solver
/// (validating first). Muller conditions go through their generalized-Rabin
/// encoding; plain Büchi and co-Büchi through their one-goal specializations.
pub fn solve(
    g: &GameGraph,
    cond: &WinningCondition,
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, cond)?;
    match cond {
        WinningCondition::SafeReach { target, safe } => solve_safe_reach(g, target, safe, opts),
        WinningCondition::Safety { safe } => solve_safety(g, safe, opts),
        WinningCondition::Buchi { goal } => solve_buchi(g, goal, opts),
        WinningCondition::SafeBuchi { goal, safe } => solve_safe_buchi(g, goal, safe, opts),
        WinningCondition::GenBuchi { goals } => {
            solve_safe_gen_buchi(g, goals, &VertexSet::full(g.n()), opts)
        }
        WinningCondition::CoBuchi { allowed } => solve_cobuchi(g, allowed, opts),
        WinningCondition::GenCoBuchi { allowed } => solve_gen_cobuchi(g, allowed, opts),
        WinningCondition::Rabin { pairs } => solve_rabin(g, pairs, opts),
        WinningCondition::GenRabin { pairs } => solve_gen_rabin(g, pairs, opts),
        WinningCondition::RabinChain { pairs } => solve_rabin_chain(g, pairs, opts),
        WinningCondition::Parity { colors } => solve_parity(g, colors, opts),
        WinningCondition::Gr1 { assumptions, guarantees } => {
            solve_gr1(g, assumptions, guarantees, opts)
        }
        WinningCondition::Muller { sets } => {
            let pairs = cond::muller_to_gen_rabin(sets)?;
            solve_gen_rabin(g, &pairs, opts)
        }
    }
}
