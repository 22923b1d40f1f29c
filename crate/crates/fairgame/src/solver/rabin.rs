//! Solvers for Rabin, generalized Rabin, and Rabin-chain conditions.
//!
//! All three share one recursive evaluator for the nested fixpoint
//!
//! νY₀.µX₀. ⋃_{p₁} νY_{p₁}. ⋂_{l₁} µ^{l₁}X_{p₁}. … ⋃ⱼ Cⱼ
//!
//! where the union at each level ranges over the not-yet-chosen pairs (for
//! the chain condition the order is fixed instead: 0, k, k−1, …, 1), the
//! intersection ranges over a pair's goal sets, and the level's contribution
//! is C = R̅ ∩ [(G ∩ Cpre(Y)) ∪ Apre(Y, X)]. Level 0 is the artificial pair
//! ⟨∅, ∅⟩ whose contribution degrades to Apre(Y₀, X₀).

use super::{check, AccelCache, Ctx, Frames, SolveError, SolveOpts, SolveResult};
use crate::cond::{GenRabinPair, RabinPair, WinningCondition};
use crate::graph::GameGraph;
use crate::sets::VertexSet;
use std::collections::BTreeMap;

/// Winning region of the Rabin condition "some pair's goal recurs while its
/// avoid set is eventually left for good", under fair edges. With `frames`,
/// per-vertex rank words and converged branch values are recorded for
/// strategy extraction.
pub fn solve_rabin(
    g: &GameGraph,
    pairs: &[RabinPair],
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, &WinningCondition::Rabin { pairs: pairs.to_vec() })?;
    let gen: Vec<GenRabinPair> = pairs
        .iter()
        .map(|p| GenRabinPair { goals: vec![p.goal.clone()], avoid: p.avoid.clone() })
        .collect();
    Ok(run_family(g, &gen, false, opts))
}

/// Winning region of the generalized Rabin condition (each pair carries
/// several goal sets that must all recur). Runs in O(n^{k+2}·k!·∏ᵢmᵢ).
///
/// Frames are not recorded: winning here may need memory, and strategy
/// extraction re-solves one plain Rabin game per memory state instead.
pub fn solve_gen_rabin(
    g: &GameGraph,
    pairs: &[GenRabinPair],
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, &WinningCondition::GenRabin { pairs: pairs.to_vec() })?;
    let opts = SolveOpts { frames: false, ..opts };
    Ok(run_family(g, pairs, false, opts))
}

/// Winning region of a Rabin chain (pairs totally ordered by inclusion
/// G₁ ⊇ R₁ ⊇ G₂ ⊇ …). The fixed variable order avoids the permutation
/// union, giving O(n^{k+2}).
pub fn solve_rabin_chain(
    g: &GameGraph,
    pairs: &[RabinPair],
    opts: SolveOpts,
) -> Result<SolveResult, SolveError> {
    check(g, &WinningCondition::RabinChain { pairs: pairs.to_vec() })?;
    let gen: Vec<GenRabinPair> = pairs
        .iter()
        .map(|p| GenRabinPair { goals: vec![p.goal.clone()], avoid: p.avoid.clone() })
        .collect();
    Ok(run_family(g, &gen, true, opts))
}

fn run_family(g: &GameGraph, pairs: &[GenRabinPair], chain: bool, opts: SolveOpts) -> SolveResult {
    let mut eng = Engine::new(g, pairs, chain, opts.accel);
    let region = eng.solve();
    let frames = if opts.frames {
        debug_assert!(eng.pairs.iter().all(|p| p.goals.len() == 1));
        // The recording pass must not depend on warm starts.
        eng.cache = AccelCache::new(0);
        Some(eng.record(&region))
    } else {
        None
    };
    SolveResult { region, stats: eng.ctx.stats(), frames }
}

/// Fixpoint context words, used as warm-start cache keys: the branch word
/// (chosen pair and goal digits), and the ν- and µ-iteration counters in
/// scope. `counters` interleaves both for the bound check.
#[derive(Default)]
struct Trail {
    pword: Vec<u8>,
    mword: Vec<u32>,
    iword: Vec<u32>,
    counters: Vec<u32>,
}

/// Rank-recording state for the final unaccelerated pass.
struct Recorder {
    ranks: Vec<Option<Vec<u32>>>,
    nu_log: BTreeMap<Vec<u8>, VertexSet>,
    /// Display digits of the chosen pairs on the current branch (level 0
    /// included), and the current read index per non-innermost level.
    pdisp: Vec<u32>,
    iread: Vec<u32>,
}

impl Recorder {
    /// First materialization wins: evaluation visits configuration words in
    /// lexicographic order, so the stored word is the least one.
    fn materialize(&mut self, v: usize, producing: u32) {
        if self.ranks[v].is_some() {
            return;
        }
        let mut word = Vec::with_capacity(2 * self.pdisp.len());
        for (d, &p) in self.pdisp.iter().enumerate() {
            word.push(p);
            word.push(if d + 1 == self.pdisp.len() { producing } else { self.iread[d] });
        }
        self.ranks[v] = Some(word);
    }
}

struct Engine<'g> {
    ctx: Ctx<'g>,
    cache: AccelCache,
    /// Pair 0 is the artificial ⟨{∅}, ∅⟩; real pairs follow 1-based, so a
    /// pair's index is also its display digit.
    pairs: Vec<GenRabinPair>,
    rbars: Vec<VertexSet>,
    chain: bool,
    top: VertexSet,
    bottom: VertexSet,
}

impl<'g> Engine<'g> {
    fn new(g: &'g GameGraph, real: &[GenRabinPair], chain: bool, accel: u32) -> Engine<'g> {
        let n = g.n();
        let mut pairs = vec![GenRabinPair {
            goals: vec![VertexSet::empty(n)],
            avoid: VertexSet::empty(n),
        }];
        pairs.extend(real.iter().cloned());
        let rbars = pairs.iter().map(|p| !&p.avoid).collect();
        Engine {
            ctx: Ctx::new(g),
            cache: AccelCache::new(accel),
            pairs,
            rbars,
            chain,
            top: VertexSet::full(n),
            bottom: VertexSet::empty(n),
        }
    }

    fn solve(&mut self) -> VertexSet {
        let rest = self.initial_rest();
        let top = self.top.clone();
        let bottom = self.bottom.clone();
        let mut trail = Trail::default();
        self.eval_branch(0, &rest, &top, &bottom, &mut trail)
    }

    fn initial_rest(&self) -> Vec<usize> {
        if self.chain {
            (1..self.pairs.len()).rev().collect()
        } else {
            (1..self.pairs.len()).collect()
        }
    }

    /// C-term of pair `p`, goal `l`, under accumulated avoid-complement
    /// `rbar` and the level's iterates `y`, `x`.
    fn cterm(&mut self, p: usize, l: usize, rbar: &VertexSet, y: &VertexSet, x: &VertexSet) -> VertexSet {
        let mut t = &self.pairs[p].goals[l] & &self.ctx.cpre(y);
        t.union_with(&self.ctx.apre(y, x));
        t.intersect_with(rbar);
        t
    }

    /// Avoid-complement in effect at a level: pairs accumulate along a
    /// permutation branch, while the chain form only needs the level's own.
    fn rbar_at(&self, p: usize, outer: &VertexSet) -> VertexSet {
        if self.chain {
            self.rbars[p].clone()
        } else {
            outer & &self.rbars[p]
        }
    }

    /// Union over the remaining pair choices (or the single forced next
    /// level of a chain); the innermost body is the accumulated union.
    fn eval_rest(
        &mut self,
        rest: &[usize],
        rbar: &VertexSet,
        acc: &VertexSet,
        trail: &mut Trail,
    ) -> VertexSet {
        if rest.is_empty() {
            return acc.clone();
        }
        if self.chain {
            return self.eval_branch(rest[0], &rest[1..], rbar, acc, trail);
        }
        let mut result = self.bottom.clone();
        for (pos, &p) in rest.iter().enumerate() {
            let sub: Vec<usize> = rest[..pos]
                .iter()
                .chain(&rest[pos + 1..])
                .copied()
                .collect();
            let branch = self.eval_branch(p, &sub, rbar, acc, trail);
            result.union_with(&branch);
        }
        result
    }

    /// νY_p. ⋂_l µ^lX_p. (acc ∪ C_p ∪ deeper union).
    fn eval_branch(
        &mut self,
        p: usize,
        rest: &[usize],
        rbar: &VertexSet,
        acc: &VertexSet,
        trail: &mut Trail,
    ) -> VertexSet {
        let rbar_here = self.rbar_at(p, rbar);
        let yname = format!("Y{p}");
        trail.pword.push(p as u8);
        let mut y = self
            .cache
            .nu_start(&trail.pword, &trail.iword, &trail.counters, &self.top);
        let mut m_count = 0u32;
        loop {
            trail.mword.push(m_count);
            trail.counters.push(m_count);
            let mut new_y: Option<VertexSet> = None;
            for l in 0..self.pairs[p].goals.len() {
                trail.pword.push(l as u8);
                let xv = self.eval_mu(p, l, rest, &rbar_here, acc, &y, trail);
                trail.pword.pop();
                new_y = Some(match new_y {
                    None => xv,
                    Some(mut meet) => {
                        meet.intersect_with(&xv);
                        meet
                    }
                });
            }
            let mut new_y = new_y.expect("pairs always carry at least one goal");
            // Clamp to the running iterate: a warm start below ⊤ makes the
            // raw body value non-monotone per step, while the clamped chain
            // descends and still meets the same fixpoint.
            new_y.intersect_with(&y);
            trail.mword.pop();
            trail.counters.pop();
            self.ctx.tick(&yname);
            self.cache
                .nu_store(&trail.pword, &trail.iword, &trail.counters, &new_y);
            debug_assert!(new_y.is_subset(&y));
            if new_y == y {
                break;
            }
            y = new_y;
            m_count += 1;
            debug_assert!((m_count as usize) <= self.ctx.g.n() + 1);
        }
        trail.pword.pop();
        y
    }

    /// µ^lX_p under outer iterate `y`.
    fn eval_mu(
        &mut self,
        p: usize,
        l: usize,
        rest: &[usize],
        rbar: &VertexSet,
        acc: &VertexSet,
        y: &VertexSet,
        trail: &mut Trail,
    ) -> VertexSet {
        let xname = format!("X{p}");
        let mut x = self
            .cache
            .mu_start(&trail.pword, &trail.mword, &trail.counters, &self.bottom);
        let mut i_count = 0u32;
        loop {
            trail.iword.push(i_count);
            trail.counters.push(i_count);
            let mut base = self.cterm(p, l, rbar, y, &x);
            base.union_with(acc);
            let mut new_x = self.eval_rest(rest, rbar, &base, trail);
            // Dual clamp: keep the ascent monotone under cached starts.
            new_x.union_with(&x);
            trail.iword.pop();
            trail.counters.pop();
            self.ctx.tick(&xname);
            self.cache
                .mu_store(&trail.pword, &trail.mword, &trail.counters, &new_x);
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

    // ---- rank recording (single-goal pairs only) ----

    /// Final unaccelerated pass: re-derives every µ-ascent under converged
    /// ν-values, recording for each vertex the first (least) configuration
    /// word that materializes it, and the converged ν-value per branch.
    fn record(&mut self, region: &VertexSet) -> Frames {
        let mut rec = Recorder {
            ranks: vec![None; self.ctx.g.n()],
            nu_log: BTreeMap::new(),
            pdisp: Vec::new(),
            iread: Vec::new(),
        };
        let rest = self.initial_rest();
        let top = self.top.clone();
        let bottom = self.bottom.clone();
        let final_val = self.record_branch(0, &rest, &top, &bottom, Some(region), &mut rec);
        debug_assert!(final_val == *region);
        Frames::Rabin { ranks: rec.ranks, nu_log: rec.nu_log }
    }

    fn record_rest(
        &mut self,
        rest: &[usize],
        rbar: &VertexSet,
        acc: &VertexSet,
        rec: &mut Recorder,
    ) -> VertexSet {
        if self.chain {
            return self.record_branch(rest[0], &rest[1..], rbar, acc, None, rec);
        }
        let mut result = self.bottom.clone();
        for (pos, &p) in rest.iter().enumerate() {
            let sub: Vec<usize> = rest[..pos]
                .iter()
                .chain(&rest[pos + 1..])
                .copied()
                .collect();
            let branch = self.record_branch(p, &sub, rbar, acc, None, rec);
            result.union_with(&branch);
        }
        result
    }

    /// Converges νY_p silently, then replays its µ-ascent once at the
    /// converged value, recording materializations (innermost level) or
    /// recursing with the read index (outer levels).
    fn record_branch(
        &mut self,
        p: usize,
        rest: &[usize],
        rbar: &VertexSet,
        acc: &VertexSet,
        known: Option<&VertexSet>,
        rec: &mut Recorder,
    ) -> VertexSet {
        let rbar_here = self.rbar_at(p, rbar);
        let y = match known {
            Some(v) => v.clone(),
            None => {
                let mut trail = Trail::default();
                self.eval_branch(p, rest, rbar, acc, &mut trail)
            }
        };
        rec.pdisp.push(p as u32);
        // First write wins: later outer passes re-converge the same branch
        // under a larger accumulator, but the first pass is the one a hand
        // trace of the fixpoint walks through.
        rec.nu_log
            .entry(rec.pdisp.iter().map(|&d| d as u8).collect())
            .or_insert_with(|| y.clone());
        let mut x = self.bottom.clone();
        let mut i_count = 0u32;
        loop {
            let mut base = self.cterm(p, 0, &rbar_here, &y, &x);
            base.union_with(acc);
            let new_x = if rest.is_empty() {
                for v in base.iter() {
                    rec.materialize(v, i_count + 1);
                }
                base
            } else {
                rec.iread.push(i_count);
                let r = self.record_rest(rest, &rbar_here, &base, rec);
                rec.iread.pop();
                r
            };
            self.ctx.tick(&format!("X{p}"));
            debug_assert!(x.is_subset(&new_x));
            if new_x == x {
                break;
            }
            x = new_x;
            i_count += 1;
        }
        rec.pdisp.pop();
        debug_assert!(x == y, "replayed ascent must rebuild the converged value");
        x
    }
}
