//! Deterministic instance generation for benchmarks and randomized testing.
//!
//! Everything is a pure function of the seed (ChaCha8 keyed by it), so test
//! failures replay exactly and benchmark instances are stable across runs.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cond::{GenRabinPair, RabinPair};
use crate::graph::{GameGraph, Owner};
use crate::sets::VertexSet;
use crate::stochastic::{SOwner, StochasticGameGraph};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GenError {
    #[error("need at least 2 vertices, got {n}")]
    TooFewVertices { n: usize },
    #[error("need at least one condition pair")]
    NoPairs,
    #[error("{name} must lie in [0, 1], got {value}")]
    InfeasibleFraction { name: &'static str, value: f64 },
}

fn check_frac(name: &'static str, value: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(GenError::InfeasibleFraction { name, value })
    }
}

/// Random fair game with `k` Rabin pairs.
///
/// A fraction `owner_frac` of the vertices (rounded) belongs to Player 0;
/// every vertex gets 1–4 distinct successors, so there are no dead ends and
/// the arena is connected-ish; each Player 1 edge becomes live with
/// probability `live_frac`; each vertex joins each pair's goal/avoid set
/// with probability `member_frac`. Identical arguments produce identical
/// instances.
pub fn random_fair_game(
    seed: u64,
    n: usize,
    k: usize,
    owner_frac: f64,
    live_frac: f64,
    member_frac: f64,
) -> Result<(GameGraph, Vec<RabinPair>), GenError> {
    if n < 2 {
        return Err(GenError::TooFewVertices { n });
    }
    if k < 1 {
        return Err(GenError::NoPairs);
    }
    check_frac("owner_frac", owner_frac)?;
    check_frac("live_frac", live_frac)?;
    check_frac("member_frac", member_frac)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let p0_count = (n as f64 * owner_frac).round() as usize;
    let mut owner = vec![Owner::P1; n];
    for i in sample(&mut rng, n, p0_count) {
        owner[i] = Owner::P0;
    }

    let mut edges = Vec::new();
    for v in 0..n {
        let d = rng.gen_range(1..=4.min(n));
        for w in sample(&mut rng, n, d) {
            edges.push((v, w));
        }
    }
    let mut live = Vec::new();
    for &(u, w) in &edges {
        if owner[u] == Owner::P1 && rng.gen_bool(live_frac) {
            live.push((u, w));
        }
    }
    let g = GameGraph::new(owner, &edges, &live).expect("generated arenas are well-formed");

    let pairs = (0..k)
        .map(|_| RabinPair {
            goal: random_set(&mut rng, n, member_frac),
            avoid: random_set(&mut rng, n, member_frac),
        })
        .collect();
    Ok((g, pairs))
}

/// Random 1½-player instance: Player 0 and random vertices only, with `k`
/// generalized Rabin pairs of one or two goals each. Out-degrees stay at
/// 1–2 so the almost-sure oracle's memoryless enumeration — which runs on
/// the goal-counter product for multi-goal pairs — stays within budget at
/// desk scale.
pub fn random_mdp(
    seed: u64,
    n: usize,
    k: usize,
) -> Result<(StochasticGameGraph, Vec<GenRabinPair>), GenError> {
    if n < 2 {
        return Err(GenError::TooFewVertices { n });
    }
    if k < 1 {
        return Err(GenError::NoPairs);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let owner: Vec<SOwner> = (0..n)
        .map(|_| if rng.gen_bool(0.5) { SOwner::P0 } else { SOwner::Random })
        .collect();
    let mut edges = Vec::new();
    for v in 0..n {
        let d = rng.gen_range(1..=2.min(n));
        for w in sample(&mut rng, n, d) {
            edges.push((v, w));
        }
    }
    let sg = StochasticGameGraph::new(owner, &edges).expect("generated graphs are well-formed");
    let pairs = (0..k)
        .map(|_| {
            let goals = if rng.gen_bool(0.3) { 2 } else { 1 };
            GenRabinPair {
                goals: (0..goals).map(|_| random_set(&mut rng, n, 0.3)).collect(),
                avoid: random_set(&mut rng, n, 0.15),
            }
        })
        .collect();
    Ok((sg, pairs))
}

fn random_set(rng: &mut ChaCha8Rng, n: usize, frac: f64) -> VertexSet {
    VertexSet::from_ids(n, (0..n).filter(|_| rng.gen_bool(frac)))
}

/// A chain of `m` two-vertex gadgets. Each Player 1 vertex `p_i` could loop
/// on itself forever, but its live edge into `q_i` fires eventually under
/// fairness; Player 0 then forwards the play into the next gadget, and the
/// last `q` wraps around to the first `p`. With the Büchi goal on the last
/// `q` the whole arena is winning, yet the reach ascents must walk the full
/// chain — iteration counts grow linearly in `m`, which is what makes this
/// the acceleration benchmark.
pub fn gadget_chain(m: usize) -> (GameGraph, VertexSet) {
    assert!(m >= 1, "a chain needs at least one gadget");
    let n = 2 * m;
    let mut owner = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut live = Vec::new();
    for i in 0..m {
        let p = 2 * i;
        let q = 2 * i + 1;
        owner.push(Owner::P1);
        owner.push(Owner::P0);
        edges.push((p, p));
        edges.push((p, q));
        live.push((p, q));
        edges.push((q, (2 * (i + 1)) % n));
    }
    let g = GameGraph::new(owner, &edges, &live).expect("gadget chains are well-formed");
    (g, VertexSet::singleton(n, n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cond::{validate, WinningCondition};
    use crate::demo;
    use crate::solver::{solve_buchi, SolveOpts};
    use crate::stochastic::mec_decompose;

    #[test]
    fn identical_seeds_reproduce_instances() {
        let a = random_fair_game(7, 9, 2, 0.5, 0.05, 0.05).unwrap();
        let b = random_fair_game(7, 9, 2, 0.5, 0.05, 0.05).unwrap();
        assert_eq!(a, b);
        let c = random_fair_game(8, 9, 2, 0.5, 0.05, 0.05).unwrap();
        assert_ne!(a, c);
        let (m1, p1) = random_mdp(3, 6, 2).unwrap();
        let (m2, p2) = random_mdp(3, 6, 2).unwrap();
        assert_eq!(m1, m2);
        assert_eq!(p1, p2);
    }

    #[test]
    fn generated_instances_pass_validation() {
        for seed in 0..25 {
            let (g, pairs) = random_fair_game(seed, 8, 2, 0.5, 0.2, 0.2).unwrap();
            let report = validate(&g, &WinningCondition::Rabin { pairs });
            assert!(report.is_valid(), "seed {seed}: {:?}", report.issues);
        }
    }

    #[test]
    fn zero_live_fraction_gives_no_live_edges() {
        let (g, _) = random_fair_game(1, 10, 1, 0.5, 0.0, 0.1).unwrap();
        assert!(!g.has_live_edges());
    }

    #[test]
    fn infeasible_parameters_are_rejected() {
        assert_eq!(
            random_fair_game(0, 1, 1, 0.5, 0.1, 0.1),
            Err(GenError::TooFewVertices { n: 1 })
        );
        assert_eq!(
            random_fair_game(0, 4, 0, 0.5, 0.1, 0.1),
            Err(GenError::NoPairs)
        );
        assert!(matches!(
            random_fair_game(0, 4, 1, 1.5, 0.1, 0.1),
            Err(GenError::InfeasibleFraction { name: "owner_frac", .. })
        ));
    }

    #[test]
    fn single_gadget_reproduces_the_live_loop() {
        let (g, goal) = gadget_chain(1);
        let (demo_g, demo_goal) = demo::live_loop();
        assert_eq!(g, demo_g);
        assert_eq!(goal, demo_goal);
    }

    #[test]
    fn gadget_chains_are_fully_winning_with_growing_iteration_counts() {
        let mut steps = Vec::new();
        for m in [1, 2, 4, 8] {
            let (g, goal) = gadget_chain(m);
            let r = solve_buchi(&g, &goal, SolveOpts::default()).unwrap();
            assert!(r.region.is_full(), "m = {m}");
            steps.push(r.stats.steps.total());
        }
        assert!(steps.windows(2).all(|w| w[0] < w[1]), "steps {steps:?}");
    }

    #[test]
    fn generated_mdps_are_mdps() {
        for seed in 0..10 {
            let (sg, _) = random_mdp(seed, 7, 2).unwrap();
            assert!(mec_decompose(&sg).is_ok());
        }
    }
}
