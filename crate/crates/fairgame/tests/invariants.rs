//! Cross-cutting semantic invariants on random instances: growing the live
//! set only grows Player 0's region, dropping every live edge collapses the
//! fair parity solver onto the classic one, and the brute-force oracle is
//! insensitive to vertex relabeling and monotone in the live set.

use fairgame::bench::random_fair_game;
use fairgame::cond::parity_to_rabin_chain;
use fairgame::graph::Owner;
use fairgame::oracle::{brute_force_region, fair_violating_witness};
use fairgame::solver::{solve_parity, solve_parity_classic};
use fairgame::{solve, GameGraph, GenRabinPair, RabinPair, SolveOpts, VertexSet, WinningCondition};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn edges_of(g: &GameGraph) -> Vec<(usize, usize)> {
    (0..g.n())
        .flat_map(|u| g.successors(u).iter().map(move |&v| (u, v)))
        .collect()
}

fn owners_of(g: &GameGraph) -> Vec<Owner> {
    (0..g.n()).map(|v| g.owner(v)).collect()
}

fn random_set(rng: &mut ChaCha8Rng, n: usize, frac: f64) -> VertexSet {
    VertexSet::from_ids(n, (0..n).filter(|_| rng.gen_bool(frac)))
}

/// Like `random_set` but never empty (some conditions reject empty sets).
fn random_nonempty_set(rng: &mut ChaCha8Rng, n: usize, frac: f64) -> VertexSet {
    let mut s = random_set(rng, n, frac);
    if s.is_empty() {
        s.insert(rng.gen_range(0..n));
    }
    s
}

/// A random partition of the vertices into `c` color classes.
fn random_colors(rng: &mut ChaCha8Rng, n: usize, c: usize) -> Vec<VertexSet> {
    let mut colors = vec![VertexSet::empty(n); c];
    for v in 0..n {
        colors[rng.gen_range(0..c)].insert(v);
    }
    colors
}

/// One valid random condition of every class, over `n` vertices.
fn conditions(rng: &mut ChaCha8Rng, n: usize) -> Vec<WinningCondition> {
    let pair = |rng: &mut ChaCha8Rng| RabinPair {
        goal: random_set(rng, n, 0.4),
        avoid: random_set(rng, n, 0.25),
    };
    let chain = parity_to_rabin_chain(&random_colors(rng, n, 3));
    vec![
        WinningCondition::SafeReach {
            target: random_set(rng, n, 0.4),
            safe: random_set(rng, n, 0.8),
        },
        WinningCondition::Safety { safe: random_set(rng, n, 0.7) },
        WinningCondition::Buchi { goal: random_set(rng, n, 0.4) },
        WinningCondition::SafeBuchi {
            goal: random_set(rng, n, 0.4),
            safe: random_set(rng, n, 0.8),
        },
        WinningCondition::GenBuchi {
            goals: vec![random_set(rng, n, 0.5), random_set(rng, n, 0.5)],
        },
        WinningCondition::CoBuchi { allowed: random_set(rng, n, 0.6) },
        WinningCondition::GenCoBuchi {
            allowed: vec![random_set(rng, n, 0.6), random_set(rng, n, 0.6)],
        },
        WinningCondition::Rabin { pairs: vec![pair(rng), pair(rng)] },
        WinningCondition::GenRabin {
            pairs: vec![GenRabinPair {
                goals: vec![random_set(rng, n, 0.5), random_set(rng, n, 0.5)],
                avoid: random_set(rng, n, 0.25),
            }],
        },
        WinningCondition::RabinChain { pairs: chain },
        WinningCondition::Parity { colors: random_colors(rng, n, 4) },
        WinningCondition::Gr1 {
            assumptions: vec![random_set(rng, n, 0.5)],
            guarantees: vec![random_set(rng, n, 0.5)],
        },
        WinningCondition::Muller {
            sets: vec![random_nonempty_set(rng, n, 0.4), random_nonempty_set(rng, n, 0.4)],
        },
    ]
}

/// The same arena under two nested live sets: `small ⊆ big`.
fn nested_live_pair(seed: u64, n: usize) -> (GameGraph, GameGraph, Vec<RabinPair>) {
    let (big, pairs) = random_fair_game(seed, n, 1, 0.5, 0.85, 0.35).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11fe);
    let small_live: Vec<(usize, usize)> = big
        .live_edges()
        .into_iter()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    let small = GameGraph::new(owners_of(&big), &edges_of(&big), &small_live).unwrap();
    (small, big, pairs)
}

/// Fairness constrains Player 1, so enlarging the live set can only enlarge
/// Player 0's winning region — for every condition class.
#[test]
fn live_edge_monotonicity_across_condition_classes() {
    for seed in 0..24u64 {
        let n = 5 + (seed as usize) % 2;
        let (small, big, _) = nested_live_pair(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbee5);
        for cond in conditions(&mut rng, n) {
            let lo = solve(&small, &cond, SolveOpts::default()).unwrap();
            let hi = solve(&big, &cond, SolveOpts::default()).unwrap();
            assert!(
                lo.region.is_subset(&hi.region),
                "seed {seed}, {}: region must grow with the live set",
                cond.kind_name()
            );
        }
    }
}

/// With no live edge the fairness premise is vacuous and the fair parity
/// fixpoint degenerates to the classic parity fixpoint.
#[test]
fn parity_without_live_edges_matches_the_classic_solver() {
    for seed in 0..50u64 {
        let (g, _) = random_fair_game(seed, 7, 1, 0.5, 0.0, 0.3).unwrap();
        let stripped = g.without_live_edges();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc1a5);
        let colors = random_colors(&mut rng, 7, 2 + (seed as usize) % 3);
        let fair = solve_parity(&stripped, &colors, SolveOpts::default()).unwrap();
        let classic = solve_parity_classic(&stripped, &colors, SolveOpts::default()).unwrap();
        assert_eq!(fair.region, classic.region, "seed {seed}");
    }
}

/// Conjugating a game by a vertex permutation conjugates the brute-force
/// region: the oracle's subset enumeration is order-independent.
#[test]
fn oracle_region_is_invariant_under_relabeling() {
    for seed in 0..20u64 {
        let (g, pairs) = random_fair_game(seed, 6, 2, 0.5, 0.4, 0.3).unwrap();
        let n = g.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e1a);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);

        let map_set =
            |s: &VertexSet| VertexSet::from_ids(n, s.iter().map(|v| perm[v]));
        let mut owners = vec![Owner::P1; n];
        for v in 0..n {
            owners[perm[v]] = g.owner(v);
        }
        let edges: Vec<(usize, usize)> =
            edges_of(&g).into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        let live: Vec<(usize, usize)> =
            g.live_edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        let relabeled = GameGraph::new(owners, &edges, &live).unwrap();
        let mapped_pairs: Vec<RabinPair> = pairs
            .iter()
            .map(|p| RabinPair { goal: map_set(&p.goal), avoid: map_set(&p.avoid) })
            .collect();

        let original = brute_force_region(&g, &pairs).unwrap();
        let conjugated = brute_force_region(&relabeled, &mapped_pairs).unwrap();
        assert_eq!(conjugated, map_set(&original), "seed {seed}");
    }
}

/// A fair play against a fixed strategy stays fair when live edges are
/// removed, so a witness under the larger live set implies one under the
/// smaller: adding live edges only removes witnesses.
#[test]
fn adding_live_edges_only_removes_witnesses() {
    for seed in 0..40u64 {
        let n = 6;
        let (small, big, pairs) = nested_live_pair(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x57a7);
        let strategy: Vec<Option<usize>> = (0..n)
            .map(|v| match big.owner(v) {
                Owner::P0 if !big.successors(v).is_empty() => {
                    Some(big.successors(v)[rng.gen_range(0..big.successors(v).len())])
                }
                _ => None,
            })
            .collect();
        for start in 0..n {
            let under_big = fair_violating_witness(&big, &strategy, &pairs, start).unwrap();
            let under_small = fair_violating_witness(&small, &strategy, &pairs, start).unwrap();
            assert!(
                under_big.is_none() || under_small.is_some(),
                "seed {seed}, start {start}: a witness tolerating more live \
                 edges must survive having fewer"
            );
        }
    }
}
