//! Small hand-built games used across the test suite and the docs.
//!
//! Each returns the arena together with the condition data it is normally
//! solved with. They are small enough to verify by hand and cover the
//! interesting behaviors: fairness flipping a region, dead ends, and a
//! two-pair Rabin game with a nontrivial strategy.

use crate::cond::RabinPair;
use crate::graph::{GameGraph, Owner};
use crate::sets::VertexSet;

/// Two vertices: Player 1 owns 0 with a self-loop and a live edge to 1;
/// Player 0 owns 1 with a single edge back to 0. Returns the arena and the
/// Büchi goal `{1}`.
///
/// With the live edge, fairness forces Player 1 out of the self-loop, so the
/// goal is visited infinitely often from everywhere. Without it Player 1
/// loops forever and wins everywhere.
pub fn live_loop() -> (GameGraph, VertexSet) {
    let g = GameGraph::new(
        vec![Owner::P1, Owner::P0],
        &[(0, 0), (0, 1), (1, 0)],
        &[(0, 1)],
    )
    .unwrap();
    (g, VertexSet::singleton(2, 1))
}

/// A nine-vertex reachability arena with three live edges and one dead end
/// (vertex 8). Returns `(graph, target, safe, goal)`:
/// the reach target `{5, 8}`, the safety region `V∖{0}`, and the Büchi goal
/// `{5, 8}` the same arena is solved with in the safe-Büchi reading.
///
/// Expected regions: safe reachability wins on `V∖{0, 1, 2}` (fairness pushes
/// the live cycles toward the target), classic reachability only on
/// `{5, 7, 8}`, and safe Büchi on `{3, 4, 5, 7}` (the dead end cannot be
/// visited infinitely often).
pub fn reach_arena() -> (GameGraph, VertexSet, VertexSet, VertexSet) {
    let owner = vec![
        Owner::P1, // 0: safety trap with a self-loop
        Owner::P1, // 1
        Owner::P1, // 2
        Owner::P0, // 3
        Owner::P1, // 4
        Owner::P0, // 5
        Owner::P1, // 6
        Owner::P0, // 7
        Owner::P0, // 8: dead end
    ];
    let edges = [
        (0, 0),
        (1, 0),
        (1, 2),
        (2, 1),
        (2, 5),
        (3, 4),
        (4, 3),
        (4, 5),
        (5, 3),
        (6, 3),
        (6, 8),
        (7, 5),
        (7, 8),
    ];
    let live = [(1, 2), (2, 5), (4, 3), (4, 5), (6, 8)];
    let g = GameGraph::new(owner, &edges, &live).unwrap();
    let target = VertexSet::from_ids(9, [5, 8]);
    let safe = &VertexSet::full(9) - &VertexSet::singleton(9, 0);
    let goal = VertexSet::from_ids(9, [5, 8]);
    (g, target, safe, goal)
}

/// A seven-vertex two-pair Rabin game whose single live edge `(1, 2)` decides
/// the whole region: with it Player 0 wins everywhere, without it only on
/// `{2, 3, 4, 5, 6}`. Player 1 owns `{0, 1, 2, 3}`, Player 0 owns `{4, 5, 6}`.
///
/// The pairs are `⟨{0, 3}, {1, 4}⟩` and `⟨{2}, {0, 3, 6}⟩`. The winning
/// strategy extracted from the ranking moves 5 → 6 and 4 → 2.
pub fn live_escape_pair() -> (GameGraph, Vec<RabinPair>) {
    let owner = vec![
        Owner::P1, // 0
        Owner::P1, // 1
        Owner::P1, // 2
        Owner::P1, // 3
        Owner::P0, // 4
        Owner::P0, // 5
        Owner::P0, // 6
    ];
    let edges = [
        (0, 0),
        (0, 1),
        (1, 1),
        (1, 2),
        (2, 2),
        (2, 5),
        (3, 3),
        (3, 2),
        (4, 0),
        (4, 2),
        (5, 1),
        (5, 6),
        (6, 3),
    ];
    let live = [(1, 2)];
    let g = GameGraph::new(owner, &edges, &live).unwrap();
    let pairs = vec![
        RabinPair {
            goal: VertexSet::from_ids(7, [0, 3]),
            avoid: VertexSet::from_ids(7, [1, 4]),
        },
        RabinPair {
            goal: VertexSet::from_ids(7, [2]),
            avoid: VertexSet::from_ids(7, [0, 3, 6]),
        },
    ];
    (g, pairs)
}

/// A three-vertex parity game: vertex 0 (Player 0) has color 4, vertex 1
/// (Player 1) color 1, vertex 2 (Player 0) color 3. Vertex 1 can loop through
/// the odd-colored 2 forever, but its edge back to 0 is live. Returns the
/// arena and the color classes (`colors[i]` is color `i+1`).
///
/// Under fairness every play visits the even color 4 infinitely often, so
/// Player 0 wins everywhere; without the live edge Player 1 can pin the play
/// on colors 1 and 3.
pub fn parity_triangle() -> (GameGraph, Vec<VertexSet>) {
    let g = GameGraph::new(
        vec![Owner::P0, Owner::P1, Owner::P0],
        &[(0, 1), (1, 0), (1, 2), (2, 1)],
        &[(1, 0)],
    )
    .unwrap();
    let colors = vec![
        VertexSet::from_ids(3, [1]), // color 1
        VertexSet::empty(3),         // color 2
        VertexSet::from_ids(3, [2]), // color 3
        VertexSet::from_ids(3, [0]), // color 4
    ];
    (g, colors)
}
