//! Game graphs: finite arenas whose vertices are split between two players,
//! plus an optional set of *live* edges. A live edge is a Player 1 edge that
//! must be taken infinitely often whenever its source is visited infinitely
//! often (strong transition fairness).

use crate::sets::VertexSet;
use thiserror::Error;

/// Which player picks the successor at a vertex.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Owner {
    P0,
    P1,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("game graph needs at least one vertex")]
    Empty,
    #[error("vertex {v} out of range (graph has {n} vertices)")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("live edge ({u}, {v}) is not an edge of the graph")]
    LiveEdgeNotInGraph { u: usize, v: usize },
}

/// A two-player game graph with live edges.
///
/// Successor lists are stored sorted and deduplicated, so every iteration over
/// the graph is deterministic. Live edges may in principle originate from
/// either player's vertices; the validator flags Player 0 sources because the
/// fairness semantics only constrains Player 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGraph {
    owner: Vec<Owner>,
    succ: Vec<Vec<usize>>,
    live: Vec<Vec<usize>>,
}

impl GameGraph {
    pub fn new(
        owner: Vec<Owner>,
        edges: &[(usize, usize)],
        live: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let n = owner.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let check = |v: usize| {
            if v < n {
                Ok(())
            } else {
                Err(GraphError::VertexOutOfRange { v, n })
            }
        };
        let mut succ = vec![Vec::new(); n];
        for &(u, v) in edges {
            check(u)?;
            check(v)?;
            succ[u].push(v);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let mut live_succ = vec![Vec::new(); n];
        for &(u, v) in live {
            check(u)?;
            check(v)?;
            if !succ[u].contains(&v) {
                return Err(GraphError::LiveEdgeNotInGraph { u, v });
            }
            live_succ[u].push(v);
        }
        for s in &mut live_succ {
            s.sort_unstable();
            s.dedup();
        }
        Ok(GameGraph { owner, succ, live: live_succ })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, v: usize) -> Owner {
        self.owner[v]
    }

    /// Successors of `v`, ascending.
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    /// Live successors of `v` (targets of live edges out of `v`), ascending.
    pub fn live_successors(&self, v: usize) -> &[usize] {
        &self.live[v]
    }

    pub fn is_live_edge(&self, u: usize, v: usize) -> bool {
        self.live[u].binary_search(&v).is_ok()
    }

    pub fn has_live_edges(&self) -> bool {
        self.live.iter().any(|l| !l.is_empty())
    }

    /// Vertices with at least one outgoing live edge.
    pub fn live_vertices(&self) -> VertexSet {
        VertexSet::from_ids(
            self.n(),
            (0..self.n()).filter(|&v| !self.live[v].is_empty()),
        )
    }

    pub fn vertices_of(&self, o: Owner) -> VertexSet {
        VertexSet::from_ids(self.n(), (0..self.n()).filter(|&v| self.owner[v] == o))
    }

    /// Vertices with no outgoing edge. A play reaching one cannot continue;
    /// the solvers treat that as losing for Player 0.
    pub fn dead_ends(&self) -> VertexSet {
        VertexSet::from_ids(self.n(), (0..self.n()).filter(|&v| self.succ[v].is_empty()))
    }

    /// All edges `(u, v)`, ordered by source then target.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for &v in &self.succ[u] {
                out.push((u, v));
            }
        }
        out
    }

    /// All live edges, ordered by source then target.
    pub fn live_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for &v in &self.live[u] {
                out.push((u, v));
            }
        }
        out
    }

    /// The same arena with the live-edge set emptied (the classic,
    /// fairness-free reading of the game).
    pub fn without_live_edges(&self) -> GameGraph {
        GameGraph {
            owner: self.owner.clone(),
            succ: self.succ.clone(),
            live: vec![Vec::new(); self.n()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vertex() -> GameGraph {
        GameGraph::new(
            vec![Owner::P1, Owner::P0],
            &[(0, 0), (0, 1), (1, 0)],
            &[(0, 1)],
        )
        .unwrap()
    }

    #[test]
    fn construction_sorts_and_dedups() {
        let g = GameGraph::new(
            vec![Owner::P0, Owner::P1],
            &[(0, 1), (0, 0), (0, 1), (1, 0)],
            &[],
        )
        .unwrap();
        assert_eq!(g.successors(0), &[0, 1]);
        assert_eq!(g.successors(1), &[0]);
    }

    #[test]
    fn live_edges_must_exist() {
        let err = GameGraph::new(vec![Owner::P1, Owner::P0], &[(0, 0), (1, 0)], &[(0, 1)]);
        assert_eq!(err, Err(GraphError::LiveEdgeNotInGraph { u: 0, v: 1 }));
    }

    #[test]
    fn out_of_range_rejected() {
        let err = GameGraph::new(vec![Owner::P0], &[(0, 3)], &[]);
        assert_eq!(err, Err(GraphError::VertexOutOfRange { v: 3, n: 1 }));
    }

    #[test]
    fn accessors() {
        let g = two_vertex();
        assert_eq!(g.n(), 2);
        assert!(g.is_live_edge(0, 1));
        assert!(!g.is_live_edge(1, 0));
        assert_eq!(g.live_vertices(), VertexSet::from_ids(2, [0]));
        assert_eq!(g.vertices_of(Owner::P0), VertexSet::from_ids(2, [1]));
        assert!(g.dead_ends().is_empty());
        assert_eq!(g.edges(), vec![(0, 0), (0, 1), (1, 0)]);
        assert!(!g.without_live_edges().has_live_edges());
    }
}
