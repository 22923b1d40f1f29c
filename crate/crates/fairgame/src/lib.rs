//! Solver library for two-player ω-regular games on finite graphs where the
//! adversary's marked ("live") edges are treated fairly: any play visiting
//! the source of a live edge infinitely often must take that edge infinitely
//! often. Player 0 wins if every fair play satisfies the objective.
//!
//! The crate provides:
//!
//! - [`graph::GameGraph`]: the arena, with live-edge bookkeeping;
//! - [`ops`]: the one-step predecessor operators the solvers are built from;
//! - [`cond::WinningCondition`]: objectives from reachability up to Muller,
//!   with validation and the standard reductions between classes;
//! - [`solver`]: symbolic fixpoint solvers for every objective class, with
//!   optional warm-start acceleration of nested fixpoints;
//! - [`strategy`]: rank-based extraction of winning (and spoiling) strategies;
//! - [`stochastic`]: qualitative solving of 2½-player games by replacing
//!   random vertices with fair adversarial ones;
//! - [`oracle`]: an exhaustive, fixpoint-free reference implementation used
//!   to cross-check everything on small instances;
//! - [`format`]: a plain-text game file format and parser;
//! - [`gen`]: seeded random instances and benchmark families.

pub mod cond;
pub mod demo;
pub mod format;
pub mod graph;
pub mod ops;
pub mod oracle;
pub mod sets;
pub mod bench;
pub mod solver;
pub mod stochastic;
pub mod strategy;

pub use cond::{GenRabinPair, RabinPair, WinningCondition};
pub use format::{emit_game, parse_game, parse_str, GameFile};
pub use graph::{GameGraph, Owner};
pub use sets::VertexSet;
pub use solver::{solve, SolveError, SolveOpts, SolveResult};
pub use strategy::{extract_p0_strategy, extract_p1_spoiler_reach, Strategy};
