//! Winning conditions, input validation, and the reductions between
//! condition classes (Muller, GR(1), parity, co-Büchi, Streett gadgets,
//! counter products).

use crate::graph::{GameGraph, Owner};
use crate::sets::VertexSet;
use thiserror::Error;

/// A Rabin pair: the play must visit `goal` infinitely often while visiting
/// `avoid` only finitely often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RabinPair {
    pub goal: VertexSet,
    pub avoid: VertexSet,
}

/// A generalized Rabin pair: *every* set in `goals` must be visited
/// infinitely often while `avoid` is visited only finitely often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenRabinPair {
    pub goals: Vec<VertexSet>,
    pub avoid: VertexSet,
}

/// The condition classes the solver dispatches on.
///
/// All conditions are evaluated under the fairness assumption carried by the
/// graph's live edges: Player 0 wins a play if the play is unfair or
/// satisfies the condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WinningCondition {
    /// Reach `target` while staying in `safe` until then.
    SafeReach { target: VertexSet, safe: VertexSet },
    /// Stay in `safe` forever.
    Safety { safe: VertexSet },
    /// Visit `goal` infinitely often.
    Buchi { goal: VertexSet },
    /// Visit `goal` infinitely often while never leaving `safe`.
    SafeBuchi { goal: VertexSet, safe: VertexSet },
    /// Visit every goal set infinitely often.
    GenBuchi { goals: Vec<VertexSet> },
    /// Eventually stay inside `allowed` forever.
    CoBuchi { allowed: VertexSet },
    /// Eventually stay inside some `allowed[a]` forever.
    GenCoBuchi { allowed: Vec<VertexSet> },
    Rabin { pairs: Vec<RabinPair> },
    GenRabin { pairs: Vec<GenRabinPair> },
    /// Rabin pairs ordered by inclusion: goal₁ ⊇ avoid₁ ⊇ goal₂ ⊇ … ⊇ avoidₖ.
    RabinChain { pairs: Vec<RabinPair> },
    /// `colors[i]` is the set of vertices of color `i+1`; the classes must
    /// partition the vertices. Player 0 wins if the maximal color visited
    /// infinitely often is even.
    Parity { colors: Vec<VertexSet> },
    /// If every assumption set is visited infinitely often, then every
    /// guarantee set is visited infinitely often.
    Gr1 { assumptions: Vec<VertexSet>, guarantees: Vec<VertexSet> },
    /// The set of vertices visited infinitely often equals one of `sets`.
    Muller { sets: Vec<VertexSet> },
}

impl WinningCondition {
    /// The condition's name in the game file format.
    pub fn kind_name(&self) -> &'static str {
        match self {
            WinningCondition::SafeReach { .. } => "safe_reach",
            WinningCondition::Safety { .. } => "safety",
            WinningCondition::Buchi { .. } => "buchi",
            WinningCondition::SafeBuchi { .. } => "safe_buchi",
            WinningCondition::GenBuchi { .. } => "gen_buchi",
            WinningCondition::CoBuchi { .. } => "cobuchi",
            WinningCondition::GenCoBuchi { .. } => "gen_cobuchi",
            WinningCondition::Rabin { .. } => "rabin",
            WinningCondition::GenRabin { .. } => "gen_rabin",
            WinningCondition::RabinChain { .. } => "rabin_chain",
            WinningCondition::Parity { .. } => "parity",
            WinningCondition::Gr1 { .. } => "gr1",
            WinningCondition::Muller { .. } => "muller",
        }
    }

    /// All vertex sets mentioned by the condition, for universe checks.
    fn sets(&self) -> Vec<&VertexSet> {
        match self {
            WinningCondition::SafeReach { target, safe } => vec![target, safe],
            WinningCondition::Safety { safe } => vec![safe],
            WinningCondition::Buchi { goal } => vec![goal],
            WinningCondition::SafeBuchi { goal, safe } => vec![goal, safe],
            WinningCondition::GenBuchi { goals } => goals.iter().collect(),
            WinningCondition::CoBuchi { allowed } => vec![allowed],
            WinningCondition::GenCoBuchi { allowed } => allowed.iter().collect(),
            WinningCondition::Rabin { pairs } | WinningCondition::RabinChain { pairs } => {
                pairs.iter().flat_map(|p| [&p.goal, &p.avoid]).collect()
            }
            WinningCondition::GenRabin { pairs } => pairs
                .iter()
                .flat_map(|p| p.goals.iter().chain([&p.avoid]))
                .collect(),
            WinningCondition::Parity { colors } => colors.iter().collect(),
            WinningCondition::Gr1 { assumptions, guarantees } => {
                assumptions.iter().chain(guarantees.iter()).collect()
            }
            WinningCondition::Muller { sets } => sets.iter().collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Severity {
    Error,
    Warning,
}

/// What a [`ValidationIssue`] is about.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IssueKind {
    LiveEdgeFromP0,
    DeadEnd,
    UniverseMismatch,
    EmptyCondition,
    EmptyGoalList,
    EmptyMullerSet,
    ParityNotPartition,
    ChainInclusionViolated,
}

#[derive(Clone, Debug)]
pub struct ValidationIssue {
    pub kind: IssueKind,
    pub severity: Severity,
    pub message: String,
}

/// Output of [`validate`]: a list of issues; errors make the input
/// unsolvable, warnings are informational.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        !self.issues.iter().any(|i| i.severity == Severity::Error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &ValidationIssue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &ValidationIssue> {
        self.issues.iter().filter(|i| i.severity == Severity::Warning)
    }

    fn push(&mut self, kind: IssueKind, severity: Severity, message: String) {
        self.issues.push(ValidationIssue { kind, severity, message });
    }
}

/// Checks a game/condition pair for structural problems.
///
/// Errors: condition sets over the wrong universe, live edges owned by
/// Player 0 (fairness only constrains Player 1), empty condition structures,
/// parity color classes that do not partition the vertices, and chain pairs
/// that are not ordered by inclusion. Dead ends are reported as warnings;
/// the solvers treat them as losing for Player 0.
pub fn validate(g: &GameGraph, cond: &WinningCondition) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = g.n();

    for (u, v) in g.live_edges() {
        if g.owner(u) == Owner::P0 {
            report.push(
                IssueKind::LiveEdgeFromP0,
                Severity::Error,
                format!("live edge ({u}, {v}) starts at a Player 0 vertex"),
            );
        }
    }
    for v in g.dead_ends().iter() {
        report.push(
            IssueKind::DeadEnd,
            Severity::Warning,
            format!("vertex {v} has no successors; it is losing for Player 0"),
        );
    }
    for s in cond.sets() {
        if s.universe() != n {
            report.push(
                IssueKind::UniverseMismatch,
                Severity::Error,
                format!(
                    "condition set over universe {} does not match the graph ({n} vertices)",
                    s.universe()
                ),
            );
            return report; // further checks would compare mismatched sets
        }
    }

    match cond {
        WinningCondition::GenBuchi { goals } if goals.is_empty() => {
            report.push(IssueKind::EmptyCondition, Severity::Error, "generalized Büchi condition with no goal sets".into());
        }
        WinningCondition::GenCoBuchi { allowed } if allowed.is_empty() => {
            report.push(IssueKind::EmptyCondition, Severity::Error, "generalized co-Büchi condition with no sets".into());
        }
        WinningCondition::Rabin { pairs } | WinningCondition::RabinChain { pairs }
            if pairs.is_empty() =>
        {
            report.push(IssueKind::EmptyCondition, Severity::Error, "Rabin condition with no pairs".into());
        }
        WinningCondition::GenRabin { pairs } => {
            if pairs.is_empty() {
                report.push(IssueKind::EmptyCondition, Severity::Error, "generalized Rabin condition with no pairs".into());
            }
            for (j, p) in pairs.iter().enumerate() {
                if p.goals.is_empty() {
                    report.push(
                        IssueKind::EmptyGoalList,
                        Severity::Error,
                        format!("generalized Rabin pair {} has an empty goal list", j + 1),
                    );
                }
            }
        }
        WinningCondition::Muller { sets } => {
            if sets.is_empty() {
                report.push(IssueKind::EmptyCondition, Severity::Error, "Muller condition with no sets".into());
            }
            for (i, s) in sets.iter().enumerate() {
                if s.is_empty() {
                    report.push(
                        IssueKind::EmptyMullerSet,
                        Severity::Error,
                        format!("Muller set {} is empty (no infinite play has an empty infinity set)", i + 1),
                    );
                }
            }
        }
        WinningCondition::Parity { colors } => {
            if colors.is_empty() {
                report.push(IssueKind::EmptyCondition, Severity::Error, "parity condition with no colors".into());
            }
            for v in 0..n {
                let hits = colors.iter().filter(|c| c.contains(v)).count();
                if hits != 1 {
                    report.push(
                        IssueKind::ParityNotPartition,
                        Severity::Error,
                        format!("vertex {v} has {hits} colors; color classes must partition the vertices"),
                    );
                }
            }
        }
        WinningCondition::Gr1 { assumptions, guarantees } => {
            if assumptions.is_empty() || guarantees.is_empty() {
                report.push(
                    IssueKind::EmptyCondition,
                    Severity::Error,
                    "GR(1) condition needs at least one assumption and one guarantee".into(),
                );
            }
        }
        _ => {}
    }

    if let WinningCondition::RabinChain { pairs } = cond {
        // goal₁ ⊇ avoid₁ ⊇ goal₂ ⊇ avoid₂ ⊇ …
        let mut prev: Option<&VertexSet> = None;
        for (j, p) in pairs.iter().enumerate() {
            for (s, what) in [(&p.goal, "goal"), (&p.avoid, "avoid")] {
                if let Some(bigger) = prev {
                    if !s.is_subset(bigger) {
                        report.push(
                            IssueKind::ChainInclusionViolated,
                            Severity::Error,
                            format!("chain pair {}: {what} set is not included in the preceding set", j + 1),
                        );
                    }
                }
                prev = Some(s);
            }
        }
    }

    report
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("Muller set {index} is empty; no infinite play has an empty infinity set")]
    EmptyMullerSet { index: usize },
    #[error("counter product needs at least one goal set")]
    NoGoals,
}

/// Encodes a Muller condition (`Inf(π) = F_i` for some `i`, exact equality)
/// as a generalized Rabin condition: stay inside `F_i` from some point on and
/// visit every single vertex of `F_i` infinitely often.
pub fn muller_to_gen_rabin(sets: &[VertexSet]) -> Result<Vec<GenRabinPair>, TransformError> {
    let mut pairs = Vec::with_capacity(sets.len());
    for (i, f) in sets.iter().enumerate() {
        if f.is_empty() {
            return Err(TransformError::EmptyMullerSet { index: i + 1 });
        }
        let n = f.universe();
        pairs.push(GenRabinPair {
            goals: f.iter().map(|v| VertexSet::singleton(n, v)).collect(),
            avoid: f.complement(),
        });
    }
    Ok(pairs)
}

/// Encodes GR(1) as generalized Rabin: one pair per assumption that wins by
/// falsifying it (visit `avoid = A_j` only finitely often, trivial goal), plus
/// one pair demanding every guarantee infinitely often.
pub fn gr1_to_gen_rabin(
    n: usize,
    assumptions: &[VertexSet],
    guarantees: &[VertexSet],
) -> Vec<GenRabinPair> {
    let mut pairs: Vec<GenRabinPair> = assumptions
        .iter()
        .map(|a| GenRabinPair { goals: vec![VertexSet::full(n)], avoid: a.clone() })
        .collect();
    pairs.push(GenRabinPair { goals: guarantees.to_vec(), avoid: VertexSet::empty(n) });
    pairs
}

/// Encodes a parity condition as a Rabin chain. With `F_i` the vertices of
/// color `≥ i`, the pairs are `⟨F_2, F_3⟩, ⟨F_4, F_5⟩, …`; the chain ordering
/// holds by construction.
pub fn parity_to_rabin_chain(colors: &[VertexSet]) -> Vec<RabinPair> {
    let c = colors.len();
    if c == 0 {
        return Vec::new();
    }
    let n = colors[0].universe();
    // suffix_union[i] = vertices of color > i (0-indexed: colors[i..]).
    let f = |i: usize| -> VertexSet {
        let mut s = VertexSet::empty(n);
        for col in colors.iter().skip(i.saturating_sub(1)) {
            s.union_with(col);
        }
        s
    };
    (1..=c / 2)
        .map(|l| RabinPair { goal: f(2 * l), avoid: f(2 * l + 1) })
        .collect()
}

/// Encodes generalized co-Büchi as Rabin: one pair per set, with a trivial
/// goal and `avoid` the complement of the allowed region.
pub fn gen_cobuchi_to_rabin(allowed: &[VertexSet]) -> Vec<RabinPair> {
    allowed
        .iter()
        .map(|a| RabinPair { goal: VertexSet::full(a.universe()), avoid: a.complement() })
        .collect()
}

/// Result of [`naive_streett_reduction`]: an equivalent game without live
/// edges, over an enlarged vertex set.
#[derive(Clone, Debug)]
pub struct StreettReduction {
    pub game: GameGraph,
    pub pairs: Vec<RabinPair>,
    /// The original vertices inside the enlarged universe (ids are preserved).
    pub original: VertexSet,
}

/// Compiles the fairness assumption into the winning condition: every live
/// edge `(u, v)` is re-routed through a fresh observer vertex, and one extra
/// Rabin pair per live edge lets Player 0 win any play that visits `u`
/// infinitely often but takes the edge only finitely often. Correct but
/// wasteful — it adds a pair per live edge, which is exponentially costly for
/// the solver; the direct fair solvers exist to avoid exactly this blow-up.
pub fn naive_streett_reduction(g: &GameGraph, pairs: &[RabinPair]) -> StreettReduction {
    let n = g.n();
    let live = g.live_edges();
    let big = n + live.len();

    let mut owner: Vec<Owner> = (0..n).map(|v| g.owner(v)).collect();
    owner.extend(std::iter::repeat(Owner::P0).take(live.len()));

    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| !g.is_live_edge(u, v))
        .collect();
    for (idx, &(u, v)) in live.iter().enumerate() {
        edges.push((u, n + idx));
        edges.push((n + idx, v));
    }

    let game = GameGraph::new(owner, &edges, &[]).expect("reduction preserves well-formedness");

    let mut out_pairs: Vec<RabinPair> = pairs
        .iter()
        .map(|p| RabinPair {
            goal: VertexSet::from_ids(big, p.goal.iter()),
            avoid: VertexSet::from_ids(big, p.avoid.iter()),
        })
        .collect();
    for (idx, &(u, _)) in live.iter().enumerate() {
        out_pairs.push(RabinPair {
            goal: VertexSet::singleton(big, u),
            avoid: VertexSet::singleton(big, n + idx),
        });
    }

    StreettReduction {
        game,
        pairs: out_pairs,
        original: VertexSet::from_ids(big, 0..n),
    }
}

/// Result of [`gen_buchi_counter_product`]: a safe-Büchi game over
/// vertex–counter states.
#[derive(Clone, Debug)]
pub struct CounterProduct {
    pub game: GameGraph,
    /// Product states where the goal counter completes a full cycle.
    pub goal: VertexSet,
    /// The safety region (all product states).
    pub safe: VertexSet,
    n: usize,
    s: usize,
}

impl CounterProduct {
    /// Product state for original vertex `v` with the counter at its initial
    /// value.
    pub fn embed(&self, v: usize) -> usize {
        v * self.s
    }

    /// Splits a product state into `(vertex, counter)`, counter in `1..=s`.
    pub fn project(&self, id: usize) -> (usize, usize) {
        (id / self.s, id % self.s + 1)
    }

    pub fn original_n(&self) -> usize {
        self.n
    }

    pub fn counter_range(&self) -> usize {
        self.s
    }
}

/// Builds the counter product for a generalized Büchi condition: states are
/// `(v, b)`, the counter advances from `b` to `b⁺` when `v` lies in goal `b`,
/// and the product Büchi goal is "counter `s` sees goal `s`". A play visits
/// the product goal infinitely often iff it visits every original goal set
/// infinitely often. Live edges and ownership lift componentwise.
pub fn gen_buchi_counter_product(
    g: &GameGraph,
    goals: &[VertexSet],
) -> Result<CounterProduct, TransformError> {
    let s = goals.len();
    if s == 0 {
        return Err(TransformError::NoGoals);
    }
    let n = g.n();
    let id = |v: usize, b: usize| v * s + (b - 1);

    let mut owner = Vec::with_capacity(n * s);
    for v in 0..n {
        for _ in 0..s {
            owner.push(g.owner(v));
        }
    }

    let step = |v: usize, b: usize| if goals[b - 1].contains(v) { b % s + 1 } else { b };
    let mut edges = Vec::new();
    let mut live = Vec::new();
    for v in 0..n {
        for b in 1..=s {
            let nb = step(v, b);
            for &w in g.successors(v) {
                edges.push((id(v, b), id(w, nb)));
            }
            for &w in g.live_successors(v) {
                live.push((id(v, b), id(w, nb)));
            }
        }
    }

    let game = GameGraph::new(owner, &edges, &live).expect("product preserves well-formedness");
    let goal = VertexSet::from_ids(n * s, goals[s - 1].iter().map(|v| id(v, s)));

    Ok(CounterProduct { game, goal, safe: VertexSet::full(n * s), n, s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;

    #[test]
    fn muller_encoding_shape() {
        let sets = vec![VertexSet::from_ids(4, [1, 2])];
        let pairs = muller_to_gen_rabin(&sets).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].goals, vec![VertexSet::singleton(4, 1), VertexSet::singleton(4, 2)]);
        assert_eq!(pairs[0].avoid, VertexSet::from_ids(4, [0, 3]));
        assert!(muller_to_gen_rabin(&[VertexSet::empty(3)]).is_err());
    }

    #[test]
    fn gr1_encoding_shape() {
        let a = vec![VertexSet::from_ids(3, [0])];
        let f = vec![VertexSet::from_ids(3, [1]), VertexSet::from_ids(3, [2])];
        let pairs = gr1_to_gen_rabin(3, &a, &f);
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].goals, vec![VertexSet::full(3)]);
        assert_eq!(pairs[0].avoid, a[0]);
        assert_eq!(pairs[1].goals, f);
        assert!(pairs[1].avoid.is_empty());
    }

    #[test]
    fn parity_chain_is_a_chain() {
        let (g, colors) = demo::parity_triangle();
        let pairs = parity_to_rabin_chain(&colors);
        assert_eq!(pairs.len(), 2);
        // F_2 = colors ≥ 2 = {0, 2}; F_3 = {0, 2}; F_4 = {0}; F_5 = ∅.
        assert_eq!(pairs[0].goal, VertexSet::from_ids(3, [0, 2]));
        assert_eq!(pairs[0].avoid, VertexSet::from_ids(3, [0, 2]));
        assert_eq!(pairs[1].goal, VertexSet::from_ids(3, [0]));
        assert!(pairs[1].avoid.is_empty());
        let report = validate(&g, &WinningCondition::RabinChain { pairs });
        assert!(report.is_valid(), "{:?}", report.issues);
    }

    #[test]
    fn cobuchi_encoding_shape() {
        let a = vec![VertexSet::from_ids(3, [0, 1])];
        let pairs = gen_cobuchi_to_rabin(&a);
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].goal.is_full());
        assert_eq!(pairs[0].avoid, VertexSet::from_ids(3, [2]));
    }

    #[test]
    fn streett_reduction_gadget() {
        let (g, pairs) = demo::live_escape_pair();
        let red = naive_streett_reduction(&g, &pairs);
        // One live edge → one observer vertex and one extra pair.
        assert_eq!(red.game.n(), 8);
        assert!(!red.game.has_live_edges());
        assert_eq!(red.pairs.len(), 3);
        assert_eq!(red.original, VertexSet::from_ids(8, 0..7));
        // The live edge (1, 2) is rerouted through the observer 7.
        assert!(!red.game.successors(1).contains(&2));
        assert_eq!(red.game.successors(7), &[2]);
        assert_eq!(red.pairs[2].goal, VertexSet::singleton(8, 1));
        assert_eq!(red.pairs[2].avoid, VertexSet::singleton(8, 7));
    }

    #[test]
    fn counter_product_semantics() {
        let (g, goal) = demo::live_loop();
        let goals = vec![goal, VertexSet::from_ids(2, [0])];
        let prod = gen_buchi_counter_product(&g, &goals).unwrap();
        assert_eq!(prod.game.n(), 4);
        assert_eq!(prod.embed(1), 2);
        assert_eq!(prod.project(3), (1, 2));
        // Goal: counter 2 at a vertex of goal set 2 (= vertex 0).
        assert_eq!(prod.goal, VertexSet::from_ids(4, [1]));
        // From (1, 1): vertex 1 is in goal 1, so the counter advances.
        assert_eq!(prod.game.successors(prod.embed(1)), &[1]);
        // Live edge (0, 1) lifts with the counter transition of vertex 0:
        // from (0, 1) the counter stays at 1, from (0, 2) it wraps to 1.
        assert!(prod.game.is_live_edge(0, 2));
        assert!(prod.game.is_live_edge(1, 2));
    }

    #[test]
    fn validate_flags_problems() {
        let g = GameGraph::new(
            vec![Owner::P0, Owner::P1],
            &[(0, 1), (1, 0), (0, 0)],
            &[(0, 0)],
        )
        .unwrap();
        let cond = WinningCondition::Buchi { goal: VertexSet::singleton(2, 0) };
        let report = validate(&g, &cond);
        assert!(!report.is_valid());
        assert!(report.errors().any(|i| i.kind == IssueKind::LiveEdgeFromP0));

        let g2 = GameGraph::new(vec![Owner::P0, Owner::P1], &[(0, 1)], &[]).unwrap();
        let report = validate(&g2, &cond);
        assert!(report.is_valid());
        assert!(report.warnings().any(|i| i.kind == IssueKind::DeadEnd));

        let bad_universe = WinningCondition::Buchi { goal: VertexSet::singleton(5, 0) };
        assert!(validate(&g2, &bad_universe).errors().any(|i| i.kind == IssueKind::UniverseMismatch));

        let not_partition = WinningCondition::Parity {
            colors: vec![VertexSet::from_ids(2, [0]), VertexSet::from_ids(2, [0])],
        };
        assert!(validate(&g2, &not_partition)
            .errors()
            .any(|i| i.kind == IssueKind::ParityNotPartition));

        let bad_chain = WinningCondition::RabinChain {
            pairs: vec![RabinPair {
                goal: VertexSet::from_ids(2, [0]),
                avoid: VertexSet::from_ids(2, [1]),
            }],
        };
        assert!(validate(&g2, &bad_chain)
            .errors()
            .any(|i| i.kind == IssueKind::ChainInclusionViolated));

        let empty = WinningCondition::Rabin { pairs: vec![] };
        assert!(validate(&g2, &empty).errors().any(|i| i.kind == IssueKind::EmptyCondition));
    }
}
