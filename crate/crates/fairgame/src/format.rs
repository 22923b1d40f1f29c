//! Reading and writing the v1 game file format.
//!
//! Line-oriented text; `#` starts a comment anywhere on a line:
//!
//! ```text
//! fairgame v1
//! vertex a p1
//! vertex b p0
//! edge a b live
//! edge b a
//! condition rabin
//! G1: b
//! R1: a
//! ```
//!
//! Vertex names are arbitrary whitespace-free strings (without `:` and not
//! clashing with the format's keywords), mapped to dense ids in the order of
//! their `vertex` lines. A file carries exactly one arena and one condition.
//! Stochastic games use the owner tag `random` and cannot declare live edges
//! (randomness already provides the fairness). The condition block names its
//! sets per type: `T`/`Q` for reach and safety, `F`/`F1…` for Büchi
//! families, `A`/`A1…` for co-Büchi families and GR(1) assumptions,
//! `G1`/`R1`… for Rabin pairs, `G1.1`/`R1`… for generalized Rabin,
//! `color1…` for parity, and `G1…` for GR(1) guarantees. An omitted `Q`
//! means "everywhere"; omitted Rabin sets and parity classes are empty.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::cond::{GenRabinPair, RabinPair, WinningCondition};
use crate::graph::{GameGraph, Owner};
use crate::sets::VertexSet;
use crate::stochastic::{SOwner, StochasticGameGraph};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header: the first line must be \"fairgame v1\"")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    At { line: usize, msg: String },
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::At { line, msg: msg.into() }
}

/// Errors of [`parse_game`]: I/O plus everything [`parse_str`] reports.
#[derive(Error, Debug)]
pub enum FileError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// The arena of a parsed file: deterministic (two players, possibly live
/// edges) or stochastic (a third, random owner; no live edges).
#[derive(Clone, Debug, PartialEq)]
pub enum Arena {
    Deterministic(GameGraph),
    Stochastic(StochasticGameGraph),
}

impl Arena {
    pub fn n(&self) -> usize {
        match self {
            Arena::Deterministic(g) => g.n(),
            Arena::Stochastic(sg) => sg.n(),
        }
    }
}

/// A parsed game file: arena, condition, and the vertex names in id order.
#[derive(Clone, Debug, PartialEq)]
pub struct GameFile {
    pub arena: Arena,
    pub cond: WinningCondition,
    pub names: Vec<String>,
}

impl GameFile {
    /// Wraps an arena and condition with the default `v0`, `v1`, … names.
    pub fn with_default_names(arena: Arena, cond: WinningCondition) -> GameFile {
        let names = (0..arena.n()).map(|v| format!("v{v}")).collect();
        GameFile { arena, cond, names }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }
}

/// Parses a game file from disk.
pub fn parse_game(path: &Path) -> Result<GameFile, FileError> {
    Ok(parse_str(&fs::read_to_string(path)?)?)
}

struct SetLine {
    name: String,
    ids: Vec<usize>,
    line: usize,
}

/// Parses the v1 text format.
pub fn parse_str(text: &str) -> Result<GameFile, ParseError> {
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if !tokens.is_empty() {
            rows.push((i + 1, tokens));
        }
    }
    match rows.first() {
        Some((_, t)) if t == &["fairgame", "v1"] => {}
        _ => return Err(ParseError::MissingHeader),
    }
    let last_line = rows.last().map(|(l, _)| *l).unwrap_or(1);

    // First pass: vertex declarations fix the name-to-id mapping, so edges
    // and sets may reference vertices declared later in the file.
    let mut names: Vec<String> = Vec::new();
    let mut owners: Vec<SOwner> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (line, t) in rows.iter().skip(1) {
        if t[0] != "vertex" {
            continue;
        }
        if t.len() != 3 {
            return Err(err(*line, "vertex line must be \"vertex <name> <p0|p1|random>\""));
        }
        let name = t[1];
        let reserved = matches!(name, "live" | "vertex" | "edge" | "condition" | "p0" | "p1" | "random");
        if reserved || name.contains(':') {
            return Err(err(*line, format!("invalid vertex name {name}")));
        }
        if index.contains_key(name) {
            return Err(err(*line, format!("duplicate vertex {name}")));
        }
        let owner = match t[2] {
            "p0" => SOwner::P0,
            "p1" => SOwner::P1,
            "random" => SOwner::Random,
            o => return Err(err(*line, format!("unknown owner {o}"))),
        };
        index.insert(name.to_string(), names.len());
        names.push(name.to_string());
        owners.push(owner);
    }
    if names.is_empty() {
        return Err(err(last_line, "game needs at least one vertex"));
    }
    let lookup = |line: usize, name: &str| -> Result<usize, ParseError> {
        index.get(name).copied().ok_or_else(|| err(line, format!("unknown vertex {name}")))
    };

    // Second pass: edges, the condition line, and its set lines.
    let stochastic = owners.contains(&SOwner::Random);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut live: Vec<(usize, usize)> = Vec::new();
    let mut cond_kind: Option<(String, usize)> = None;
    let mut sets: Vec<SetLine> = Vec::new();
    for (line, t) in rows.iter().skip(1) {
        match t[0] {
            "vertex" => {}
            "edge" => {
                let tagged = t.len() == 4 && t[3] == "live";
                if t.len() != 3 && !tagged {
                    return Err(err(*line, "edge line must be \"edge <from> <to> [live]\""));
                }
                let u = lookup(*line, t[1])?;
                let v = lookup(*line, t[2])?;
                edges.push((u, v));
                if tagged {
                    if stochastic {
                        return Err(err(*line, "stochastic games cannot declare live edges"));
                    }
                    if owners[u] == SOwner::P0 {
                        return Err(err(*line, format!("live edge from Player 0 vertex {}", t[1])));
                    }
                    live.push((u, v));
                }
            }
            "condition" => {
                if t.len() != 2 {
                    return Err(err(*line, "condition line must be \"condition <type>\""));
                }
                if cond_kind.is_some() {
                    return Err(err(*line, "multiple conditions; a file carries exactly one"));
                }
                cond_kind = Some((t[1].to_string(), *line));
            }
            first if first.ends_with(':') => {
                if cond_kind.is_none() {
                    return Err(err(*line, "set line outside a condition block"));
                }
                let name = first[..first.len() - 1].to_string();
                if name.is_empty() {
                    return Err(err(*line, "set line needs a name before the colon"));
                }
                let ids = t[1..]
                    .iter()
                    .map(|m| lookup(*line, m))
                    .collect::<Result<Vec<_>, _>>()?;
                sets.push(SetLine { name, ids, line: *line });
            }
            other => return Err(err(*line, format!("unknown directive {other}"))),
        }
    }
    let (kind, kind_line) = cond_kind.ok_or_else(|| err(last_line, "missing condition"))?;
    let cond = build_condition(&kind, kind_line, sets, names.len())?;

    let arena = if stochastic {
        let sg = StochasticGameGraph::new(owners, &edges).expect("vertices were checked");
        Arena::Stochastic(sg)
    } else {
        let owner: Vec<Owner> = owners
            .iter()
            .map(|o| if *o == SOwner::P0 { Owner::P0 } else { Owner::P1 })
            .collect();
        let g = GameGraph::new(owner, &edges, &live).expect("vertices were checked");
        Arena::Deterministic(g)
    };
    Ok(GameFile { arena, cond, names })
}

/// Assembles the condition from its named set lines.
fn build_condition(
    kind: &str,
    kind_line: usize,
    sets: Vec<SetLine>,
    n: usize,
) -> Result<WinningCondition, ParseError> {
    let mut map: BTreeMap<String, (VertexSet, usize)> = BTreeMap::new();
    for s in sets {
        let set = VertexSet::from_ids(n, s.ids.iter().copied());
        if map.insert(s.name.clone(), (set, s.line)).is_some() {
            return Err(err(s.line, format!("duplicate set {}", s.name)));
        }
    }

    let take = |map: &mut BTreeMap<String, (VertexSet, usize)>, name: &str| {
        map.remove(name).map(|(s, _)| s)
    };
    let take_required = |map: &mut BTreeMap<String, (VertexSet, usize)>,
                         name: &str|
     -> Result<VertexSet, ParseError> {
        take(map, name).ok_or_else(|| err(kind_line, format!("condition {kind} needs a {name} set")))
    };
    // An omitted Q means the whole arena.
    let take_safe = |map: &mut BTreeMap<String, (VertexSet, usize)>| {
        take(map, "Q").unwrap_or_else(|| VertexSet::full(n))
    };

    let cond = match kind {
        "safe_reach" => WinningCondition::SafeReach {
            target: take_required(&mut map, "T")?,
            safe: take_safe(&mut map),
        },
        "safety" => WinningCondition::Safety { safe: take_safe(&mut map) },
        "buchi" => WinningCondition::Buchi { goal: take_required(&mut map, "F")? },
        "safe_buchi" => WinningCondition::SafeBuchi {
            goal: take_required(&mut map, "F")?,
            safe: take_safe(&mut map),
        },
        "gen_buchi" => {
            WinningCondition::GenBuchi { goals: take_family(&mut map, "F", kind, kind_line)? }
        }
        "cobuchi" => WinningCondition::CoBuchi { allowed: take_required(&mut map, "A")? },
        "gen_cobuchi" => {
            WinningCondition::GenCoBuchi { allowed: take_family(&mut map, "A", kind, kind_line)? }
        }
        "rabin" => WinningCondition::Rabin { pairs: take_pairs(&mut map, n) },
        "rabin_chain" => WinningCondition::RabinChain { pairs: take_pairs(&mut map, n) },
        "gen_rabin" => {
            WinningCondition::GenRabin { pairs: take_gen_pairs(&mut map, n, kind_line)? }
        }
        "parity" => {
            // Parity classes may legitimately be empty, so gaps default to
            // the empty set instead of erroring like the strict families.
            let mut c = 0;
            for key in map.keys() {
                if let Some(i) = family_index(key, "color") {
                    c = c.max(i);
                }
            }
            let colors = (1..=c)
                .map(|i| take(&mut map, &format!("color{i}")).unwrap_or_else(|| VertexSet::empty(n)))
                .collect();
            WinningCondition::Parity { colors }
        }
        "gr1" => WinningCondition::Gr1 {
            assumptions: take_family(&mut map, "A", kind, kind_line)?,
            guarantees: take_family(&mut map, "G", kind, kind_line)?,
        },
        "muller" => {
            WinningCondition::Muller { sets: take_family(&mut map, "F", kind, kind_line)? }
        }
        _ => return Err(err(kind_line, format!("unknown condition type {kind}"))),
    };
    if let Some((name, (_, line))) = map.iter().next() {
        return Err(err(*line, format!("set {name} does not belong to condition {kind}")));
    }
    Ok(cond)
}

/// `F3` → `3` for prefix `F`; `None` if the key is not `prefix` + integer ≥ 1.
fn family_index(key: &str, prefix: &str) -> Option<usize> {
    key.strip_prefix(prefix)?.parse().ok().filter(|&i| i >= 1)
}

/// `G2.3` → `(2, 3)`: pair 2, goal 3.
fn pair_goal_index(key: &str) -> Option<(usize, usize)> {
    let (a, b) = key.strip_prefix('G')?.split_once('.')?;
    let j = a.parse().ok().filter(|&j| j >= 1)?;
    let i = b.parse().ok().filter(|&i| i >= 1)?;
    Some((j, i))
}

/// The sets `prefix1`, `prefix2`, …: indices must be contiguous from 1.
fn take_family(
    map: &mut BTreeMap<String, (VertexSet, usize)>,
    prefix: &str,
    kind: &str,
    kind_line: usize,
) -> Result<Vec<VertexSet>, ParseError> {
    let mut max = 0;
    for key in map.keys() {
        if let Some(i) = family_index(key, prefix) {
            max = max.max(i);
        }
    }
    let mut out = Vec::with_capacity(max);
    for i in 1..=max {
        match map.remove(&format!("{prefix}{i}")) {
            Some((s, _)) => out.push(s),
            None => {
                return Err(err(
                    kind_line,
                    format!("condition {kind} needs sets {prefix}1..{prefix}{max} without gaps"),
                ))
            }
        }
    }
    if out.is_empty() {
        return Err(err(kind_line, format!("condition {kind} needs at least a {prefix}1 set")));
    }
    Ok(out)
}

/// Rabin pairs `G1`/`R1`, …: the pair count is the largest index mentioned;
/// omitted sets are empty.
fn take_pairs(map: &mut BTreeMap<String, (VertexSet, usize)>, n: usize) -> Vec<RabinPair> {
    let mut k = 0;
    for key in map.keys() {
        for prefix in ["G", "R"] {
            if let Some(i) = family_index(key, prefix) {
                k = k.max(i);
            }
        }
    }
    (1..=k)
        .map(|j| RabinPair {
            goal: map.remove(&format!("G{j}")).map(|(s, _)| s).unwrap_or_else(|| VertexSet::empty(n)),
            avoid: map.remove(&format!("R{j}")).map(|(s, _)| s).unwrap_or_else(|| VertexSet::empty(n)),
        })
        .collect()
}

/// Generalized Rabin pairs `G<j>.<i>` / `R<j>`: goal indices per pair must
/// be contiguous from 1.
fn take_gen_pairs(
    map: &mut BTreeMap<String, (VertexSet, usize)>,
    n: usize,
    kind_line: usize,
) -> Result<Vec<GenRabinPair>, ParseError> {
    let mut k = 0;
    let mut widths: BTreeMap<usize, usize> = BTreeMap::new();
    for key in map.keys() {
        if let Some((j, i)) = pair_goal_index(key) {
            k = k.max(j);
            let w = widths.entry(j).or_insert(0);
            *w = (*w).max(i);
        } else if let Some(j) = family_index(key, "R") {
            k = k.max(j);
        }
    }
    let mut pairs = Vec::with_capacity(k);
    for j in 1..=k {
        let m = widths.get(&j).copied().unwrap_or(0);
        let mut goals = Vec::with_capacity(m);
        for i in 1..=m {
            match map.remove(&format!("G{j}.{i}")) {
                Some((s, _)) => goals.push(s),
                None => {
                    return Err(err(
                        kind_line,
                        format!("pair {j} needs goals G{j}.1..G{j}.{m} without gaps"),
                    ))
                }
            }
        }
        let avoid = map.remove(&format!("R{j}")).map(|(s, _)| s).unwrap_or_else(|| VertexSet::empty(n));
        pairs.push(GenRabinPair { goals, avoid });
    }
    Ok(pairs)
}

/// Serializes a game file in canonical form: vertices in id order, edges in
/// id order with `live` tags, then the condition block. The output is
/// byte-identical across runs and parses back to an equal [`GameFile`].
pub fn emit_game(file: &GameFile) -> String {
    let names = &file.names;
    let mut out = String::from("fairgame v1\n");
    match &file.arena {
        Arena::Deterministic(g) => {
            for v in 0..g.n() {
                let tag = if g.owner(v) == Owner::P0 { "p0" } else { "p1" };
                out.push_str(&format!("vertex {} {}\n", names[v], tag));
            }
            for u in 0..g.n() {
                for &v in g.successors(u) {
                    let tag = if g.live_successors(u).contains(&v) { " live" } else { "" };
                    out.push_str(&format!("edge {} {}{}\n", names[u], names[v], tag));
                }
            }
        }
        Arena::Stochastic(sg) => {
            for v in 0..sg.n() {
                let tag = match sg.owner(v) {
                    SOwner::P0 => "p0",
                    SOwner::P1 => "p1",
                    SOwner::Random => "random",
                };
                out.push_str(&format!("vertex {} {}\n", names[v], tag));
            }
            for u in 0..sg.n() {
                for &v in sg.successors(u) {
                    out.push_str(&format!("edge {} {}\n", names[u], names[v]));
                }
            }
        }
    }
    out.push_str(&format!("condition {}\n", file.cond.kind_name()));
    for line in condition_set_lines(&file.cond, names) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn set_line(label: &str, s: &VertexSet, names: &[String]) -> String {
    let mut line = format!("{label}:");
    for v in s.iter() {
        line.push(' ');
        line.push_str(&names[v]);
    }
    line
}

fn condition_set_lines(cond: &WinningCondition, names: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    match cond {
        WinningCondition::SafeReach { target, safe } => {
            out.push(set_line("T", target, names));
            out.push(set_line("Q", safe, names));
        }
        WinningCondition::Safety { safe } => out.push(set_line("Q", safe, names)),
        WinningCondition::Buchi { goal } => out.push(set_line("F", goal, names)),
        WinningCondition::SafeBuchi { goal, safe } => {
            out.push(set_line("F", goal, names));
            out.push(set_line("Q", safe, names));
        }
        WinningCondition::GenBuchi { goals } => {
            for (i, s) in goals.iter().enumerate() {
                out.push(set_line(&format!("F{}", i + 1), s, names));
            }
        }
        WinningCondition::CoBuchi { allowed } => out.push(set_line("A", allowed, names)),
        WinningCondition::GenCoBuchi { allowed } => {
            for (i, s) in allowed.iter().enumerate() {
                out.push(set_line(&format!("A{}", i + 1), s, names));
            }
        }
        WinningCondition::Rabin { pairs } | WinningCondition::RabinChain { pairs } => {
            for (j, p) in pairs.iter().enumerate() {
                out.push(set_line(&format!("G{}", j + 1), &p.goal, names));
                out.push(set_line(&format!("R{}", j + 1), &p.avoid, names));
            }
        }
        WinningCondition::GenRabin { pairs } => {
            for (j, p) in pairs.iter().enumerate() {
                for (i, goal) in p.goals.iter().enumerate() {
                    out.push(set_line(&format!("G{}.{}", j + 1, i + 1), goal, names));
                }
                out.push(set_line(&format!("R{}", j + 1), &p.avoid, names));
            }
        }
        WinningCondition::Parity { colors } => {
            for (i, s) in colors.iter().enumerate() {
                out.push(set_line(&format!("color{}", i + 1), s, names));
            }
        }
        WinningCondition::Gr1 { assumptions, guarantees } => {
            for (j, s) in assumptions.iter().enumerate() {
                out.push(set_line(&format!("A{}", j + 1), s, names));
            }
            for (j, s) in guarantees.iter().enumerate() {
                out.push(set_line(&format!("G{}", j + 1), s, names));
            }
        }
        WinningCondition::Muller { sets } => {
            for (j, s) in sets.iter().enumerate() {
                out.push(set_line(&format!("F{}", j + 1), s, names));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{random_fair_game, random_mdp};
    use crate::demo;

    /// The two-pair escape arena with its single live edge, under its
    /// customary q1..q7 names.
    pub(crate) const ESCAPE_PAIR_FILE: &str = "\
fairgame v1
# two Rabin pairs, one live edge
vertex q1 p1
vertex q2 p1
vertex q3 p1
vertex q4 p1
vertex q5 p0
vertex q6 p0
vertex q7 p0
edge q1 q1
edge q1 q2
edge q2 q2
edge q2 q3 live
edge q3 q3
edge q3 q6
edge q4 q4
edge q4 q3
edge q5 q1
edge q5 q3
edge q6 q2
edge q6 q7
edge q7 q4
condition rabin
G1: q1 q4
R1: q2 q5
G2: q3
R2: q1 q4 q7
";

    #[test]
    fn escape_pair_file_parses_to_the_demo_arena() {
        let file = parse_str(ESCAPE_PAIR_FILE).unwrap();
        let (g, pairs) = demo::live_escape_pair();
        assert_eq!(file.names, vec!["q1", "q2", "q3", "q4", "q5", "q6", "q7"]);
        assert_eq!(file.arena, Arena::Deterministic(g));
        assert_eq!(file.cond, WinningCondition::Rabin { pairs });
        if let Arena::Deterministic(g) = &file.arena {
            assert_eq!(g.live_edges(), vec![(1, 2)]);
        }
    }

    #[test]
    fn missing_or_broken_header_is_rejected() {
        assert_eq!(parse_str(""), Err(ParseError::MissingHeader));
        assert_eq!(parse_str("# only a comment\n"), Err(ParseError::MissingHeader));
        assert_eq!(parse_str("fairgame v2\n"), Err(ParseError::MissingHeader));
    }

    #[test]
    fn structural_errors_carry_positions() {
        let live_from_p0 = "fairgame v1\nvertex a p0\nvertex b p1\nedge a b live\ncondition buchi\nF: b\n";
        assert_eq!(
            parse_str(live_from_p0),
            Err(err(4, "live edge from Player 0 vertex a"))
        );

        let stochastic_live = "fairgame v1\nvertex a random\nvertex b p1\nedge a b live\ncondition buchi\nF: b\n";
        assert_eq!(
            parse_str(stochastic_live),
            Err(err(4, "stochastic games cannot declare live edges"))
        );

        let unknown_kind = "fairgame v1\nvertex a p0\nedge a a\ncondition streett\nF: a\n";
        assert_eq!(parse_str(unknown_kind), Err(err(4, "unknown condition type streett")));

        let unknown_vertex = "fairgame v1\nvertex a p0\nedge a z\ncondition buchi\nF: a\n";
        assert_eq!(parse_str(unknown_vertex), Err(err(3, "unknown vertex z")));

        let two_conditions =
            "fairgame v1\nvertex a p0\nedge a a\ncondition buchi\nF: a\ncondition safety\n";
        assert_eq!(
            parse_str(two_conditions),
            Err(err(6, "multiple conditions; a file carries exactly one"))
        );

        let stray_set = "fairgame v1\nvertex a p0\nedge a a\nF: a\ncondition buchi\n";
        assert_eq!(parse_str(stray_set), Err(err(4, "set line outside a condition block")));

        let gap = "fairgame v1\nvertex a p0\nedge a a\ncondition gen_buchi\nF1: a\nF3: a\n";
        assert_eq!(
            parse_str(gap),
            Err(err(4, "condition gen_buchi needs sets F1..F3 without gaps"))
        );

        let no_cond = "fairgame v1\nvertex a p0\nedge a a\n";
        assert_eq!(parse_str(no_cond), Err(err(3, "missing condition")));
    }

    #[test]
    fn omitted_safe_set_means_everywhere() {
        let text = "fairgame v1\nvertex a p0\nvertex b p1\nedge a b\nedge b a\ncondition safe_buchi\nF: a\n";
        let file = parse_str(text).unwrap();
        assert_eq!(
            file.cond,
            WinningCondition::SafeBuchi {
                goal: VertexSet::singleton(2, 0),
                safe: VertexSet::full(2),
            }
        );
    }

    #[test]
    fn forward_references_resolve_via_declaration_order() {
        let text = "fairgame v1\nedge a b\nvertex a p0\nvertex b p1\nedge b a\ncondition buchi\nF: b\n";
        let file = parse_str(text).unwrap();
        assert_eq!(file.names, vec!["a", "b"]);
        if let Arena::Deterministic(g) = &file.arena {
            assert_eq!(g.successors(0), &[1]);
            assert_eq!(g.successors(1), &[0]);
        } else {
            panic!("expected a deterministic arena");
        }
    }

    #[test]
    fn parity_gaps_default_to_empty_classes() {
        let text = "fairgame v1\nvertex a p0\nvertex b p1\nedge a b\nedge b a\n\
                    condition parity\ncolor1: a\ncolor3: b\n";
        let file = parse_str(text).unwrap();
        assert_eq!(
            file.cond,
            WinningCondition::Parity {
                colors: vec![
                    VertexSet::singleton(2, 0),
                    VertexSet::empty(2),
                    VertexSet::singleton(2, 1),
                ]
            }
        );
    }

    #[test]
    fn emit_then_parse_is_identity_on_generated_instances() {
        for seed in 0..50 {
            let (g, pairs) = random_fair_game(seed, 9, 2, 0.5, 0.2, 0.2).unwrap();
            let cond = if seed % 2 == 0 {
                WinningCondition::Rabin { pairs }
            } else {
                WinningCondition::GenRabin {
                    pairs: pairs
                        .into_iter()
                        .map(|p| GenRabinPair { goals: vec![p.goal], avoid: p.avoid })
                        .collect(),
                }
            };
            let file = GameFile::with_default_names(Arena::Deterministic(g), cond);
            let emitted = emit_game(&file);
            let parsed = parse_str(&emitted).unwrap();
            assert_eq!(parsed, file, "seed {seed}");
            assert_eq!(emit_game(&parsed), emitted, "seed {seed}");
        }
    }

    #[test]
    fn stochastic_files_round_trip() {
        for seed in 0..50 {
            let (sg, pairs) = random_mdp(seed, 7, 2).unwrap();
            let cond = WinningCondition::GenRabin { pairs };
            let file = GameFile::with_default_names(Arena::Stochastic(sg), cond);
            let parsed = parse_str(&emit_game(&file)).unwrap();
            assert_eq!(parsed, file, "seed {seed}");
        }
    }

    #[test]
    fn gr1_and_muller_blocks_parse() {
        let text = "fairgame v1\nvertex a p0\nvertex b p1\nedge a b\nedge b a\n\
                    condition gr1\nA1: b\nG1: a\nG2: b\n";
        let file = parse_str(text).unwrap();
        assert_eq!(
            file.cond,
            WinningCondition::Gr1 {
                assumptions: vec![VertexSet::singleton(2, 1)],
                guarantees: vec![VertexSet::singleton(2, 0), VertexSet::singleton(2, 1)],
            }
        );

        let text = "fairgame v1\nvertex a p0\nvertex b p1\nedge a b\nedge b a\n\
                    condition muller\nF1: a b\n";
        let file = parse_str(text).unwrap();
        assert_eq!(file.cond, WinningCondition::Muller { sets: vec![VertexSet::full(2)] });
    }
}
