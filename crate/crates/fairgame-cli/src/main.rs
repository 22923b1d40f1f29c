//! Command-line front end for the fairgame solver.
//!
//! `fairgame solve <file>` prints the winning region of a game file;
//! `check` cross-validates the solver against the brute-force oracle;
//! `bench` generates random instances; `derand` reduces a stochastic game
//! to a fair two-player game; `steps` reports the symbolic work of a solve.
//!
//! Exit codes: 0 success, 1 usage or generator errors, 2 parse/validation
//! errors, 3 solver/oracle mismatch.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use fairgame::bench::{random_fair_game, random_mdp, GenError};
use fairgame::cond::{self, validate, GenRabinPair, RabinPair, TransformError, WinningCondition};
use fairgame::format::{emit_game, parse_game, Arena, FileError, GameFile};
use fairgame::graph::GameGraph;
use fairgame::oracle::{self, OracleError};
use fairgame::sets::VertexSet;
use fairgame::solver::{solve, Frames, SolveError, SolveOpts, SolveResult, SolveStats};
use fairgame::stochastic::{derand, mdp_almost_sure_oracle, StochasticError};
use fairgame::strategy::{
    extract_p0_strategy, extract_rabin_ranks, extract_reach_ranks, StrategyError,
};

#[derive(Parser)]
#[command(name = "fairgame", version, about = "Solver for two-player games under transition fairness")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a game file and print the winning region of Player 0.
    Solve {
        file: PathBuf,
        /// Warm-start bound for nested fixpoints; 0 disables acceleration.
        /// The printed result does not depend on this value.
        #[arg(long, value_name = "M", default_value_t = 0)]
        accel: u32,
        /// Write the extracted Player 0 strategy to this file.
        #[arg(long, value_name = "OUT")]
        strategy: Option<PathBuf>,
        /// Print per-vertex fixpoint ranks alongside the region.
        #[arg(long)]
        frames: bool,
        /// Print symbolic step totals and per-variable iteration counts.
        #[arg(long)]
        stats: bool,
        /// Cap on parallel workers. The solver is single-threaded, so any
        /// cap of at least 1 is honored trivially.
        #[arg(long, value_name = "N", default_value_t = 1)]
        jobs: usize,
    },
    /// Solve a small game file and cross-check the region against the
    /// independent brute-force oracle. Conditions without a direct oracle
    /// (gen_rabin, gr1, muller on two-player arenas) are rejected.
    Check { file: PathBuf },
    /// Generate a random game file (a fair two-player game, or a Markov
    /// decision process with --mdp).
    Bench {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of vertices.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Number of Rabin pairs.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Fraction of vertices owned by Player 0.
        #[arg(long, default_value_t = 0.5)]
        owner_frac: f64,
        /// Probability that a Player 1 edge is live.
        #[arg(long, default_value_t = 0.3)]
        live_frac: f64,
        /// Expected fraction of vertices per condition set.
        #[arg(long, default_value_t = 0.25)]
        member_frac: f64,
        /// Write to this file instead of stdout.
        #[arg(long, value_name = "OUT")]
        out: Option<PathBuf>,
        /// Generate a Markov decision process instead of a two-player game.
        #[arg(long)]
        mdp: bool,
    },
    /// Replace random vertices by a fair adversary and print the reduced
    /// two-player game. Deterministic inputs pass through unchanged.
    Derand {
        file: PathBuf,
        /// Write to this file instead of stdout.
        #[arg(long, value_name = "OUT")]
        out: Option<PathBuf>,
    },
    /// Print the symbolic step counts for solving a file.
    Steps { file: PathBuf },
}

/// A command failure: the process exit code and a message for stderr.
struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Failure {
        fail(2, e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Failure {
        fail(2, e.to_string())
    }
}

impl From<StrategyError> for Failure {
    fn from(e: StrategyError) -> Failure {
        fail(2, e.to_string())
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Failure {
        fail(2, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        fail(2, format!("oracle: {e}"))
    }
}

impl From<StochasticError> for Failure {
    fn from(e: StochasticError) -> Failure {
        fail(2, format!("oracle: {e}"))
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Failure {
        fail(1, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        fail(2, e.to_string())
    }
}

fn main() -> ExitCode {
    ExitCode::from(run_cli(std::env::args().collect()))
}

/// Runs the CLI on an argv vector (including the program name) and returns
/// the process exit code.
pub fn run_cli(argv: Vec<String>) -> u8 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(text) => {
            // Write the assembled output in one go; a closed pipe (e.g.
            // `fairgame solve f | head`) is not an error.
            use std::io::Write;
            let _ = std::io::stdout().write_all(text.as_bytes());
            0
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Solve { file, accel, strategy, frames, stats, jobs } => {
            cmd_solve(&file, accel, strategy.as_deref(), frames, stats, jobs)
        }
        Cmd::Check { file } => cmd_check(&file),
        Cmd::Bench { seed, n, k, owner_frac, live_frac, member_frac, out, mdp } => {
            cmd_bench(seed, n, k, owner_frac, live_frac, member_frac, out.as_deref(), mdp)
        }
        Cmd::Derand { file, out } => cmd_derand(&file, out.as_deref()),
        Cmd::Steps { file } => cmd_steps(&file),
    }
}

/// The two-player view of a parsed arena: stochastic games are reduced by
/// replacing randomness with a fair adversary, which preserves the
/// almost-sure winning region.
fn deterministic_view(gf: &GameFile) -> GameGraph {
    match &gf.arena {
        Arena::Deterministic(g) => g.clone(),
        Arena::Stochastic(sg) => derand(sg),
    }
}

/// Prints warnings to stderr; errors abort with exit code 2.
fn validate_or_fail(g: &GameGraph, cond: &WinningCondition) -> Result<(), Failure> {
    let report = validate(g, cond);
    for w in report.warnings() {
        eprintln!("warning: {}", w.message);
    }
    if !report.is_valid() {
        let msgs: Vec<&str> = report.errors().map(|e| e.message.as_str()).collect();
        return Err(fail(2, msgs.join("; ")));
    }
    Ok(())
}

fn region_line(region: &VertexSet, names: &[String]) -> String {
    let mut line = String::from("winning:");
    for v in region.iter() {
        line.push(' ');
        line.push_str(&names[v]);
    }
    line
}

fn cmd_solve(
    file: &Path,
    accel: u32,
    strategy_out: Option<&Path>,
    frames: bool,
    stats: bool,
    jobs: usize,
) -> Result<String, Failure> {
    if jobs == 0 {
        return Err(fail(1, "--jobs must be at least 1"));
    }
    let gf = parse_game(file)?;
    let g = deterministic_view(&gf);
    validate_or_fail(&g, &gf.cond)?;
    let opts = SolveOpts { accel, frames: frames || strategy_out.is_some() };
    let result = solve(&g, &gf.cond, opts)?;
    let mut out = region_line(&result.region, &gf.names);
    out.push('\n');
    if frames {
        out.push_str(&frames_text(&gf, &result));
    }
    if stats {
        out.push_str(&stats_text(&result.stats));
    }
    if let Some(path) = strategy_out {
        let strat = extract_p0_strategy(&g, &gf.cond, &result)?;
        fs::write(path, strat.render(&|v| gf.names[v].clone()))?;
    }
    Ok(out)
}

/// Per-vertex fixpoint ranks; vertices outside the region rank `inf`.
fn frames_text(gf: &GameFile, result: &SolveResult) -> String {
    let names = &gf.names;
    let mut out = String::new();
    let table = extract_reach_ranks(result).or_else(|| extract_rabin_ranks(result));
    if let Some(table) = table {
        let ranks = table.plain();
        if ranks.len() == names.len() {
            out.push_str("ranks:\n");
            for (v, name) in names.iter().enumerate() {
                out.push_str(&format!("  {} {}\n", name, ranks[v]));
            }
            return out;
        }
    }
    if let Some(Frames::GenBuchi { ascents }) = &result.frames {
        for (b, ascent) in ascents.iter().enumerate() {
            out.push_str(&format!("ranks (goal {}):\n", b + 1));
            for (v, name) in names.iter().enumerate() {
                match ascent.iter().position(|s| s.contains(v)) {
                    Some(i) => out.push_str(&format!("  {} {}\n", name, i + 1)),
                    None => out.push_str(&format!("  {name} inf\n")),
                }
            }
        }
    }
    out
}

/// The work measures as an aligned table followed by machine-readable
/// `key=value` lines.
fn stats_text(stats: &SolveStats) -> String {
    let mut out = String::new();
    let mut rows: Vec<(String, u64)> = stats
        .steps
        .breakdown()
        .into_iter()
        .map(|(op, count)| (op.to_string(), count))
        .collect();
    rows.push(("total".to_string(), stats.steps.total()));
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    out.push_str("steps:\n");
    for (key, count) in &rows {
        out.push_str(&format!("  {key:<width$} {count:>8}\n"));
    }
    if !stats.iterations.is_empty() {
        out.push_str("iterations:\n");
        let width = stats.iterations.keys().map(|k| k.len()).max().unwrap_or(0);
        for (var, count) in &stats.iterations {
            out.push_str(&format!("  {var:<width$} {count:>8}\n"));
        }
    }
    for (op, count) in stats.steps.breakdown() {
        out.push_str(&format!("steps.{op}={count}\n"));
    }
    out.push_str(&format!("steps.total={}\n", stats.steps.total()));
    for (var, count) in &stats.iterations {
        out.push_str(&format!("iter.{var}={count}\n"));
    }
    out
}

fn cmd_steps(file: &Path) -> Result<String, Failure> {
    let gf = parse_game(file)?;
    let g = deterministic_view(&gf);
    validate_or_fail(&g, &gf.cond)?;
    let result = solve(&g, &gf.cond, SolveOpts::default())?;
    Ok(stats_text(&result.stats))
}

fn cmd_check(file: &Path) -> Result<String, Failure> {
    let gf = parse_game(file)?;
    let g = deterministic_view(&gf);
    validate_or_fail(&g, &gf.cond)?;
    let result = solve(&g, &gf.cond, SolveOpts::default())?;
    let expected = match &gf.arena {
        Arena::Deterministic(g) => deterministic_oracle(g, &gf.cond)?,
        Arena::Stochastic(sg) => {
            let pairs = prefix_independent_pairs(&gf.cond, gf.n())?;
            mdp_almost_sure_oracle(sg, &pairs)?
        }
    };
    if result.region == expected {
        Ok(format!(
            "check passed: solver and oracle agree on {} of {} vertices\n",
            expected.count(),
            gf.n()
        ))
    } else {
        let mut solver_only = result.region.clone();
        solver_only.subtract(&expected);
        let mut oracle_only = expected.clone();
        oracle_only.subtract(&result.region);
        eprintln!("solver only: {}", region_line(&solver_only, &gf.names));
        eprintln!("oracle only: {}", region_line(&oracle_only, &gf.names));
        Err(fail(3, "solver and oracle disagree"))
    }
}

/// The independent brute-force region for conditions with a direct oracle.
fn deterministic_oracle(g: &GameGraph, cond: &WinningCondition) -> Result<VertexSet, Failure> {
    use WinningCondition::*;
    let n = g.n();
    Ok(match cond {
        SafeReach { target, safe } => oracle::brute_force_reach_region(g, target, safe)?,
        Safety { safe } => oracle::brute_force_safety_region(g, safe)?,
        SafeBuchi { goal, safe } => oracle::brute_force_safe_buchi_region(g, goal, safe)?,
        Buchi { goal } => oracle::brute_force_region(
            g,
            &[RabinPair { goal: goal.clone(), avoid: VertexSet::empty(n) }],
        )?,
        CoBuchi { allowed } => {
            oracle::brute_force_region(g, &cond::gen_cobuchi_to_rabin(std::slice::from_ref(allowed)))?
        }
        GenCoBuchi { allowed } => {
            oracle::brute_force_region(g, &cond::gen_cobuchi_to_rabin(allowed))?
        }
        Rabin { pairs } | RabinChain { pairs } => oracle::brute_force_region(g, pairs)?,
        Parity { colors } => {
            oracle::brute_force_region(g, &cond::parity_to_rabin_chain(colors))?
        }
        GenBuchi { goals } => {
            // Reduce to a plain Büchi game on the counter product and read
            // the answer back at the initial counter value.
            let prod = cond::gen_buchi_counter_product(g, goals)?;
            let win = oracle::brute_force_region(
                &prod.game,
                &[RabinPair { goal: prod.goal.clone(), avoid: VertexSet::empty(prod.game.n()) }],
            )?;
            VertexSet::from_ids(n, (0..n).filter(|&v| win.contains(prod.embed(v))))
        }
        GenRabin { .. } | Gr1 { .. } | Muller { .. } => {
            return Err(fail(
                2,
                format!("check does not support condition {} on two-player arenas", cond.kind_name()),
            ))
        }
    })
}

/// Expresses a prefix-independent condition as generalized Rabin pairs for
/// the Markov-decision-process oracle.
fn prefix_independent_pairs(
    cond: &WinningCondition,
    n: usize,
) -> Result<Vec<GenRabinPair>, Failure> {
    use WinningCondition::*;
    let lift = |pairs: Vec<RabinPair>| -> Vec<GenRabinPair> {
        pairs
            .into_iter()
            .map(|p| GenRabinPair { goals: vec![p.goal], avoid: p.avoid })
            .collect()
    };
    Ok(match cond {
        Buchi { goal } => {
            vec![GenRabinPair { goals: vec![goal.clone()], avoid: VertexSet::empty(n) }]
        }
        GenBuchi { goals } => {
            vec![GenRabinPair { goals: goals.clone(), avoid: VertexSet::empty(n) }]
        }
        CoBuchi { allowed } => lift(cond::gen_cobuchi_to_rabin(std::slice::from_ref(allowed))),
        GenCoBuchi { allowed } => lift(cond::gen_cobuchi_to_rabin(allowed)),
        Rabin { pairs } | RabinChain { pairs } => lift(pairs.clone()),
        Parity { colors } => lift(cond::parity_to_rabin_chain(colors)),
        GenRabin { pairs } => pairs.clone(),
        Gr1 { assumptions, guarantees } => cond::gr1_to_gen_rabin(n, assumptions, guarantees),
        Muller { sets } => cond::muller_to_gen_rabin(sets)?,
        SafeReach { .. } | Safety { .. } | SafeBuchi { .. } => {
            return Err(fail(
                2,
                format!(
                    "check on stochastic games needs a prefix-independent condition, not {}",
                    cond.kind_name()
                ),
            ))
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    seed: u64,
    n: usize,
    k: usize,
    owner_frac: f64,
    live_frac: f64,
    member_frac: f64,
    out: Option<&Path>,
    mdp: bool,
) -> Result<String, Failure> {
    let gf = if mdp {
        let (sg, pairs) = random_mdp(seed, n, k)?;
        GameFile::with_default_names(Arena::Stochastic(sg), WinningCondition::GenRabin { pairs })
    } else {
        let (g, pairs) = random_fair_game(seed, n, k, owner_frac, live_frac, member_frac)?;
        GameFile::with_default_names(Arena::Deterministic(g), WinningCondition::Rabin { pairs })
    };
    write_or_print(out, emit_game(&gf))
}

fn cmd_derand(file: &Path, out: Option<&Path>) -> Result<String, Failure> {
    let GameFile { arena, cond, names } = parse_game(file)?;
    let arena = match arena {
        Arena::Stochastic(sg) => Arena::Deterministic(derand(&sg)),
        deterministic => deterministic,
    };
    write_or_print(out, emit_game(&GameFile { arena, cond, names }))
}

/// Routes `text` to the `--out` file or to stdout.
fn write_or_print(out: Option<&Path>, text: String) -> Result<String, Failure> {
    match out {
        Some(path) => {
            fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
