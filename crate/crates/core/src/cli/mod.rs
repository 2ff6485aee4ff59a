//! Command-line front end for the `pgdiv` binary.
//!
//! Exit codes: 0 success, 1 validation failure (invalid instance, infeasible
//! parameters, claim mismatch), 2 malformed input or unreadable files,
//! 3 internal invariant violation.

mod generate;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use indexmap::IndexMap;
use serde::Serialize;

use crate::division::{divide_once_traced, divide_traced, DivisionRun};
use crate::engine::EngineError;
use crate::model::{validate_instance, CheckedInstance, Instance, PictureId, PlayerId, Round};
use crate::oracle::{audit_game, check_injective, trace_stats, TraceStats};

pub use generate::{generate, GenerateError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Malformed(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(err: EngineError) -> Self {
        match err {
            EngineError::TooFewSuits(_) => CliError::Validation(err.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<GenerateError> for CliError {
    fn from(err: GenerateError) -> Self {
        CliError::Validation(err.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "pgdiv", version, about = "Canonical division of injections A x N -> B x N")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded random instance
    Generate(GenerateArgs),
    /// Play one game and write the reduced instance (N-1 suits)
    Run(RunArgs),
    /// Divide all the way down to a map player -> picture
    Divide(RunArgs),
    /// Re-run a division and check a claimed result against it
    Verify(VerifyArgs),
    /// Event statistics per division step
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct GeneratorParams {
    #[arg(long)]
    pub players: Option<usize>,
    #[arg(long)]
    pub pictures: Option<usize>,
    #[arg(long)]
    pub suits: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub params: GeneratorParams,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Input for commands that play games: a file, or generator parameters.
#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long = "in", conflicts_with_all = ["players", "pictures", "suits"])]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub params: GeneratorParams,
    #[arg(long)]
    pub max_round_pairs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Claimed result map {"player": "picture"}
    #[arg(long)]
    pub claim: PathBuf,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Generate this many instances from consecutive seeds
    #[arg(long)]
    pub count: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Print one row per player
    #[arg(long)]
    pub per_player: bool,
}

/// What a command was asked to do, after argument parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Generated {
        num_players: usize,
        num_pictures: usize,
        n_suits: usize,
        seed: u64,
    },
}

fn source_of(args: &InputArgs) -> Result<Source, CliError> {
    if let Some(path) = &args.input {
        return Ok(Source::File(path.clone()));
    }
    let p = &args.params;
    match (p.players, p.pictures, p.suits) {
        (Some(num_players), Some(num_pictures), Some(n_suits)) => Ok(Source::Generated {
            num_players,
            num_pictures,
            n_suits,
            seed: p.seed,
        }),
        _ => Err(CliError::Malformed(
            "give --in FILE or all of --players, --pictures, --suits".into(),
        )),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))
}

/// Instance file text: one key per line and one hand per line.
pub fn instance_json(inst: &Instance) -> String {
    let mut s = String::from("{\n");
    let _ = writeln!(s, "  \"n_suits\": {},", inst.n_suits);
    let _ = writeln!(s, "  \"players\": {},", compact(&inst.players));
    let _ = writeln!(s, "  \"pictures\": {},", compact(&inst.pictures));
    if inst.deal.is_empty() {
        s.push_str("  \"deal\": {}\n}\n");
        return s;
    }
    s.push_str("  \"deal\": {\n");
    for (i, (player, row)) in inst.deal.iter().enumerate() {
        let sep = if i + 1 < inst.deal.len() { "," } else { "" };
        let _ = writeln!(s, "    {}: {}{sep}", compact(player), compact(row));
    }
    s.push_str("  }\n}\n");
    s
}

fn compact<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("value serializes")
}

fn load(source: &Source) -> Result<CheckedInstance, CliError> {
    let inst = match source {
        Source::File(path) => parse_instance(&read_file(path)?)?,
        &Source::Generated {
            num_players,
            num_pictures,
            n_suits,
            seed,
        } => generate(num_players, num_pictures, n_suits, seed)?,
    };
    validate_instance(inst).map_err(|e| CliError::Validation(e.to_string()))
}

/// Result map file: `{"player": "picture", ...}` in declared player order.
pub fn result_json(result: &IndexMap<PlayerId, PictureId>) -> String {
    let mut s = serde_json::to_string_pretty(result).expect("map serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct StepRound<'a> {
    n_suits: usize,
    #[serde(flatten)]
    round: &'a Round,
}

/// Trace file of a full division: the rounds of every step, each line tagged
/// with the suit count of its game.
pub fn division_trace_jsonl(run: &DivisionRun) -> String {
    let mut out = String::new();
    for (step, game) in run.report.steps.iter().zip(&run.games) {
        for round in &game.trace.rounds {
            let line = StepRound {
                n_suits: step.n_suits,
                round,
            };
            out.push_str(&serde_json::to_string(&line).expect("round serializes"));
            out.push('\n');
        }
    }
    out
}

/// Re-derives every game of `run` with the oracle and fails on any violation.
fn audit_run(run: &DivisionRun) -> Result<(), CliError> {
    for (i, game) in run.games.iter().enumerate() {
        let audit = audit_game(&game.initial, &game.trace, &game.final_state);
        if let Some(v) = audit.violations.first() {
            return Err(CliError::Internal(format!("step {}: {v}", i + 1)));
        }
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs) -> Result<String, CliError> {
    let p = &args.params;
    let (Some(players), Some(pictures), Some(suits)) = (p.players, p.pictures, p.suits) else {
        return Err(CliError::Malformed("generate needs --players, --pictures and --suits".into()));
    };
    let json = instance_json(&generate(players, pictures, suits, p.seed)?);
    match &args.out {
        Some(path) => {
            write_file(path, &json)?;
            Ok(String::new())
        }
        None => Ok(json),
    }
}

fn cmd_run(args: &RunArgs) -> Result<String, CliError> {
    let inst = load(&source_of(&args.input)?)?;
    let n = inst.n_suits();
    if n < 2 {
        return Err(CliError::Validation("run needs at least 2 suits".into()));
    }
    let (reduced, trace) = divide_once_traced(inst.deal(), args.input.max_round_pairs)?;

    let mut out = String::new();
    for round in &trace.rounds {
        for event in &round.events {
            let _ = writeln!(out, "round {}: {}", round.round, event.display(n));
        }
    }
    let _ = writeln!(
        out,
        "stable after {} rounds ({} round pairs)",
        trace.rounds.len(),
        trace.round_pairs()
    );
    if let Some(path) = &args.trace {
        write_file(path, &trace.to_jsonl())?;
    }
    let reduced_inst = Instance::from_injection(&reduced, inst.pictures().to_vec());
    match &args.out {
        Some(path) => write_file(path, &instance_json(&reduced_inst))?,
        None => out.push_str(&instance_json(&reduced_inst)),
    }
    Ok(out)
}

fn cmd_divide(args: &RunArgs) -> Result<String, CliError> {
    let inst = load(&source_of(&args.input)?)?;
    let run = divide_traced(inst.deal(), args.input.max_round_pairs)?;
    if let Err(c) = check_injective(run.report.result.iter()) {
        return Err(CliError::Internal(format!(
            "result maps {} and {} to {}",
            c.first, c.second, c.image
        )));
    }
    if let Some(path) = &args.out {
        write_file(path, &result_json(&run.report.result))?;
    }
    if let Some(path) = &args.trace {
        write_file(path, &division_trace_jsonl(&run))?;
    }
    let mut report = serde_json::to_string_pretty(&run.report).expect("report serializes");
    report.push('\n');
    Ok(report)
}

fn cmd_verify(args: &VerifyArgs) -> Result<String, CliError> {
    let inst = load(&source_of(&args.input)?)?;
    let claim: IndexMap<PlayerId, PictureId> =
        serde_json::from_str(&read_file(&args.claim)?).map_err(|e| CliError::Malformed(e.to_string()))?;
    let run = divide_traced(inst.deal(), args.input.max_round_pairs)?;
    audit_run(&run)?;
    let expected = &run.report.result;
    for (player, picture) in expected {
        match claim.get(player) {
            Some(claimed) if claimed == picture => {}
            Some(claimed) => {
                return Err(CliError::Validation(format!(
                    "claim maps {player} to {claimed}, division gives {picture}"
                )))
            }
            None => return Err(CliError::Validation(format!("claim has no image for {player}"))),
        }
    }
    if let Some(extra) = claim.keys().find(|p| !expected.contains_key(*p)) {
        return Err(CliError::Validation(format!("claim mentions unknown player {extra}")));
    }
    Ok(format!("ok: claim matches the division of {} players\n", expected.len()))
}

fn stats_table(run: &DivisionRun, players: &[PlayerId], per_player: bool) -> String {
    let mut out = String::new();
    for (step, game) in run.report.steps.iter().zip(&run.games) {
        let stats = trace_stats(&game.trace, players);
        let _ = writeln!(
            out,
            "step n={}: rounds={} round_pairs={} max_shape_ups={} max_touches={}",
            step.n_suits,
            step.rounds_used,
            stats.round_pairs_used,
            stats.max_shape_ups(),
            stats.max_total_touches()
        );
        if per_player {
            let _ = writeln!(out, "  player\tshape_up\tship_out\tship_in\tcalled_away\ttouches");
            for (p, s) in &stats.players {
                let _ = writeln!(
                    out,
                    "  {p}\t{}\t{}\t{}\t{}\t{}",
                    s.shape_up_count, s.ship_out_count, s.ship_in_count, s.called_away_count, s.total_touches
                );
            }
        }
    }
    out
}

struct BatchLine {
    seed: u64,
    line: String,
    max_pairs: usize,
    max_touches: usize,
}

fn cmd_stats(args: &StatsArgs) -> Result<String, CliError> {
    let source = source_of(&args.input)?;
    let Some(count) = args.count else {
        let inst = load(&source)?;
        let run = divide_traced(inst.deal(), args.input.max_round_pairs)?;
        return Ok(stats_table(&run, inst.players(), args.per_player));
    };
    let Source::Generated {
        num_players,
        num_pictures,
        n_suits,
        seed,
    } = source
    else {
        return Err(CliError::Malformed("--count needs generator parameters".into()));
    };

    let next = AtomicUsize::new(0);
    let lines: Mutex<Vec<Result<BatchLine, CliError>>> = Mutex::new(Vec::new());
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed) as u64;
        if i >= count {
            break;
        }
        let s = seed + i;
        let result = (|| {
            let inst = load(&Source::Generated {
                num_players,
                num_pictures,
                n_suits,
                seed: s,
            })?;
            let run = divide_traced(inst.deal(), args.input.max_round_pairs)?;
            let stats: Vec<TraceStats> = run.games.iter().map(|g| trace_stats(&g.trace, inst.players())).collect();
            let max_pairs = stats.iter().map(|s| s.round_pairs_used).max().unwrap_or(0);
            let max_touches = stats.iter().map(TraceStats::max_total_touches).max().unwrap_or(0);
            Ok(BatchLine {
                seed: s,
                line: format!("seed {s}: steps={} max_round_pairs={max_pairs} max_touches={max_touches}", run.report.steps.len()),
                max_pairs,
                max_touches,
            })
        })();
        lines.lock().expect("no panics while locked").push(result);
    };
    std::thread::scope(|scope| {
        for _ in 0..args.jobs.max(1) {
            scope.spawn(work);
        }
    });

    let mut lines = lines.into_inner().expect("no panics while locked");
    lines.sort_by_key(|r| r.as_ref().map(|b| b.seed).unwrap_or(0));
    let mut out = String::new();
    let (mut max_pairs, mut max_touches) = (0, 0);
    for line in lines {
        let line = line?;
        max_pairs = max_pairs.max(line.max_pairs);
        max_touches = max_touches.max(line.max_touches);
        let _ = writeln!(out, "{}", line.line);
    }
    let _ = writeln!(out, "overall: instances={count} max_round_pairs={max_pairs} max_touches={max_touches}");
    Ok(out)
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Run(args) => cmd_run(args),
        Command::Divide(args) => cmd_divide(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Stats(args) => cmd_stats(args),
    }
}

/// Runs the command line and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("pgdiv: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Validation(String::new()).exit_code(), 1);
        assert_eq!(CliError::Malformed(String::new()).exit_code(), 2);
        assert_eq!(CliError::Internal(String::new()).exit_code(), 3);
        assert_eq!(CliError::from(EngineError::NotStable).exit_code(), 3);
    }

    #[test]
    fn missing_generator_params() {
        let cli = Cli::try_parse_from(["pgdiv", "divide", "--players", "3"]).unwrap();
        assert!(matches!(execute(&cli), Err(CliError::Malformed(_))));
    }

    #[test]
    fn malformed_instance_text() {
        assert!(matches!(parse_instance("{"), Err(CliError::Malformed(_))));
    }
}
