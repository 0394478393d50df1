//! Command-line surface: core enumeration and inspection, Uglov displays,
//! word application, alcove export, the sums-of-squares solver and the
//! verification suite.
//!
//! Exit codes: 0 success, 1 a verification reported failures, 2 usage
//! error, 3 internal inconsistency.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::abacus::{Abacus, Partition, Shape};
use crate::action::{
    apply_word, beta_of, enumerate_cores_with, random_descent_word, CoreRecord, EnumerateOptions,
    WeylWord,
};
use crate::cartan::{AffineContext, Family};
use crate::dioph::{
    apply_f, count_cores_by_formula, count_cores_by_solutions, equation_for, equiv_class,
    height_from_uglov, is_parametrized, orbits_with_parametrization, solve, verify_completeness,
};
use crate::error::{Error, Result};
use crate::exactnum::{Quad2, QVector, Rational};
use crate::uglov::{core_certificate, uglov_map, uglov_vector, weighted_uglov};
use crate::verify::{complete_equations, run_suite, CheckId, CheckReport, SuiteBounds};
use crate::weyl::{
    alcove_coords, atomic_length, height_via_realization, node_heights_via_realization, semidirect,
};

/// Charged core abaci of the classical affine types.
///
/// Family labels: A2l-1~2, A2l~2, B~1, C~1, D~1, D~2 (twisted D with nodes
/// 0..l).
#[derive(Debug, Parser)]
#[command(name = "affine-cores", version, about)]
pub struct Cli {
    /// The command to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Top-level commands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Core abaci: enumeration, inspection, displays, words, alcoves.
    #[command(subcommand)]
    Cores(CoresCommand),
    /// Sums-of-squares equations attached to cores.
    #[command(subcommand)]
    Dioph(DiophCommand),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

/// `cores` subcommands.
#[derive(Debug, Subcommand)]
pub enum CoresCommand {
    /// List every core of height ≤ --max-height in canonical order.
    Enumerate(EnumerateArgs),
    /// Core test with certificate, Uglov vector and heights of one abacus.
    Inspect(InspectArgs),
    /// The Uglov display of one abacus.
    Uglov(AbacusArgs),
    /// Apply a word of generators to the weight abacus (or a given abacus).
    Word(WordArgs),
    /// Alcove polygons of all cores up to a height (rank 2 only).
    Alcoves(EnumerateArgs),
}

/// `dioph` subcommands.
#[derive(Debug, Subcommand)]
pub enum DiophCommand {
    /// All solutions at height N, with the core parametrizing each.
    Solve(SolveArgs),
    /// Solution orbits at height N with parametrized-member counts.
    Orbits(SolveArgs),
    /// Core counts per height by enumeration, solutions and closed form.
    Count(RangeArgs),
    /// Check that every solution orbit up to --max-n contains a core.
    VerifyComplete(RangeArgs),
}

/// Output encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// JSON (one record per line for listings).
    Json,
    /// Comma-separated values with a header row.
    Csv,
    /// Human-readable text with abacus drawings.
    Ascii,
}

/// Family, rank and charge.
#[derive(Debug, Clone, Args)]
pub struct ContextArgs {
    /// Family label: A2l-1~2, A2l~2, B~1, C~1, D~1 or D~2.
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    /// Rank l (number of Uglov runners).
    #[arg(long)]
    pub rank: usize,
    /// Charge j in 0..=l.
    #[arg(long)]
    pub charge: usize,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Arguments of `cores enumerate` and `cores alcoves`.
#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    /// Largest core height.
    #[arg(long)]
    pub max_height: i64,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

/// An abacus given by a partition (whole) or a bead list (half).
#[derive(Debug, Args)]
pub struct AbacusArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    /// Partition, comma-separated (empty string for ∅); whole abaci only.
    #[arg(long, conflicts_with = "beads")]
    pub partition: Option<String>,
    /// Bead positions, comma-separated; half abaci only.
    #[arg(long)]
    pub beads: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
}

/// Arguments of `cores inspect`.
#[derive(Debug, Args)]
pub struct InspectArgs {
    #[command(flatten)]
    pub abacus: AbacusArgs,
    /// Seed for drawing an alternative reduced word of a core.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Arguments of `cores word`.
#[derive(Debug, Args)]
pub struct WordArgs {
    #[command(flatten)]
    pub abacus: AbacusArgs,
    /// Generators, comma-separated; the rightmost acts first.
    #[arg(long)]
    pub word: String,
}

/// Arguments of `dioph solve` and `dioph orbits`.
#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    /// The height N.
    #[arg(long = "n", visible_alias = "N")]
    pub n: i64,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
}

/// Arguments of `dioph count` and `dioph verify-complete`.
#[derive(Debug, Args)]
pub struct RangeArgs {
    #[command(flatten)]
    pub context: ContextArgs,
    /// Largest height N.
    #[arg(long = "max-n", visible_alias = "max-N")]
    pub max_n: i64,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
}

/// Arguments of `verify`.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these checks (name or number; repeatable).
    #[arg(long, value_parser = parse_check)]
    pub only: Vec<CheckId>,
    /// Override every core-height bound.
    #[arg(long)]
    pub max_height: Option<i64>,
    /// Override every equation-side bound N.
    #[arg(long = "max-n", visible_alias = "max-N")]
    pub max_n: Option<i64>,
    /// Override the number of single moves for reachable abaci.
    #[arg(long)]
    pub max_moves: Option<usize>,
    /// Output format: ascii for a summary, json for the full report.
    #[arg(long, value_enum, default_value = "ascii")]
    pub format: OutputFormat,
    /// Also write the JSON report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn parse_check(s: &str) -> std::result::Result<CheckId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// How a successful run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Everything passed.
    Success,
    /// A verification reported failures.
    VerificationFailed,
}

/// Why a run failed.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments or a request outside the supported domain.
    #[error("usage error: {0}")]
    Usage(String),
    /// Two computations that must agree did not.
    #[error("{0}")]
    Inconsistency(String),
    /// Output could not be written.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// The process exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Inconsistency(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => CliError::Inconsistency(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl Outcome {
    /// The process exit code.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs a parsed command, writing to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<Outcome> {
    match cli.command {
        Command::Cores(cmd) => run_cores(cmd, out),
        Command::Dioph(cmd) => run_dioph(cmd, out),
        Command::Verify(args) => run_verify(args, out),
    }
}

fn context_of(args: &ContextArgs) -> Result<AffineContext> {
    let ctx = AffineContext::of(args.family, args.rank)?;
    ctx.check_charge(args.charge)?;
    Ok(ctx)
}

fn parse_list(text: &str) -> Result<Vec<i64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty() && *t != "∅")
        .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
        .collect()
}

fn abacus_of(ctx: &AffineContext, args: &AbacusArgs) -> Result<Abacus> {
    let j = args.context.charge;
    match (&args.partition, &args.beads) {
        (Some(p), None) => Abacus::from_partition(ctx, Partition::new(parse_list(p)?)?, j),
        (None, Some(b)) => Abacus::from_beads(ctx, parse_list(b)?, j),
        (None, None) => Abacus::weight(ctx, j),
        (Some(_), Some(_)) => Err(Error::Parse("give either --partition or --beads".into())),
    }
}

fn rational_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn quad_f64(x: &Quad2) -> f64 {
    rational_f64(x.rational_part()) + rational_f64(x.surd_part()) * std::f64::consts::SQRT_2
}

fn vector_f64(v: &QVector) -> Vec<f64> {
    v.entries().iter().map(quad_f64).collect()
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// One enumerated core as printed by `cores enumerate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreRow {
    /// The partition of a whole abacus.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<i64>>,
    /// The base of a half abacus.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<i64>,
    /// The beads of a half abacus.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beads: Option<Vec<i64>>,
    /// The charge j.
    pub charge: usize,
    /// ht(β).
    pub height: i64,
    /// β in simple-root coordinates.
    pub beta: Vec<i64>,
    /// The Uglov vector.
    pub u: Vec<Rational>,
    /// A reduced word from the weight abacus (rightmost acts first).
    pub word: Vec<usize>,
    /// The solution of the attached equation.
    #[serde(rename = "F(u)")]
    pub f_u: Vec<i64>,
}

impl CoreRow {
    /// Builds the row of an enumerated core.
    pub fn new(ctx: &AffineContext, rec: &CoreRecord) -> Result<CoreRow> {
        let spec = equation_for(ctx, rec.abacus.charge)?;
        let u = uglov_vector(ctx, &rec.abacus);
        let f_u = apply_f(&spec, &u)?;
        let (partition, base, beads) = match &rec.abacus.shape {
            Shape::Whole { partition } => (Some(partition.parts().to_vec()), None, None),
            Shape::Half { base, beads } => (None, Some(*base), Some(beads.iter().copied().collect())),
        };
        Ok(CoreRow {
            partition,
            base,
            beads,
            charge: rec.abacus.charge,
            height: rec.height(),
            beta: rec.beta.0.clone(),
            u: u.0,
            word: rec.word.0.clone(),
            f_u,
        })
    }

    const CSV_HEADER: [&'static str; 9] =
        ["partition", "base", "beads", "charge", "height", "beta", "u", "word", "F(u)"];

    fn csv_fields(&self) -> Vec<String> {
        vec![
            self.partition.as_ref().map(join).unwrap_or_default(),
            self.base.map(|b| b.to_string()).unwrap_or_default(),
            self.beads.as_ref().map(join).unwrap_or_default(),
            self.charge.to_string(),
            self.height.to_string(),
            join(&self.beta),
            join(&self.u),
            join(&self.word),
            join(&self.f_u),
        ]
    }
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Inconsistency(format!("csv encoding failed: {e}"));
    writer.write_record(header).map_err(io)?;
    for row in rows {
        writer.write_record(&row).map_err(io)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Inconsistency(format!("csv encoding failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Inconsistency(e.to_string()))
}

fn json_lines<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut out = String::new();
    for row in rows {
        let line = serde_json::to_string(row).map_err(|e| Error::Inconsistency(e.to_string()))?;
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// The complete output of `cores enumerate`; identical for every worker
/// count.
pub fn render_enumeration(
    ctx: &AffineContext,
    j: usize,
    max_height: i64,
    workers: Option<usize>,
    format: OutputFormat,
) -> Result<String> {
    let records = enumerate_cores_with(ctx, j, max_height, EnumerateOptions { workers })?;
    let rows = records
        .iter()
        .map(|rec| CoreRow::new(ctx, rec))
        .collect::<Result<Vec<_>>>()?;
    match format {
        OutputFormat::Json => json_lines(&rows),
        OutputFormat::Csv => csv_string(&CoreRow::CSV_HEADER, rows.iter().map(CoreRow::csv_fields)),
        OutputFormat::Ascii => {
            let mut out = String::new();
            for (rec, row) in records.iter().zip(&rows) {
                let _ = writeln!(
                    out,
                    "{}  height {}  β {:?}  u ({})  word {}  F(u) {:?}",
                    rec.abacus,
                    row.height,
                    row.beta,
                    join(&row.u),
                    rec.word,
                    row.f_u
                );
                let _ = writeln!(out, "  {}", rec.abacus.render_ascii());
            }
            Ok(out)
        }
    }
}

fn run_cores(cmd: CoresCommand, out: &mut dyn Write) -> CliResult<Outcome> {
    match cmd {
        CoresCommand::Enumerate(args) => {
            let ctx = context_of(&args.context)?;
            let text = render_enumeration(
                &ctx,
                args.context.charge,
                args.max_height,
                args.workers,
                args.format,
            )?;
            out.write_all(text.as_bytes())?;
            Ok(Outcome::Success)
        }
        CoresCommand::Inspect(args) => inspect(args, out),
        CoresCommand::Uglov(args) => {
            let ctx = context_of(&args.context)?;
            let abacus = abacus_of(&ctx, &args)?;
            let display = uglov_map(&ctx, &abacus);
            let u = uglov_vector(&ctx, &abacus);
            match args.format {
                OutputFormat::Ascii => {
                    writeln!(out, "{abacus}")?;
                    writeln!(out, "{}", abacus.render_ascii())?;
                    write!(out, "{}", display.render_ascii())?;
                    writeln!(out, "runner charges {:?}", display.runner_charges())?;
                    writeln!(out, "u = {u}")?;
                }
                OutputFormat::Json => {
                    let value = json!({
                        "abacus": abacus,
                        "display": display,
                        "runner_charges": display.runner_charges(),
                        "u": u,
                    });
                    writeln!(out, "{}", serde_json::to_string(&value)?)?;
                }
                OutputFormat::Csv => {
                    let rows = display.columns.iter().map(|c| {
                        vec![c.label.to_string(), c.charge().to_string(), join(&c.on_rows)]
                    });
                    out.write_all(csv_string(&["label", "charge", "on_rows"], rows)?.as_bytes())?;
                }
            }
            Ok(Outcome::Success)
        }
        CoresCommand::Word(args) => {
            let ctx = context_of(&args.abacus.context)?;
            let start = abacus_of(&ctx, &args.abacus)?;
            let word: WeylWord = args.word.parse()?;
            word.check_rank(ctx.rank())?;
            let run = apply_word(&ctx, &start, &word)?;
            let decomposition = semidirect(ctx.realization(), &word)?;
            let value = json!({
                "start": start,
                "word": word.0,
                "result": run.abacus,
                "tally": run.tally.0,
                "height": run.tally.height(),
                "atomic_length": atomic_length(&ctx, start.charge, &word)?,
                "translation": decomposition.translation,
                "finite_word": decomposition.finite_word.0,
                "steps": run.log,
            });
            match args.abacus.format {
                OutputFormat::Ascii => {
                    writeln!(out, "{start} --{word}--> {}", run.abacus)?;
                    writeln!(out, "{}", run.abacus.render_ascii())?;
                    writeln!(out, "tally {:?} (height {})", run.tally.0, run.tally.height())?;
                    writeln!(out, "decomposition {decomposition}")?;
                    for step in &run.log {
                        let added: Vec<String> = step
                            .added
                            .iter()
                            .map(|n| format!("({},{})r{}", n.row, n.column, n.residue))
                            .collect();
                        let removed: Vec<String> = step
                            .removed
                            .iter()
                            .map(|n| format!("({},{})r{}", n.row, n.column, n.residue))
                            .collect();
                        writeln!(
                            out,
                            "  step {} σ{} ×{}: +[{}] -[{}]",
                            step.step,
                            step.node,
                            step.multiplicity,
                            added.join(" "),
                            removed.join(" ")
                        )?;
                    }
                }
                _ => writeln!(out, "{}", serde_json::to_string(&value)?)?,
            }
            Ok(Outcome::Success)
        }
        CoresCommand::Alcoves(args) => {
            let ctx = context_of(&args.context)?;
            let j = args.context.charge;
            let records =
                enumerate_cores_with(&ctx, j, args.max_height, EnumerateOptions { workers: args.workers })?;
            let mut rows = Vec::new();
            for rec in &records {
                let alcove = alcove_coords(ctx.realization(), &rec.word.inverse())?;
                rows.push(json!({
                    "core": rec.abacus,
                    "height": rec.height(),
                    "word": rec.word.0,
                    "vertices": alcove.vertices,
                    "vertices_approx": alcove.vertices.iter().map(vector_f64).collect::<Vec<_>>(),
                    "centroid": alcove.interior,
                }));
            }
            match args.format {
                OutputFormat::Csv => {
                    let lines = rows.iter().map(|r| {
                        let v: Vec<String> = r["vertices_approx"]
                            .as_array()
                            .into_iter()
                            .flatten()
                            .flat_map(|p| p.as_array().into_iter().flatten().map(|x| x.to_string()))
                            .collect();
                        let mut fields = vec![r["core"].to_string(), r["height"].to_string()];
                        fields.extend(v);
                        fields
                    });
                    let header = ["core", "height", "x0", "y0", "x1", "y1", "x2", "y2"];
                    out.write_all(csv_string(&header, lines)?.as_bytes())?;
                }
                _ => out.write_all(json_lines(&rows)?.as_bytes())?,
            }
            Ok(Outcome::Success)
        }
    }
}

fn inspect(args: InspectArgs, out: &mut dyn Write) -> CliResult<Outcome> {
    let ctx = context_of(&args.abacus.context)?;
    let abacus = abacus_of(&ctx, &args.abacus)?;
    let j = abacus.charge;
    let cert = core_certificate(&ctx, &abacus, None)?;
    if !cert.consistent() {
        return Err(CliError::Inconsistency(format!(
            "core criteria disagree on {abacus}: {cert:?}"
        )));
    }
    let u = uglov_vector(&ctx, &abacus);
    let weighted = weighted_uglov(&ctx, &u);
    let mut heights = serde_json::Value::Null;
    let mut alternative = serde_json::Value::Null;
    if let Some(word) = &cert.word {
        let spec = equation_for(&ctx, j)?;
        let beta = beta_of(&ctx, &abacus)?;
        let tally = beta.height();
        let atomic = atomic_length(&ctx, j, word)?;
        let realization = height_via_realization(&ctx, &abacus)?;
        let inversion = height_from_uglov(&spec, &u)?;
        let per_node = node_heights_via_realization(&ctx, &abacus)?;
        if [atomic, realization, inversion].iter().any(|&h| h != tally) || per_node != beta.0 {
            return Err(CliError::Inconsistency(format!(
                "heights of {abacus} disagree: tally {tally}, atomic {atomic}, realization {realization}, inversion {inversion}"
            )));
        }
        heights = json!({
            "tally": tally,
            "atomic_length": atomic,
            "realization": realization,
            "uglov_inversion": inversion,
            "per_node": beta.0,
            "F(u)": apply_f(&spec, &u)?,
        });
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let other = random_descent_word(&ctx, &abacus, &mut rng)?;
        alternative = json!({ "seed": args.seed, "word": other.0 });
    }
    let defect = cert.beta.as_ref().map(|b| ctx.defect(j, b));
    let ops: Vec<String> = cert.ops.iter().map(|op| op.to_string()).collect();
    match args.abacus.format {
        OutputFormat::Ascii => {
            writeln!(out, "{} {abacus}", ctx.kind)?;
            writeln!(out, "{}", abacus.render_ascii())?;
            writeln!(out, "core: {}", cert.no_elementary_ops)?;
            if !ops.is_empty() {
                writeln!(out, "elementary operations: {}", ops.join("; "))?;
            }
            if let Some(word) = &cert.word {
                writeln!(out, "word: {word}")?;
            }
            if let Some(d) = &defect {
                writeln!(out, "defect: {d}")?;
            }
            writeln!(out, "u = {u}")?;
            writeln!(out, "weighted u = {weighted}")?;
            if !heights.is_null() {
                writeln!(out, "heights: {heights}")?;
            }
        }
        _ => {
            let value = json!({
                "kind": ctx.kind.to_string(),
                "abacus": abacus,
                "is_core": cert.no_elementary_ops,
                "in_orbit": cert.in_orbit,
                "elementary_ops": ops,
                "word": cert.word.as_ref().map(|w| w.0.clone()),
                "beta": cert.beta.as_ref().map(|b| b.0.clone()),
                "defect": defect,
                "u": u,
                "weighted_u": weighted,
                "heights": heights,
                "alternative_word": alternative,
            });
            writeln!(out, "{}", serde_json::to_string(&value)?)?;
        }
    }
    Ok(Outcome::Success)
}

fn run_dioph(cmd: DiophCommand, out: &mut dyn Write) -> CliResult<Outcome> {
    match cmd {
        DiophCommand::Solve(args) => {
            let ctx = context_of(&args.context)?;
            let spec = equation_for(&ctx, args.context.charge)?;
            let mut rows = Vec::new();
            for solution in solve(&spec, args.n) {
                let core = is_parametrized(&ctx, &spec, &solution)?;
                rows.push(json!({
                    "t": solution.t,
                    "N": solution.n,
                    "core": core,
                }));
            }
            write_table(out, args.format, &spec.to_string(), &rows, &["t", "N", "core"])?;
            Ok(Outcome::Success)
        }
        DiophCommand::Orbits(args) => {
            let ctx = context_of(&args.context)?;
            let spec = equation_for(&ctx, args.context.charge)?;
            let rows: Vec<serde_json::Value> = orbits_with_parametrization(&ctx, &spec, args.n)?
                .into_iter()
                .map(|o| {
                    json!({
                        "canonical": o.canonical.t,
                        "class": equiv_class(&o.canonical.t, 2 * spec.k),
                        "members": o.members,
                        "parametrized_members": o.parametrized_members,
                    })
                })
                .collect();
            let header = ["canonical", "class", "members", "parametrized_members"];
            write_table(out, args.format, &spec.to_string(), &rows, &header)?;
            Ok(Outcome::Success)
        }
        DiophCommand::Count(args) => {
            let ctx = context_of(&args.context)?;
            let j = args.context.charge;
            let spec = equation_for(&ctx, j)?;
            let records = enumerate_cores_with(&ctx, j, args.max_n, EnumerateOptions::default())?;
            let mut rows = Vec::new();
            let mut outcome = Outcome::Success;
            for n in 0..=args.max_n {
                let enumerated = records.iter().filter(|r| r.height() == n).count() as u64;
                let solutions = count_cores_by_solutions(&ctx, &spec, n)?;
                let formula = count_cores_by_formula(&ctx, j, n)?;
                if solutions != enumerated || formula.is_some_and(|f| f != enumerated) {
                    outcome = Outcome::VerificationFailed;
                }
                rows.push(json!({
                    "N": n,
                    "enumeration": enumerated,
                    "solutions": solutions,
                    "formula": formula,
                }));
            }
            let header = ["N", "enumeration", "solutions", "formula"];
            write_table(out, args.format, &spec.to_string(), &rows, &header)?;
            Ok(outcome)
        }
        DiophCommand::VerifyComplete(args) => {
            let ctx = context_of(&args.context)?;
            let j = args.context.charge;
            let spec = equation_for(&ctx, j)?;
            let report = verify_completeness(&ctx, &spec, args.max_n)?;
            let asserted = complete_equations()
                .iter()
                .any(|(f, l, charges)| *f == ctx.family() && *l == ctx.rank() && charges.contains(&j));
            match args.format {
                OutputFormat::Ascii => {
                    writeln!(
                        out,
                        "{}: {} orbits up to N = {}, {} without a core",
                        report.equation,
                        report.orbits,
                        report.max_n,
                        report.failures.len()
                    )?;
                    for f in &report.failures {
                        writeln!(out, "  N={} {:?} class {:?}", f.canonical.n, f.canonical.t, f.class)?;
                    }
                }
                _ => writeln!(out, "{}", serde_json::to_string(&report)?)?,
            }
            Ok(if asserted && !report.complete() {
                Outcome::VerificationFailed
            } else {
                Outcome::Success
            })
        }
    }
}

fn write_table(
    out: &mut dyn Write,
    format: OutputFormat,
    title: &str,
    rows: &[serde_json::Value],
    header: &[&str],
) -> CliResult<()> {
    let cell = |v: &serde_json::Value| -> String {
        match v {
            serde_json::Value::Array(items) => join(items.iter().map(|x| match x {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            })),
            serde_json::Value::Null => String::new(),
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    };
    match format {
        OutputFormat::Json => out.write_all(json_lines(rows)?.as_bytes())?,
        OutputFormat::Csv => {
            let lines = rows.iter().map(|r| header.iter().map(|h| cell(&r[*h])).collect());
            out.write_all(csv_string(header, lines)?.as_bytes())?;
        }
        OutputFormat::Ascii => {
            writeln!(out, "{title}")?;
            for r in rows {
                let fields: Vec<String> = header.iter().map(|h| format!("{h}={}", cell(&r[*h]))).collect();
                writeln!(out, "  {}", fields.join("  "))?;
            }
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs, out: &mut dyn Write) -> CliResult<Outcome> {
    let mut bounds = SuiteBounds::default();
    if let Some(h) = args.max_height {
        bounds = bounds.with_max_height(h);
    }
    if let Some(n) = args.max_n {
        bounds = bounds.with_max_n(n);
    }
    if let Some(m) = args.max_moves {
        bounds.move_steps = m;
    }
    let checks: Vec<CheckId> = if args.only.is_empty() {
        CheckId::ALL.to_vec()
    } else {
        let mut c = args.only.clone();
        c.sort();
        c.dedup();
        c
    };
    let reports = run_suite(&checks, &bounds)?;
    let all_passed = reports.iter().all(|r| r.passed);
    let json_report = json!({ "bounds": bounds, "passed": all_passed, "checks": reports });
    match args.format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&json_report)?)?,
        _ => write_summary(out, &reports)?,
    }
    if let Some(path) = &args.report {
        std::fs::write(path, serde_json::to_string_pretty(&json_report)?)?;
    }
    Ok(if all_passed {
        Outcome::Success
    } else {
        Outcome::VerificationFailed
    })
}

/// Human-readable suite summary: one line per check, details and failures
/// indented below it.
pub fn write_summary(out: &mut dyn Write, reports: &[CheckReport]) -> std::io::Result<()> {
    for report in reports {
        writeln!(out, "{report}")?;
        for detail in &report.details {
            writeln!(out, "       {detail}")?;
        }
        for failure in &report.failures {
            writeln!(out, "       failure: {failure}")?;
        }
        if report.failure_count > report.failures.len() as u64 {
            writeln!(
                out,
                "       … {} more failures",
                report.failure_count - report.failures.len() as u64
            )?;
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed}/{} checks passed", reports.len())
}
