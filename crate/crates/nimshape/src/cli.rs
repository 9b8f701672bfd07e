//! The `nimshape` command-line surface.
//!
//! Exit codes: 0 success, 1 verification or runtime failure, 2 usage
//! error, 3 evaluation budget exceeded.

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::engine::{Convention, Engine, EngineError, MemoTable, DEFAULT_BUDGET};
use crate::explore::{
    self, check_conjectures, enumerate_by_value, enumerate_heavy, ConjectureSweep, ExploreError,
    ExportFormat, Exportable,
};
use crate::play::{play_session, HumanSide};
use crate::position::{Ruleset, SumPosition};
use crate::strategy::{best_move_misere, best_move_normal, StrategyError};
use crate::verify::{verify_suite, VerifyOptions, VerifyScope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl OutputFormat {
    fn export(self) -> ExportFormat {
        match self {
            OutputFormat::Text => ExportFormat::Text,
            OutputFormat::Json => ExportFormat::JsonLines,
            OutputFormat::Csv => ExportFormat::Csv,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "nimshape",
    version,
    about = "Exact Sprague-Grundy and misère analysis for PNim (Nim on integer partitions) and RNim (Nim on hyperrectangles)"
)]
pub struct Cli {
    /// Output format for reports and values
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Print partitions in exponent notation ([3^2,2^3])
    #[arg(long, global = true)]
    pub exponent: bool,

    /// Evaluation budget in memo entries (default 10000000)
    #[arg(long, global = true, env = "NIMSHAPE_BUDGET")]
    pub budget: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the Grundy value of a position (a sum like "[4,2,1]+[3,3]"
    /// or "(5,4,2)+(2,3)")
    Sg {
        position: String,
        /// Misère value instead of the normal one
        #[arg(long)]
        misere: bool,
        /// Require the position to be of this ruleset
        #[arg(long)]
        ruleset: Option<Ruleset>,
    },
    /// Pick an optimal move (or a fallback when the position is lost)
    BestMove {
        position: String,
        #[arg(long)]
        misere: bool,
    },
    /// Play interactively against the engine
    Play {
        position: String,
        #[arg(long)]
        misere: bool,
        /// You move second (the engine opens)
        #[arg(long)]
        second: bool,
    },
    /// List partitions by Grundy value or heaviness up to a bound
    Enumerate(EnumerateArgs),
    /// Sweep a heaviness conjecture and report counterexamples
    Conjecture {
        /// chopped-rect or shallow-staircase
        id: String,
        #[arg(long, default_value_t = 5)]
        a_max: u32,
        #[arg(long, default_value_t = 5)]
        b_max: u32,
        #[arg(long, default_value_t = 4)]
        i_max: u32,
        #[arg(long, default_value_t = 4)]
        s_max: u32,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        /// Write the report to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suites
    Verify {
        #[arg(long, default_value = "all")]
        scope: String,
        /// Extend the Grundy-value-2 appendix check to its full bound
        #[arg(long)]
        deep: bool,
    },
    /// Save or load a persistent value cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Keep heavy partitions (Grundy value = longest play)
    #[arg(long, conflicts_with = "grundy")]
    pub heavy: bool,
    /// Keep partitions with this exact Grundy value
    #[arg(long)]
    pub grundy: Option<u32>,
    /// Largest partition order to enumerate
    #[arg(long)]
    pub n: u32,
    /// One representative per conjugate pair
    #[arg(long)]
    pub up_to_conjugation: bool,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// Warm the engine on a bounded space, then write the cache
    Save {
        path: PathBuf,
        #[arg(long, default_value = "pnim")]
        ruleset: Ruleset,
        /// Partition orders to warm (pnim)
        #[arg(long, default_value_t = 10)]
        n: u32,
        /// Dimensions to warm (rnim)
        #[arg(long, default_value_t = 2)]
        dims: usize,
        /// Side lengths to warm (rnim)
        #[arg(long, default_value_t = 4)]
        sides: u32,
    },
    /// Validate a cache file and print a summary
    Load {
        path: PathBuf,
        /// Require the cache to be of this ruleset
        #[arg(long)]
        ruleset: Option<Ruleset>,
    },
}

/// In-process entry point; `main` is a thin wrapper over this.
pub fn run_from<I, T>(
    args: I,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, input, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Cache(#[from] crate::engine::CacheError),
    #[error(transparent)]
    Play(#[from] crate::play::PlayError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Engine(EngineError::BudgetExceeded { .. }) => EXIT_BUDGET,
            CliError::Play(crate::play::PlayError::Engine(EngineError::BudgetExceeded {
                ..
            })) => EXIT_BUDGET,
            CliError::Play(crate::play::PlayError::Strategy(StrategyError::Engine(
                EngineError::BudgetExceeded { .. },
            ))) => EXIT_BUDGET,
            _ => EXIT_FAILURE,
        }
    }
}

impl From<StrategyError> for CliError {
    fn from(e: StrategyError) -> Self {
        match e {
            StrategyError::Engine(inner) => CliError::Engine(inner),
            StrategyError::TerminalPosition => {
                CliError::Usage("the position is terminal; there is no move to pick".into())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<ExploreError> for CliError {
    fn from(e: ExploreError) -> Self {
        match e {
            ExploreError::Engine(inner) => CliError::Engine(inner),
            ExploreError::Io(inner) => CliError::Io(inner),
            ExploreError::Enumeration(inner) => CliError::Usage(inner.to_string()),
        }
    }
}

fn parse_position(text: &str, required: Option<Ruleset>) -> Result<SumPosition, CliError> {
    let pos: SumPosition = text
        .parse()
        .map_err(|e| CliError::Usage(format!("bad position {text:?}: {e}")))?;
    if let Some(required) = required {
        if pos.ruleset() != required {
            return Err(CliError::Usage(format!(
                "position {text:?} is {}, but --ruleset {required} was given",
                pos.ruleset()
            )));
        }
    }
    Ok(pos)
}

fn position_text(pos: &SumPosition, exponent: bool) -> String {
    if exponent {
        pos.exponent_notation()
    } else {
        pos.to_string()
    }
}

fn execute(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, CliError> {
    let engine = Engine::with_budget(cli.budget.unwrap_or(DEFAULT_BUDGET));
    let format = cli.format;
    let exponent = cli.exponent;

    match cli.command {
        Command::Sg {
            position,
            misere,
            ruleset,
        } => {
            let pos = parse_position(&position, ruleset)?;
            let convention = if misere {
                Convention::Misere
            } else {
                Convention::Normal
            };
            let value = match convention {
                Convention::Normal => engine.grundy(&pos)?,
                Convention::Misere => engine.misere_grundy(&pos)?,
            };
            let shown = position_text(&pos, exponent);
            let convention = if misere { "misere" } else { "normal" };
            match format {
                OutputFormat::Text => writeln!(out, "{value}")?,
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    json!({ "position": shown, "convention": convention, "value": value })
                )?,
                OutputFormat::Csv => {
                    writeln!(out, "position,convention,value")?;
                    writeln!(out, "\"{shown}\",{convention},{value}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::BestMove { position, misere } => {
            let pos = parse_position(&position, None)?;
            let advice = if misere {
                best_move_misere(&engine, &pos)?
            } else {
                best_move_normal(&engine, &pos)?
            };
            let notation = advice.descriptor.notation(&pos);
            let successor = position_text(&advice.successor, exponent);
            let status = if advice.winning { "winning" } else { "losing" };
            match format {
                OutputFormat::Text => {
                    writeln!(out, "move: {notation}")?;
                    writeln!(out, "successor: {successor}")?;
                    writeln!(out, "status: {status}")?;
                }
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "position": position_text(&pos, exponent),
                        "move": notation,
                        "successor": successor,
                        "winning": advice.winning,
                    })
                )?,
                OutputFormat::Csv => {
                    writeln!(out, "move,successor,status")?;
                    writeln!(out, "\"{notation}\",\"{successor}\",{status}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Play {
            position,
            misere,
            second,
        } => {
            let pos = parse_position(&position, None)?;
            let convention = if misere {
                Convention::Misere
            } else {
                Convention::Normal
            };
            let side = if second {
                HumanSide::Second
            } else {
                HumanSide::First
            };
            play_session(&engine, pos, convention, side, input, out)?;
            Ok(EXIT_OK)
        }
        Command::Enumerate(args) => {
            let report = match (args.heavy, args.grundy) {
                (true, None) => enumerate_heavy(&engine, args.n, args.up_to_conjugation)?,
                (false, Some(k)) => enumerate_by_value(&engine, k, args.n, args.up_to_conjugation)?,
                _ => {
                    return Err(CliError::Usage(
                        "pick exactly one of --heavy or --grundy K".into(),
                    ))
                }
            };
            emit(&report, format, exponent, args.out.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Conjecture {
            id,
            a_max,
            b_max,
            i_max,
            s_max,
            k_max,
            out: out_path,
        } => {
            let sweep = match id.as_str() {
                "chopped-rect" => ConjectureSweep::ChoppedRect { a_max, b_max },
                "shallow-staircase" => ConjectureSweep::ShallowStaircase {
                    i_max,
                    s_max,
                    k_max,
                },
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown conjecture {other:?} (chopped-rect or shallow-staircase)"
                    )))
                }
            };
            let report = check_conjectures(&engine, sweep)?;
            emit(&report, format, exponent, out_path.as_deref(), out)?;
            // counterexamples are reported data, not a failure of this tool
            Ok(EXIT_OK)
        }
        Command::Verify { scope, deep } => {
            let scope: VerifyScope = scope.parse().map_err(|e: String| CliError::Usage(e))?;
            let report = verify_suite(&engine, scope, &VerifyOptions { deep });
            emit(&report, format, exponent, None, out)?;
            if report.any_failed() {
                Ok(EXIT_FAILURE)
            } else if report.any_skipped() {
                Ok(EXIT_BUDGET)
            } else {
                Ok(EXIT_OK)
            }
        }
        Command::Cache { action } => match action {
            CacheAction::Save {
                path,
                ruleset,
                n,
                dims,
                sides,
            } => {
                match ruleset {
                    Ruleset::Pnim => {
                        for order in 0..=n {
                            for p in crate::partition::partitions_of(order, false)
                                .map_err(|e| CliError::Usage(e.to_string()))?
                            {
                                engine.grundy_partition(&p)?;
                                engine.misere_grundy_partition(&p)?;
                            }
                        }
                    }
                    Ruleset::Rnim => {
                        for d in 1..=dims {
                            let mut tuple = vec![0u32; d];
                            loop {
                                let h = crate::hyperrect::Hyperrectangle::new(tuple.clone())
                                    .expect("d >= 1");
                                engine.grundy_hyperrect(&h)?;
                                engine.misere_grundy_hyperrect(&h)?;
                                let mut i = d;
                                loop {
                                    if i == 0 {
                                        break;
                                    }
                                    i -= 1;
                                    if tuple[i] < sides {
                                        tuple[i] += 1;
                                        break;
                                    }
                                    tuple[i] = 0;
                                }
                                if tuple.iter().all(|&s| s == 0) {
                                    break;
                                }
                            }
                        }
                    }
                }
                let written = engine.save_cache(ruleset, &path)?;
                writeln!(
                    out,
                    "saved {written} entries ({ruleset}) to {}",
                    path.display()
                )?;
                Ok(EXIT_OK)
            }
            CacheAction::Load { path, ruleset } => {
                let table = match ruleset {
                    Some(rs) => MemoTable::load_expecting(&path, rs)?,
                    None => MemoTable::load(&path)?,
                };
                writeln!(
                    out,
                    "loaded {} entries ({}) from {}",
                    table.len(),
                    table.ruleset(),
                    path.display()
                )?;
                Ok(EXIT_OK)
            }
        },
    }
}

fn emit(
    report: &dyn Exportable,
    format: OutputFormat,
    exponent: bool,
    path: Option<&std::path::Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match path {
        Some(path) => {
            explore::export(report, format.export(), exponent, path)?;
        }
        None => explore::export_to_writer(report, format.export(), exponent, out)?,
    }
    Ok(())
}
