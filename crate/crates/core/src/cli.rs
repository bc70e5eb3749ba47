//! Command-line front end.
//!
//! Exit codes: 0 success or VERIFIED, 1 REFUTED or endpoint mismatch,
//! 2 input, genericity, adjacency or swap errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::arrange::Arrangement;
use crate::certificate::{star_section, Verdict};
use crate::error::Error;
use crate::field::WeightMatrix;
use crate::mutate::certify_detailed;
use crate::planner::{diagonal_order, plan_block_to_diagonal, plan_to_order, PlanError};
use crate::polytope::vertices;
use crate::rational::{int, parse_q, Q};
use crate::regions::classify;
use crate::render::{render, RenderOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tropmut", version, about = "Matching fields, tropical line arrangements and certified swaps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct MatrixArg {
    /// Weight matrix file
    #[arg(short = 'm', long = "matrix")]
    matrix: PathBuf,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(short = 'i')]
    i: usize,
    #[arg(short = 'j')]
    j: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the induced matching field
    Induce {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Print the Plücker weight of every triple
    Weights {
        #[command(flatten)]
        m: MatrixArg,
    },
    /// Print the vertices of the matching field polytope
    Polytope {
        #[command(flatten)]
        m: MatrixArg,
    },
    /// Induce the field from (1,1,1) cells and compare with the algebraic field
    CheckCovectors {
        #[command(flatten)]
        m: MatrixArg,
    },
    /// Classify the other lines around an adjacent pair and report the swap condition
    Star {
        #[command(flatten)]
        m: MatrixArg,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Swap an adjacent pair and print its certificate
    Mutate {
        #[command(flatten)]
        m: MatrixArg,
        #[command(flatten)]
        pair: PairArgs,
        /// Also fail when an exchange witness is missing
        #[arg(long)]
        strict: bool,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Chain certified swaps towards a target order
    Plan {
        #[arg(short = 'm', long = "matrix", required_unless_present = "block")]
        matrix: Option<PathBuf>,
        /// `diagonal` or a comma-separated order of line indices
        #[arg(long, conflicts_with = "block", requires = "matrix")]
        target: Option<String>,
        /// Start from the block diagonal weights for N and L
        #[arg(long, num_args = 2, value_names = ["N", "L"], conflicts_with = "matrix")]
        block: Option<Vec<usize>>,
        /// Abort on the first step that is not VERIFIED
        #[arg(long)]
        strict: bool,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Draw the arrangement as SVG
    Render {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Highlight the pair I,J
        #[arg(long, value_name = "I,J")]
        pair: Option<String>,
        /// Fill the six regions around the pair
        #[arg(long, requires = "pair")]
        regions: bool,
        /// Omit the dashed line at the swap target
        #[arg(long)]
        no_target: bool,
        #[arg(long, value_name = "Q", default_value = "1")]
        x_scale: String,
        #[arg(long, value_name = "Q", default_value = "1")]
        y_scale: String,
    },
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read_matrix(path: &Path) -> std::result::Result<WeightMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Ok(WeightMatrix::parse(&text)?)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure(e.to_string())),
    }
}

fn rational_arg(s: &str) -> std::result::Result<Q, Failure> {
    parse_q(s.trim()).ok_or_else(|| Failure(format!("bad rational {s:?}")))
}

fn pair_arg(s: &str) -> std::result::Result<(usize, usize), Failure> {
    let bad = || Failure(format!("bad pair {s:?}, expected I,J"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Induce { m, output } => {
            let field = read_matrix(&m.matrix)?.induce()?;
            emit(out, output.as_deref(), &field.to_text())?;
            Ok(EXIT_OK)
        }
        Command::Weights { m } => {
            let w = read_matrix(&m.matrix)?;
            w.induce()?;
            emit(out, None, &w.plucker_weights().to_text())?;
            Ok(EXIT_OK)
        }
        Command::Polytope { m } => {
            let field = read_matrix(&m.matrix)?.induce()?;
            emit(out, None, &vertices(&field).to_text())?;
            Ok(EXIT_OK)
        }
        Command::CheckCovectors { m } => {
            let w = read_matrix(&m.matrix)?;
            let algebraic = w.induce()?;
            let geometric = Arrangement::from_weights(&w).induce_geometric()?;
            emit(out, None, &geometric.to_text())?;
            let diff = algebraic.diff(&geometric)?;
            let total = algebraic.len();
            let _ = writeln!(err, "agree: {}/{total}", total - diff.len());
            Ok(if diff.is_empty() { EXIT_OK } else { EXIT_REFUTED })
        }
        Command::Star { m, pair } => {
            let w = read_matrix(&m.matrix)?;
            w.induce()?;
            let arr = Arrangement::from_weights(&w);
            let ra = classify(&arr, pair.i, pair.j)?;
            let star = crate::regions::StarReport::from_assignment(&ra);
            emit(out, None, &star_section(&star, Some(ra.posture), &ra.regions))?;
            Ok(EXIT_OK)
        }
        Command::Mutate { m, pair, strict, output } => {
            let w = read_matrix(&m.matrix)?;
            let (cert, cause) = certify_detailed(&w, pair.i, pair.j);
            emit(out, output.as_deref(), &cert.to_text())?;
            let code = match cert.verdict {
                Verdict::Verified if strict && cert.witnesses.iter().any(|r| r.witness.is_none()) => {
                    let _ = writeln!(err, "error: exchange witness missing for some pair");
                    EXIT_REFUTED
                }
                Verdict::Verified => EXIT_OK,
                Verdict::Refuted => {
                    let _ = writeln!(err, "REFUTED: {}", cert.reason);
                    EXIT_REFUTED
                }
                Verdict::Inapplicable => {
                    let reason = cause.map_or(cert.reason.clone(), |e| e.to_string());
                    let _ = writeln!(err, "error: {reason}");
                    EXIT_ERROR
                }
            };
            Ok(code)
        }
        Command::Plan { matrix, target, block, strict, output } => {
            let result = match (block, matrix) {
                (Some(b), _) => plan_block_to_diagonal(b[0], b[1], strict),
                (None, Some(path)) => {
                    let w = read_matrix(&path)?;
                    let order = match target.as_deref() {
                        None | Some("diagonal") => diagonal_order(w.n()),
                        Some(list) => list
                            .split(',')
                            .map(|t| t.trim().parse::<usize>())
                            .collect::<std::result::Result<_, _>>()
                            .map_err(|_| Failure(format!("bad target {list:?}")))?,
                    };
                    plan_to_order(&w, &order, strict)
                }
                (None, None) => return Err(Failure("plan needs -m FILE or --block N L".to_string())),
            };
            match result {
                Ok(plan) => {
                    emit(out, output.as_deref(), &plan.to_text())?;
                    let s = plan.summary();
                    if s.refuted > 0 {
                        let _ = writeln!(err, "REFUTED: {} of {} steps", s.refuted, s.steps);
                        return Ok(EXIT_REFUTED);
                    }
                    Ok(EXIT_OK)
                }
                Err(PlanError { error, partial }) => {
                    if let Some(p) = &partial {
                        emit(out, output.as_deref(), &p.to_text())?;
                    }
                    let _ = writeln!(err, "error: {error}");
                    let refuted = matches!(&error, Error::Unverified(_, _, v) if v == Verdict::Refuted.name());
                    Ok(if refuted || error == Error::EndpointMismatch { EXIT_REFUTED } else { EXIT_ERROR })
                }
            }
        }
        Command::Render { m, output, pair, regions, no_target, x_scale, y_scale } => {
            let w = read_matrix(&m.matrix)?;
            let opts = RenderOptions {
                pair: pair.as_deref().map(pair_arg).transpose()?,
                regions,
                dashed_target: !no_target,
                x_scale: rational_arg(&x_scale)?,
                y_scale: rational_arg(&y_scale)?,
            };
            if opts.x_scale <= int(0) || opts.y_scale <= int(0) {
                return Err(Failure("scale factors must be positive".to_string()));
            }
            let svg = render(&Arrangement::from_weights(&w), &opts)?;
            emit(out, Some(&output), &svg)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return EXIT_ERROR;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}
