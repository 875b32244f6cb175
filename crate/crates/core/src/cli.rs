//! The `alldiff` command line.
//!
//! Exit codes: 0 success, 1 Hall violation / contradiction / unsolvable,
//! 2 parse or validity error, 3 size cap exceeded.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::format::{parse_mapping, MappingDocument, ParseError};
use crate::kernel::{alldifferent_kernel, extract_selection, Selection};
use crate::mapping::FiniteMapping;
use crate::oracle::enumerate_selections;
use crate::partition::{compute_hall_partition, HallOutcome, HallViolation};
use crate::subset::YSubset;
use crate::sudoku::{cell_label, is_layout, GridError, SudokuGrid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSATISFIABLE: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "alldiff", version, about = "Hall partitions and alldifferent kernels")]
pub struct Cli {
    /// Read input from FILE instead of standard input.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Seed for randomized utilities.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Hall condition; print OK or a violating set.
    Check,
    /// Print the Hall partition: blocks, residual images and exit kind.
    Partition,
    /// Print the alldifferent kernel.
    Kernel,
    /// Print one alldifferent selection.
    Select,
    /// Print every alldifferent selection (brute force).
    Enumerate,
    /// Sudoku propagation and solving on 81-character grids.
    Sudoku {
        #[command(subcommand)]
        action: SudokuAction,
        /// Print one 81-character line per grid even for a single grid.
        #[arg(long, global = true)]
        lines: bool,
    },
    /// Print a random mapping document.
    Random {
        #[arg(long, default_value_t = 5)]
        x: usize,
        #[arg(long, default_value_t = 5)]
        y: usize,
        /// Probability that a value belongs to an image.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum SudokuAction {
    /// Propagate unit kernels to a fixpoint.
    Propagate,
    /// Propagate and branch until solved.
    Solve,
}

struct Output {
    code: i32,
    text: String,
}

impl Output {
    fn new(code: i32, text: String) -> Self {
        Output { code, text }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => EXIT_TOO_LARGE,
        _ => EXIT_INVALID_INPUT,
    }
}

fn parse_error_code(e: &ParseError) -> i32 {
    match e {
        ParseError::Mapping(inner) => error_code(inner),
        _ => EXIT_INVALID_INPUT,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };

    let mut input = String::new();
    if !matches!(cli.command, Command::Random { .. }) {
        let read = match &cli.input {
            Some(path) => std::fs::read_to_string(path).map(|s| input = s),
            None => stdin.read_to_string(&mut input).map(|_| ()),
        };
        if let Err(e) = read {
            let _ = writeln!(err, "error: cannot read input: {e}");
            return EXIT_INVALID_INPUT;
        }
    }

    let json = cli.format == OutputFormat::Json;
    let result = match cli.command {
        Command::Sudoku { action, lines } => Ok(run_sudoku(&input, action, lines, json)),
        Command::Random { x, y, density } => random_document(x, y, density, cli.seed, json),
        ref command => match parse_mapping(&input) {
            Ok(f) => run_mapping_command(command, &f, json).map_err(|e| (error_code(&e), e.to_string())),
            Err(e) => Err((parse_error_code(&e), e.to_string())),
        },
    };

    match result {
        Ok(output) => {
            let _ = out.write_all(output.text.as_bytes());
            output.code
        }
        Err((code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn labels(f: &FiniteMapping, ys: YSubset) -> Vec<String> {
    ys.iter().map(|y| f.y_label(y).to_owned()).collect()
}

fn x_labels(f: &FiniteMapping, w: crate::subset::XSubset) -> Vec<String> {
    w.iter().map(|x| f.x_label(x).to_owned()).collect()
}

fn violation_output(f: &FiniteMapping, v: &HallViolation, json: bool) -> Output {
    let text = if json {
        format!("{}\n", json!({ "ok": false, "witness": x_labels(f, v.witness) }))
    } else {
        format!("violation: {}\n", f.format_x_set(v.witness))
    };
    Output::new(EXIT_UNSATISFIABLE, text)
}

fn selection_json(f: &FiniteMapping, s: &Selection) -> Value {
    let mut map = Map::new();
    for (x, y) in s.labeled(f) {
        map.insert(x.to_owned(), Value::String(y.to_owned()));
    }
    Value::Object(map)
}

fn selection_text(f: &FiniteMapping, s: &Selection) -> String {
    s.labeled(f)
        .map(|(x, y)| format!("{x} -> {y}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn run_mapping_command(command: &Command, f: &FiniteMapping, json: bool) -> Result<Output, Error> {
    Ok(match command {
        Command::Check => match compute_hall_partition(f)? {
            HallOutcome::Violation(v) => violation_output(f, &v, json),
            HallOutcome::Partition(_) if json => {
                Output::new(EXIT_OK, format!("{}\n", json!({ "ok": true, "witness": null })))
            }
            HallOutcome::Partition(_) => Output::new(EXIT_OK, "OK\n".into()),
        },
        Command::Partition => match compute_hall_partition(f)? {
            HallOutcome::Violation(v) => violation_output(f, &v, json),
            HallOutcome::Partition(p) => {
                let text = if json {
                    let blocks: Vec<Vec<String>> =
                        p.blocks().iter().map(|&b| x_labels(f, b)).collect();
                    let residuals: Vec<Vec<String>> =
                        p.residual_images().iter().map(|&r| labels(f, r)).collect();
                    format!(
                        "{}\n",
                        json!({
                            "blocks": blocks,
                            "residuals": residuals,
                            "exit_kind": p.exit_kind().to_string(),
                        })
                    )
                } else {
                    let mut text = String::new();
                    for (i, (&b, &r)) in p.blocks().iter().zip(p.residual_images()).enumerate() {
                        text.push_str(&format!(
                            "block {}: {} residual {}\n",
                            i + 1,
                            f.format_x_set(b),
                            f.format_y_set(r)
                        ));
                    }
                    text.push_str(&format!("exit: {}\n", p.exit_kind()));
                    text
                };
                Output::new(EXIT_OK, text)
            }
        },
        Command::Kernel => {
            let k = alldifferent_kernel(f)?;
            let code = if k.witness().is_some() {
                EXIT_UNSATISFIABLE
            } else {
                EXIT_OK
            };
            let text = if json {
                let mut kernel = Map::new();
                for x in 0..f.x_len() {
                    kernel.insert(f.x_label(x).to_owned(), json!(labels(f, k.image(x))));
                }
                let witness = k.witness().map(|v| x_labels(f, v.witness));
                format!(
                    "{}\n",
                    json!({ "kernel": kernel, "empty": k.is_empty(), "witness": witness })
                )
            } else {
                let mut text = String::new();
                for x in 0..f.x_len() {
                    text.push_str(f.x_label(x));
                    text.push(':');
                    for y in k.image(x).iter() {
                        text.push(' ');
                        text.push_str(f.y_label(y));
                    }
                    text.push('\n');
                }
                if let Some(v) = k.witness() {
                    text.push_str(&format!("violation: {}\n", f.format_x_set(v.witness)));
                }
                text
            };
            Output::new(code, text)
        }
        Command::Select => match extract_selection(f)? {
            Err(v) => violation_output(f, &v, json),
            Ok(s) if json => Output::new(
                EXIT_OK,
                format!("{}\n", json!({ "selection": selection_json(f, &s) })),
            ),
            Ok(s) => {
                let text = s.labeled(f).map(|(x, y)| format!("{x} -> {y}\n")).collect();
                Output::new(EXIT_OK, text)
            }
        },
        Command::Enumerate => {
            let all = enumerate_selections(f)?;
            let code = if all.is_empty() {
                EXIT_UNSATISFIABLE
            } else {
                EXIT_OK
            };
            let text = if json {
                let list: Vec<Value> = all.iter().map(|s| selection_json(f, s)).collect();
                format!("{}\n", json!({ "selections": list, "count": all.len() }))
            } else {
                let mut text: String = all
                    .iter()
                    .map(|s| format!("{}\n", selection_text(f, s)))
                    .collect();
                text.push_str(&format!("selections: {}\n", all.len()));
                text
            };
            Output::new(code, text)
        }
        Command::Sudoku { .. } | Command::Random { .. } => unreachable!("handled by caller"),
    })
}

fn split_grids(input: &str) -> Vec<&str> {
    let significant = input
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(|l| l.chars())
        .filter(|&c| !is_layout(c))
        .count();
    let lines: Vec<&str> = input
        .lines()
        .map(str::trim)
        .filter(|l| !l.starts_with('#') && !l.chars().all(is_layout))
        .collect();
    if significant == 81 && lines.len() > 1 {
        vec![input]
    } else {
        lines
    }
}

enum GridResult {
    Grid(Box<SudokuGrid>),
    Failed(i32, String),
}

fn grid_json(grid: &SudokuGrid) -> Value {
    let mut candidates = Map::new();
    for cell in grid.unpopulated() {
        let digits: Vec<u8> = grid.candidates(cell).iter().collect();
        candidates.insert(cell_label(cell), json!(digits));
    }
    json!({
        "grid": grid.to_line(),
        "solved": grid.is_solved(),
        "candidates": candidates,
    })
}

fn run_sudoku(input: &str, action: SudokuAction, lines: bool, json: bool) -> Output {
    let grids: Vec<&str> = split_grids(input)
        .into_iter()
        .filter(|g| !g.trim().is_empty())
        .collect();
    if grids.is_empty() {
        return Output::new(EXIT_INVALID_INPUT, String::new());
    }
    let results: Vec<GridResult> = grids
        .par_iter()
        .map(|text| {
            let grid = match SudokuGrid::parse(text) {
                Ok(g) => g,
                Err(GridError::Contradiction(c)) => {
                    return GridResult::Failed(EXIT_UNSATISFIABLE, format!("contradiction: {c}"))
                }
                Err(e) => return GridResult::Failed(EXIT_INVALID_INPUT, format!("invalid grid: {e}")),
            };
            match action {
                SudokuAction::Propagate => match grid.propagate() {
                    Ok(g) => GridResult::Grid(Box::new(g)),
                    Err(c) => GridResult::Failed(EXIT_UNSATISFIABLE, format!("contradiction: {c}")),
                },
                SudokuAction::Solve => match grid.solve() {
                    Ok(g) => GridResult::Grid(Box::new(g)),
                    Err(e) => GridResult::Failed(EXIT_UNSATISFIABLE, e.to_string()),
                },
            }
        })
        .collect();

    let code = results
        .iter()
        .map(|r| match r {
            GridResult::Grid(_) => EXIT_OK,
            GridResult::Failed(code, _) => *code,
        })
        .max()
        .unwrap_or(EXIT_OK);

    let single = results.len() == 1 && !lines;
    let text = if json {
        let values: Vec<Value> = results
            .iter()
            .map(|r| match r {
                GridResult::Grid(g) => grid_json(g),
                GridResult::Failed(_, msg) => json!({ "error": msg }),
            })
            .collect();
        if single {
            format!("{}\n", values[0])
        } else {
            format!("{}\n", Value::Array(values))
        }
    } else {
        results
            .iter()
            .map(|r| match r {
                GridResult::Grid(g) if single => g.render(),
                GridResult::Grid(g) => format!("{}\n", g.to_line()),
                GridResult::Failed(_, msg) => format!("{msg}\n"),
            })
            .collect()
    };
    Output::new(code, text)
}

fn random_document(
    nx: usize,
    ny: usize,
    density: f64,
    seed: u64,
    json: bool,
) -> Result<Output, (i32, String)> {
    if !(0.0..=1.0).contains(&density) {
        return Err((EXIT_INVALID_INPUT, format!("density {density} is not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let images = (0..nx)
        .map(|_| (0..ny).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    let f = FiniteMapping::numbered(ny, images).map_err(|e| (error_code(&e), e.to_string()))?;
    let text = if json {
        let mut images = Map::new();
        for x in 0..f.x_len() {
            images.insert(f.x_label(x).to_owned(), json!(labels(&f, f.image(x))));
        }
        format!(
            "{}\n",
            json!({ "x_elements": f.x_labels(), "y_elements": f.y_labels(), "images": images })
        )
    } else {
        MappingDocument::from_mapping(&f).to_string()
    };
    Ok(Output::new(EXIT_OK, text))
}
