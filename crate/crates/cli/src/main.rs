use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use robinson::format::{format_value, parse_matrix_with_precision, DEFAULT_PRECISION};
use robinson::testkit::{generate, GeneratorKind, GeneratorSpec};
use robinson::{mmodule_tree, recognize, write_matrix, DissimilaritySpace, Order, ParseError, RecognitionResult, SpaceError, Violation, Witness};

mod bench;

#[derive(Parser)]
#[command(name = "robinson", version, about = "Recognize Robinson dissimilarities and inspect their mmodules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    /// One `key=value` pair per line.
    Kv,
}

#[derive(clap::Args)]
struct Input {
    /// Matrix file; reads stdin when absent or `-`.
    file: Option<PathBuf>,
    /// Maximum number of fractional digits accepted in the matrix.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Print a compatible order, or a witness that none exists.
    Recognize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check a given order against a matrix.
    Check {
        #[command(flatten)]
        input: Input,
        /// Point ids, 1-based, separated by spaces or commas.
        #[arg(long)]
        order: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the mmodule tree.
    Mmtree {
        #[command(flatten)]
        input: Input,
    },
    /// Generate an instance in the matrix format.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: GeneratorKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest value (toeplitz) or largest step (other kinds).
        #[arg(long, default_value_t = 2)]
        max_val: u32,
        /// Relabel the points of a toeplitz instance at random.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        shuffle: bool,
        /// Entries to rewrite at random after generation.
        #[arg(long, default_value_t = 0)]
        perturb: usize,
        /// Output file; stdout when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Time recognition on generated instances.
    Bench {
        #[arg(long, value_parser = parse_kind, default_value = "toeplitz")]
        kind: GeneratorKind,
        #[arg(long, value_delimiter = ',', default_value = "500,1000,2000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        repeats: u64,
    },
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    s.parse()
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Recognize { input, format } => {
            let space = read_space(&input)?;
            Ok(report_recognition(&space, recognize(&space), format))
        }
        Command::Check { input, order, format } => {
            let space = read_space(&input)?;
            let order = parse_order(&order, space.len())?;
            Ok(report_check(&space, &order, format))
        }
        Command::Mmtree { input } => {
            let space = read_space(&input)?;
            if space.is_empty() {
                bail!("the mmodule tree of an empty space is undefined");
            }
            println!("{}", mmodule_tree(&space));
            Ok(Verdict::Pass)
        }
        Command::Gen { kind, n, seed, max_val, shuffle, perturb, output } => {
            let spec = GeneratorSpec { kind, n, seed, max_val, shuffle, perturb };
            let text = write_matrix(&generate(&spec).space);
            match output {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(Verdict::Pass)
        }
        Command::Bench { kind, sizes, seed, repeats } => {
            if sizes.is_empty() || repeats == 0 {
                bail!("need at least one size and one repeat");
            }
            bench::run(kind, &sizes, seed, repeats);
            Ok(Verdict::Pass)
        }
    }
}

fn read_space(input: &Input) -> Result<DissimilaritySpace> {
    let (name, text) = match &input.file {
        Some(path) if path.as_os_str() != "-" => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (path.display().to_string(), text)
        }
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("reading stdin")?;
            ("<stdin>".to_string(), text)
        }
    };
    parse_matrix_with_precision(&text, input.precision).map_err(|e| anyhow::anyhow!("{name}: {}", describe(&e)))
}

/// Parse errors with matrix cells shown 1-based.
fn describe(e: &ParseError) -> String {
    match e {
        ParseError::Invalid(SpaceError::Asymmetric(i, j)) => {
            format!("matrix is not symmetric at row {}, column {}", i + 1, j + 1)
        }
        ParseError::Invalid(SpaceError::NonzeroDiagonal(i)) => format!("diagonal entry at row {} is not zero", i + 1),
        ParseError::Invalid(SpaceError::NegativeEntry(i, j)) => format!("negative entry at row {}, column {}", i + 1, j + 1),
        other => other.to_string(),
    }
}

fn parse_order(text: &str, n: usize) -> Result<Order> {
    let ids = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(id) if id >= 1 => Ok(id - 1),
            _ => bail!("bad point id {t:?} in --order"),
        })
        .collect::<Result<Vec<_>>>()?;
    Order::new(ids, n).map_err(|e| match e {
        SpaceError::OutOfBounds { point, n } => anyhow::anyhow!("point {} is out of range 1..={n}", point + 1),
        SpaceError::Duplicate(point) => anyhow::anyhow!("point {} appears twice in --order", point + 1),
        other => anyhow::anyhow!("--order: {other}"),
    })
}

fn one_based(order: &Order) -> String {
    order.as_slice().iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn violation_text(space: &DissimilaritySpace, v: &Violation) -> String {
    let scale = space.scale();
    format!(
        "row {}: d({},{}) = {} > d({},{}) = {}",
        v.row + 1,
        v.row + 1,
        v.near + 1,
        format_value(space.d(v.row, v.near), scale),
        v.row + 1,
        v.far + 1,
        format_value(space.d(v.row, v.far), scale),
    )
}

fn violation_kv(space: &DissimilaritySpace, v: &Violation) {
    let scale = space.scale();
    println!("row={}", v.row + 1);
    println!("near={}", v.near + 1);
    println!("far={}", v.far + 1);
    println!("d_near={}", format_value(space.d(v.row, v.near), scale));
    println!("d_far={}", format_value(space.d(v.row, v.far), scale));
}

fn report_recognition(space: &DissimilaritySpace, result: RecognitionResult, format: Format) -> Verdict {
    match (result, format) {
        (RecognitionResult::Robinson(order), Format::Text) => {
            println!("{}", one_based(&order));
            Verdict::Pass
        }
        (RecognitionResult::Robinson(order), Format::Kv) => {
            println!("verdict=robinson");
            println!("n={}", space.len());
            println!("order={}", one_based(&order));
            Verdict::Pass
        }
        (RecognitionResult::NotRobinson(witness), Format::Text) => {
            println!("NOT ROBINSON");
            match witness {
                Witness::Violation { order, violation } => {
                    println!("candidate order: {}", one_based(&order));
                    println!("violation at {}", violation_text(space, &violation));
                }
                Witness::NoAdmissibleHole { pivot, copoint } => {
                    let ids: Vec<String> = copoint.iter().map(|x| (x + 1).to_string()).collect();
                    println!("no admissible hole for point {} in copoint {}", pivot + 1, ids.join(" "));
                }
            }
            Verdict::Fail
        }
        (RecognitionResult::NotRobinson(witness), Format::Kv) => {
            println!("verdict=not-robinson");
            println!("n={}", space.len());
            match witness {
                Witness::Violation { order, violation } => {
                    println!("witness=violation");
                    println!("order={}", one_based(&order));
                    violation_kv(space, &violation);
                }
                Witness::NoAdmissibleHole { pivot, copoint } => {
                    let ids: Vec<String> = copoint.iter().map(|x| (x + 1).to_string()).collect();
                    println!("witness=no-admissible-hole");
                    println!("pivot={}", pivot + 1);
                    println!("copoint={}", ids.join(" "));
                }
            }
            Verdict::Fail
        }
    }
}

fn report_check(space: &DissimilaritySpace, order: &Order, format: Format) -> Verdict {
    let violation = space.first_violation(order);
    match (violation, format) {
        (None, Format::Text) => {
            println!("OK");
            Verdict::Pass
        }
        (None, Format::Kv) => {
            println!("verdict=compatible");
            Verdict::Pass
        }
        (Some(v), Format::Text) => {
            println!("VIOLATION at {}", violation_text(space, &v));
            Verdict::Fail
        }
        (Some(v), Format::Kv) => {
            println!("verdict=violation");
            violation_kv(space, &v);
            Verdict::Fail
        }
    }
}
