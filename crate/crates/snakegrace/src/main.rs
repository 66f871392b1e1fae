//! Command-line front end: construct, verify, search, dump-tables.
//!
//! Exit codes: 0 success (verify: graceful or near graceful), 1 invalid
//! labelling, 2 usage or validation error (error name on stderr).

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use snakegrace::builder::{self, BuiltSnake, ZeroPlacement};
use snakegrace::cycles::{all_rows, Parity, UsefulCycleSpec};
use snakegrace::error::BuildError;
use snakegrace::output::{graph_from_json, report_json, OutputDocument, OutputFormat};
use snakegrace::search::{
    c10_nonexistence, c10_search, enumerate_graceful, search_useful, Execution, Interpretation,
    Mode,
};
use snakegrace::topology::{parse_tuple_form, SnakeShape};
use snakegrace::verifier::classify;

#[derive(Parser)]
#[command(
    name = "snakegrace",
    about = "Graceful and near graceful labellings of cyclic snakes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a labelled snake from one of the constructive families.
    Construct {
        #[command(subcommand)]
        target: Target,
    },
    /// Classify a labelling read from a file or stdin.
    Verify {
        /// Input file (stdin when omitted).
        file: Option<PathBuf>,
        /// Input format: tuple, json, or auto-detect.
        #[arg(long, default_value = "auto")]
        format: String,
    },
    /// Exhaustive searches: labellings, useful cycles, the C_10 analysis.
    Search {
        #[command(subcommand)]
        what: SearchWhat,
    },
    /// Print every stored cycle row with T symbolic.
    DumpTables,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tuple,
    Json,
    Dot,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Tuple => OutputFormat::Tuple,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Dot => OutputFormat::Dot,
        }
    }
}

#[derive(Subcommand)]
enum Target {
    /// kC_{4n} for n in 1..=6, any string over [1, 2n].
    Kc4n {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_delimiter = ',')]
        string: Vec<u64>,
        #[arg(long)]
        zero_distance: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Tuple)]
        format: FormatArg,
    },
    /// kC_{4n} for any n when the string stays inside {2, 3, 4}.
    D234 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_delimiter = ',')]
        string: Vec<u64>,
        #[arg(long)]
        zero_distance: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Tuple)]
        format: FormatArg,
    },
    /// Variable snake; cycle lengths listed explicitly, e.g. 8,8,8,12.
    Variable {
        #[arg(long, value_delimiter = ',')]
        cycles: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        string: Vec<u64>,
        #[arg(long)]
        zero_distance: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Tuple)]
        format: FormatArg,
    },
    /// kC_6, any string over {1, 2, 3}.
    Kc6 {
        #[arg(long)]
        k: u64,
        #[arg(long, value_delimiter = ',')]
        string: Vec<u64>,
        #[arg(long)]
        zero_distance: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Tuple)]
        format: FormatArg,
    },
    /// kC_10 for the four admissible string patterns.
    Kc10 {
        #[arg(long)]
        k: u64,
        #[arg(long, value_delimiter = ',')]
        string: Vec<u64>,
        #[arg(long)]
        case: Option<u8>,
        #[arg(long)]
        zero_distance: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Tuple)]
        format: FormatArg,
    },
    /// kC_14 with entries 6 or 7 at odd positions, 7 at even positions.
    Kc14 {
        #[arg(long)]
        k: u64,
        #[arg(long, value_delimiter = ',')]
        string: Vec<u64>,
        #[arg(long)]
        zero_distance: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Tuple)]
        format: FormatArg,
    },
    /// Linear kC_10 or kC_14 (every string entry is half the cycle length).
    Linear {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Tuple)]
        format: FormatArg,
    },
    /// Glue a kC_{4n} onto a gracefully labelled graph (JSON graph document
    /// with a unique vertex labelled 0).
    Attach {
        /// JSON graph document for the base graph G.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_delimiter = ',')]
        string: Vec<u64>,
        /// Attachment position: distance from the glue vertex to the next
        /// landmark inside the first cycle.
        #[arg(long)]
        first_d: Option<u64>,
        #[arg(long)]
        zero_distance: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum SearchWhat {
    /// Enumerate (near) graceful labellings of a cycle or snake.
    Graceful {
        /// Single cycle length.
        #[arg(long, conflicts_with = "lengths")]
        cycle: Option<usize>,
        /// Snake cycle lengths, e.g. 4,4.
        #[arg(long, value_delimiter = ',')]
        lengths: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        string: Vec<u64>,
        /// graceful | near-omit-m | near-classic
        #[arg(long, default_value = "graceful")]
        mode: String,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Search for useful cycles.
    Useful {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        d: u64,
        /// even | odd
        #[arg(long)]
        parity: String,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Reproduce the exhaustive C_10 nonexistence analysis.
    C10Nonexistence {
        #[arg(long)]
        s: u64,
        /// draw-from | use-all
        #[arg(long, default_value = "draw-from")]
        interpretation: String,
        /// Control run with label 1 permitted; prints whatever appears.
        #[arg(long)]
        allow_one: bool,
    },
}

fn placement(d: Option<u64>) -> Option<ZeroPlacement> {
    d.map(|d| ZeroPlacement { d })
}

fn run_construct(target: Target) -> Result<(String, bool), BuildError> {
    let (built, format): (BuiltSnake, FormatArg) = match target {
        Target::Kc4n {
            n,
            k,
            string,
            zero_distance,
            format,
        } => (
            builder::build_kc4n(n, k, &string, placement(zero_distance))?,
            format,
        ),
        Target::D234 {
            n,
            k,
            string,
            zero_distance,
            format,
        } => (
            builder::build_d234(n, k, &string, placement(zero_distance))?,
            format,
        ),
        Target::Variable {
            cycles,
            string,
            zero_distance,
            format,
        } => {
            let specs: Vec<(u64, u64)> = cycles.iter().map(|&l| (l, 1)).collect();
            (
                builder::build_variable(&specs, &string, placement(zero_distance))?,
                format,
            )
        }
        Target::Kc6 {
            k,
            string,
            zero_distance,
            format,
        } => (
            builder::build_kc6(k, &string, placement(zero_distance))?,
            format,
        ),
        Target::Kc10 {
            k,
            string,
            case,
            zero_distance,
            format,
        } => (
            builder::build_kc10(k, &string, case, placement(zero_distance))?,
            format,
        ),
        Target::Kc14 {
            k,
            string,
            zero_distance,
            format,
        } => (
            builder::build_kc14(k, &string, placement(zero_distance))?,
            format,
        ),
        Target::Linear { n, k, format } => (builder::build_linear(n, k)?, format),
        Target::Attach {
            graph,
            n,
            k,
            string,
            first_d,
            zero_distance,
            format,
        } => {
            let text = std::fs::read_to_string(&graph).map_err(|e| {
                BuildError::StringInvalid(format!("cannot read {}: {e}", graph.display()))
            })?;
            let g = graph_from_json(&text)?;
            let zero = g.find_label(0).ok_or(BuildError::NoZeroVertex)?;
            let shape = SnakeShape::uniform((4 * n) as usize, k as usize, string.clone())?;
            (
                builder::attach_graceful(&g, zero, &shape, n, first_d, placement(zero_distance))?,
                format,
            )
        }
    };
    let promised = built.report.classification.is_labelled();
    let doc = OutputDocument::new(built.graph, built.report);
    let text = doc.render(format.into()).map_err(BuildError::Topology)?;
    Ok((text, promised))
}

fn read_input(file: Option<PathBuf>) -> Result<String, String> {
    match file {
        Some(path) => std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read {}: {e}", path.display())),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn run_verify(file: Option<PathBuf>, format: &str) -> ExitCode {
    let text = match read_input(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let trimmed = text.trim();
    // Tuple inputs carry the labelling on the first line; a report line
    // appended by `construct` is ignored so pipelines compose.
    let first_line = trimmed.lines().next().unwrap_or("").trim();
    let parsed = match format {
        "tuple" => parse_tuple_form(first_line).map(|(_, g)| g),
        "json" => graph_from_json(trimmed),
        _ => {
            if trimmed.starts_with('{') {
                graph_from_json(trimmed)
            } else {
                parse_tuple_form(first_line).map(|(_, g)| g)
            }
        }
    };
    let g = match parsed {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match classify(&g) {
        Ok(report) => {
            println!("{}", serde_json::to_string(&report_json(&report)).unwrap());
            if report.classification.is_labelled() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn labelling_line(labels: &[u64]) -> String {
    let body: Vec<String> = labels.iter().map(u64::to_string).collect();
    format!("({})", body.join(", "))
}

/// Streams a line, exiting quietly when the reader has gone away.
fn emit(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}

fn run_search(what: SearchWhat) -> ExitCode {
    let exec = Execution::default();
    match what {
        SearchWhat::Graceful {
            cycle,
            lengths,
            string,
            mode,
            count_only,
            limit,
        } => {
            let mode = match mode.as_str() {
                "graceful" => Mode::Graceful,
                "near-omit-m" => Mode::NearOmitM,
                "near-classic" => Mode::NearClassic,
                other => {
                    eprintln!("error: unknown mode {other:?}");
                    return ExitCode::from(2);
                }
            };
            let lengths = match cycle {
                Some(c) => vec![c],
                None => lengths,
            };
            if lengths.is_empty() {
                eprintln!("error: pass --cycle N or --lengths L1,L2,...");
                return ExitCode::from(2);
            }
            let shape = match SnakeShape::new(lengths, string) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let g = match snakegrace::topology::build_snake(&shape) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match enumerate_graceful(&g, mode, limit, exec) {
                Ok(enumeration) => {
                    if count_only {
                        println!("{}", enumeration.labellings.len());
                    } else {
                        for f in &enumeration.labellings {
                            // Stream each hit in tuple text, marks included.
                            let mut labelled = g.clone();
                            for (v, &l) in f.iter().enumerate() {
                                labelled.set_label(v, l);
                            }
                            match snakegrace::topology::emit_tuple_form(&labelled) {
                                Ok(text) => emit(&text),
                                Err(_) => emit(&labelling_line(f)),
                            }
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        SearchWhat::Useful {
            t,
            s,
            d,
            parity,
            count_only,
            limit,
        } => {
            let parity = match parity.as_str() {
                "even" => Parity::Even,
                "odd" => Parity::Odd,
                other => {
                    eprintln!("error: unknown parity {other:?}");
                    return ExitCode::from(2);
                }
            };
            let spec = match UsefulCycleSpec::new(t, s, d, parity) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match search_useful(&spec, limit, exec) {
                Ok(found) => {
                    if count_only {
                        println!("{}", found.len());
                    } else {
                        for f in &found {
                            emit(&labelling_line(f));
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        SearchWhat::C10Nonexistence {
            s,
            interpretation,
            allow_one,
        } => {
            if allow_one {
                return match c10_search(s, true, exec) {
                    Ok(found) => {
                        if found.is_empty() {
                            println!("NONE");
                        } else {
                            for f in &found {
                                emit(&labelling_line(f));
                            }
                        }
                        ExitCode::SUCCESS
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        ExitCode::from(2)
                    }
                };
            }
            let interp = match interpretation.as_str() {
                "draw-from" => Interpretation::DrawFrom,
                "use-all" => Interpretation::UseAll,
                other => {
                    eprintln!("error: unknown interpretation {other:?}");
                    return ExitCode::from(2);
                }
            };
            match c10_nonexistence(s, interp, exec) {
                Ok(true) => {
                    println!("NONE");
                    ExitCode::SUCCESS
                }
                Ok(false) => {
                    println!("FOUND");
                    ExitCode::from(1)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Construct { target } => match run_construct(target) {
            Ok((text, promised)) => {
                println!("{text}");
                if promised {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Verify { file, format } => run_verify(file, &format),
        Command::Search { what } => run_search(what),
        Command::DumpTables => {
            for row in all_rows() {
                emit(&format!("{}: {}", row.name, row.render()));
            }
            ExitCode::SUCCESS
        }
    }
}
