use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use plane_condense::aztec::{
    aztec_count, aztec_product, build_aztec, verify_diamond_recurrence, verify_forced_reductions, CountMethod,
    Weighting, BRUTE_LIMIT, SYMBOLIC_LIMIT,
};
use plane_condense::campaign::{run_campaign, Campaign, Identity};
use plane_condense::condensation::IdentityReport;
use plane_condense::generate::{grid_subgraph, GridSpec, WeightMode};
use plane_condense::graph::PlaneGraph;
use plane_condense::matching::{matching_sum, Method};
use plane_condense::Error;

#[derive(Parser)]
#[command(
    name = "plane-condense",
    version,
    about = "Perfect-matching sums and condensation identities of plane graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Brute,
    Fkt,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AztecAction {
    /// Matching sum of the diamond.
    Count,
    /// Closed-form product of the variable-weighted diamond.
    Product,
    /// Unit-weight count by the three-term recurrence.
    Recurrence,
    /// Check the weighted recurrence between diamonds of consecutive orders.
    VerifyRecurrence,
    /// Check the corner condensation and its forced-edge reductions.
    VerifyForced,
    /// Print the diamond as a graph file.
    Graph,
}

#[derive(Subcommand)]
enum Command {
    /// Print the matching sum of a graph file.
    Count {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Run a randomized identity campaign.
    Verify {
        #[arg(long)]
        identity: Identity,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        rows: u32,
        #[arg(long, default_value_t = 4)]
        cols: u32,
        #[arg(long, default_value_t = 0.8)]
        keep: f64,
        #[arg(long, default_value = "rational")]
        weights: WeightMode,
        /// Probability of a diagonal in each grid square.
        #[arg(long)]
        chords: Option<f64>,
        /// Write the reports here as a JSON array.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Aztec diamond counts, products and checks.
    Aztec {
        #[arg(value_enum)]
        action: AztecAction,
        #[arg(long)]
        n: usize,
        /// Index of the first column's variables; weights become symbolic.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=2))]
        start: Option<u64>,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Random points for the weighted recurrence beyond the symbolic range.
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a random grid subgraph as a graph file.
    Gen {
        #[arg(long, default_value_t = 4)]
        rows: u32,
        #[arg(long, default_value_t = 4)]
        cols: u32,
        #[arg(long, default_value_t = 0.8)]
        keep: f64,
        #[arg(long, default_value = "unit")]
        weights: WeightMode,
        #[arg(long, default_value_t = 0.0)]
        chords: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PolynomialWeights | Error::NegativeWeight(_) => 3,
        Error::OrderTooLarge { .. } | Error::InvalidOrder { .. } | Error::ResultTooLarge { .. } => 4,
        _ => 2,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(&e))
}

fn method(m: MethodArg) -> Method {
    match m {
        MethodArg::Brute => Method::Brute,
        MethodArg::Fkt => Method::Fkt,
        MethodArg::Auto => Method::Auto,
    }
}

fn print_reports(reports: &[IdentityReport], format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(reports).expect("reports serialize")),
        Format::Text => {
            for r in reports {
                if r.pass {
                    println!("PASS {} {}", r.identity, r.instance.note);
                } else {
                    print!("{}", r.breakdown());
                }
            }
        }
    }
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn write_or_print(text: &str, out: Option<PathBuf>) -> ExitCode {
    match out {
        Some(path) => match fs::write(&path, text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                ExitCode::from(2)
            }
        },
        None => {
            println!("{text}");
            ExitCode::SUCCESS
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Count { file, method: m } => {
            let text = fs::read_to_string(&file).map_err(|e| Error::Format(format!("{}: {e}", file.display())))?;
            let g = PlaneGraph::from_json(&text)?;
            println!("{}", matching_sum(&g, method(m))?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { identity, trials, seed, rows, cols, keep, weights, chords, out, format } => {
            let mut campaign =
                Campaign::new(identity, trials as usize, seed).with_grid(rows, cols, keep).with_weights(weights);
            campaign.chords = chords;
            let result = run_campaign(&campaign)?;
            for s in &result.skipped {
                eprintln!("skipped trial {} (seed {}): {}", s.trial, s.seed, s.reason);
            }
            for r in result.reports.iter().filter(|r| !r.pass) {
                eprint!("{}", r.breakdown());
            }
            match (&out, format) {
                (Some(path), _) => {
                    fs::write(path, result.to_json()).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
                    println!("{}", result.summary());
                }
                (None, Format::Json) => println!("{}", result.to_json()),
                (None, Format::Text) => println!("{}", result.summary()),
            }
            Ok(if result.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Aztec { action, n, start, method: m, points, seed, format } => {
            let start = start.map(|s| s as usize);
            match action {
                AztecAction::Count => {
                    match start {
                        Some(s) => {
                            if n > SYMBOLIC_LIMIT {
                                return Err(Error::OrderTooLarge {
                                    n,
                                    limit: SYMBOLIC_LIMIT,
                                    action: "symbolic counting",
                                });
                            }
                            let az = build_aztec(n)?.weighted(Weighting::Stanley(s))?;
                            println!("{}", matching_sum(az.graph(), Method::Brute)?);
                        }
                        None => {
                            let how = match m {
                                MethodArg::Brute => CountMethod::Brute,
                                MethodArg::Fkt | MethodArg::Auto => CountMethod::Fkt,
                            };
                            println!("{}", aztec_count(n, how)?);
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                AztecAction::Product => {
                    if n > BRUTE_LIMIT {
                        return Err(Error::OrderTooLarge { n, limit: BRUTE_LIMIT, action: "products" });
                    }
                    println!("{}", aztec_product(n, start.unwrap_or(1)));
                    Ok(ExitCode::SUCCESS)
                }
                AztecAction::Recurrence => {
                    println!("{}", aztec_count(n, CountMethod::Recurrence)?);
                    Ok(ExitCode::SUCCESS)
                }
                AztecAction::VerifyRecurrence => {
                    Ok(print_reports(&verify_diamond_recurrence(n, points, seed)?, format))
                }
                AztecAction::VerifyForced => Ok(print_reports(&verify_forced_reductions(n)?, format)),
                AztecAction::Graph => {
                    let az = build_aztec(n)?;
                    let az = match start {
                        Some(s) => az.weighted(Weighting::Stanley(s))?,
                        None => az,
                    };
                    println!("{}", az.to_json());
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Gen { rows, cols, keep, weights, chords, seed, out } => {
            let spec = GridSpec::new(rows, cols, keep).with_weights(weights).with_chords(chords);
            Ok(write_or_print(&grid_subgraph(&spec, seed).to_json(), out))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    run(cli).unwrap_or_else(fail)
}
