use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quivermut::verify::VerificationReport;
use quivermut::Quiver;
use serde_json::Value;

mod ops;
mod serve;

use ops::{OpError, DEFAULT_BUDGET};

/// Quiver mutation, mutation classes, block decompositions and seeds.
///
/// Quivers are read as JSON `{"n":..,"b":[[..]]}` or as an edge list of
/// `<from> <to> <mult>` lines. Exit status: 0 success, 1 no answer (infinite
/// class for `class`, budget or cap exhausted, failed claim), 2 bad input.
#[derive(Parser)]
#[command(name = "quivermut", version)]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Quiver file, or `-` for stdin.
    #[arg(long = "in", value_name = "FILE")]
    path: String,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate at one vertex.
    Mutate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        at: usize,
    },
    /// Apply a comma-separated mutation sequence.
    ApplySeq {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// Enumerate the mutation class up to isomorphism.
    Class {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Canonicalizer: refined or brute.
        #[arg(long)]
        canon: Option<String>,
    },
    /// Decide mutation-finiteness.
    Finite {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Search for a block decomposition.
    Blockdecomp {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = quivermut::blocks::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Full subquiver on a comma-separated vertex set.
    Subquiver {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        vertices: Vec<usize>,
    },
    /// Canonical form and witness relabeling.
    Canon {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        canon: Option<String>,
    },
    /// Named quiver families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Seed enumeration, or one seed after `--apply`.
    Seeds {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
        #[arg(long, value_delimiter = ',')]
        apply: Option<Vec<usize>>,
    },
    /// Run built-in claims and print their reports.
    Verify {
        #[arg(long, conflicts_with = "claim")]
        all: bool,
        #[arg(long)]
        claim: Vec<String>,
    },
    /// Newline-delimited JSON server on 127.0.0.1.
    Serve {
        #[arg(long, default_value_t = 7878)]
        port: u16,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Build a family member, e.g. `catalog make D_hat 6`.
    Make {
        name: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
    },
}

fn read_quiver(input: &Input) -> Result<Quiver, OpError> {
    let text = if input.path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| OpError::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.path)
            .map_err(|e| OpError::Input(format!("{}: {e}", input.path)))?
    };
    ops::parse_input(&text).map_err(|e| OpError::Input(format!("{}: {e}", input.path)))
}

fn run(command: Command) -> Result<Value, OpError> {
    match command {
        Command::Mutate { input, at } => ops::mutate(&read_quiver(&input)?, at),
        Command::ApplySeq { input, seq } => ops::apply_seq(&read_quiver(&input)?, &seq),
        Command::Class {
            input,
            budget,
            canon,
        } => ops::class(&read_quiver(&input)?, budget, canon.as_deref()),
        Command::Finite { input, budget } => ops::finite(&read_quiver(&input)?, budget),
        Command::Blockdecomp { input, budget } => ops::blockdecomp(&read_quiver(&input)?, budget),
        Command::Subquiver { input, vertices } => ops::subquiver(&read_quiver(&input)?, vertices),
        Command::Canon { input, canon } => ops::canon(&read_quiver(&input)?, canon.as_deref()),
        Command::Catalog {
            action: CatalogAction::List,
        } => ops::catalog_list(),
        Command::Catalog {
            action: CatalogAction::Make { name, params },
        } => ops::catalog_make(&name, &params),
        Command::Seeds { input, cap, apply } => {
            ops::seeds(&read_quiver(&input)?, cap, apply.as_deref())
        }
        Command::Verify { .. } | Command::Serve { .. } => unreachable!("handled in main"),
    }
}

fn print_summary(reports: &[VerificationReport]) {
    let width = reports
        .iter()
        .map(|r| r.claim.len())
        .max()
        .unwrap_or(5)
        .max(5);
    eprintln!("{:<width$}  {:<6}  {:>10}", "claim", "status", "ms");
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        eprintln!("{:<width$}  {:<6}  {:>10}", r.claim, status, r.elapsed_ms);
    }
}

fn print_json(v: &Value) {
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = writeln!(
        std::io::stdout(),
        "{}",
        serde_json::to_string_pretty(v).expect("serializable")
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Serve { port } => {
            return match serve::serve(port) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            };
        }
        Command::Verify { all: _, claim } => ops::verify(&claim).map(|(reports, ok)| {
            print_json(&serde_json::to_value(&reports).expect("serializable"));
            print_summary(&reports);
            ok
        }),
        other => run(other).map(|v| {
            print_json(&v);
            true
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let mut v =
                serde_json::json!({ "error": { "code": e.code(), "message": e.message() } });
            if let OpError::Domain {
                detail: Some(d), ..
            } = &e
            {
                v["error"]["detail"] = d.clone();
            }
            print_json(&v);
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
