use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use deformed::maps::DEFAULT_ENUMERATION_CAP;
use deformed::oracle::DEFAULT_NODE_BUDGET;
use deformed::table::CayleyTable;
use deformed::verify::{Bounds, SuiteId, DEFAULT_SEED, DEFAULT_TABLE_CAP};
use deformed_cli::commands::{self, Caps, Failure, FamilyArg};
use deformed_cli::report::Format;

/// Deformed multiplication semigroups over T_n, IS_n and the bicyclic monoid.
#[derive(Debug, Parser)]
#[command(name = "deform", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest degree to enumerate (default 4 for tables, 5 for element sweeps).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Idempotents of (S, *_a): `T|IS|S <n> <a>` or `B <a>`.
    Idempotents {
        family: FamilyArg,
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<String>,
        /// Length of the bicyclic idempotent chain.
        #[arg(long, default_value_t = 3)]
        chain: u64,
    },
    /// Isomorphism classes of (S, *_a) over all a.
    Classify { family: FamilyArg, n: usize },
    /// Permutations τ, π with b = τaπ.
    Witness {
        family: FamilyArg,
        n: usize,
        a: String,
        b: String,
        /// Also check the induced map on the whole table.
        #[arg(long)]
        check: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: SuiteId,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        grid: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Transformation counts per type.
    Count { n: usize },
    /// Print the Cayley table of (S, *_a).
    Table { family: FamilyArg, n: usize, a: String },
    /// Search for an isomorphism between two table files.
    Iso {
        left: PathBuf,
        right: PathBuf,
        /// Search for an anti-isomorphism instead.
        #[arg(long)]
        anti: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
}

fn read_table(path: &Path) -> Result<CayleyTable, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn warn_about_cap(cap: Option<usize>) {
    if let Some(c) = cap {
        if c > DEFAULT_TABLE_CAP {
            eprintln!(
                "warning: --cap {c} is above the default of {DEFAULT_TABLE_CAP} for table work \
                 ({DEFAULT_ENUMERATION_CAP} for element sweeps); |T_n| = n^n and a table holds |S|^2 entries, \
                 so this may take a very long time and a lot of memory"
            );
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    warn_about_cap(cli.cap);
    let caps = Caps::new(cli.cap);
    let start = Instant::now();
    let mut report = match cli.command {
        Command::Idempotents { family, args, chain } => commands::idempotents(family, &args, chain, caps)?,
        Command::Classify { family, n } => commands::classify(family, n, caps)?,
        Command::Witness { family, n, a, b, check } => commands::witness(family, n, &a, &b, check, caps)?,
        Command::Verify {
            suite,
            n,
            grid,
            samples,
            budget,
        } => {
            let bounds = Bounds {
                n,
                grid,
                samples,
                seed: cli.seed,
                cap: caps.elements,
                table_cap: caps.table,
                budget,
            };
            commands::verify(suite, &bounds)?
        }
        Command::Count { n } => commands::count(n)?,
        Command::Table { family, n, a } => {
            print!("{}", commands::table(family, n, &a, caps)?);
            return Ok(true);
        }
        Command::Iso {
            left,
            right,
            anti,
            budget,
        } => commands::iso(&read_table(&left)?, &read_table(&right)?, anti, budget),
    };
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    let rendered = report
        .render(cli.format)
        .map_err(|e| Failure::Usage(format!("cannot render report: {e}")))?;
    print!("{rendered}");
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
