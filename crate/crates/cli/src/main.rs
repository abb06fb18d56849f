use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use artin_cli::commands::{self, RunOptions, DEFAULT_SEED};
use artin_cli::ideal_file::parse_ideal_file;
use artin_cli::report::Report;
use artin_core::{parse_field_spec, Error, FieldSpec, Result};

/// Exact computations with artinian graded algebras over k[x,y,z].
#[derive(Parser)]
#[command(name = "artin", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Field override: Q, GF(p), or GF(p^k)
    #[arg(long, global = true)]
    field: Option<String>,

    /// Base seed for every randomized step
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Random trials (linear forms sampled, search budget, fiber samples)
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,

    /// Scan all normalized linear forms instead of sampling (finite fields)
    #[arg(long, global = true)]
    exhaustive: bool,

    /// Degree bound; doubles as the target degree of degree-indexed commands
    /// (green restriction degree, truncation degree, compressed socle degree)
    #[arg(long, global = true)]
    max_degree: Option<usize>,

    /// Worker threads for the search
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Output format
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    output: String,

    /// Write the report (or the search log) to this path
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Linear form, e.g. `x` or `y+2*z` (jordan, green)
    #[arg(short = 'L', long = "linear-form", global = true)]
    linear_form: Option<String>,

    /// Check only the middle multiplication map(s) on symmetric h-vectors
    #[arg(long, global = true)]
    middle_only: bool,

    /// Largest extension degree scanned for splitting (hesse, fibers)
    #[arg(long, global = true, default_value_t = 4)]
    split_bound: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function of S/I
    Hilbert { input: PathBuf },
    /// Weak Lefschetz property verdict
    Wlp { input: PathBuf },
    /// Strong Lefschetz property verdict
    Slp { input: PathBuf },
    /// Jordan partition of multiplication by a linear form
    Jordan { input: PathBuf },
    /// Restriction dimension dim [S/(I+(L))]_d
    Green { input: PathBuf },
    /// Annihilator of a dual form (the gen line is read as the form)
    Annihilator { input: PathBuf },
    /// Random compressed Gorenstein instance (socle degree from --max-degree)
    Compressed,
    /// Principal pfaffians and their ideal (skew matrix input)
    Pfaffian { input: PathBuf },
    /// Gorenstein certificate
    Certify { input: PathBuf },
    /// Truncated algebra (degree from --max-degree)
    Truncate { input: PathBuf },
    /// Level algebra from dual forms (gen lines are read as the forms)
    Decompose { input: PathBuf },
    /// Base locus of a 2-generator pencil and Hesse detection
    Hesse { input: PathBuf },
    /// Fiber statistics of the 4-cubic morphism to P^3
    Fibers { input: PathBuf },
    /// Hilbert-Burch analysis of a length-7 scheme
    Hb { input: PathBuf },
    /// Linkage through the (3,5) complete intersection (skew matrix input)
    Linkage { input: PathBuf },
    /// Seeded counterexample search over structure-pattern matrices
    Search {
        /// Number of trials
        #[arg(long, default_value_t = 10_000)]
        search_trials: u64,
    },
}

fn run(cli: &Cli) -> Result<Report> {
    let field_override: Option<FieldSpec> = match &cli.field {
        Some(s) => Some(parse_field_spec(s)?),
        None => None,
    };
    let opts = RunOptions {
        seed: cli.seed,
        trials: cli.trials,
        exhaustive: cli.exhaustive,
        max_degree: cli.max_degree,
        workers: cli.workers,
        linear_form: cli.linear_form.clone(),
        out: cli.out.clone(),
        gorenstein_middle_only: cli.middle_only,
        split_bound: cli.split_bound,
    };
    let with_file = |path: &PathBuf,
                     f: &dyn Fn(&artin_cli::ideal_file::ParsedFile, &RunOptions, String) -> Result<Report>|
     -> Result<Report> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        let sha = commands::sha256_hex(&bytes);
        let parsed = parse_ideal_file(path, field_override.as_ref())?;
        f(&parsed, &opts, sha)
    };
    match &cli.command {
        Command::Hilbert { input } => with_file(input, &commands::cmd_hilbert),
        Command::Wlp { input } => with_file(input, &commands::cmd_wlp),
        Command::Slp { input } => with_file(input, &commands::cmd_slp),
        Command::Jordan { input } => with_file(input, &commands::cmd_jordan),
        Command::Green { input } => with_file(input, &commands::cmd_green),
        Command::Annihilator { input } => with_file(input, &commands::cmd_annihilator),
        Command::Certify { input } => with_file(input, &commands::cmd_certify),
        Command::Pfaffian { input } => with_file(input, &commands::cmd_pfaffian),
        Command::Truncate { input } => with_file(input, &commands::cmd_truncate),
        Command::Decompose { input } => with_file(input, &commands::cmd_decompose),
        Command::Hesse { input } => with_file(input, &commands::cmd_hesse),
        Command::Fibers { input } => with_file(input, &commands::cmd_fibers),
        Command::Hb { input } => with_file(input, &commands::cmd_hb),
        Command::Linkage { input } => with_file(input, &commands::cmd_linkage),
        Command::Compressed => {
            let field = field_override
                .ok_or_else(|| Error::Invalid("compressed needs --field".into()))?;
            commands::cmd_compressed(&field, &opts)
        }
        Command::Search { search_trials } => {
            let field =
                field_override.ok_or_else(|| Error::Invalid("search needs --field".into()))?;
            commands::cmd_search(&field, &opts, *search_trials)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let rendered = if cli.output == "json" { report.to_json() } else { report.to_text() };
            println!("{rendered}");
            // --out stores the JSON report for file-producing commands other
            // than search (which writes its own JSONL log there)
            if let (Some(path), false) = (&cli.out, matches!(cli.command, Command::Search { .. })) {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(commands::exit_code_for_report(&report) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code_for_error(&e) as u8)
        }
    }
}
