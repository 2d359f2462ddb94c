use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cotsum::numeric::DEFAULT_PRECISION_BITS;
use cotsum_cli::eval::EvalArgs;
use cotsum_cli::suites::{Suite, SuiteConfig, DEFAULT_SEED};
use cotsum_cli::{cmd_eval, cmd_report, cmd_verify, context, CliError};

/// Evaluate and verify closed forms of finite trigonometric and root-of-unity sums.
#[derive(Parser, Debug)]
#[command(name = "cotsum", version)]
struct Cli {
    /// Comparison precision in bits (oracles carry extra guard bits).
    #[arg(long, global = true, env = "COTSUM_PRECISION_BITS", default_value_t = DEFAULT_PRECISION_BITS)]
    precision_bits: u32,
    /// Override the relative tolerance, as `2^-N` or a decimal; at most 2^-32.
    #[arg(long, global = true)]
    tolerance: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one identity: oracle value, closed value and their difference.
    Eval(EvalArgs),
    /// Run a named suite and write a JSON report.
    Verify {
        /// rootsums, trig, twoperiod, reciprocity, residues, characters,
        /// class-numbers, negative-controls or all.
        #[arg(long)]
        suite: Suite,
        /// Upper bound on single moduli.
        #[arg(long)]
        max_k: Option<i64>,
        /// Upper bound on paired moduli.
        #[arg(long)]
        max: Option<i64>,
        /// Report path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Seed for random evaluation points.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Summarize a saved report by identity.
    Report { path: PathBuf },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Eval(args) => {
            let ctx = context(cli.precision_bits, cli.tolerance.as_deref())?;
            let (text, pass) = cmd_eval(&ctx, &args)?;
            print!("{text}");
            Ok(if pass { 0 } else { 1 })
        }
        Command::Verify {
            suite,
            max_k,
            max,
            out,
            jobs,
            seed,
        } => {
            let ctx = context(cli.precision_bits, cli.tolerance.as_deref())?;
            let cfg = SuiteConfig {
                suite,
                max_k,
                max,
                seed,
                jobs,
            };
            let doc = cmd_verify(&ctx, &cfg, out.as_deref())?;
            let s = doc.summary;
            eprintln!(
                "{}: {} pass, {} fail, {} skipped-hypothesis",
                doc.suite, s.pass, s.fail, s.skipped_hypothesis
            );
            Ok(doc.exit_code())
        }
        Command::Report { path } => {
            print!("{}", cmd_report(&path)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("cotsum: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
