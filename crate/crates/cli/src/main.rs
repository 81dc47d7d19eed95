use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::Ordering;

use amalg_cli::exec::EXIT_INCOMPLETE;
use amalg_cli::{execute, parse_spec, Limits, RunConfig};
use amalg_core::construct::DEFAULT_MAX_RING_SIZE;
use amalg_core::search::MAX_DEGREE;
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "amalg", version, about = "Finite ring workbench for amalgamated algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the rings in a spec and run its directives.
    Run(RunArgs),
    /// Print a spec in canonical form.
    Fmt {
        /// Spec file, or `-` for stdin.
        spec: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Spec file, or `-` for stdin.
    spec: PathBuf,
    /// Degree bound for directives that do not give one.
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_RING_SIZE)]
    max_ring_size: usize,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    threads: Option<usize>,
    /// Also write the JSON report here (`-` for stdout, replacing the text report).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Re-check every reported witness against the ring tables.
    #[arg(long)]
    revalidate: bool,
    /// Scheduling seed; never changes a verdict or witness.
    #[arg(long)]
    seed: Option<u64>,
}

fn read_spec(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn run(args: RunArgs) -> Result<i32> {
    if args.degree > MAX_DEGREE {
        bail!("--degree must be at most {MAX_DEGREE}");
    }
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    let src = read_spec(&args.spec)?;
    let model = match parse_spec(&src, Limits { max_ring_size: args.max_ring_size }) {
        Ok(m) => m,
        Err(diags) => {
            for d in diags {
                eprintln!("{}:{d}", args.spec.display());
            }
            return Ok(EXIT_INCOMPLETE);
        }
    };
    let cfg = RunConfig {
        degree: args.degree,
        max_ring_size: args.max_ring_size,
        seed: args.seed,
        revalidate: args.revalidate,
        ..RunConfig::default()
    };
    let cancel = cfg.cancel.clone();
    ctrlc::set_handler(move || {
        if cancel.swap(true, Ordering::Relaxed) {
            std::process::exit(130);
        }
        eprintln!("interrupted; finishing with partial results (press again to abort)");
    })
    .context("installing the interrupt handler")?;

    let report = execute(&model, &cfg);
    match &args.json {
        Some(p) if p == Path::new("-") => print!("{}", report.to_json()),
        Some(p) => {
            std::fs::write(p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
            print!("{}", report.to_text());
        }
        None => print!("{}", report.to_text()),
    }
    Ok(report.exit_code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Fmt { spec } => read_spec(&spec).map(|src| match amalg_cli::parser::parse(&src) {
            Ok(s) => {
                print!("{s}");
                0
            }
            Err(diags) => {
                for d in diags {
                    eprintln!("{}:{d}", spec.display());
                }
                EXIT_INCOMPLETE
            }
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INCOMPLETE as u8)
        }
    }
}
