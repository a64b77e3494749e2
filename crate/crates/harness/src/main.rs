use std::path::PathBuf;
use std::process::ExitCode;

use ahb_harness::check::self_check;
use ahb_harness::output::format_table;
use ahb_harness::setup::ProblemInstance;
use ahb_harness::{builtin, run_experiment, write_outputs, ExperimentConfig};
use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ahb", version, about = "Adaptive heavy ball experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Override the noise seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of parallel runs.
    #[arg(long)]
    jobs: Option<usize>,
    /// Override every method's iteration cap.
    #[arg(long)]
    max_iter: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a TOML experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        args: RunArgs,
    },
    /// Describe the built-in problems and their parameters.
    ListProblems,
    /// Validate a config and run the problem self-tests.
    Check {
        #[arg(long)]
        config: PathBuf,
    },
    /// Fredholm integral equation, four methods.
    ReproduceTable1(RunArgs),
    /// Desk-scale tomography with TV.
    ReproduceTable2(RunArgs),
    /// Elliptic parameter identification with TV.
    ReproduceTable3(RunArgs),
}

fn execute(mut cfg: ExperimentConfig, args: RunArgs) -> Result<ExitCode> {
    cfg.apply_overrides(args.seed, args.out, args.max_iter);
    let report = run_experiment(&cfg, args.jobs)?;
    let dir = cfg.output.dir.clone();
    let written = write_outputs(&cfg, &report, &dir)
        .with_context(|| format!("writing outputs to {}", dir.display()))?;
    let times: Vec<f64> = report.outcomes.iter().map(|o| o.record.elapsed).collect();
    print!("{}", format_table(&report.summary(), &times));
    let mut seen = std::collections::BTreeSet::new();
    for o in &report.outcomes {
        for w in &o.record.warnings {
            if seen.insert((o.label.clone(), w.clone())) {
                println!("warning {}: {w}", o.label);
            }
        }
    }
    for s in &report.skipped {
        println!("skipped {s}");
    }
    println!("wrote {} files to {}", written.len(), dir.display());
    Ok(if report.all_discrepancy() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn list_problems() {
    println!("fredholm    nodes = N            first-kind integral equation on [0,1], trapezoidal rule");
    println!("tomography  rows, cols, angles,  Shepp-Logan phantom, exact ray/pixel lengths,");
    println!("            rays, geometry       geometry = \"parallel\" | \"fan\"");
    println!("elliptic    grid = m             recover c in -Δu + cu = f on m×m interior nodes");
    println!();
    println!("regularizers: quadratic | tv (kappa, pdhg_iters, tv_units = \"pixel\" | \"continuum\", warm_start)");
    println!("methods:      ahb | landweber | nu | nesterov (nu and nesterov: linear problems, quadratic only)");
}

fn check(path: PathBuf) -> Result<ExitCode> {
    let cfg = ExperimentConfig::load(&path)?;
    cfg.validate()?;
    let unsupported = cfg.unsupported_methods();
    for (_, why) in &unsupported {
        println!("unsupported {why}");
    }
    let inst = ProblemInstance::build(&cfg.problem)?;
    let mut ok = unsupported.is_empty();
    for line in self_check(&inst, cfg.noise.seed)? {
        println!("{} {}: {}", if line.passed { "PASS" } else { "FAIL" }, line.name, line.detail);
        ok &= line.passed;
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, args } => ExperimentConfig::load(&config)
            .map_err(anyhow::Error::from)
            .and_then(|cfg| execute(cfg, args)),
        Command::ListProblems => {
            list_problems();
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { config } => check(config),
        Command::ReproduceTable1(args) => execute(builtin::table1(), args),
        Command::ReproduceTable2(args) => execute(builtin::table2(), args),
        Command::ReproduceTable3(args) => execute(builtin::table3(), args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
