use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quadriclab_cli::{run, Command, RunConfig};

#[derive(Parser)]
#[command(name = "quadriclab", version, about = "Exact analysis of quadric surface fibrations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Corank, kappa and node analysis at sample points.
    Stratify(Opts),
    /// Fano scheme of lines at sample points, with line counts over small primes.
    Fiber(Opts),
    /// Full invariant suite; exits 1 if any check fails.
    Verify(Opts),
    /// Seeded random family file.
    Random(Opts),
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    input: Option<PathBuf>,
    /// Q or Fp:P
    #[arg(long)]
    field: Option<String>,
    /// Grassmannian chart: 12, 13, 14, 23, 24 or 34
    #[arg(long)]
    chart: Option<String>,
    /// Semicolon-separated points, e.g. "0,0,0;1,0,1"
    #[arg(long, conflicts_with = "grid")]
    points: Option<String>,
    /// All points with coordinates in 0..N
    #[arg(long)]
    grid: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "quadriclab-out")]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    degree: u32,
    #[arg(long, default_value_t = 3)]
    base_dim: usize,
    /// Sample points per complex certificate, or per seeded sample
    #[arg(long, default_value_t = 25)]
    samples: usize,
    #[arg(long = "test-inject-asymmetry", hide = true)]
    inject_asymmetry: bool,
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("QUADRICLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("QUADRICLAB_THREADS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("QUADRICLAB_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: usage_error: {e}");
        return ExitCode::from(2);
    }
    let (command, o) = match cli.command {
        Cmd::Stratify(o) => (Command::Stratify, o),
        Cmd::Fiber(o) => (Command::Fiber, o),
        Cmd::Verify(o) => (Command::Verify, o),
        Cmd::Random(o) => (Command::Random, o),
    };
    let cfg = RunConfig {
        command,
        input: o.input,
        field: o.field,
        chart: o.chart,
        points: o.points,
        grid: o.grid,
        seed: o.seed,
        out: o.out,
        degree: o.degree,
        base_dim: o.base_dim,
        samples: o.samples,
        inject_asymmetry: o.inject_asymmetry,
    };
    match run(&cfg) {
        Ok(out) => {
            println!("{} {}", if out.passed { "PASS" } else { "FAIL" }, out.path.display());
            if out.passed {
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
