use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pblab::{run, Command, OutputFormat, RunConfig};

/// Section triples, their hypersurfaces in P⁴ and the blow-up along a line.
#[derive(Parser)]
#[command(name = "pblab", version)]
struct Args {
    command: Command,
    /// Degree of the triple (ignored when --input is given).
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Triple file with lines `n = …`, `f = …`, `g = …`, `h = …`.
    #[arg(long)]
    input: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    trials: u32,
    /// Coefficients are drawn from [-bound, bound].
    #[arg(long, default_value_t = 3)]
    bound: u32,
    /// S-pair budget per Gröbner basis; PBLAB_BUDGET takes precedence.
    #[arg(long, default_value_t = pblab_core::GbOptions::DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let budget = match std::env::var("PBLAB_BUDGET") {
        Ok(v) => match v.trim().parse() {
            Ok(b) => b,
            Err(_) => {
                eprintln!("error: PBLAB_BUDGET must be a non-negative integer (got `{v}`)");
                return ExitCode::from(1);
            }
        },
        Err(_) => args.budget,
    };
    let cfg = RunConfig {
        command: args.command,
        n: args.n,
        input_path: args.input,
        seed: args.seed,
        trials: args.trials,
        coeff_bound: args.bound,
        spair_budget: budget,
        output: if args.json { OutputFormat::Json } else { OutputFormat::Text },
    };
    let (report, exit) = run(&cfg);
    let body = match cfg.output {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Text => report.to_text(),
    };
    // a closed pipe (e.g. `| head`) is not an error of the computation
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit as u8)
}
