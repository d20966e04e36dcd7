use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use alphadet::distribution::DEFAULT_MASS_TARGET;
use alphadet_cli::{
    cmd_alphadet, cmd_check, cmd_divisible, cmd_expand, cmd_sample, parse_alpha, Outcome, SampleOptions,
};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "alphadet",
    version,
    about = "α-determinants and α-determinantal processes on finite spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Kernel JSON file: {"dim": d, "real": [[..]], "imag": [[..]]?}
    file: PathBuf,
    /// α, e.g. 1, -0.5 or -1/3
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
    alpha: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Print det_α of the matrix
    #[command(visible_alias = "det")]
    Alphadet(Common),
    /// Decide whether the α-determinantal process with this kernel exists
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = alphadet::existence::DEFAULT_N_MAX)]
        n_max: usize,
    },
    /// Decide whether the process is infinitely divisible
    Divisible {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = alphadet::divisibility::DEFAULT_N_MAX)]
        n_max: usize,
    },
    /// Draw multiplicity vectors, one per line
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability mass the truncated pmf must capture (α > 0)
        #[arg(long, default_value_t = DEFAULT_MASS_TARGET)]
        mass_target: f64,
        /// Append a factorial-moment check report
        #[arg(long)]
        validate: bool,
    },
    /// Print expansion coefficients up to a total degree
    Expand {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Comma-separated evaluation point for the residual
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        z: Option<Vec<f64>>,
    },
}

fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Alphadet(c) => cmd_alphadet(&c.file, c.alpha),
        Command::Check { common, n_max } => cmd_check(&common.file, common.alpha, n_max),
        Command::Divisible { common, n_max } => cmd_divisible(&common.file, common.alpha, n_max),
        Command::Sample {
            common,
            count,
            seed,
            mass_target,
            validate,
        } => {
            let opts = SampleOptions {
                count,
                seed,
                mass_target,
                validate,
            };
            cmd_sample(&common.file, common.alpha, &opts)
        }
        Command::Expand { common, order, z } => cmd_expand(&common.file, common.alpha, order, z),
    };
    result.unwrap_or_else(|e| Outcome::from_error(&e))
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().lock().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
