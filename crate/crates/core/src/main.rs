use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fgl_descent::report::{self, DescentInput, RunOptions, RunReport};

#[derive(Parser)]
#[command(name = "fgl-descent", version, about = "Exact checks on p-typical formal group laws and weight descent")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification pipeline.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Report only this check (or the checks whose names start with it).
        #[arg(long)]
        check: Option<String>,
    },
    /// Run weight descent on one series or on seeded random series.
    Descent {
        #[command(flatten)]
        common: Common,
        /// Coefficient list like `[0,1,1]` or an expression like `u^1 + u^3`.
        #[arg(long, conflicts_with = "random")]
        z: Option<String>,
        /// Number of random series.
        #[arg(long, required_unless_present = "z")]
        random: Option<usize>,
        #[arg(long, default_value_t = 20)]
        max_weight: usize,
    },
    /// Tabulate the i-series residues.
    Pseries {
        #[command(flatten)]
        common: Common,
        /// Largest i (default p^2 + 1).
        #[arg(long)]
        i_max: Option<u64>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Formal degree cap of the full law (default p^(n+1) + 2).
    #[arg(long)]
    x_deg: Option<u32>,
    /// Precision in u_n (default 32).
    #[arg(long)]
    u_prec: Option<u32>,
    /// x-degree cap of the reduced law (default p^(n+1) + p + 2).
    #[arg(long)]
    x_cap: Option<u32>,
    /// a-degree cap of the reduced law.
    #[arg(long)]
    a_cap: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run even when the estimated cost exceeds the desk-scale limit.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl Common {
    fn options(&self) -> RunOptions {
        RunOptions {
            p: self.p,
            n: self.n,
            x_deg: self.x_deg,
            u_prec: self.u_prec,
            x_cap: self.x_cap,
            a_cap: self.a_cap,
            seed: self.seed,
        }
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn emit(report: &RunReport, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Verify { common, .. } | Command::Descent { common, .. } | Command::Pseries { common, .. } => common,
    };
    let opts = common.options();
    if let Err(e) = opts.desk_scale_guard(common.force) {
        return usage_error(e);
    }
    let result = match &cli.command {
        Command::Verify { check, .. } => report::verify(&opts).and_then(|mut r| {
            if let Some(name) = check {
                r.filter_checks(name)?;
            }
            Ok(r)
        }),
        Command::Descent { z, random, max_weight, .. } => {
            let input = match (z, random) {
                (Some(z), _) => DescentInput::Explicit(z.clone()),
                (None, Some(count)) => DescentInput::Random { count: *count, max_weight: *max_weight },
                (None, None) => unreachable!("clap requires --z or --random"),
            };
            report::descent(&opts, &input)
        }
        Command::Pseries { i_max, .. } => report::pseries(&opts, *i_max),
    };
    match result {
        Ok(r) => emit(&r, common.format),
        Err(e) => usage_error(e),
    }
}
