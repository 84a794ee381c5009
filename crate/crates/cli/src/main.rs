use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

#[derive(Parser, Debug)]
#[command(name = "mirrorci", version, about = "Exact mirror-symmetry computations for projective complete intersections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Instanton numbers of a Calabi-Yau threefold via the mirror map.
    Instantons(RunArgs),
    /// Picard-Fuchs annihilation of the hypergeometric series.
    PfVerify(RunArgs),
    /// Quantum-cohomology relation (Fano and boundary regimes).
    Relation(RunArgs),
    /// Fixed-point recursion against its closed forms.
    RecursionVerify(RunArgs),
    /// Polynomiality of the hypergeometric correlators.
    Polynomiality(RunArgs),
    /// Lines on the complete intersection by localization.
    Lines(RunArgs),
    /// Mirror map T = I_1/I_0 and its inverse.
    MirrorMap(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Dimension n of the ambient CP^n.
    #[arg(long)]
    ambient: usize,
    /// Degrees of the defining equations, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    degrees: Vec<u32>,
    /// Truncation order in q.
    #[arg(long, default_value_t = 4)]
    order: usize,
    /// Seed for the torus weights.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Resampling attempts for generic torus weights.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (name, args) = match &cli.command {
        Command::Instantons(a) => ("instantons", a),
        Command::PfVerify(a) => ("pf-verify", a),
        Command::Relation(a) => ("relation", a),
        Command::RecursionVerify(a) => ("recursion-verify", a),
        Command::Polynomiality(a) => ("polynomiality", a),
        Command::Lines(a) => ("lines", a),
        Command::MirrorMap(a) => ("mirror-map", a),
    };
    match commands::run(name, args) {
        Ok(report) => {
            match args.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Table => print!("{}", report.to_table()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("mirrorci {name}: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
