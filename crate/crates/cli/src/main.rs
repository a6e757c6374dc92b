//! `floer`: combinatorial Floer homology of curve pairs from the command line.
//!
//! Every command prints a JSON report on stdout. Exit status is 0 on success,
//! 1 for invalid input and 2 when an invariant or theorem check fails.

mod check;
mod commands;
mod render;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::Report;

#[derive(Parser)]
#[command(
    name = "floer",
    version,
    about = "Combinatorial Floer homology for curve pairs on surfaces"
)]
struct Cli {
    /// Print a short human-readable summary instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CoeffArg {
    F2,
    Z,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a pair file and report the hypothesis flags.
    Validate { file: PathBuf },
    /// List the crossings with signs and parameters.
    Intersections { file: PathBuf },
    /// List all lunes with signs, areas and primitivity.
    Lunes { file: PathBuf },
    /// Index of the trace given by two crossings and arc choices.
    Maslov {
        file: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Directions of the alpha and beta arcs, e.g. `fwd,bwd`.
        #[arg(long, default_value = "fwd,fwd")]
        arcs: String,
        /// Extra full turns on alpha and beta, e.g. `1,0`.
        #[arg(long, default_value = "0,0")]
        wraps: String,
    },
    /// Generators, differential and gradings.
    Complex {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "f2")]
        coeff: CoeffArg,
        /// Also write the complex in the connection-complex format.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Floer homology, Euler characteristic and the geometric oracle.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "f2")]
        coeff: CoeffArg,
    },
    /// Broken hearts and their pairing.
    Hearts { file: PathBuf },
    /// Cancel a unit entry of a connection complex.
    Reduce {
        /// Complex file (connection-complex JSON).
        file: PathBuf,
        /// Pivot `P,Q` with `nu(Q, P)` a unit.
        #[arg(long)]
        pair: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Cancel the two corners of a primitive lune from I to J.
    IsotopyCancel {
        file: PathBuf,
        #[arg(long)]
        pair: String,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Push a finger of beta across alpha, creating two crossings.
    IsotopyCreate {
        file: PathBuf,
        /// Beta parameter of the finger's base, e.g. `1/4`.
        #[arg(long)]
        anchor: String,
        /// Alpha parameter the finger crosses, e.g. `3/8`.
        #[arg(long)]
        target: String,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Draw the pair as SVG.
    Render {
        file: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
        /// Shade every lune and annotate winding numbers.
        #[arg(long)]
        lunes: bool,
    },
    /// Run every invariant check on the pair.
    Check { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report: Report = match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Intersections { file } => commands::intersections(&file),
        Command::Lunes { file } => commands::lunes(&file),
        Command::Maslov {
            file,
            from,
            to,
            arcs,
            wraps,
        } => commands::maslov(&file, from, to, &arcs, &wraps),
        Command::Complex { file, coeff, export } => commands::complex(&file, coeff, export.as_deref()),
        Command::Homology { file, coeff } => commands::homology(&file, coeff),
        Command::Hearts { file } => commands::hearts(&file),
        Command::Reduce { file, pair, output } => commands::reduce(&file, &pair, output.as_deref()),
        Command::IsotopyCancel { file, pair, output } => commands::isotopy_cancel(&file, &pair, &output),
        Command::IsotopyCreate {
            file,
            anchor,
            target,
            output,
        } => commands::isotopy_create(&file, &anchor, &target, &output),
        Command::Render { file, output, lunes } => commands::render(&file, &output, lunes),
        Command::Check { file } => check::check(&file),
    };
    if cli.text {
        print!("{}", report.to_text());
    } else {
        println!("{}", report.to_json());
        for w in &report.warnings {
            eprintln!("warning: {w}");
        }
    }
    ExitCode::from(report.exit_code)
}
