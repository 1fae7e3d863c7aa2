//! `coha`: command-line front end for the CoHA computations.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "coha", version, about = "Exact computations in cohomological Hall algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct QuiverArg {
    /// Built-in alias (a1, l1, a20tilde, k2) or path to a quiver file.
    #[arg(long, default_value = "k2")]
    pub quiver: String,
    /// Stability as a comma list, overriding the one from the quiver.
    #[arg(long)]
    pub theta: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shuffle product of two elements.
    Product {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long)]
        dim_left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long)]
        dim_right: String,
    },
    /// Dimensions of the semistable quotient per degree.
    SstDims {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        dim: String,
        #[arg(long, default_value_t = 8)]
        deg: u32,
    },
    /// Compares each component with the sum over HN strata.
    HnCheck {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        dim: String,
        #[arg(long, default_value_t = 6)]
        deg: u32,
    },
    /// Checks the defining relations of the Kronecker algebra in (2,2).
    Relations {
        #[arg(long, default_value_t = 3)]
        pmax: u32,
        #[arg(long, default_value_t = 3)]
        qmax: u32,
    },
    /// Quotient dimension against standard monomials and the symmetric series.
    Pbw {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 8)]
        deg: u32,
    },
    /// Rewrites a word like "e0 e1 f2" into standard order.
    NormalOrder {
        word: String,
        /// Skip the comparison in the semistable quotient.
        #[arg(long)]
        no_check: bool,
    },
    /// Braid relation of c on all triples up to a weight.
    Ybe {
        #[arg(long, default_value_t = 6)]
        weight: u32,
    },
    /// Relations as differential operators on probe polynomials.
    DiffrepCheck {
        #[arg(long, default_value_t = 3)]
        pmax: u32,
        #[arg(long, default_value_t = 3)]
        qmax: u32,
        #[arg(long, default_value_t = 4)]
        probe: usize,
    },
    /// Rank of standard monomials acting on polynomials.
    Faithfulness {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        weight: u32,
    },
    /// Products of generators against Schur (a1) or monomial symmetric (l1) functions.
    SchurCheck {
        #[arg(long, default_value = "a1")]
        quiver: String,
        /// Largest number of factors.
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Largest generator index (a1) or partition size (l1).
        #[arg(long, default_value_t = 6)]
        max: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(report) => {
            print!("{}", report.emit(cli.format));
            ExitCode::from(exit_code(&report))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn exit_code(report: &report::Report) -> u8 {
    u8::from(!report.pass)
}
