use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use graphop_cli::commands::{self, Tolerances};
use graphop_cli::error::CliError;
use graphop_cli::report::RunMode;

/// Classify graph operators over graph groupoids, print their products,
/// adjoints, and self-commutators, and emit matrix truncations and spectral
/// traces.
#[derive(Parser)]
#[command(name = "graphop", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ToleranceArgs {
    /// Pruning threshold for near-zero coefficients.
    #[arg(long = "eps-zero", default_value_t = 1e-12)]
    eps_zero: f64,
    /// Coefficient-wise comparison tolerance.
    #[arg(long = "eps-eq", default_value_t = 1e-9)]
    eps_eq: f64,
    /// Numeric positivity slack; defaults to GRAPHOP_TOL or 1e-9.
    #[arg(long)]
    tol: Option<f64>,
}

impl ToleranceArgs {
    fn resolve(&self) -> Result<Tolerances, CliError> {
        let tol = match self.tol {
            Some(value) => value,
            None => match std::env::var("GRAPHOP_TOL") {
                Ok(text) => text.parse().map_err(|_| {
                    CliError::Parse(format!("GRAPHOP_TOL is not a number: `{text}`"))
                })?,
                Err(_) => 1e-9,
            },
        };
        Tolerances::new(self.eps_zero, self.eps_eq, tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify an operator in paper and oracle modes.
    Classify {
        #[arg(short = 'g', long)]
        graph: PathBuf,
        #[arg(short = 'o', long)]
        operator: PathBuf,
        /// Which modes to report: paper, oracle, or both.
        #[arg(long, default_value = "both")]
        mode: String,
        /// Largest ball radius for the numeric positivity probe.
        #[arg(long, default_value_t = 4)]
        truncation: u32,
        #[command(flatten)]
        tolerances: ToleranceArgs,
        /// Emit the JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print the convolution product of two operators in .gop syntax.
    Product {
        #[arg(short = 'g', long)]
        graph: PathBuf,
        /// Operator files; exactly two.
        #[arg(short = 'o', long = "operator")]
        operators: Vec<PathBuf>,
        #[arg(long = "eps-zero", default_value_t = 1e-12)]
        eps_zero: f64,
    },
    /// Print the adjoint of an operator in .gop syntax.
    Adjoint {
        #[arg(short = 'g', long)]
        graph: PathBuf,
        #[arg(short = 'o', long)]
        operator: PathBuf,
        #[arg(long = "eps-zero", default_value_t = 1e-12)]
        eps_zero: f64,
    },
    /// Print the self-commutator T*T - TT* in .gop syntax.
    Commutator {
        #[arg(short = 'g', long)]
        graph: PathBuf,
        #[arg(short = 'o', long)]
        operator: PathBuf,
        #[arg(long = "eps-zero", default_value_t = 1e-12)]
        eps_zero: f64,
    },
    /// Print the matrix truncation of an operator on a ball basis.
    Matrix {
        #[arg(short = 'g', long)]
        graph: PathBuf,
        #[arg(short = 'o', long)]
        operator: PathBuf,
        /// Ball radius for the basis.
        #[arg(long)]
        ball: u32,
        /// Emit CSV with a header of ball word names.
        #[arg(long)]
        csv: bool,
        #[arg(long = "eps-zero", default_value_t = 1e-12)]
        eps_zero: f64,
    },
    /// Print smallest self-commutator eigenvalues over nested balls.
    Spectrum {
        #[arg(short = 'g', long)]
        graph: PathBuf,
        #[arg(short = 'o', long)]
        operator: PathBuf,
        /// Largest ball radius.
        #[arg(long = "ball-max")]
        ball_max: u32,
        /// Emit CSV (n,dim,lambda_min).
        #[arg(long)]
        csv: bool,
        #[arg(long = "eps-zero", default_value_t = 1e-12)]
        eps_zero: f64,
    },
    /// Free-group operators over the one-vertex loop graphs.
    Free {
        #[command(subcommand)]
        command: FreeCommand,
    },
    /// Emit a vertex-space compression matrix of the linear graph.
    LinearCompress {
        /// vertex, edge, or sym.
        #[arg(long)]
        kind: String,
        /// 1-based position; requires 1 <= j < size.
        #[arg(long)]
        j: usize,
        /// Truncation size N.
        #[arg(long)]
        size: usize,
    },
}

#[derive(Subcommand)]
enum FreeCommand {
    /// Classify a finitely supported free-group operator.
    Classify {
        /// Number of generators.
        #[arg(short = 'N', long = "generators")]
        generators: usize,
        #[arg(short = 'o', long)]
        operator: PathBuf,
        #[arg(long, default_value = "both")]
        mode: String,
        #[arg(long, default_value_t = 4)]
        truncation: u32,
        #[command(flatten)]
        tolerances: ToleranceArgs,
        #[arg(long)]
        json: bool,
    },
}

fn parse_mode(text: &str) -> Result<RunMode, CliError> {
    RunMode::parse(text)
        .ok_or_else(|| CliError::Parse(format!("unknown mode `{text}`; expected paper, oracle, or both")))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Classify {
            graph,
            operator,
            mode,
            truncation,
            tolerances,
            json,
        } => commands::cmd_classify(
            &graph,
            &operator,
            parse_mode(&mode)?,
            truncation,
            tolerances.resolve()?,
            json,
        ),
        Command::Product {
            graph,
            operators,
            eps_zero,
        } => {
            if operators.len() != 2 {
                return Err(CliError::Parse(format!(
                    "product expects exactly two -o operators, got {}",
                    operators.len()
                )));
            }
            commands::cmd_product(&graph, &operators[0], &operators[1], eps_zero)
        }
        Command::Adjoint {
            graph,
            operator,
            eps_zero,
        } => commands::cmd_adjoint(&graph, &operator, eps_zero),
        Command::Commutator {
            graph,
            operator,
            eps_zero,
        } => commands::cmd_commutator(&graph, &operator, eps_zero),
        Command::Matrix {
            graph,
            operator,
            ball,
            csv,
            eps_zero,
        } => commands::cmd_matrix(&graph, &operator, ball, csv, eps_zero),
        Command::Spectrum {
            graph,
            operator,
            ball_max,
            csv,
            eps_zero,
        } => commands::cmd_spectrum(&graph, &operator, ball_max, csv, eps_zero),
        Command::Free { command } => match command {
            FreeCommand::Classify {
                generators,
                operator,
                mode,
                truncation,
                tolerances,
                json,
            } => commands::cmd_free_classify(
                generators,
                &operator,
                parse_mode(&mode)?,
                truncation,
                tolerances.resolve()?,
                json,
            ),
        },
        Command::LinearCompress { kind, j, size } => {
            let kind = commands::parse_compression_kind(&kind)?;
            commands::cmd_linear_compress(kind, j, size)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
