use clap::{Parser, Subcommand};
use logchern::cli::{self, OutputFormat, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "logchern",
    version,
    about = "Exact verifier for Chern-class identities of plane-curve divisors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a plane curve: singular locus, CSM classes, and the
    /// logarithmic Chern-class identity
    Analyze {
        /// Inline homogeneous polynomial in x, y, z
        #[arg(long)]
        poly: Option<String>,
        /// Read the polynomial from a file (one polynomial per file)
        #[arg(long)]
        file: Option<PathBuf>,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
        /// Seed for the chart-search RNG
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the jet-order stabilization cap
        #[arg(long)]
        max_jet_order: Option<usize>,
        /// Chart retry budget
        #[arg(long, default_value_t = 32)]
        retries: usize,
        /// Write the report to this path instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the Segre/Chern identity for a complete intersection in P^n
    Codim {
        /// Ambient projective dimension n
        #[arg(short = 'n', long = "ambient-dim")]
        ambient_dim: usize,
        /// Comma-separated hypersurface degrees
        #[arg(short = 'd', long = "degrees", value_delimiter = ',')]
        degrees: Vec<u32>,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze { poly, file, json, seed, max_jet_order, retries, output } => {
            let config = RunConfig {
                poly_text: poly,
                input_path: file,
                chart_retry_budget: retries,
                rng_seed: seed,
                max_jet_order,
                output_format: if json { OutputFormat::Json } else { OutputFormat::Text },
                output_path: output,
            };
            match cli::run_analyze(&config) {
                Ok(outcome) => {
                    if config.output_path.is_none() {
                        print!("{}", outcome.rendered);
                    }
                    ExitCode::from(outcome.exit_code as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(cli::EXIT_ERROR as u8)
                }
            }
        }
        Command::Codim { ambient_dim, degrees, json } => {
            let format = if json { OutputFormat::Json } else { OutputFormat::Text };
            match cli::run_codim(ambient_dim, &degrees, format) {
                Ok(outcome) => {
                    print!("{}", outcome.rendered);
                    ExitCode::from(outcome.exit_code as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(cli::EXIT_ERROR as u8)
                }
            }
        }
    }
}
