use std::path::PathBuf;
use std::process::exit;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use indirank_cli::commands::{
    self, AuditArgs, InputFormat, MethodFlags, RateArgs, SearchArgs, EXIT_INVALID,
};

#[derive(Parser)]
#[command(
    name = "indirank",
    version,
    about = "Rate alternatives from incomplete paired-comparison profiles and audit the scores for self-consistent monotonicity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MethodOpts {
    /// Scoring method (row_sum, wei, hasse, ramanujacharyulu, ktt, fair_bets,
    /// least_squares, grs, zermelo_bt, daniels, cowden; ktt and fair_bets
    /// also accept -loss/-difference/-ratio compound names)
    #[arg(long)]
    method: String,
    /// Attenuation or smoothing parameter (ktt, grs)
    #[arg(long)]
    epsilon: Option<f64>,
    /// Matrix the path counts walk over: a (outcome totals) or c (margins)
    #[arg(long)]
    variant: Option<String>,
    /// win or loss side of a two-sided method (wei, ktt, fair_bets)
    #[arg(long)]
    direction: Option<String>,
    /// difference or ratio combination of the win and loss sides (ktt, fair_bets)
    #[arg(long)]
    combine: Option<String>,
}

impl MethodOpts {
    fn flags(&self) -> MethodFlags {
        MethodFlags {
            epsilon: self.epsilon,
            variant: self.variant.clone(),
            direction: self.direction.clone(),
            combine: self.combine.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute scores for a profile
    Rate {
        /// Profile document (JSON, or CSV with --format csv / a .csv extension)
        #[arg(long)]
        input: PathBuf,
        /// Input format: auto, json, or csv
        #[arg(long)]
        format: Option<String>,
        #[command(flatten)]
        method: MethodOpts,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Score a profile and audit the result for self-consistent monotonicity
    Audit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        format: Option<String>,
        #[command(flatten)]
        method: MethodOpts,
        /// Also check the splitting balance condition
        #[arg(long)]
        splitting_balance: bool,
        /// Also enumerate macrovertices
        #[arg(long)]
        macrovertex: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Search the seeded random-profile stream for a monotonicity violation
    Search {
        #[command(flatten)]
        method: MethodOpts,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        m_min: usize,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        /// Only generate indivisible profiles
        #[arg(long)]
        indivisible_only: bool,
        /// Probability that a reported comparison is a draw
        #[arg(long, default_value_t = 1.0 / 3.0)]
        draw_prob: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-run the canned demonstrations and check their documented outcomes
    Reproduce {
        /// fig1, prop2, prop10, or all
        target: String,
    },
    /// Export a canned fixture as a profile document
    Fixture {
        /// fig1, fig2_scenario, prop2, or prop10
        name: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            exit(code);
        }
    };
    let code = match cli.command {
        Command::Rate {
            input,
            format,
            method,
            output,
        } => match InputFormat::parse(format.as_deref()) {
            Ok(format) => commands::cmd_rate(&RateArgs {
                input,
                format,
                method: method.method.clone(),
                flags: method.flags(),
                output,
            }),
            Err(e) => {
                eprintln!("{e}");
                EXIT_INVALID
            }
        },
        Command::Audit {
            input,
            format,
            method,
            splitting_balance,
            macrovertex,
            output,
        } => match InputFormat::parse(format.as_deref()) {
            Ok(format) => commands::cmd_audit(&AuditArgs {
                input,
                format,
                method: method.method.clone(),
                flags: method.flags(),
                splitting_balance,
                macrovertex,
                output,
            }),
            Err(e) => {
                eprintln!("{e}");
                EXIT_INVALID
            }
        },
        Command::Search {
            method,
            seed,
            budget,
            n_min,
            n_max,
            m_min,
            m_max,
            indivisible_only,
            draw_prob,
            output,
        } => commands::cmd_search(&SearchArgs {
            method: method.method.clone(),
            flags: method.flags(),
            seed,
            budget,
            n_min,
            n_max,
            m_min,
            m_max,
            indivisible_only,
            draw_prob,
            output,
        }),
        Command::Reproduce { target } => commands::cmd_reproduce(&target),
        Command::Fixture { name, output } => commands::cmd_fixture(&name, output.as_deref()),
    };
    exit(code);
}
