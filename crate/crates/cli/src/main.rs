//! `snc`: construction, analysis, coding and verification for SNC index coding.
//!
//! Exit status: 0 on success, 1 on usage or input errors, 2 when a
//! verification finds a mismatch.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "snc", version, about = "Index codes for symmetric neighboring consecutive side-information")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct InstanceArgs {
    /// Number of messages and receivers.
    #[arg(long)]
    k: usize,
    /// Messages known after the receiver's own index.
    #[arg(long)]
    d: usize,
    /// Messages known before the receiver's own index.
    #[arg(long)]
    u: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the AIR matrix of the given shape.
    Air {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Check that every cyclic window of `cols` rows has full rank.
        #[arg(long)]
        verify: bool,
        /// Print the λ and β lists of the chain decomposition.
        #[arg(long)]
        chain: bool,
    },
    /// Closed-form quantities of an instance.
    Analyze {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, conflicts_with = "tsv")]
        json: bool,
        #[arg(long)]
        tsv: bool,
    },
    /// Encode a message bitstring.
    Encode {
        #[command(flatten)]
        inst: InstanceArgs,
        /// `K` characters of 0/1, index 0 leftmost.
        #[arg(long)]
        messages: String,
    },
    /// Decode one receiver's message.
    Decode {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        receiver: usize,
        /// Codeword bitstring.
        #[arg(long)]
        code: String,
        /// `K` characters of 0/1/?, with `?` at every position the receiver does not know.
        #[arg(long)]
        sideinfo: String,
    },
    /// Symbol-sum decoding plan for every receiver.
    Plan {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        json: bool,
    },
    /// Round-trip simulation, decodability and optional brute-force checks.
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compare brute-force MAIS and minrank with the formulas when within caps.
        #[arg(long)]
        with_oracles: bool,
        /// Zero one row of the transmitter matrix before encoding (negative control).
        #[arg(long, value_name = "ROW")]
        inject_corruption: Option<usize>,
        #[arg(long, default_value_t = snc_core::oracles::MINRANK_DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Brute-force oracle compared against the closed form.
    Oracle {
        #[arg(value_enum)]
        which: OracleKind,
        #[command(flatten)]
        inst: InstanceArgs,
        /// Limit on free entries for the minrank search.
        #[arg(long, default_value_t = snc_core::oracles::MINRANK_DEFAULT_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Broadcast rate and code length over a range of U.
    Sweep {
        #[arg(long, required_unless_present = "preset")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "preset")]
        d: Option<usize>,
        #[arg(long, required_unless_present = "preset")]
        u_from: Option<usize>,
        #[arg(long, required_unless_present = "preset")]
        u_to: Option<usize>,
        /// K = 827, D = 23, U = 1..=10.
        #[arg(long = "paper-table", conflicts_with_all = ["k", "d", "u_from", "u_to"])]
        preset: bool,
        #[arg(long)]
        json: bool,
    },
    /// Comparison codes.
    Baseline {
        #[command(subcommand)]
        which: Baseline,
    },
}

#[derive(Subcommand)]
enum Baseline {
    /// Vandermonde MDS code over the smallest prime field of size at least K.
    Mds {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Comma-separated field elements to encode.
        #[arg(long, value_name = "CSV")]
        encode: Option<String>,
        /// Compare the code length with the AIR code.
        #[arg(long)]
        compare: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Mais,
    Minrank,
    Decodable,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(if out.mismatch { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
