//! Command-line front end: catalog listing, module construction, census,
//! certification, Frobenius sampling and certificate replay.
//!
//! Exit codes: 0 success or PASS; 2 usage, parse or input errors;
//! 3 INCONCLUSIVE (including an incomplete census); 4 criterion FAIL or a
//! certificate that does not replay; 5 expected sampler candidate not
//! qualified.

mod commands;
mod config;
mod manifest;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use workbench::DEFAULT_SEED;

pub use commands::{certify_pipeline, CertifyParams};
pub use config::SamplerConfig;
pub use manifest::Manifest;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;
pub const EXIT_FAIL: u8 = 4;
pub const EXIT_NOT_QUALIFIED: u8 = 5;

/// Largest group whose classes the CLI enumerates by default.
pub const DEFAULT_CLASS_CAP: u64 = 100_000;

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}

#[derive(Parser, Debug)]
#[command(name = "workbench", version, about = "Doubly transitive groups and their mod-2 heart modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    /// Sum-zero functions (modulo constants for even degree).
    Heart,
    /// All functions on the points.
    Permutation,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List catalog entries with degree, order and genus.
    Catalog {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Build a module and report its basic invariants.
    Build {
        group: String,
        #[arg(long, value_enum, default_value_t = ModuleKind::Heart)]
        module: ModuleKind,
        /// Write the module dump here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "WORKBENCH_SEED", value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Enumerate the irreducible GF(2)-modules of a group.
    Census {
        group: String,
        #[arg(long, default_value_t = workbench::mod_rep::DEFAULT_DIM_CAP)]
        dim_cap: usize,
        #[arg(long, env = "WORKBENCH_SEED", value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify that the heart module is very simple.
    Certify {
        group: String,
        /// Table file with cited group data.
        #[arg(long)]
        tables: Option<PathBuf>,
        /// Use table data only, no exhaustive computation.
        #[arg(long)]
        tables_only: bool,
        #[arg(long, default_value_t = workbench::mod_rep::DEFAULT_DIM_CAP)]
        dim_cap: usize,
        /// Largest group order for exhaustive class enumeration.
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        class_cap: u64,
        #[arg(long, env = "WORKBENCH_SEED", value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Directory for the certificate and report files.
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
    /// Sample Frobenius cycle types of a polynomial family.
    Sample {
        /// Packaged config name or path to a config file.
        config: String,
        #[arg(long, env = "WORKBENCH_SEED", value_parser = parse_seed)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate file and compare it with a fresh run.
    Verify {
        certificate: PathBuf,
        /// Override the table file recorded in the certificate.
        #[arg(long)]
        tables: Option<PathBuf>,
    },
}

/// Runs one command, writing human output to `out` and diagnostics to
/// `err`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Catalog { family, m, q } => commands::catalog(family.as_deref(), *m, *q, out),
        Command::Build { group, module, out: path, seed } => commands::build(group, *module, path.as_deref(), *seed, out),
        Command::Census { group, dim_cap, seed, out: path } => {
            commands::census(group, *dim_cap, *seed, path.as_deref(), out)
        }
        Command::Certify { group, tables, tables_only, dim_cap, class_cap, seed, out_dir } => {
            let params = CertifyParams {
                group_id: group.clone(),
                tables: tables.clone(),
                computed: !tables_only,
                dim_cap: *dim_cap,
                class_cap: *class_cap,
                seed: *seed,
            };
            commands::certify(&params, out_dir, out)
        }
        Command::Sample { config, seed, out: path } => commands::sample(config, *seed, path.as_deref(), out),
        Command::Verify { certificate, tables } => commands::verify(certificate, tables.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
