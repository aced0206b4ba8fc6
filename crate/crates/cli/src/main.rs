use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use adinkra_cli::commands::{self, GraphFormat, SuiteArg, TableFormat, TextFormat};
use adinkra_cli::pins::height_from_spec;
use adinkra_cli::server;
use adinkra_cli::session::Store;
use anyhow::{bail, Result};
use clap::{Parser, Subcommand};

/// Heights, Morse divisors and Jacobian images on hypercube Adinkras.
///
/// Vertices are written as bitmasks: bit j-1 holds coordinate x_j, so 31 is (1,1,1,1,1)
/// and 5 is (1,0,1,0,0). Pin specs also accept `b10100`, listing x_1..x_N.
#[derive(Parser)]
#[command(name = "adinkra", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count (and optionally dump) all heights on H^n.
    Enumerate {
        n: u8,
        /// Print only the count.
        #[arg(long)]
        count_only: bool,
        /// Write every height as one JSON line.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow the n = 6 streaming count.
        #[arg(long)]
        force: bool,
    },
    /// Histogram of the e∞ coefficient over all heights on H^5.
    Census {
        /// Curve 1..=5; all curves if omitted.
        #[arg(long)]
        curve: Option<u8>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Morse divisor and image of one height on H^5.
    Image {
        /// JSON file with {"n": 5, "values": [...]} or a bare array of 32 values.
        #[arg(long, conflicts_with_all = ["pins", "preset"])]
        height: Option<PathBuf>,
        /// Pins such as "31@5", "b10100@2,b11110@2" or "all-white@1".
        #[arg(long, conflicts_with = "preset")]
        pins: Option<String>,
        /// fully-extended or valise.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value_t = 5)]
        n: u8,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Equivalence classes of heights on H^n under the cube's symmetries.
    Classes {
        n: u8,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
    },
    /// The lowering digraph on heights of H^n, or on their classes with --reduced.
    Gamma {
        n: u8,
        #[arg(long)]
        reduced: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Run invariant suites and print a JSON report; exits 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
    /// Serve the session API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Load sessions from this file at start and rewrite it after every change.
        #[arg(long)]
        snapshot: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<bool> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Enumerate { n, count_only, out: file, force } => {
            commands::enumerate_cmd(n, count_only, file.as_deref(), force, &mut out)?
        }
        Command::Census { curve, format } => commands::census_cmd(curve, format, &mut out)?,
        Command::Image { height, pins, preset, n, format } => {
            let h = match (height, pins, preset.as_deref()) {
                (Some(path), _, _) => commands::read_height(&path)?,
                (_, Some(spec), _) => height_from_spec(n, &spec)?,
                (_, _, Some("fully-extended")) => adinkra::HeightFn::fully_extended(n)?,
                (_, _, Some("valise")) => adinkra::HeightFn::valise(n)?,
                (_, _, Some(other)) => bail!("unknown preset {other:?} (fully-extended, valise)"),
                _ => bail!("give one of --height, --pins or --preset"),
            };
            commands::image_cmd(&h, format, &mut out)?
        }
        Command::Classes { n, format } => commands::classes_cmd(n, format, &mut out)?,
        Command::Gamma { n, reduced, format } => commands::gamma_cmd(n, reduced, format, &mut out)?,
        Command::Verify { suite } => return commands::verify_cmd(suite, &mut out),
        Command::Serve { port, host, snapshot } => {
            let store = match snapshot {
                Some(path) => Store::load(path)?,
                None => Store::new(None),
            };
            tokio::runtime::Runtime::new()?.block_on(server::serve(Arc::new(store), &host, port))?;
        }
    }
    out.flush()?;
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
