use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use endv_cli::{
    cmd_build, cmd_check, cmd_example, cmd_mutate, cmd_validate, CheckFlags, Options,
    EXIT_MALFORMED,
};

#[derive(Parser)]
#[command(
    name = "endv",
    version,
    about = "Build and check coend cores of finite presentations"
)]
struct Cli {
    /// Print stage timings to stderr.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the validator chain on an instance file.
    Validate { instance: PathBuf },
    /// Build the core of an instance and write it to OUT.
    Build { instance: PathBuf, out: PathBuf },
    /// Check the laws of a core file.
    Check {
        core: PathBuf,
        #[arg(long)]
        antipodal: bool,
        #[arg(long)]
        fusion: bool,
        #[arg(long)]
        partial_inverse: bool,
        #[arg(long)]
        complete_unit: bool,
        /// Shorthand for all four flags.
        #[arg(long)]
        all: bool,
    },
    /// Write a bundled instance (z2, z3-f7, s3, promonoidal-toy).
    Example { name: String, out: PathBuf },
    /// Write a corrupted copy of an instance.
    Mutate {
        instance: PathBuf,
        mutation: String,
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        timings: cli.timings,
    };
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Validate { instance } => cmd_validate(&instance, &mut out, opts),
        Command::Build {
            instance,
            out: dest,
        } => cmd_build(&instance, &dest, &mut out, opts),
        Command::Check {
            core,
            antipodal,
            fusion,
            partial_inverse,
            complete_unit,
            all,
        } => {
            let flags = if all {
                CheckFlags::all()
            } else {
                CheckFlags {
                    antipodal,
                    fusion,
                    partial_inverse,
                    complete_unit,
                }
            };
            cmd_check(&core, flags, &mut out, opts)
        }
        Command::Example { name, out: dest } => cmd_example(&name, &dest, &mut out),
        Command::Mutate {
            instance,
            mutation,
            out: dest,
        } => cmd_mutate(&instance, &mutation, &dest, &mut out),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_MALFORMED as u8)
        }
    }
}
