use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twistder::cli::{run, Command, Invocation};

/// Twisted forms of algebras over Q(t) and their derivations extending d/dt.
#[derive(Parser)]
#[command(name = "twistder", version)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lie algebra of derivations of the [algebra] section
    Lie(FileArg),
    /// Check the cocycle conditions
    Validate(FileArg),
    /// Build the twisted form and print its structure constants
    Twist(FileArg),
    /// Derivations of the twisted form extending d/dt (formula path)
    Extend(FileArg),
    /// Compare the formula path with the direct solver
    Crosscheck(FileArg),
    /// Run crosscheck on a built-in instance
    Demo {
        /// etale-trivial, etale-quadratic, matrix-trivial, quaternion-t-minus1, dual-numbers
        name: String,
    },
    /// Random conjugation cocycles on M2 over Q(t)(sqrt t)
    Fuzz { n: usize, seed: u64 },
}

#[derive(clap::Args)]
struct FileArg {
    /// Problem file
    #[arg(long)]
    file: PathBuf,
}

fn problem(command: Command, f: &FileArg) -> Result<Invocation, String> {
    let text = std::fs::read_to_string(&f.file).map_err(|e| format!("{}: {e}", f.file.display()))?;
    Ok(Invocation::Problem { command, text })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let inv = match &args.command {
        Cmd::Lie(f) => problem(Command::Lie, f),
        Cmd::Validate(f) => problem(Command::Validate, f),
        Cmd::Twist(f) => problem(Command::Twist, f),
        Cmd::Extend(f) => problem(Command::Extend, f),
        Cmd::Crosscheck(f) => problem(Command::Crosscheck, f),
        Cmd::Demo { name } => Ok(Invocation::Demo(name.clone())),
        Cmd::Fuzz { n, seed } => Ok(Invocation::Fuzz { n: *n, seed: *seed }),
    };
    let report = inv.and_then(|inv| run(&inv).map_err(|e| e.to_string()));
    match report {
        Ok(r) => {
            print!("{r}");
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
