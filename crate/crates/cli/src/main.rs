use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use morita_core::cli_io::{run, Command, Options};

#[derive(Parser)]
#[command(name = "morita", version, about = "Check module categories, Eilenberg-Watts data and Morita certificates")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Global {
    /// Workspace document
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    /// Probe family id from the workspace
    #[arg(long, global = true)]
    probes: Option<String>,
    /// Seed for randomized spot checks
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Compact JSON output (the default)
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the workspace, or one functor with --functor
    Check {
        #[arg(long)]
        functor: Option<String>,
    },
    /// Internal hom of two modules
    Hom {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Tensor a module with a bimodule
    TensorOver {
        #[arg(long)]
        module: String,
        #[arg(long)]
        bimodule: String,
    },
    /// The coreflection of a functor
    Lambda {
        #[arg(long)]
        functor: String,
    },
    /// Cocontinuity criteria of a functor
    Verdict {
        #[arg(long)]
        functor: String,
    },
    /// Compact-generator report for a module
    Generator {
        #[arg(long)]
        object: String,
        /// Monoid compared with the endomorphism monoid
        #[arg(long)]
        monoid: Option<String>,
    },
    /// Verify a Morita certificate (a workspace name or a file)
    Certify {
        #[arg(long)]
        cert: String,
    },
    /// Emit the matrix-algebra certificate workspace for F_p and M_n(F_p)
    GenMatrix {
        p: u32,
        n: usize,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equivalence of module categories from a compact generator
    Equivalence {
        #[arg(long)]
        object: String,
        #[arg(long)]
        monoid: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out_file = None;
    let command = match cli.command {
        Cmd::Check { functor } => Command::Check { functor },
        Cmd::Hom { source, target } => Command::Hom { source, target },
        Cmd::TensorOver { module, bimodule } => Command::TensorOver { module, bimodule },
        Cmd::Lambda { functor } => Command::Lambda { functor },
        Cmd::Verdict { functor } => Command::Verdict { functor },
        Cmd::Generator { object, monoid } => Command::Generator { object, monoid },
        Cmd::Certify { cert } => Command::Certify { cert },
        Cmd::GenMatrix { p, n, out } => {
            out_file = out;
            Command::GenMatrix { p, n }
        }
        Cmd::Equivalence { object, monoid } => Command::Equivalence { object, monoid },
    };
    let opts = Options {
        workspace: cli.global.workspace,
        probes: cli.global.probes,
        seed: cli.global.seed,
        pretty: cli.global.pretty,
    };
    let outcome = run(&command, &opts);
    eprint!("{}", outcome.stderr);
    match out_file {
        Some(path) if outcome.code == 0 => {
            if let Err(e) = std::fs::write(&path, &outcome.stdout) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        _ => {
            let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
        }
    }
    ExitCode::from(outcome.code as u8)
}
