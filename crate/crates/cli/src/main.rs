use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use restrictor_cli::commands;
use restrictor_cli::document::{parse_document, OutputFormat, Problem};
use restrictor_cli::{CliError, Outcome};
use restrictor_core::rational::parse;

/// Exact restriction-theorem arithmetic for sheaves on surfaces.
#[derive(Parser)]
#[command(name = "restrictor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input document, or `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Output format; overrides the document's `options.output`.
    #[arg(long)]
    output: Option<OutputFormat>,
    /// Exceptional-slope search depth; overrides `options.depth`.
    #[arg(long)]
    depth: Option<u32>,
    /// Largest curve degree scanned; overrides `options.d_max`.
    #[arg(long)]
    dmax: Option<i64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable restriction criterion on the document's curve.
    Check {
        #[command(flatten)]
        common: Common,
        /// Report the minimal degree per criterion over 1..=dmax instead.
        #[arg(long)]
        sweep: bool,
    },
    /// Restriction wall, Gieseker-bound wall and category window.
    Walls {
        #[command(flatten)]
        common: Common,
    },
    /// Exceptional slopes on the plane.
    Exceptional {
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        lo: String,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        hi: String,
        /// Locate mu0 of a plane character given as "r,deg,ch2".
        #[arg(long, allow_hyphen_values = true)]
        mu0: Option<String>,
        #[arg(long, default_value = "csv")]
        output: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Betti numbers of E, E(-C) and E|_C with Brill-Noether data.
    Cohomology {
        #[command(flatten)]
        common: Common,
    },
}

fn load(common: &Common) -> Result<Problem, CliError> {
    let text = if common.input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&common.input)
            .map_err(|e| CliError::Input(format!("{}: {e}", common.input)))?
    };
    let mut p = parse_document(&text)?;
    if let Some(d) = common.depth {
        p.depth = d;
    }
    if let Some(d) = common.dmax {
        if d < 1 {
            return Err(CliError::Input(format!("--dmax must be >= 1, got {d}")));
        }
        p.d_max = d;
    }
    Ok(p)
}

fn format_of(common: &Common, p: &Problem, default: OutputFormat) -> OutputFormat {
    common.output.or(p.output).unwrap_or(default)
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>), CliError> {
    match cli.command {
        Command::Check { common, sweep } => {
            let p = load(&common)?;
            let format = format_of(&common, &p, OutputFormat::Table);
            let outcome = if sweep {
                commands::sweep(&p, format)?
            } else {
                commands::check(&p, format)?
            };
            Ok((outcome, common.out))
        }
        Command::Walls { common } => {
            let p = load(&common)?;
            let format = format_of(&common, &p, OutputFormat::Svg);
            Ok((commands::walls(&p, format)?, common.out))
        }
        Command::Exceptional {
            depth,
            lo,
            hi,
            mu0,
            output,
            out,
        } => {
            let outcome = match mu0 {
                Some(v) => commands::exceptional_mu0(&commands::parse_plane_character(&v)?, depth.max(restrictor_core::p2x::DEFAULT_DEPTH), output)?,
                None => commands::exceptional(depth, &parse(&lo)?, &parse(&hi)?, output)?,
            };
            Ok((outcome, out))
        }
        Command::Cohomology { common } => {
            let p = load(&common)?;
            let format = format_of(&common, &p, OutputFormat::Table);
            Ok((commands::cohomology(&p, format)?, common.out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, out)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &outcome.text),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(restrictor_cli::EXIT_INPUT);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
