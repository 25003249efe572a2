//! `wusq`: Steenrod squares, Wu classes and k-orientability from a ring
//! manifest.

mod commands;
mod error;
mod input;
mod text;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "wusq",
    version,
    about = "Steenrod squares, Wu classes and k-orientability of presented cohomology rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Fix parameter values before computing, as `name=0` or `name=1`.
    #[arg(long = "set", global = true, num_args = 1.., value_name = "PARAM=BIT")]
    pub set: Vec<String>,
    /// Apply a named instantiation from the manifest.
    #[arg(long, global = true, value_name = "NAME")]
    pub instantiation: Option<String>,
    /// Also eliminate parameters using Adem relations on the generators.
    #[arg(long, global = true)]
    pub impose_adem: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers and additive bases.
    Basis {
        manifest: String,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        degree: Option<u32>,
        #[arg(long)]
        all: bool,
        /// Include the normal form of every monomial.
        #[arg(long)]
        coords: bool,
    },
    /// Every monomial of a degree with its normal form.
    Monomials {
        manifest: String,
        #[arg(long)]
        degree: u32,
    },
    /// Evaluate Sq^n on a homogeneous class.
    Sq {
        manifest: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: u32,
    },
    /// Wu classes.
    Wu {
        manifest: String,
        #[arg(long)]
        index: Option<u32>,
    },
    /// Stiefel-Whitney classes through the Wu formula.
    Sw { manifest: String },
    /// k-orientability verdict, or the ladder of verdicts without --k.
    Orient {
        manifest: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: Option<u32>,
    },
    /// Euler characteristic.
    Euler { manifest: String },
    /// Signature of the middle-degree intersection form.
    Signature { manifest: String },
    /// Consistency checks: the even Euler characteristic theorem and the
    /// parameter constraints found from relations and Adem relations.
    Check { manifest: String },
    /// Everything, in one document.
    Report {
        manifest: String,
        /// Compare against golden fixtures in this directory.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(serde_json::Value, Option<CliError>), CliError> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| CliError::usage(format!("cannot configure threads: {e}")))?;
    }
    let g = &cli.global;
    match cli.command {
        Command::Basis {
            manifest,
            degree,
            all,
            coords,
        } => commands::basis(&input::load(&manifest, g)?, degree.filter(|_| !all), coords),
        Command::Monomials { manifest, degree } => {
            commands::monomials(&input::load(&manifest, g)?, degree)
        }
        Command::Sq { manifest, class, n } => commands::sq(&input::load(&manifest, g)?, &class, n),
        Command::Wu { manifest, index } => commands::wu(&input::load(&manifest, g)?, index),
        Command::Sw { manifest } => commands::sw(&input::load(&manifest, g)?),
        Command::Orient { manifest, k } => commands::orient(&input::load(&manifest, g)?, k),
        Command::Euler { manifest } => commands::euler(&input::load(&manifest, g)?),
        Command::Signature { manifest } => commands::signature(&input::load(&manifest, g)?),
        Command::Check { manifest } => commands::check(&input::load(&manifest, g)?),
        Command::Report { manifest, golden } => {
            commands::report(&input::load(&manifest, g)?, golden.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.global.format;
    let (payload, deferred) = match run(cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code());
        }
    };
    let out = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&payload).expect("payload serializes");
            s.push('\n');
            s
        }
        Format::Text => text::render(&payload),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    match deferred {
        Some(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
        None => ExitCode::SUCCESS,
    }
}
