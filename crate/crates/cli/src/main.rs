use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod problem;

use commands::{Failure, Report};

#[derive(Parser)]
#[command(name = "stackstab", version, about = "Exact stability computations for sheaves on root stacks and gerbes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct FileArg {
    /// Problem file: {"kind": ..., "payload": ...}.
    #[arg(long)]
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant dimensions n_i of point objects against a list of twists.
    PointTable {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        preset: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Modified Hilbert polynomial.
    Hilbert(FileArg),
    /// Stable, strictly semistable or unstable.
    Stability(FileArg),
    /// Harder–Narasimhan filtration.
    Hn(FileArg),
    /// Jordan–Hölder graded pieces of a semistable sheaf.
    Jh {
        #[command(flatten)]
        file: FileArg,
        /// Seed for choosing among equivalent stable subquotients.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// S-equivalence of `sheaf` and `other`.
    Sequiv(FileArg),
    /// Torsion filtration.
    Torsion(FileArg),
    /// Parabolic level data at every stacky point.
    Parabolic(FileArg),
    /// Eigensheaf splitting on a gerbe.
    GerbeSplit(FileArg),
    /// Hilbert–Mumford weight at level l.
    GitWeight {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        l: i64,
    },
    /// GIT semistability inequalities; polynomial form when --l is absent.
    GitCheck {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        l: Option<i64>,
        #[arg(long)]
        strict: bool,
    },
    /// Slope, section and Le Potier bounds.
    BoundsCheck {
        #[command(flatten)]
        file: FileArg,
        /// Twist for the Le Potier counts; defaults to the computed regularity.
        #[arg(long)]
        m: Option<i64>,
    },
    /// Kleiman regularity bound from a- and b-lists.
    Regularity(FileArg),
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    use commands::*;
    match command {
        Command::PointTable { preset, file } => point_table(preset.as_deref(), file.as_deref()),
        Command::Hilbert(f) => hilbert(&f.file),
        Command::Stability(f) => stability(&f.file),
        Command::Hn(f) => hn(&f.file),
        Command::Jh { file, seed } => jh(&file.file, *seed),
        Command::Sequiv(f) => sequiv(&f.file),
        Command::Torsion(f) => torsion(&f.file),
        Command::Parabolic(f) => parabolic(&f.file),
        Command::GerbeSplit(f) => gerbe_split(&f.file),
        Command::GitWeight { file, l } => git_weight(&file.file, *l),
        Command::GitCheck { file, l, strict } => git_check(&file.file, *l, *strict),
        Command::BoundsCheck { file, m } => bounds_check(&file.file, *m),
        Command::Regularity(f) => regularity(&f.file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            if let Some(hint) = failure.hint {
                eprintln!("expected input shape: {hint}");
            }
            ExitCode::from(failure.code)
        }
    }
}
