use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use walker_apct::analyze::{analyze, Overrides};
use walker_apct::corpus::{self, CORPUS};
use walker_apct::manifest::Manifest;
use walker_apct::report::{Format, Report, Status};

#[derive(Debug, Parser)]
#[command(name = "walker-apct", version, about = "Classify almost paracontact metric structures on 3-dimensional Walker manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct RunFlags {
    /// Number of sample points.
    #[arg(long)]
    samples: Option<usize>,
    /// Sampling seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Relative tolerance of the zero tests.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    report: Format,
}

impl RunFlags {
    fn overrides(&self) -> Overrides {
        Overrides { samples: self.samples, seed: self.seed, tol: self.tol }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze the structure described by a manifest file.
    Analyze {
        manifest: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// The bundled example manifests.
    Examples {
        #[command(subcommand)]
        command: ExamplesCommand,
    },
}

#[derive(Debug, Subcommand)]
enum ExamplesCommand {
    /// List the bundled examples.
    List,
    /// Analyze a bundled example.
    Run {
        name: String,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Print the manifest of a bundled example.
    Show { name: String },
}

fn emit(report: &Report, format: Format) -> ExitCode {
    print!("{}", report.render(format));
    if report.status != Status::Clean {
        for f in &report.failures {
            eprintln!("{:?}: {}{}", report.status, f.check, f.message.as_deref().map(|m| format!(": {m}")).unwrap_or_default());
        }
    }
    ExitCode::from(report.status.exit_code())
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(Status::InputError.exit_code())
}

fn validate(flags: &RunFlags) -> Result<(), String> {
    if flags.samples == Some(0) {
        return Err("--samples must be positive".into());
    }
    if let Some(t) = flags.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err("--tol must be positive".into());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Status::InputError.exit_code() } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Analyze { manifest, flags } => {
            if let Err(e) = validate(&flags) {
                return input_error(e);
            }
            match Manifest::load(&manifest) {
                Ok(m) => emit(&analyze(&m, flags.overrides()), flags.report),
                Err(e) => input_error(format!("{}:{e}", manifest.display())),
            }
        }
        Command::Examples { command: ExamplesCommand::List } => {
            for f in &CORPUS {
                let m = f.manifest();
                println!("{:<16} {}", f.name, m.description.unwrap_or_default());
            }
            ExitCode::SUCCESS
        }
        Command::Examples { command: ExamplesCommand::Run { name, flags } } => {
            if let Err(e) = validate(&flags) {
                return input_error(e);
            }
            match corpus::find(&name) {
                Some(f) => emit(&analyze(&f.manifest(), flags.overrides()), flags.report),
                None => input_error(format!("unknown example `{name}`; see `walker-apct examples list`")),
            }
        }
        Command::Examples { command: ExamplesCommand::Show { name } } => match corpus::find(&name) {
            Some(f) => {
                print!("{}", f.source);
                ExitCode::SUCCESS
            }
            None => input_error(format!("unknown example `{name}`")),
        },
    }
}
