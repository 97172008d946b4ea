use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normmap::commands::{
    cmd_check_covering, cmd_grothendieck, cmd_norm, cmd_verify_theorem, to_pretty, write_json_atomic, Construction,
    GrothendieckMode, InstanceName, NormConfig, PairSource, VerifyConfig, DEFAULT_CAP, DEFAULT_SAMPLES,
};
use normmap::error::{EXIT_FAILED, EXIT_INPUT, EXIT_OK};
use normmap::CliError;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "normmap", version, about = "Compare the two equivariant norm constructions on finite instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that both norm routes agree on random diagrams.
    VerifyTheorem(VerifyArgs),
    /// Check the unique-lifting conditions for a functor file.
    CheckCovering {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Grothendieck construction of a diagram file.
    Grothendieck {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Set)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a norm construction to an H-diagram file.
    Norm(NormArgs),
}

#[derive(Args)]
struct PairArgs {
    /// A builtin pair, or every builtin pair when given without a value.
    #[arg(long, num_args = 0..=1, default_missing_value = "all", conflicts_with_all = ["group", "subgroup", "transversal"])]
    suite: Option<String>,
    #[arg(long, requires = "subgroup")]
    group: Option<PathBuf>,
    #[arg(long, requires = "group")]
    subgroup: Option<PathBuf>,
    #[arg(long, requires = "group")]
    transversal: Option<PathBuf>,
    /// Cap on group closure and other enumerations.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

impl PairArgs {
    fn source(&self) -> Result<PairSource, CliError> {
        match (&self.suite, &self.group, &self.subgroup) {
            (Some(name), _, _) if name == "all" => Ok(PairSource::Suite(None)),
            (Some(name), _, _) => Ok(PairSource::Suite(Some(name.clone()))),
            (None, Some(g), Some(h)) => {
                Ok(PairSource::Files { group: g.clone(), subgroup: h.clone(), transversal: self.transversal.clone() })
            }
            _ => Err(CliError::Input("pass --suite [NAME] or --group FILE --subgroup FILE".into())),
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Monoidal instance; repeat for several (default: matrix_f2 and pointed_set).
    #[arg(long)]
    instance: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random diagrams per pair and instance.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NormArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, default_value = "matrix_f2")]
    instance: String,
    /// The H-diagram to take the norm of.
    #[arg(long = "x", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ConstructionArg::Both)]
    construction: ConstructionArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Set,
    Cat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Hhr,
    Gm,
    Both,
}

fn emit<T: Serialize>(out: Option<&PathBuf>, value: &T) -> Result<(), CliError> {
    match out {
        Some(path) => write_json_atomic(path, value),
        None => match writeln!(std::io::stdout().lock(), "{}", to_pretty(value)) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::VerifyTheorem(args) => {
            let instances = if args.instance.is_empty() {
                InstanceName::DEFAULT.to_vec()
            } else {
                args.instance.iter().map(|s| InstanceName::parse(s)).collect::<Result<_, _>>()?
            };
            let config = VerifyConfig {
                source: args.pair.source()?,
                instances,
                seed: args.seed,
                samples: args.samples,
                cap: args.pair.cap,
            };
            let out = cmd_verify_theorem(&config)?;
            emit(args.out.as_ref(), &out)?;
            for r in out.reports.iter().filter(|r| !r.total) {
                eprintln!("FAIL {} {} sample {}: {:?}", r.pair, r.instance, r.sample, r.counterexample);
            }
            Ok(out.all_passed)
        }
        Command::CheckCovering { file, out } => {
            let report = cmd_check_covering(&file)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            emit(out.as_ref(), &report)?;
            Ok(report.covering)
        }
        Command::Grothendieck { file, mode, cap, out } => {
            let mode = match mode {
                Mode::Set => GrothendieckMode::Set,
                Mode::Cat => GrothendieckMode::Cat,
            };
            emit(out.as_ref(), &cmd_grothendieck(&file, mode, cap)?)?;
            Ok(true)
        }
        Command::Norm(args) => {
            let config = NormConfig {
                source: args.pair.source()?,
                instance: InstanceName::parse(&args.instance)?,
                input: args.input,
                construction: match args.construction {
                    ConstructionArg::Hhr => Construction::Hhr,
                    ConstructionArg::Gm => Construction::Gm,
                    ConstructionArg::Both => Construction::Both,
                },
                cap: args.pair.cap,
            };
            let (value, passed) = cmd_norm(&config)?;
            emit(args.out.as_ref(), &value)?;
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::from(EXIT_OK),
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
