use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mj2ml::harness::{corpus_inputs, random_inputs, run_diff};
use mj2ml::pipeline::{self, PipelineError};
use mj2ml::translator::{HeapEncoding, TranslateOptions};
use mj2ml::{RunOutcome, Termination, DEFAULT_FUEL};

const EXIT_PARSE: u8 = 1;
const EXIT_TYPE: u8 = 2;
const EXIT_FAULT: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_FUEL: u8 = 5;

#[derive(Parser)]
#[command(name = "mj2ml", version, about = "Translate MiniJava into core Standard ML")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeapArg {
    Assoc,
}

#[derive(Subcommand)]
enum Command {
    /// Write the translation of a MiniJava file as SML.
    Translate {
        input: PathBuf,
        /// Output path; defaults to the input with an .sml extension.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "assoc")]
        heap_encoding: HeapArg,
    },
    /// Run a MiniJava file with the reference interpreter.
    RunMj {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Translate a MiniJava file and evaluate the result.
    RunMl {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Compare both runs over a corpus directory and random programs.
    Diff {
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of generated programs to add.
        #[arg(long, default_value_t = 0)]
        count: u64,
        /// Statement budget per generated program.
        #[arg(long, default_value_t = 40)]
        size: usize,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and type-check only.
    Check { input: PathBuf },
}

fn read(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(EXIT_IO)
    })
}

fn report(err: &PipelineError, path: &Path) -> ExitCode {
    for line in err.diagnostics(&path.display().to_string()) {
        eprintln!("{line}");
    }
    ExitCode::from(match err {
        PipelineError::Syntax(_) => EXIT_PARSE,
        PipelineError::Type(_) => EXIT_TYPE,
        PipelineError::Translate(_) => EXIT_TYPE,
    })
}

fn finish_run(outcome: RunOutcome) -> ExitCode {
    print!("{}", outcome.stdout());
    match outcome.termination {
        Termination::Completed => ExitCode::SUCCESS,
        Termination::Fault(f) => {
            match f.pos {
                Some(p) => eprintln!("fault: {} at {}:{}", f.kind, p.line, p.col),
                None => eprintln!("fault: {}", f.kind),
            }
            ExitCode::from(EXIT_FAULT)
        }
        Termination::FuelExhausted => {
            eprintln!("fuel exhausted");
            ExitCode::from(EXIT_FUEL)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Translate { input, out, heap_encoding } => {
            let source = read(&input)?;
            let options = TranslateOptions {
                source_name: Some(input.display().to_string()),
                heap_encoding: match heap_encoding {
                    HeapArg::Assoc => HeapEncoding::Assoc,
                },
            };
            let text = pipeline::compile_to_sml(&source, &options).map_err(|e| report(&e, &input))?;
            let out = out.unwrap_or_else(|| input.with_extension("sml"));
            std::fs::write(&out, text).map_err(|e| {
                eprintln!("{}: {e}", out.display());
                ExitCode::from(EXIT_IO)
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::RunMj { input, fuel } => {
            let source = read(&input)?;
            pipeline::run_mj(&source, fuel).map(finish_run).map_err(|e| report(&e, &input))
        }
        Command::RunMl { input, fuel } => {
            let source = read(&input)?;
            pipeline::run_ml(&source, fuel).map(finish_run).map_err(|e| report(&e, &input))
        }
        Command::Check { input } => {
            let source = read(&input)?;
            pipeline::check(&source).map(|_| ExitCode::SUCCESS).map_err(|e| report(&e, &input))
        }
        Command::Diff { corpus, seed, count, size, fuel, out } => {
            let mut inputs = match &corpus {
                Some(dir) => corpus_inputs(dir).map_err(|e| {
                    eprintln!("{}: {e}", dir.display());
                    ExitCode::from(EXIT_IO)
                })?,
                None => Vec::new(),
            };
            inputs.extend(random_inputs(seed, count, size));
            let report = run_diff(inputs, fuel);
            let text = report.to_string();
            print!("{text}");
            if let Some(out) = out {
                std::fs::write(&out, &text).map_err(|e| {
                    eprintln!("{}: {e}", out.display());
                    ExitCode::from(EXIT_IO)
                })?;
            }
            Ok(if report.all_ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli).unwrap_or_else(|code| code)
}
