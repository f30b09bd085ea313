mod compute;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use modlab_core::module::Side;
use modlab_verifier::corpus::{generate, write_manifest};
use modlab_verifier::{run_suite, Corpus, Suite, SuiteOptions, VerifyError};

#[derive(Parser)]
#[command(name = "modlab", version, about = "Exact computations with modules over finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corpus management.
    Corpus {
        #[command(subcommand)]
        command: CorpusCmd,
    },
    /// Run a theorem suite over a corpus and write a report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Single computations printed to standard output.
    Compute {
        #[command(subcommand)]
        command: ComputeCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Write manifest.json for the given bounds.
    Generate {
        #[arg(long)]
        max_ring_order: u64,
        #[arg(long)]
        max_module_order: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Subcommand)]
pub enum ComputeCmd {
    /// Smith normal form `U·A·V = D` of an integer matrix given as JSON.
    Snf {
        #[arg(long)]
        matrix: String,
    },
    /// `Hom_R(M, N)`.
    Hom {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// `N ⊗_R M` for a right module `N` and a left module `M`.
    Tensor {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
    },
    /// `𝒩^r(M)` and whether `N ⊗_R M → 𝒩^r(M)` is an isomorphism.
    Rker {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
    },
    /// Double duals of `M` evaluated at an algebra `R` or `R/<v;…>`.
    Dualeval {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        m: String,
        #[arg(long, default_value = "R")]
        algebra: String,
    },
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn compute(e: impl std::fmt::Display) -> Self {
        Self {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Input(_) | VerifyError::Parse(_) | VerifyError::Io(_) => CliError::input(e.to_string()),
            other => CliError::compute(other),
        }
    }
}

fn usage() -> String {
    format!(
        "usage: modlab verify --suite NAME --corpus DIR --out FILE --seed K\nsuites: {}",
        Suite::names().join(", ")
    )
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Corpus {
            command: CorpusCmd::Generate {
                max_ring_order,
                max_module_order,
                seed,
                out,
            },
        } => {
            let manifest = generate(max_ring_order, max_module_order, seed)?;
            write_manifest(&out, &manifest)?;
            eprintln!(
                "wrote {} rings, {} modules, {} algebras, {} arrows to {}",
                manifest.rings.len(),
                manifest.modules.len(),
                manifest.algebras.len(),
                manifest.arrows.len(),
                out.display()
            );
            Ok(0)
        }
        Command::Verify { suite, corpus, out, seed } => {
            let suite: Suite = suite.parse().map_err(|e: String| CliError::input(format!("{}\n{}", e, usage())))?;
            let corpus = Corpus::load(&corpus)?;
            let report = run_suite(suite, &corpus, &SuiteOptions::new(seed));
            if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::input(format!("{}: {}", dir.display(), e)))?;
            }
            std::fs::write(&out, report.to_json()).map_err(|e| CliError::input(format!("{}: {}", out.display(), e)))?;
            let s = &report.summary;
            eprintln!(
                "{}: {} cases, {} pass, {} fail, {} refused, {} inconclusive",
                report.suite, s.total, s.pass, s.fail, s.refused, s.inconclusive
            );
            Ok(report.exit_code() as u8)
        }
        Command::Compute { command } => {
            print!("{}", compute::run(command)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
