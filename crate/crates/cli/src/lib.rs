//! Command-line front end: classification runs, per-structure analysis,
//! verification of files and directories, DOT export and module checks.

pub mod analysis;
pub mod claims;
pub mod classify;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tgs_core::modules::{annihilator, enumerate_submodules, is_simple_module, verify_module_axioms, ModuleAction};
use tgs_core::{AnalysisConfig, Caps, Error, GammaStructure, ModuleAssoc, PrimaryParams, RadicalIterate};

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 1;
    pub const RESOURCE: u8 = 2;
    pub const AXIOMS: u8 = 3;
    pub const ASSERTION: u8 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "tgs", version, about = "Finite commutative ternary Gamma-semirings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate all structures of one size up to isomorphism.
    Classify(ClassifyArgs),
    /// Full report on one structure file.
    Analyze(AnalyzeArgs),
    /// Run the axiom and theorem checks on a file or a directory.
    Verify(VerifyArgs),
    /// Write the ideal lattice or the spectrum as DOT.
    Export(ExportArgs),
    /// Check a module action file.
    Module(ModuleArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long, default_value_t = 1)]
    pub gamma: usize,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Stop after visiting this many search nodes.
    #[arg(long)]
    pub node_limit: Option<u64>,
    /// Treat structures differing by a relabeling of the parameters as equal.
    #[arg(long)]
    pub gamma_relabeling: bool,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ParamsFlag {
    Shared,
    Independent,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum IterateFlag {
    Once,
    Fixpoint,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AssocFlag {
    Surrogate,
    Printed,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Parameter pairs allowed for the cubes in the primary test.
    #[arg(long, value_enum, default_value = "shared")]
    pub primary_quantify_params: ParamsFlag,
    #[arg(long, value_enum, default_value = "once")]
    pub radical_iterate: IterateFlag,
    #[arg(long, value_enum, default_value = "surrogate")]
    pub module_assoc: AssocFlag,
}

impl ConfigArgs {
    pub fn config(&self) -> AnalysisConfig {
        AnalysisConfig {
            primary_params: match self.primary_quantify_params {
                ParamsFlag::Shared => PrimaryParams::Shared,
                ParamsFlag::Independent => PrimaryParams::Independent,
            },
            radical_iterate: match self.radical_iterate {
                IterateFlag::Once => RadicalIterate::Once,
                IterateFlag::Fixpoint => RadicalIterate::Fixpoint,
            },
            module_assoc: assoc(self.module_assoc),
            gamma_relabeling: false,
        }
    }
}

fn assoc(flag: AssocFlag) -> ModuleAssoc {
    match flag {
        AssocFlag::Surrogate => ModuleAssoc::Surrogate,
        AssocFlag::Printed => ModuleAssoc::Printed,
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Axioms,
    Theorems,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A structure file, or a directory of them (optionally with claims.json).
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Target {
    Ideals,
    Spec,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub target: Target,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "surrogate")]
    pub module_assoc: AssocFlag,
    /// Also check a_α m_β b = b_β m_α a.
    #[arg(long)]
    pub commutative: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Parses arguments, runs the command and returns its exit status.
pub fn run(cli: Cli) -> ExitCode {
    let caps = Caps::from_env();
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(&a, &caps),
        Command::Analyze(a) => cmd_analyze(&a, &caps),
        Command::Verify(a) => cmd_verify(&a, &caps),
        Command::Export(a) => cmd_export(&a, &caps),
        Command::Module(a) => cmd_module(&a, &caps),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Parse { .. } | Error::Io(_) => exit::INPUT,
        Error::Resource { .. } => exit::RESOURCE,
        Error::Consistency(_) => exit::ASSERTION,
    }
}

fn emit(out: Option<&Path>, text: &str) -> tgs_core::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn load(path: &Path) -> tgs_core::Result<GammaStructure> {
    GammaStructure::read_file(path).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

pub fn cmd_classify(a: &ClassifyArgs, caps: &Caps) -> tgs_core::Result<u8> {
    let opts = classify::ClassifyOptions {
        caps: *caps,
        jobs: a.jobs,
        node_limit: a.node_limit,
        gamma_relabeling: a.gamma_relabeling,
    };
    let c = classify::classify(a.order, a.gamma, &opts)?;
    let text = c.report.to_text();
    match &a.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for (i, s) in c.representatives.iter().enumerate() {
                s.write_file(dir.join(classify::representative_file(i)))?;
            }
            std::fs::write(dir.join("report.json"), c.report.to_json())?;
            std::fs::write(dir.join("report.txt"), &text)?;
        }
        None => emit(None, &text)?,
    }
    if let Some(p) = &c.report.partial {
        eprintln!("error: {p}");
        return Ok(exit::RESOURCE);
    }
    Ok(exit::OK)
}

pub fn cmd_analyze(a: &AnalyzeArgs, caps: &Caps) -> tgs_core::Result<u8> {
    let s = load(&a.file)?;
    let report = analysis::analyze(&s, &a.config.config(), caps)?;
    let text = match a.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    emit(a.out.as_deref(), &text)?;
    Ok(if report.axioms_pass() { exit::OK } else { exit::AXIOMS })
}

pub fn cmd_verify(a: &VerifyArgs, caps: &Caps) -> tgs_core::Result<u8> {
    let report = verify::verify_path(&a.path, a.suite, &a.config.config(), caps)?;
    let text = match a.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    emit(a.out.as_deref(), &text)?;
    for line in report.failure_lines() {
        eprintln!("{line}");
    }
    Ok(report.exit_code())
}

pub fn cmd_export(a: &ExportArgs, caps: &Caps) -> tgs_core::Result<u8> {
    let s = load(&a.file)?;
    let dot = match a.target {
        Target::Ideals => tgs_core::ideals::ideal_lattice(&s, caps, PrimaryParams::default())?.to_dot(&s),
        Target::Spec => tgs_core::spectrum::spec(&s, caps)?.to_dot(&s),
    };
    emit(a.out.as_deref(), &dot)?;
    Ok(exit::OK)
}

#[derive(Serialize)]
struct ModuleCommandReport {
    carrier_order: usize,
    axioms: tgs_core::modules::ModuleReport,
    submodules: Vec<tgs_core::ElementSet>,
    simple: bool,
    annihilator: tgs_core::modules::AnnihilatorResult,
}

pub fn cmd_module(a: &ModuleArgs, caps: &Caps) -> tgs_core::Result<u8> {
    let m = ModuleAction::read_file(&a.file)?;
    let axioms = verify_module_axioms(&m, assoc(a.module_assoc), a.commutative);
    let passes = axioms.passes();
    let report = ModuleCommandReport {
        carrier_order: m.carrier_order(),
        submodules: enumerate_submodules(&m, caps)?,
        simple: is_simple_module(&m),
        annihilator: annihilator(&m),
        axioms,
    };
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => {
            let subs: Vec<String> = report.submodules.iter().map(|s| s.to_string()).collect();
            let mut t = format!("carrier order: {}\n", report.carrier_order);
            for (law, verdict) in [
                ("carrier monoid", &report.axioms.carrier_monoid),
                ("additivity", &report.axioms.additivity),
                ("associativity (surrogate)", &report.axioms.associativity_surrogate),
                ("associativity (printed)", &report.axioms.associativity_printed),
                ("absorbing zero", &report.axioms.absorbing_zero),
            ] {
                let status = if verdict.holds() {
                    "holds".to_string()
                } else {
                    format!("FAILS {}", serde_json::to_string(verdict).expect("witness serializes"))
                };
                t += &format!("{law}: {status}\n");
            }
            t += &format!("submodules: {}\nsimple: {}\n", subs.join(" "), report.simple);
            t += &format!("annihilator: {} (ideal: {})\n", report.annihilator.set, report.annihilator.is_ideal);
            t
        }
    };
    emit(None, &text)?;
    Ok(if passes { exit::OK } else { exit::AXIOMS })
}
