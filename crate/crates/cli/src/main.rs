use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod render;
mod suites;

use suites::Suite;

#[derive(Parser)]
#[command(name = "qsc", version, about = "Quantized nilradicals and quantum Schubert cells of sl(n)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the presentations of the nilradical and of the coinvariant algebra.
    Present(Common),
    /// Run verification suites and report pass/fail per instance.
    Verify(Common),
    /// Write a JSON artifact.
    Export {
        #[arg(value_enum)]
        what: ExportKind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    Presentation,
    Rootvectors,
    Report,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    #[arg(short = 'n')]
    n: usize,
    /// Comma-separated subset of 1..n-1; empty for the empty set.
    #[arg(short = 'J', default_value = "", value_parser = parse_subset)]
    j: Subset,
    #[arg(long, value_delimiter = ',', default_values_t = Suite::ALL)]
    suites: Vec<Suite>,
    #[arg(long, env = "QSC_ORACLE_CAP", default_value_t = qschubert::oracle::DEFAULT_CAP)]
    oracle_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit with status 3 if any instance was skipped.
    #[arg(long)]
    strict: bool,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    parallelism: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone)]
struct Subset(Vec<usize>);

fn parse_subset(s: &str) -> Result<Subset, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Subset(Vec::new()));
    }
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"))).collect::<Result<_, _>>().map(Subset)
}

pub struct RunConfig {
    pub pd: qschubert::weyl::ParabolicData,
    pub oracle_cap: usize,
    pub suites: Vec<Suite>,
}

enum Failure {
    Usage(String),
    Io(String),
}

fn config(c: &Common) -> Result<RunConfig, Failure> {
    if c.oracle_cap == 0 {
        return Err(Failure::Usage("--oracle-cap must be positive".into()));
    }
    if c.parallelism == Some(0) {
        return Err(Failure::Usage("--parallelism must be positive".into()));
    }
    let pd = qschubert::weyl::build_parabolic(c.n, &c.j.0).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut suites = c.suites.clone();
    suites.sort();
    suites.dedup();
    if let Some(k) = c.parallelism {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    Ok(RunConfig { pd, oracle_cap: c.oracle_cap, suites })
}

fn emit(c: &Common, body: &str) -> Result<(), Failure> {
    match &c.out {
        Some(p) => std::fs::write(p, body).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn json_string(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Present(c) => {
            let cfg = config(&c)?;
            let body = match c.format {
                Format::Json => json_string(&render::presentation_json(&cfg.pd)),
                Format::Text => render::presentation_text(&cfg.pd),
            };
            emit(&c, &body)?;
            Ok(0)
        }
        Cmd::Verify(c) => {
            let cfg = config(&c)?;
            let report = suites::run(&cfg);
            let body = match c.format {
                Format::Json => json_string(&render::report_json(&cfg, &report)),
                Format::Text => render::report_text(&cfg, &report),
            };
            emit(&c, &body)?;
            Ok(suites::exit_code(&report, c.strict))
        }
        Cmd::Export { what, common: c } => {
            let cfg = config(&c)?;
            let (doc, code) = match what {
                ExportKind::Presentation => (render::presentation_json(&cfg.pd), 0),
                ExportKind::Rootvectors => (render::rootvectors_json(&cfg), 0),
                ExportKind::Report => {
                    let report = suites::run(&cfg);
                    (render::report_json(&cfg, &report), suites::exit_code(&report, c.strict))
                }
            };
            emit(&c, &json_string(&doc))?;
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("qsc: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("qsc: {e}");
            ExitCode::from(1)
        }
    }
}
