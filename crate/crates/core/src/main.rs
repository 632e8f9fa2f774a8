use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use alcove::exact::rational::QStr;
use alcove::io::{read_pair, report_json, report_text, rootsystem_json, rootsystem_text};
use alcove::render::render_svg;
use alcove::roots::{Family, FactorSpec};
use alcove::spherical::{builtin, builtin_examples, check_pair, example_group, run_example, Catalog, IntegralPair, Overall};
use alcove::{Error, Result};

/// Exact affine root systems and spherical-pair verification.
#[derive(Parser)]
#[command(name = "alcove", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a finite, affine or twisted affine root system.
    Rootsystem {
        /// One of A B C D E F G.
        family: String,
        rank: usize,
        /// Untwisted affine extension.
        #[arg(long)]
        affine: bool,
        /// Twist order 2 or 3 (implies --affine).
        #[arg(long)]
        twist: Option<u8>,
        /// Diagram automorphism as a comma-separated permutation of 0..rank-1.
        #[arg(long, value_delimiter = ',')]
        automorphism: Option<Vec<usize>>,
        /// Cyclic factor m.
        #[arg(long, default_value_t = 1)]
        cyclic: u32,
        /// Metric scale, a positive rational.
        #[arg(long)]
        scale: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Verify a pair file (or `builtin:NAME`); exit 0 Spherical, 1 Inconclusive, 2 invalid.
    Check {
        pair: String,
        /// Catalog file replacing the shipped one.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Re-verify builtin examples against their stored expectations.
    Examples {
        /// Example name, `su2-all`, or a prefix ending in `*`.
        name: Option<String>,
        #[arg(long)]
        all: bool,
        /// List names and descriptions without running.
        #[arg(long)]
        list: bool,
        /// Write the example as a pair file instead of running it.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Draw a rank-two pair file (or `builtin:NAME`) as SVG.
    Render {
        pair: String,
        out: PathBuf,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

fn load_pair(arg: &str) -> Result<IntegralPair> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return builtin(name).map(|e| e.pair).ok_or_else(|| Error::Unsupported(format!("unknown example {name:?}")));
    }
    let text = fs::read_to_string(arg).map_err(|e| Error::Format(format!("{arg}: {e}")))?;
    read_pair(&text).map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{arg}: {m}")),
        other => other,
    })
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Catalog> {
    match path {
        None => Ok(Catalog::shipped()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::Format(format!("{}: {e}", p.display())))?;
            Catalog::from_toml(&text)
        }
    }
}

fn write(path: &PathBuf, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Rootsystem { family, rank, affine, twist, automorphism, cyclic, scale, json } => {
            let family: Family = family.parse()?;
            let scale = scale.map(|s| alcove::exact::rational::parse_q(&s).map(QStr)).transpose()?;
            let spec = FactorSpec { family, rank, affine: affine || twist.is_some(), twist: twist.unwrap_or(1), automorphism, cyclic, scale };
            let sys = spec.build()?;
            if json {
                println!("{}", serde_json::to_string_pretty(&rootsystem_json(&sys)).expect("json"));
            } else {
                print!("{}", rootsystem_text(&sys));
            }
            Ok(0)
        }
        Command::Check { pair, catalog, json } => {
            let pair = load_pair(&pair)?;
            let catalog = load_catalog(&catalog)?;
            let report = check_pair(&pair, &catalog)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report_json(&pair, &report)).expect("json"));
            } else {
                print!("{}", report_text(&pair, &report));
            }
            Ok(if report.overall == Overall::Spherical { 0 } else { 1 })
        }
        Command::Examples { name, all, list, export } => {
            let picked = match (&name, all) {
                (Some(_), true) => return Err(Error::Unsupported("give a name or --all, not both".into())),
                (Some(n), false) => example_group(n)?,
                (None, true) => builtin_examples(),
                (None, false) if list => builtin_examples(),
                (None, false) => return Err(Error::Unsupported("give an example name or --all".into())),
            };
            if list {
                for ex in &picked {
                    println!("{:<28} {}", ex.name, ex.description);
                }
                return Ok(0);
            }
            if let Some(path) = export {
                let [ex] = picked.as_slice() else {
                    return Err(Error::Unsupported("--export needs a single example".into()));
                };
                write(&path, &alcove::io::PairFile::from_pair(&ex.pair, &ex.description).to_toml())?;
                return Ok(0);
            }
            let catalog = Catalog::shipped();
            let mut failed = 0;
            for ex in &picked {
                let out = run_example(ex, &catalog)?;
                let phi = out.report.phi_m.as_ref().map(|p| format!("Phi_M {}", p.cartan_type)).unwrap_or_else(|| "no Phi_M".into());
                let status = if out.passed() { "pass" } else { "FAIL" };
                println!("{status} {:<28} {:<12} {phi:<18} {}", ex.name, out.report.overall.to_string(), ex.description);
                for m in &out.mismatches {
                    println!("     {m}");
                }
                failed += usize::from(!out.passed());
            }
            println!("{} of {} examples passed", picked.len() - failed, picked.len());
            Ok(u8::from(failed > 0))
        }
        Command::Render { pair, out, catalog } => {
            let pair = load_pair(&pair)?;
            let catalog = load_catalog(&catalog)?;
            let report = check_pair(&pair, &catalog)?;
            write(&out, &render_svg(&pair, &report)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
