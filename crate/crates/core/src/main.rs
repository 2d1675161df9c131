use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use skein::cli::{self, CliError, Report, RunOptions};

#[derive(Parser)]
#[command(name = "skein", version, about = "Planar tangles, Temperley-Lieb quotients and their finite presentations")]
struct Args {
    /// Seed for every random choice; SKEIN_SEED overrides it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    report: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// validate | canon | adjoint <tangle>; compose <outer> <inner>...
    Tangle { action: String, inputs: Vec<String> },
    /// mult <a> <b> | trace <a> | gram, with elements like `E1E2 + 2*E1`.
    Tl {
        action: String,
        #[arg(long)]
        n: u32,
        /// Quotient at delta = 2cos(pi/m); generic delta when absent.
        #[arg(long)]
        m: Option<u32>,
        args: Vec<String>,
    },
    Instance {
        /// Only `info`.
        action: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
    },
    Derive {
        /// Only `thm32`.
        what: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// build --m M [--out file] | verify --m M <file>
    Present {
        action: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        file: Option<std::path::PathBuf>,
    },
    /// single | change-of-labels
    Gen {
        action: String,
        #[arg(long, default_value_t = 5)]
        m: u32,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// core-props | tl-props | thm32 | present | tensor | single-gen | all
    Run {
        suite: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
    },
}

enum Output {
    Json(Value),
    Report(Report),
}

fn usage(msg: &str) -> CliError {
    CliError::Usage(msg.to_string())
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn run(args: &Args, seed: u64) -> Result<Output, CliError> {
    Ok(match &args.cmd {
        Cmd::Tangle { action, inputs } => Output::Json(cli::tangle_command(action, inputs)?),
        Cmd::Tl { action, n, m, args } => Output::Json(cli::tl_command(action, *n, *m, args)?),
        Cmd::Instance { action, m, nmax } if action == "info" => Output::Json(cli::instance_info(*m, *nmax)?),
        Cmd::Instance { action, .. } => return Err(usage(&format!("unknown instance action `{action}`"))),
        Cmd::Derive { what, k, nmax } if what == "thm32" => Output::Report(cli::derive_thm32(*k, nmax.unwrap_or(k + 4))?),
        Cmd::Derive { what, .. } => return Err(usage(&format!("unknown derivation `{what}`"))),
        Cmd::Present { action, m, out, file } => match action.as_str() {
            "build" => {
                let r = cli::present_build(*m)?;
                if let Some(out) = out {
                    write(out, &serde_json::to_string_pretty(&r.data).expect("json"))?;
                }
                Output::Report(r)
            }
            "verify" => {
                let path = file.as_ref().ok_or_else(|| usage("present verify needs a relation file"))?;
                Output::Report(cli::present_verify(*m, &read(path)?)?)
            }
            _ => return Err(usage(&format!("unknown present action `{action}`"))),
        },
        Cmd::Gen { action, m, out } => match action.as_str() {
            "single" => Output::Json(cli::gen_single(*m, seed)?),
            "change-of-labels" => {
                let r = cli::gen_change_of_labels(*m, seed)?;
                if let Some(out) = out {
                    write(out, &serde_json::to_string_pretty(&r.data).expect("json"))?;
                }
                Output::Report(r)
            }
            _ => return Err(usage(&format!("unknown gen action `{action}`"))),
        },
        Cmd::Run { suite, m, k, nmax } => {
            Output::Report(cli::run_suite(suite, &RunOptions { m: *m, k: *k, nmax: *nmax, seed })?)
        }
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let seed = match std::env::var("SKEIN_SEED") {
        Ok(s) => match s.parse() {
            Ok(v) => v,
            Err(_) => {
                eprintln!("error: SKEIN_SEED must be an unsigned integer, got `{s}`");
                return ExitCode::from(2);
            }
        },
        Err(_) => args.seed,
    };
    let (json, footer, ok) = match run(&args, seed) {
        Ok(Output::Json(v)) => (v, None, true),
        Ok(Output::Report(r)) => (r.to_json(), Some(r.footer()), r.ok()),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&json).expect("json");
    if let Some(path) = &args.report {
        if let Err(e) = write(path, &text) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    } else {
        let _ = writeln!(std::io::stdout(), "{text}");
    }
    if let Some(f) = footer {
        eprint!("{f}");
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
