use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use seifertlab::fpgroup::DEFAULT_BUDGET;

mod commands;
mod error;
mod manifest;
mod verify;

use error::{classify, EXIT_USAGE};

/// Invariants of Seifert fibered spaces and graph manifolds.
#[derive(Parser, Debug)]
#[command(name = "seifertlab", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Homomorphism search budget, in table lookups.
    #[arg(long, global = true, env = "SEIFERTLAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Write a replayable manifest of this run.
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Normal form, Euler number, base orbifold, H1, rank and geometry of
    /// a Seifert symbol such as `SFS[g=0; b=-1; 2/1, 3/1, 5/1]`.
    Invariants { symbol: String },

    /// Orbifold data for a symbol like `ORB[g=0; 2, 3, 7]`, or the list of
    /// hyperbolic orbifolds with Euler characteristic at least C.
    Orbifold {
        #[arg(required_unless_present = "chi_at_least", conflicts_with = "chi_at_least")]
        symbol: Option<String>,
        /// Also solve Riemann-Hurwitz for an unbranched-source cover of this degree.
        #[arg(long, requires = "symbol")]
        degree: Option<u32>,
        /// Rational lower bound such as -1/42.
        #[arg(long, allow_hyphen_values = true, value_name = "C")]
        chi_at_least: Option<String>,
        #[arg(long, requires = "chi_at_least")]
        max_index: Option<u32>,
    },

    /// Finitely presented groups, e.g. `gens: x, y; rels: x^2, y^3, (x y)^5`.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },

    /// Glue two trefoil exteriors; the gluing is JSON like
    /// `{"glue":[[0,1],[-1,0]],"basis":"trefoil"}`.
    Glue {
        #[arg(long)]
        glue: Option<String>,
    },

    /// The two Seifert fillings of the surgery curve p m + q l.
    #[command(allow_negative_numbers = true)]
    Surgery {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },

    /// The chain M(n,k) -> M(n,k-1) -> ... -> M(n,0).
    #[command(allow_negative_numbers = true)]
    Family {
        n: u32,
        k: u32,
        b1: i64,
        b2: i64,
        b3: i64,
    },

    /// Run every named check.
    VerifyPaper,

    /// Re-run a manifest written with --manifest.
    Replay { manifest: PathBuf },
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum GroupOp {
    Abelianize {
        presentation: String,
    },
    HomSearch {
        presentation: String,
        /// Target group: A5, S4, C7, D10, Q8, C2xC2, ...
        #[arg(long)]
        target: String,
        /// Count only surjections.
        #[arg(long)]
        surjective: bool,
        /// How many homomorphisms to list.
        #[arg(long, default_value_t = 5)]
        limit: usize,
    },
    CosetEnum {
        presentation: String,
        /// Comma separated subgroup generators; trivial subgroup when absent.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
}

pub struct Context {
    pub budget: u64,
    pub timestamp: u64,
}

/// What a command produced, before rendering.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    pub exit: i32,
}

/// Rendered output of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

fn now() -> u64 {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        return t;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

pub fn render(result: anyhow::Result<Report>, json: bool) -> Output {
    match result {
        Ok(r) => Output {
            stdout: if json {
                serde_json::to_string_pretty(&r.json).expect("report serializes") + "\n"
            } else {
                r.text
            },
            stderr: String::new(),
            exit: r.exit,
        },
        Err(e) => {
            let report = classify(&e);
            if json {
                let v = serde_json::json!({ "error": report });
                Output {
                    stdout: serde_json::to_string_pretty(&v).expect("error serializes") + "\n",
                    stderr: String::new(),
                    exit: report.exit,
                }
            } else {
                let at = report
                    .span
                    .map(|(a, b)| format!(" (at {a}..{b})"))
                    .unwrap_or_default();
                Output {
                    stdout: String::new(),
                    stderr: format!("error[{}]: {}{at}\n", report.code, report.message),
                    exit: report.exit,
                }
            }
        }
    }
}

fn run(args: Vec<OsString>) -> Output {
    let json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output {
                    stdout: e.to_string(),
                    stderr: String::new(),
                    exit: 0,
                };
            }
            if json {
                let v = serde_json::json!({ "error": {
                    "code": "usage",
                    "message": e.kind().to_string(),
                    "span": null,
                }});
                return Output {
                    stdout: serde_json::to_string_pretty(&v).expect("error serializes") + "\n",
                    stderr: String::new(),
                    exit: EXIT_USAGE,
                };
            }
            return Output {
                stdout: String::new(),
                stderr: e.render().to_string(),
                exit: EXIT_USAGE,
            };
        }
    };

    if let Command::Replay { manifest } = &cli.command {
        return manifest::replay(manifest).unwrap_or_else(|e| render(Err(e), json));
    }

    let command = manifest::canonicalize(cli.command);
    let ctx = Context {
        budget: cli.budget,
        timestamp: now(),
    };
    let out = render(commands::execute(&command, &ctx), cli.json);
    if let Some(path) = &cli.manifest {
        let m = manifest::RunManifest::new(command, &ctx, cli.json);
        if let Err(e) = m.write(path) {
            return render(Err(e), cli.json);
        }
    }
    out
}

fn main() {
    let out = run(std::env::args_os().collect());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.exit);
}
