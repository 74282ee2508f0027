//! Run manifests: the command with its inputs in canonical text form plus
//! every parameter that affects output. Replaying one reproduces the
//! original output byte for byte.

use std::path::Path;

use anyhow::Context as _;
use serde::{Deserialize, Serialize};

use seifertlab::graph_manifold::GluingJson;
use seifertlab::{GroupPresentation, Orbifold2, Rational, SeifertInvariants};

use crate::error::CliError;
use crate::{commands, render, Command, Context, GroupOp, Output};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: Command,
    pub budget: u64,
    pub json: bool,
    /// Only reports that carry a timestamp read this.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(command: Command, ctx: &Context, json: bool) -> Self {
        RunManifest {
            tool_version: TOOL_VERSION.to_string(),
            command,
            budget: ctx.budget,
            json,
            timestamp: ctx.timestamp,
        }
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        std::fs::write(path, text).with_context(|| format!("writing manifest {}", path.display()))
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }
}

pub fn replay(path: &Path) -> anyhow::Result<Output> {
    let m = RunManifest::read(path)?;
    if m.tool_version != TOOL_VERSION {
        return Err(CliError::VersionMismatch {
            found: m.tool_version,
            current: TOOL_VERSION.to_string(),
        }
        .into());
    }
    if matches!(m.command, Command::Replay { .. }) {
        return Err(CliError::Input {
            message: "a manifest cannot replay another manifest".into(),
            span: None,
        }
        .into());
    }
    let ctx = Context {
        budget: m.budget,
        timestamp: m.timestamp,
    };
    Ok(render(commands::execute(&m.command, &ctx), m.json))
}

fn canonical<T, E>(s: &mut String, parse: impl Fn(&str) -> Result<T, E>, print: impl Fn(&T) -> String) {
    if let Ok(v) = parse(s) {
        *s = print(&v);
    }
}

/// Rewrites textual inputs into canonical form; inputs that do not parse
/// are left alone so the error reproduces on replay.
pub fn canonicalize(mut cmd: Command) -> Command {
    match &mut cmd {
        Command::Invariants { symbol } => {
            canonical(symbol, |s| s.parse::<SeifertInvariants>(), |v| v.to_string());
        }
        Command::Orbifold {
            symbol, chi_at_least, ..
        } => {
            if let Some(s) = symbol {
                canonical(s, |s| s.parse::<Orbifold2>(), |v| v.to_string());
            }
            if let Some(c) = chi_at_least {
                canonical(c, |s| s.trim().parse::<Rational>(), |v| v.to_string());
            }
        }
        Command::Group { op } => match op {
            GroupOp::Abelianize { presentation } | GroupOp::HomSearch { presentation, .. } => {
                canonical(
                    presentation,
                    |s| s.parse::<GroupPresentation>(),
                    |v| v.to_string(),
                );
            }
            GroupOp::CosetEnum {
                presentation,
                subgroup,
                ..
            } => {
                if let Ok(p) = presentation.parse::<GroupPresentation>() {
                    if let Some(sub) = subgroup {
                        if let Ok(words) = commands::parse_subgroup(&p, sub) {
                            let text: Vec<String> = words.iter().map(|w| p.format_word(w)).collect();
                            *sub = text.join(", ");
                        }
                    }
                    *presentation = p.to_string();
                }
            }
        },
        Command::Glue { glue: Some(g) } => {
            canonical(
                g,
                |s| serde_json::from_str::<GluingJson>(s),
                |v| serde_json::to_string(v).expect("gluing serializes"),
            );
        }
        _ => {}
    }
    cmd
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let c = canonicalize(Command::Invariants {
            symbol: "SFS[ g=0;b=0; 3/4, 2/1 ]".into(),
        });
        assert_eq!(
            c,
            Command::Invariants {
                symbol: "SFS[g=0; b=1; 2/1, 3/1]".into()
            }
        );
        let bad = Command::Invariants {
            symbol: "SFS[".into(),
        };
        assert_eq!(canonicalize(bad.clone()), bad);
    }

    #[test]
    fn manifest_json_roundtrip() {
        let m = RunManifest {
            tool_version: TOOL_VERSION.into(),
            command: Command::Group {
                op: GroupOp::HomSearch {
                    presentation: "gens: x; rels: x^2".into(),
                    target: "C2".into(),
                    surjective: true,
                    limit: 5,
                },
            },
            budget: 10,
            json: true,
            timestamp: 0,
        };
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<RunManifest>(&text).unwrap(), m);
    }
}
