//! Line-based derivation scripts:
//!
//! ```text
//! # comment
//! lex a
//! merge a b as c
//! imerge c L as d
//! triple a
//! zero a
//! ```
//!
//! `zero <name>` records `f(name,0)` in the endowment at the current stage.

use super::{parse_path, DerivationTriple, Result, Workspace, WorkspaceError};
use crate::subject::Endowment;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Lex(String),
    Merge {
        x: String,
        y: String,
        label: Option<String>,
    },
    IMerge {
        root: String,
        path: String,
        label: Option<String>,
    },
    Triple(String),
    Zero(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptLine {
    pub line: usize,
    pub command: Command,
}

fn script_err(line: usize, msg: impl Into<String>) -> WorkspaceError {
    WorkspaceError::Script {
        line,
        msg: msg.into(),
    }
}

fn optional_label(line: usize, rest: &[&str]) -> Result<Option<String>> {
    match rest {
        [] => Ok(None),
        ["as", label] => Ok(Some(label.to_string())),
        _ => Err(script_err(line, "expected `as <label>`")),
    }
}

pub fn parse_script(text: &str) -> Result<Vec<ScriptLine>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        let command = match words.as_slice() {
            [] => continue,
            ["lex", name] => Command::Lex(name.to_string()),
            ["merge", x, y, rest @ ..] => Command::Merge {
                x: x.to_string(),
                y: y.to_string(),
                label: optional_label(line, rest)?,
            },
            ["imerge", root, path, rest @ ..] => Command::IMerge {
                root: root.to_string(),
                path: path.to_string(),
                label: optional_label(line, rest)?,
            },
            ["triple", name] => Command::Triple(name.to_string()),
            ["zero", name] => Command::Zero(name.to_string()),
            [cmd, ..] => {
                let known = ["lex", "merge", "imerge", "triple", "zero"];
                let msg = if known.contains(cmd) {
                    format!("wrong arguments for `{cmd}`")
                } else {
                    format!("unknown command `{cmd}`")
                };
                return Err(script_err(line, msg));
            }
        };
        out.push(ScriptLine { line, command });
    }
    Ok(out)
}

/// Result of replaying a script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub workspace: Workspace,
    /// The workspace after every command, in order.
    pub history: Vec<Workspace>,
    pub triples: Vec<DerivationTriple>,
    pub endowment: Endowment,
}

/// Runs a script from an empty workspace, stopping at the first failing
/// line.
pub fn replay(text: &str) -> Result<Replay> {
    let lines = parse_script(text)?;
    let mut ws = Workspace::new();
    let mut history = Vec::new();
    let mut triples = Vec::new();
    let mut endowment = Endowment::new();
    let at = |line: usize| move |e: WorkspaceError| script_err(line, e.to_string());
    for ScriptLine { line, command } in lines {
        match command {
            Command::Lex(name) => ws = ws.lex(&name).map_err(at(line))?,
            Command::Merge { x, y, label } => {
                ws = ws.merge(&x, &y, label.as_deref()).map_err(at(line))?
            }
            Command::IMerge { root, path, label } => {
                let steps = parse_path(&path)
                    .ok_or_else(|| script_err(line, format!("bad path `{path}`")))?;
                ws = ws.imerge(&root, &steps, label.as_deref()).map_err(at(line))?
            }
            Command::Triple(name) => triples.push(ws.derivation_triple(&name).map_err(at(line))?),
            Command::Zero(name) => {
                let item = ws
                    .lexicon()
                    .iter()
                    .find(|l| l.name == name)
                    .ok_or_else(|| script_err(line, format!("`{name}` is not in the lexicon")))?;
                endowment = endowment
                    .acquire(&item.zeroed_function(), ws.stage() as u64)
                    .map_err(|source| WorkspaceError::Subject { line, source })?;
            }
        }
        history.push(ws.clone());
    }
    Ok(Replay {
        workspace: ws,
        history,
        triples,
        endowment,
    })
}
