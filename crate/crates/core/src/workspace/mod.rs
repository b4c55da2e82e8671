//! Merge over workspaces of syntactic objects, with ordinal staging,
//! derivation triples, citation chains, context chains and replayable
//! derivation scripts.

mod chain;
mod object;
mod script;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::hfset::{nest, pair, HFSet, HfError, Ordinal};
use crate::subject::SubjectError;

pub use chain::{CitationChain, CitationRecord, ContextChain, RecordRef};
pub use object::{format_path, parse_path, Step, SyntacticObject};
pub use script::{parse_script, replay, Command, Replay, ScriptLine};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WorkspaceError {
    #[error("`{0}` is not a valid name")]
    BadName(String),
    #[error("`{0}` is already in the lexicon")]
    DuplicateLex(String),
    #[error("label `{0}` is already in use")]
    LabelInUse(String),
    #[error("`{0}` does not occur in the workspace")]
    Unknown(String),
    #[error("`{0}` is not a root of the workspace")]
    NotARoot(String),
    #[error("cannot merge `{0}` with itself")]
    SelfMerge(String),
    #[error("no tampering: `{target}` is inside root `{root}`")]
    NoTampering { target: String, root: String },
    #[error("no term at path `{0}`")]
    BadPath(String),
    #[error("`{0}` is a copy and cannot be remerged")]
    CopyTarget(String),
    #[error("stage: {0}")]
    Stage(#[from] HfError),
    #[error("record {index} is not the head of chain {chain}")]
    NotHead { chain: u64, index: usize },
    #[error("record belongs to chain {found}, not chain {expected}")]
    ForeignRecord { expected: u64, found: u64 },
    #[error("axiom `{0}` is already present")]
    StaleAxiom(String),
    #[error("theory index {index} is outside a chain of length {len}")]
    NoSuchTheory { index: usize, len: usize },
    #[error("line {line}: {msg}")]
    Script { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Subject {
        line: usize,
        #[source]
        source: SubjectError,
    },
}

type Result<T> = std::result::Result<T, WorkspaceError>;

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '\'' | '.'))
}

/// A lexical item. Its zeroed function `f(name,0)` is the label held in
/// reserve for later application.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexItem {
    pub name: String,
}

impl LexItem {
    pub fn zeroed_function(&self) -> String {
        format!("f({},0)", self.name)
    }
}

/// An immutable workspace. Every operation returns a new value, so a failed
/// merge leaves the original untouched.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Workspace {
    roots: Vec<SyntacticObject>,
    stage: usize,
    lexicon: Vec<LexItem>,
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace::default()
    }

    /// Roots in canonical order.
    pub fn roots(&self) -> &[SyntacticObject] {
        &self.roots
    }

    pub fn lexicon(&self) -> &[LexItem] {
        &self.lexicon
    }

    /// Number of merges applied so far.
    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn ws_stage(&self) -> Result<Ordinal> {
        Ok(Ordinal::from_nat(self.stage)?)
    }

    /// Leaf multiset over all roots.
    pub fn leaves(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for r in &self.roots {
            r.collect_leaves(&mut out);
        }
        out
    }

    fn used_names(&self) -> BTreeSet<&str> {
        let mut names: BTreeSet<&str> = self.lexicon.iter().map(|l| l.name.as_str()).collect();
        for r in &self.roots {
            names.extend(r.labels());
        }
        names
    }

    fn root_index(&self, name: &str) -> Option<usize> {
        self.roots.iter().position(|r| r.label() == name)
    }

    fn containing_root(&self, name: &str) -> Option<&SyntacticObject> {
        self.roots.iter().find(|r| !r.occurrences(name).is_empty())
    }

    fn with_roots(&self, mut roots: Vec<SyntacticObject>) -> Workspace {
        roots.sort_by(object::canonical_cmp);
        Workspace {
            roots,
            stage: self.stage + 1,
            lexicon: self.lexicon.clone(),
        }
    }

    fn fresh_label(&self, requested: Option<&str>) -> Result<String> {
        let used = self.used_names();
        match requested {
            Some(l) if !valid_name(l) => Err(WorkspaceError::BadName(l.to_string())),
            Some(l) if used.contains(l) => Err(WorkspaceError::LabelInUse(l.to_string())),
            Some(l) => Ok(l.to_string()),
            None => Ok((1..)
                .map(|i| format!("c{i}"))
                .find(|c| !used.contains(c.as_str()))
                .expect("unbounded supply")),
        }
    }

    /// Adds a lexical item as a new root. The stage is unchanged.
    pub fn lex(&self, name: &str) -> Result<Workspace> {
        if !valid_name(name) {
            return Err(WorkspaceError::BadName(name.to_string()));
        }
        if self.used_names().contains(name) {
            return Err(WorkspaceError::DuplicateLex(name.to_string()));
        }
        let mut next = self.clone();
        next.lexicon.push(LexItem {
            name: name.to_string(),
        });
        next.roots.push(SyntacticObject::leaf(name));
        next.roots.sort_by(object::canonical_cmp);
        Ok(next)
    }

    /// External merge when `y` is another root, internal merge when `y`
    /// occurs inside root `x`. Labels default to `c1`, `c2`, … skipping
    /// names already in use.
    pub fn merge(&self, x: &str, y: &str, label: Option<&str>) -> Result<Workspace> {
        let xi = self.require_root(x)?;
        if x == y {
            return Err(WorkspaceError::SelfMerge(x.to_string()));
        }
        if let Some(yi) = self.root_index(y) {
            let label = self.fresh_label(label)?;
            let mut roots = self.roots.clone();
            let (hi, lo) = (xi.max(yi), xi.min(yi));
            let a = roots.remove(hi);
            let b = roots.remove(lo);
            roots.push(SyntacticObject::set(&label, a, b));
            return Ok(self.with_roots(roots));
        }
        if let Some(path) = self.roots[xi].find(y) {
            return self.internal(xi, &path, label);
        }
        match self.containing_root(y) {
            Some(r) if r.label() != x => Err(WorkspaceError::NoTampering {
                target: y.to_string(),
                root: r.label().to_string(),
            }),
            Some(_) => Err(WorkspaceError::CopyTarget(y.to_string())),
            None => Err(WorkspaceError::Unknown(y.to_string())),
        }
    }

    /// Internal merge of `root` with the term at `path` inside it.
    pub fn imerge(&self, root: &str, path: &[Step], label: Option<&str>) -> Result<Workspace> {
        let xi = self.require_root(root)?;
        if path.is_empty() {
            return Err(WorkspaceError::SelfMerge(root.to_string()));
        }
        self.internal(xi, path, label)
    }

    fn require_root(&self, x: &str) -> Result<usize> {
        self.root_index(x).ok_or_else(|| {
            if self.containing_root(x).is_some() {
                WorkspaceError::NotARoot(x.to_string())
            } else {
                WorkspaceError::Unknown(x.to_string())
            }
        })
    }

    fn internal(&self, xi: usize, path: &[Step], label: Option<&str>) -> Result<Workspace> {
        let root = &self.roots[xi];
        let shown = format_path(root.label(), path);
        let target = root.at(path).ok_or_else(|| WorkspaceError::BadPath(shown.clone()))?;
        if (1..=path.len()).any(|k| root.at(&path[..k]).is_some_and(SyntacticObject::is_copy)) {
            return Err(WorkspaceError::CopyTarget(shown));
        }
        let label = self.fresh_label(label)?;
        let moved = target.clone();
        let lower = root.mark_copy(path).expect("path checked above");
        let mut roots = self.roots.clone();
        roots.remove(xi);
        roots.push(SyntacticObject::set(&label, moved, lower));
        Ok(self.with_roots(roots))
    }

    /// `⟨w, n, r(n)⟩` for the lexical item `name`.
    pub fn derivation_triple(&self, name: &str) -> Result<DerivationTriple> {
        let lexicon_index = self
            .lexicon
            .iter()
            .position(|l| l.name == name)
            .ok_or_else(|| WorkspaceError::Unknown(name.to_string()))?;
        let mut positions = Vec::new();
        for (ri, r) in self.roots.iter().enumerate() {
            for p in r.occurrences(name) {
                positions.push((ri, p));
            }
        }
        if positions.is_empty() {
            return Err(WorkspaceError::Unknown(name.to_string()));
        }
        let paths = positions
            .iter()
            .map(|(ri, p)| format_path(self.roots[*ri].label(), p))
            .collect();
        let codes = positions
            .iter()
            .map(|(ri, p)| path_code(*ri, p))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let set = nest(&[
            Ordinal::from_nat(self.stage)?.as_set(),
            Ordinal::from_nat(lexicon_index)?.as_set(),
            HFSet::from_elems(codes),
        ])?;
        Ok(DerivationTriple {
            w: self.stage,
            n: name.to_string(),
            lexicon_index,
            paths,
            set,
        })
    }
}

/// Root index followed by steps (`L` = 0, `R` = 1), as a right-nested pair
/// list terminated by the empty set.
fn path_code(root: usize, path: &[Step]) -> std::result::Result<HFSet, HfError> {
    let mut code = HFSet::empty();
    for s in path.iter().rev() {
        code = pair(Ordinal::from_nat(s.index())?.as_set(), code);
    }
    Ok(pair(Ordinal::from_nat(root)?.as_set(), code))
}

/// Roots on one line, then the stage.
impl fmt::Display for Workspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roots: Vec<String> = self.roots.iter().map(ToString::to_string).collect();
        writeln!(f, "{{{}}}", roots.join(","))?;
        writeln!(f, "stage: {}", self.stage)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTriple {
    pub w: usize,
    pub n: String,
    pub lexicon_index: usize,
    /// Every position of `n`, copies included.
    pub paths: Vec<String>,
    /// `nest([w, index of n, set of path codes])`.
    pub set: HFSet,
}

impl fmt::Display for DerivationTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, {{{}}}>", self.w, self.n, self.paths.join(", "))
    }
}
