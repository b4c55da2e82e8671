use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use super::{Result, WorkspaceError};

static NEXT_CHAIN: AtomicU64 = AtomicU64::new(1);

/// A context created by an assertion and citing its predecessor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitationRecord {
    pub assertion: String,
    pub cites: Option<usize>,
    pub valid: bool,
    /// Names used in the assertion.
    pub names: BTreeSet<String>,
}

/// Handle to one record of one chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RecordRef {
    pub chain: u64,
    pub index: usize,
}

/// `w1, w1′, w1″, …`: each record cites exactly the one before it and
/// inherits its validity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitationChain {
    id: u64,
    records: Vec<CitationRecord>,
}

fn names_of(assertion: &str) -> BTreeSet<String> {
    assertion
        .split(|c: char| !(c.is_alphanumeric() || c == '_'))
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

impl CitationChain {
    pub fn start(assertion: &str) -> CitationChain {
        CitationChain::start_with(assertion, true)
    }

    pub fn start_with(assertion: &str, valid: bool) -> CitationChain {
        CitationChain {
            id: NEXT_CHAIN.fetch_add(1, Ordering::Relaxed),
            records: vec![CitationRecord {
                assertion: assertion.to_string(),
                cites: None,
                valid,
                names: names_of(assertion),
            }],
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn records(&self) -> &[CitationRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn head(&self) -> RecordRef {
        RecordRef {
            chain: self.id,
            index: self.records.len() - 1,
        }
    }

    pub fn record(&self, index: usize) -> RecordRef {
        RecordRef {
            chain: self.id,
            index,
        }
    }

    /// `w1` followed by primes.
    pub fn label(index: usize) -> String {
        let primes = match index {
            0 => String::new(),
            1 => "′".to_string(),
            2 => "″".to_string(),
            3 => "‴".to_string(),
            k => "′".repeat(k),
        };
        format!("w1{primes}")
    }

    /// Appends a record citing `head`, which must be this chain's head.
    pub fn cite(&self, head: RecordRef, assertion: &str) -> Result<CitationChain> {
        if head.chain != self.id {
            return Err(WorkspaceError::ForeignRecord {
                expected: self.id,
                found: head.chain,
            });
        }
        if head != self.head() {
            return Err(WorkspaceError::NotHead {
                chain: self.id,
                index: head.index,
            });
        }
        let mut next = self.clone();
        next.records.push(CitationRecord {
            assertion: assertion.to_string(),
            cites: Some(head.index),
            valid: self.records[head.index].valid,
            names: names_of(assertion),
        });
        Ok(next)
    }

    /// Earliest record whose assertion used `name`.
    pub fn resolve(&self, name: &str) -> Option<usize> {
        self.records.iter().position(|r| r.names.contains(name))
    }

    /// Walks back from `from` along the citation line. Records of other
    /// chains resolve nothing.
    pub fn resolve_from(&self, from: RecordRef, name: &str) -> Option<usize> {
        if from.chain != self.id || from.index >= self.records.len() {
            return None;
        }
        let mut found = None;
        let mut cur = Some(from.index);
        while let Some(i) = cur {
            if self.records[i].names.contains(name) {
                found = Some(i);
            }
            cur = self.records[i].cites;
        }
        found
    }
}

impl fmt::Display for CitationChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.records.iter().enumerate() {
            write!(f, "{}: {}", CitationChain::label(i), r.assertion)?;
            if let Some(c) = r.cites {
                write!(f, " (cites {})", CitationChain::label(c))?;
            }
            writeln!(f, "{}", if r.valid { "" } else { " [invalid]" })?;
        }
        Ok(())
    }
}

/// Theories `A0, A1, …` where each step adds the previous theory's own name
/// as a new axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextChain {
    base: String,
    theories: Vec<BTreeSet<String>>,
}

impl ContextChain {
    pub fn new(base: &str, axioms: &[&str]) -> ContextChain {
        ContextChain {
            base: base.to_string(),
            theories: vec![axioms.iter().map(|a| a.to_string()).collect()],
        }
    }

    pub fn name(&self, index: usize) -> String {
        format!("{}{index}", self.base)
    }

    pub fn theories(&self) -> &[BTreeSet<String>] {
        &self.theories
    }

    pub fn len(&self) -> usize {
        self.theories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theories.is_empty()
    }

    /// `A(n+1) = A(n) ∪ {name(A(n))}`. The new axiom must not already be
    /// present, so the chain strictly grows.
    pub fn step(&self) -> Result<ContextChain> {
        let n = self.theories.len() - 1;
        let axiom = self.name(n);
        let last = &self.theories[n];
        if last.contains(&axiom) {
            return Err(WorkspaceError::StaleAxiom(axiom));
        }
        let mut next = self.clone();
        let mut theory = last.clone();
        theory.insert(axiom);
        next.theories.push(theory);
        Ok(next)
    }

    /// Starts a fresh chain whose first theory has the content of `A(k)`.
    pub fn rebase(&self, k: usize, base: &str) -> Result<ContextChain> {
        let theory = self.theories.get(k).ok_or(WorkspaceError::NoSuchTheory {
            index: k,
            len: self.theories.len(),
        })?;
        Ok(ContextChain {
            base: base.to_string(),
            theories: vec![theory.clone()],
        })
    }
}

impl fmt::Display for ContextChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.theories.iter().enumerate() {
            let axioms: Vec<&str> = t.iter().map(String::as_str).collect();
            writeln!(f, "{} = {{{}}}", self.name(i), axioms.join(", "))?;
        }
        Ok(())
    }
}
