//! Subject vectors `⟨w, n, r⟩`, endowments of zeroed functions, the identity
//! ledger, affinity pairings and states of affairs built from binary
//! predicates around shared constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubjectError {
    #[error("vector violates w - n + r = 0 (w={w}, n={n}, r={r})")]
    Unbalanced { w: i64, n: i64, r: i64 },
    #[error("context index w = n - r must be nonnegative (n={n}, r={r})")]
    NegativeContext { n: i64, r: i64 },
    #[error("identity count must be nonnegative, got {0}")]
    NegativeCount(i64),
    #[error("homogeneity needs at least one name")]
    NoNames,
    #[error("label `{0}` is already in the endowment")]
    DuplicateLabel(String),
    #[error("acquisition context {ctx} precedes the latest entry at {latest}")]
    ContextOutOfOrder { ctx: u64, latest: u64 },
    #[error("the endowment is empty")]
    EmptyEndowment,
    #[error("no zeroed function was acquired at or before context {0}")]
    NoApplicable(u64),
    #[error("predicates {0} and {1} share no endpoint")]
    NoSharedNode(String, String),
    #[error("predicate `{0}` is not in the state of affairs")]
    UnknownPredicate(String),
    #[error("node `{0}` is not in the state of affairs")]
    UnknownNode(String),
    #[error("affinity classes must be nonempty")]
    EmptyClass,
    #[error("shift {shift} leaves no pairs over a right class of length {len}")]
    ShiftTooLarge { shift: usize, len: usize },
}

/// `⟨w, n, r⟩` with `w - n + r = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubjectVector {
    w: i64,
    n: i64,
    r: i64,
}

impl SubjectVector {
    pub fn new(w: i64, n: i64, r: i64) -> Result<SubjectVector, SubjectError> {
        if n < 0 {
            return Err(SubjectError::NegativeCount(n));
        }
        if w < 0 {
            return Err(SubjectError::NegativeContext { n, r });
        }
        if w - n + r != 0 {
            return Err(SubjectError::Unbalanced { w, n, r });
        }
        Ok(SubjectVector { w, n, r })
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn r(&self) -> i64 {
        self.r
    }
}

impl fmt::Display for SubjectVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, {}>", self.w, self.n, self.r)
    }
}

/// Closes a vector from `n` and `r`: `w = n - r`.
pub fn vector_close(n: i64, r: i64) -> Result<SubjectVector, SubjectError> {
    if n < 0 {
        return Err(SubjectError::NegativeCount(n));
    }
    let w = n.checked_sub(r).ok_or(SubjectError::NegativeContext { n, r })?;
    SubjectVector::new(w, n, r)
}

/// `n² - n`: external witnesses needed to sustain `n` names.
pub fn ledger(n: u64) -> u128 {
    let n = u128::from(n);
    n * n - n
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// `1 / ledger(1)` would divide by zero.
    NonDeterminate,
    Determinate(Ratio<u128>),
}

impl fmt::Display for Homogeneity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Homogeneity::NonDeterminate => f.write_str("NON_DETERMINATE"),
            Homogeneity::Determinate(r) => write!(f, "DETERMINATE {r}"),
        }
    }
}

pub fn homogeneity_flag(n: u64) -> Result<Homogeneity, SubjectError> {
    match ledger(n) {
        _ if n == 0 => Err(SubjectError::NoNames),
        0 => Ok(Homogeneity::NonDeterminate),
        l => Ok(Homogeneity::Determinate(Ratio::new(1, l))),
    }
}

/// A zeroed function: a label available for later application, recorded
/// with the context in which it was acquired.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZeroedFunction {
    pub label: String,
    pub acquired: u64,
}

/// Append-only, ordered collection of zeroed functions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Endowment {
    entries: Vec<ZeroedFunction>,
}

impl Endowment {
    pub fn new() -> Endowment {
        Endowment::default()
    }

    pub fn entries(&self) -> &[ZeroedFunction] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Returns a new endowment with `label` appended; `self` is untouched.
    pub fn acquire(&self, label: &str, ctx: u64) -> Result<Endowment, SubjectError> {
        if self.entries.iter().any(|e| e.label == label) {
            return Err(SubjectError::DuplicateLabel(label.to_string()));
        }
        if let Some(last) = self.entries.last() {
            if ctx < last.acquired {
                return Err(SubjectError::ContextOutOfOrder {
                    ctx,
                    latest: last.acquired,
                });
            }
        }
        let mut entries = self.entries.clone();
        entries.push(ZeroedFunction {
            label: label.to_string(),
            acquired: ctx,
        });
        Ok(Endowment { entries })
    }

    /// The latest entry acquired at or before `ctx`; among entries acquired
    /// in the same context, the last one inserted.
    pub fn project_identity(&self, ctx: u64) -> Result<&str, SubjectError> {
        if self.entries.is_empty() {
            return Err(SubjectError::EmptyEndowment);
        }
        self.entries
            .iter()
            .rev()
            .find(|e| e.acquired <= ctx)
            .map(|e| e.label.as_str())
            .ok_or(SubjectError::NoApplicable(ctx))
    }
}

/// A labeled binary predicate `label(from, to)`, optionally producing an
/// output node that other predicates can take as an argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Predicate {
    pub label: String,
    pub args: (String, String),
    pub output: Option<String>,
}

impl Predicate {
    pub fn new(label: &str, a: &str, b: &str) -> Predicate {
        Predicate {
            label: label.to_string(),
            args: (a.to_string(), b.to_string()),
            output: None,
        }
    }

    fn endpoints(&self) -> BTreeSet<String> {
        BTreeSet::from([self.args.0.clone(), self.args.1.clone()])
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.label, self.args.0, self.args.1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct NodeInfo {
    shared: bool,
    complement_of: Option<String>,
}

/// Nodes (subjects and shared constants) joined by predicate edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StateOfAffairs {
    nodes: BTreeMap<String, NodeInfo>,
    predicates: Vec<Predicate>,
}

impl StateOfAffairs {
    pub fn new() -> StateOfAffairs {
        StateOfAffairs::default()
    }

    pub fn nodes(&self) -> Vec<&str> {
        self.nodes.keys().map(String::as_str).collect()
    }

    pub fn shared_nodes(&self) -> Vec<&str> {
        self.nodes
            .iter()
            .filter(|(_, i)| i.shared)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn predicates(&self) -> &[Predicate] {
        &self.predicates
    }

    pub fn add_node(&mut self, name: &str) {
        self.nodes.entry(name.to_string()).or_default();
    }

    pub fn add_predicate(&mut self, p: Predicate) {
        self.add_node(&p.args.0);
        self.add_node(&p.args.1);
        if let Some(out) = &p.output {
            self.add_node(out);
        }
        self.predicates.push(p);
    }

    /// Adds `label(a, b)` with an output node named `label(a,b)` and
    /// returns that node's name.
    pub fn apply(&mut self, label: &str, a: &str, b: &str) -> String {
        let mut p = Predicate::new(label, a, b);
        let out = p.to_string();
        p.output = Some(out.clone());
        self.add_predicate(p);
        out
    }

    pub fn mark_shared(&mut self, name: &str) -> Result<(), SubjectError> {
        self.nodes
            .get_mut(name)
            .ok_or_else(|| SubjectError::UnknownNode(name.to_string()))?
            .shared = true;
        Ok(())
    }

    /// Declares `complement` to be the complement (`¬x`) of `node`.
    pub fn declare_complement(&mut self, node: &str, complement: &str) {
        self.add_node(node);
        self.add_node(complement);
        self.nodes.get_mut(complement).expect("just added").complement_of = Some(node.to_string());
    }

    /// Every predicate is a self-edge `F(x, x)`.
    pub fn is_tautology(&self) -> bool {
        !self.predicates.is_empty() && self.predicates.iter().all(|p| p.args.0 == p.args.1)
    }

    /// Predicates joining a node to its declared complement, `F(x, ¬x)`.
    pub fn paradox_edges(&self) -> Vec<&Predicate> {
        let is_pair = |a: &str, b: &str| {
            self.nodes.get(b).and_then(|i| i.complement_of.as_deref()) == Some(a)
        };
        self.predicates
            .iter()
            .filter(|p| is_pair(&p.args.0, &p.args.1) || is_pair(&p.args.1, &p.args.0))
            .collect()
    }

    fn predicate(&self, label: &str) -> Result<&Predicate, SubjectError> {
        self.predicates
            .iter()
            .find(|p| p.label == label)
            .ok_or_else(|| SubjectError::UnknownPredicate(label.to_string()))
    }

    /// Predicates labeled `f` and `g` relate the same endpoint sets.
    pub fn extensionally_equal(&self, f: &str, g: &str) -> Result<bool, SubjectError> {
        let ext = |label: &str| -> Result<BTreeSet<(String, String)>, SubjectError> {
            self.predicate(label)?;
            Ok(self
                .predicates
                .iter()
                .filter(|p| p.label == label)
                .map(|p| p.args.clone())
                .collect())
        };
        Ok(ext(f)? == ext(g)?)
    }
}

/// `F(x, z)` and `G(z, y)` around their shared node(s), which are flagged
/// as constants.
pub fn compose_state(f: &Predicate, g: &Predicate) -> Result<StateOfAffairs, SubjectError> {
    let shared: Vec<String> = f.endpoints().intersection(&g.endpoints()).cloned().collect();
    if shared.is_empty() {
        return Err(SubjectError::NoSharedNode(f.to_string(), g.to_string()));
    }
    let mut s = StateOfAffairs::new();
    s.add_predicate(f.clone());
    if g != f {
        s.add_predicate(g.clone());
    }
    for z in &shared {
        s.mark_shared(z)?;
    }
    Ok(s)
}

/// Structural audit of `outer(inner(..), ..)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverdeterminationReport {
    pub outer_endpoints: BTreeSet<String>,
    pub inner_args: BTreeSet<String>,
    pub inner_output: Option<String>,
    /// `outer` takes `inner`'s output node as an argument.
    pub references_inner_output: bool,
    /// Inner argument nodes that `outer` touches directly.
    pub tampering: Vec<String>,
    /// Least inner argument outside `outer`'s endpoints.
    pub witness: Option<String>,
}

impl OverdeterminationReport {
    /// Opaque scope and an incompleteness witness.
    pub fn is_overdetermined(&self) -> bool {
        self.references_inner_output && self.tampering.is_empty() && self.witness.is_some()
    }
}

impl fmt::Display for OverdeterminationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
        writeln!(f, "outer endpoints: {{{}}}", list(&self.outer_endpoints))?;
        writeln!(f, "inner arguments: {{{}}}", list(&self.inner_args))?;
        writeln!(
            f,
            "scope: {}",
            if self.tampering.is_empty() {
                "opaque".to_string()
            } else {
                format!("tampering via {}", self.tampering.join(","))
            }
        )?;
        match &self.witness {
            Some(w) => writeln!(f, "incompleteness witness: {w}"),
            None => writeln!(f, "incompleteness witness: none"),
        }
    }
}

pub fn overdetermination_check(
    s: &StateOfAffairs,
    outer: &str,
    inner: &str,
) -> Result<OverdeterminationReport, SubjectError> {
    let outer = s.predicate(outer)?;
    let inner = s.predicate(inner)?;
    let outer_endpoints = outer.endpoints();
    let inner_args = inner.endpoints();
    let references_inner_output = inner
        .output
        .as_ref()
        .is_some_and(|o| outer_endpoints.contains(o));
    let tampering = inner_args.intersection(&outer_endpoints).cloned().collect();
    let witness = inner_args.difference(&outer_endpoints).next().cloned();
    Ok(OverdeterminationReport {
        outer_endpoints,
        inner_args,
        inner_output: inner.output.clone(),
        references_inner_output,
        tampering,
        witness,
    })
}

/// Alignment of two classes: `left[i]` is paired with `right[i + shift]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinityPairing {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub shift: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl AffinityPairing {
    fn aligned(left: Vec<String>, right: Vec<String>, shift: usize) -> AffinityPairing {
        let pairs = (0..left.len())
            .map(|i| (i, i + shift))
            .take_while(|&(_, j)| j < right.len())
            .collect();
        AffinityPairing {
            left,
            right,
            shift,
            pairs,
        }
    }

    pub fn labeled_pairs(&self) -> Vec<(&str, &str)> {
        self.pairs
            .iter()
            .map(|&(i, j)| (self.left[i].as_str(), self.right[j].as_str()))
            .collect()
    }
}

/// One aligned pair per line.
impl fmt::Display for AffinityPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, r) in self.labeled_pairs() {
            writeln!(f, "{l} {r}")?;
        }
        Ok(())
    }
}

pub fn affinity(left: &[String], right: &[String]) -> Result<AffinityPairing, SubjectError> {
    if left.is_empty() || right.is_empty() {
        return Err(SubjectError::EmptyClass);
    }
    Ok(AffinityPairing::aligned(left.to_vec(), right.to_vec(), 0))
}

/// Shifts the alignment by a further `shift`, dropping pairs that run off
/// the end of the right class.
pub fn rearticulate(p: &AffinityPairing, shift: usize) -> Result<AffinityPairing, SubjectError> {
    let total = p.shift + shift;
    if total >= p.right.len() {
        return Err(SubjectError::ShiftTooLarge {
            shift: total,
            len: p.right.len(),
        });
    }
    Ok(AffinityPairing::aligned(p.left.clone(), p.right.clone(), total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn vectors() {
        let v = vector_close(1, 1).unwrap();
        assert_eq!((v.w(), v.n(), v.r()), (0, 1, 1));
        assert_eq!(vector_close(5, 3).unwrap().w(), 2);
        assert!(matches!(
            vector_close(1, 2),
            Err(SubjectError::NegativeContext { .. })
        ));
        assert!(matches!(
            SubjectVector::new(1, 1, 1),
            Err(SubjectError::Unbalanced { .. })
        ));
        assert_eq!(vector_close(i64::MIN, 1).unwrap_err(), SubjectError::NegativeCount(i64::MIN));
    }

    #[test]
    fn every_closed_vector_balances() {
        for n in 0..20 {
            for r in -20..=n {
                let v = vector_close(n, r).unwrap();
                assert_eq!(v.w() - v.n() + v.r(), 0);
            }
        }
    }

    #[test]
    fn ledger_values() {
        assert_eq!(ledger(0), 0);
        assert_eq!(ledger(1), 0);
        assert_eq!(ledger(3), 6);
        for n in 0..100u64 {
            assert_eq!(ledger(n + 1) - ledger(n), 2 * u128::from(n));
        }
        assert_eq!(ledger(u64::MAX), u128::from(u64::MAX) * u128::from(u64::MAX - 1));
    }

    #[test]
    fn homogeneity() {
        assert_eq!(homogeneity_flag(1).unwrap(), Homogeneity::NonDeterminate);
        assert_eq!(
            homogeneity_flag(2).unwrap(),
            Homogeneity::Determinate(Ratio::new(1, 2))
        );
        assert_eq!(homogeneity_flag(10).unwrap().to_string(), "DETERMINATE 1/90");
        assert_eq!(homogeneity_flag(0), Err(SubjectError::NoNames));
    }

    #[test]
    fn endowment_acquisition() {
        let empty = Endowment::new();
        let a = empty.acquire("a", 0).unwrap();
        assert!(empty.is_empty());
        let ab = a.acquire("b", 2).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(
            ab.entries(),
            [
                ZeroedFunction { label: "a".into(), acquired: 0 },
                ZeroedFunction { label: "b".into(), acquired: 2 },
            ]
        );
        assert_eq!(ab.acquire("a", 3), Err(SubjectError::DuplicateLabel("a".into())));
        assert!(matches!(
            ab.acquire("c", 1),
            Err(SubjectError::ContextOutOfOrder { .. })
        ));
    }

    #[test]
    fn identity_projection() {
        let e = Endowment::new().acquire("a", 0).unwrap().acquire("b", 2).unwrap();
        assert_eq!(e.project_identity(1).unwrap(), "a");
        assert_eq!(e.project_identity(5).unwrap(), "b");
        assert_eq!(e.project_identity(1), e.project_identity(1));
        let late = Endowment::new().acquire("z", 3).unwrap();
        assert_eq!(late.project_identity(2), Err(SubjectError::NoApplicable(2)));
        assert_eq!(Endowment::new().project_identity(0), Err(SubjectError::EmptyEndowment));
    }

    #[test]
    fn composing_states() {
        let s = compose_state(&Predicate::new("F", "x", "z"), &Predicate::new("G", "z", "y")).unwrap();
        assert_eq!(s.nodes(), ["x", "y", "z"]);
        assert_eq!(s.shared_nodes(), ["z"]);
        assert_eq!(s.predicates().len(), 2);
        assert!(matches!(
            compose_state(&Predicate::new("F", "x", "z"), &Predicate::new("G", "w", "y")),
            Err(SubjectError::NoSharedNode(..))
        ));
        let fxx = Predicate::new("F", "x", "x");
        let t = compose_state(&fxx, &fxx).unwrap();
        assert_eq!(t.nodes(), ["x"]);
        assert!(t.is_tautology());
        assert!(!s.is_tautology());
    }

    #[test]
    fn paradox_edges_and_extension() {
        let mut s = StateOfAffairs::new();
        s.declare_complement("x", "not_x");
        s.add_predicate(Predicate::new("F", "x", "not_x"));
        s.add_predicate(Predicate::new("G", "x", "not_x"));
        s.add_predicate(Predicate::new("H", "x", "y"));
        let flagged: Vec<&str> = s.paradox_edges().iter().map(|p| p.label.as_str()).collect();
        assert_eq!(flagged, ["F", "G"]);
        assert!(s.extensionally_equal("F", "G").unwrap());
        assert!(!s.extensionally_equal("F", "H").unwrap());
        assert!(s.extensionally_equal("F", "K").is_err());
    }

    #[test]
    fn overdetermination() {
        let mut s = StateOfAffairs::new();
        let g = s.apply("G", "x", "y");
        s.apply("F", &g, "z");
        let r = overdetermination_check(&s, "F", "G").unwrap();
        assert!(r.references_inner_output);
        assert!(r.tampering.is_empty());
        assert_eq!(r.witness.as_deref(), Some("x"));
        assert!(r.is_overdetermined());

        let mut t = StateOfAffairs::new();
        t.apply("G", "x", "y");
        t.add_predicate(Predicate::new("F", "x", "z"));
        let r = overdetermination_check(&t, "F", "G").unwrap();
        assert_eq!(r.tampering, ["x"]);
        assert!(!r.is_overdetermined());

        assert!(matches!(
            overdetermination_check(&s, "F", "Q"),
            Err(SubjectError::UnknownPredicate(_))
        ));
    }

    #[test]
    fn self_edge_inner() {
        let mut s = StateOfAffairs::new();
        let g = s.apply("G", "x", "x");
        s.apply("F", &g, "z");
        assert_eq!(overdetermination_check(&s, "F", "G").unwrap().witness.as_deref(), Some("x"));
        let mut t = StateOfAffairs::new();
        let g = t.apply("G", "x", "x");
        t.apply("F", &g, "x");
        assert_eq!(overdetermination_check(&t, "F", "G").unwrap().witness, None);
    }

    #[test]
    fn affinity_and_rearticulation() {
        let p = affinity(&strs(&["f1", "f2"]), &strs(&["e1", "e2"])).unwrap();
        assert_eq!(p.labeled_pairs(), [("f1", "e1"), ("f2", "e2")]);
        let q = rearticulate(&p, 1).unwrap();
        assert_eq!(q.labeled_pairs(), [("f1", "e2")]);
        assert_eq!(q.left, p.left);
        assert_eq!(q.right, p.right);
        assert_eq!(q.to_string(), "f1 e2\n");
        let single = affinity(&strs(&["f1"]), &strs(&["e1"])).unwrap();
        assert!(matches!(
            rearticulate(&single, 1),
            Err(SubjectError::ShiftTooLarge { .. })
        ));
        assert_eq!(affinity(&[], &strs(&["e1"])), Err(SubjectError::EmptyClass));
    }

    #[test]
    fn rearticulation_drops_one_pair() {
        for len in 2..10 {
            let l: Vec<String> = (1..=len).map(|i| format!("f{i}")).collect();
            let r: Vec<String> = (1..=len).map(|i| format!("e{i}")).collect();
            let p = affinity(&l, &r).unwrap();
            assert_eq!(rearticulate(&p, 1).unwrap().pairs.len(), p.pairs.len() - 1);
        }
    }
}
