use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// One branch step. `L` is the child that comes first in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    L,
    R,
}

impl Step {
    pub fn index(self) -> usize {
        match self {
            Step::L => 0,
            Step::R => 1,
        }
    }
}

/// Parses `L/R/L`. The empty string is the empty path.
pub fn parse_path(s: &str) -> Option<Vec<Step>> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split('/')
        .map(|t| match t {
            "L" => Some(Step::L),
            "R" => Some(Step::R),
            _ => None,
        })
        .collect()
}

pub fn format_path(root: &str, path: &[Step]) -> String {
    let mut out = root.to_string();
    for s in path {
        out.push_str(match s {
            Step::L => "/L",
            Step::R => "/R",
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Leaf(String),
    Set {
        label: String,
        children: Box<[SyntacticObject; 2]>,
    },
}

/// A lexical leaf or a labeled two-element set. An occurrence flagged as a
/// copy is the lower trace left behind by internal merge: it still has a
/// position, but its leaves are not counted again.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SyntacticObject {
    node: Node,
    copy: bool,
}

impl SyntacticObject {
    pub fn leaf(name: &str) -> SyntacticObject {
        SyntacticObject {
            node: Node::Leaf(name.to_string()),
            copy: false,
        }
    }

    /// `label{x, y}` with the children in canonical order.
    pub fn set(label: &str, x: SyntacticObject, y: SyntacticObject) -> SyntacticObject {
        let children = if canonical_cmp(&x, &y) == Ordering::Greater {
            [y, x]
        } else {
            [x, y]
        };
        SyntacticObject {
            node: Node::Set {
                label: label.to_string(),
                children: Box::new(children),
            },
            copy: false,
        }
    }

    pub fn label(&self) -> &str {
        match &self.node {
            Node::Leaf(name) => name,
            Node::Set { label, .. } => label,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.node, Node::Leaf(_))
    }

    pub fn is_copy(&self) -> bool {
        self.copy
    }

    pub fn children(&self) -> Option<&[SyntacticObject; 2]> {
        match &self.node {
            Node::Leaf(_) => None,
            Node::Set { children, .. } => Some(children),
        }
    }

    /// Height of the tree; leaves have rank 0.
    pub fn rank(&self) -> usize {
        self.children()
            .map_or(0, |[a, b]| 1 + a.rank().max(b.rank()))
    }

    /// Number of leaf positions, copies included.
    pub fn size(&self) -> usize {
        self.children().map_or(1, |[a, b]| a.size() + b.size())
    }

    /// Leaf names with multiplicity, skipping copy occurrences.
    pub fn leaf_multiset(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        self.collect_leaves(&mut out);
        out
    }

    pub(crate) fn collect_leaves(&self, out: &mut BTreeMap<String, usize>) {
        if self.copy {
            return;
        }
        match &self.node {
            Node::Leaf(name) => *out.entry(name.clone()).or_default() += 1,
            Node::Set { children, .. } => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Every label occurring in the tree, copies included.
    pub fn labels(&self) -> Vec<&str> {
        let mut out = vec![self.label()];
        if let Some(cs) = self.children() {
            cs.iter().for_each(|c| out.extend(c.labels()));
        }
        out
    }

    pub fn at(&self, path: &[Step]) -> Option<&SyntacticObject> {
        match path.split_first() {
            None => Some(self),
            Some((s, rest)) => self.children()?[s.index()].at(rest),
        }
    }

    /// All positions whose label is `name`, copies included, in preorder
    /// with `L` before `R`.
    pub fn occurrences(&self, name: &str) -> Vec<Vec<Step>> {
        let mut out = Vec::new();
        self.walk(&mut Vec::new(), &mut |path, o| {
            if o.label() == name {
                out.push(path.to_vec());
            }
        });
        out
    }

    /// First position of `name` that is not inside a copy.
    pub fn find(&self, name: &str) -> Option<Vec<Step>> {
        let mut found = None;
        self.find_live(name, &mut Vec::new(), &mut found);
        found
    }

    fn find_live(&self, name: &str, path: &mut Vec<Step>, found: &mut Option<Vec<Step>>) {
        if found.is_some() || self.copy {
            return;
        }
        if self.label() == name {
            *found = Some(path.clone());
            return;
        }
        if let Some(cs) = self.children() {
            for (c, s) in cs.iter().zip([Step::L, Step::R]) {
                path.push(s);
                c.find_live(name, path, found);
                path.pop();
            }
        }
    }

    fn walk(&self, path: &mut Vec<Step>, f: &mut impl FnMut(&[Step], &SyntacticObject)) {
        f(path, self);
        if let Some(cs) = self.children() {
            for (c, s) in cs.iter().zip([Step::L, Step::R]) {
                path.push(s);
                c.walk(path, f);
                path.pop();
            }
        }
    }

    /// The same tree with the occurrence at `path` flagged as a copy.
    /// Flags do not take part in the canonical order, so paths are stable.
    pub fn mark_copy(&self, path: &[Step]) -> Option<SyntacticObject> {
        let mut out = self.clone();
        let mut cur = &mut out;
        for s in path {
            cur = match &mut cur.node {
                Node::Leaf(_) => return None,
                Node::Set { children, .. } => &mut children[s.index()],
            };
        }
        cur.copy = true;
        Some(out)
    }

    /// Serialization without copy markers, used for ordering.
    fn plain(&self) -> String {
        match &self.node {
            Node::Leaf(name) => name.clone(),
            Node::Set { label, children } => {
                format!("{label}{{{},{}}}", children[0].plain(), children[1].plain())
            }
        }
    }
}

/// Rank, then leaf positions, then the unmarked serialization.
pub(crate) fn canonical_cmp(a: &SyntacticObject, b: &SyntacticObject) -> Ordering {
    (a.rank(), a.size())
        .cmp(&(b.rank(), b.size()))
        .then_with(|| a.plain().cmp(&b.plain()))
}

/// `label{x,y}` for sets, the bare name for leaves, and `<..>` around a
/// copy occurrence.
impl fmt::Display for SyntacticObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy {
            f.write_str("<")?;
        }
        match &self.node {
            Node::Leaf(name) => f.write_str(name)?,
            Node::Set { label, children } => {
                write!(f, "{label}{{{},{}}}", children[0], children[1])?
            }
        }
        if self.copy {
            f.write_str(">")?;
        }
        Ok(())
    }
}
