use std::fmt;

use super::HeytingError;

/// A finite partial order on labeled elements `0..len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

/// Posets larger than this are refused by operations that enumerate subsets.
pub const MAX_SUBSET_POSET: usize = 16;

impl FinitePoset {
    /// Validates that `leq` is reflexive, antisymmetric and transitive and
    /// that labels are distinct.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<FinitePoset, HeytingError> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(HeytingError::Shape);
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(HeytingError::DuplicateLabel);
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(HeytingError::NotAPoset(format!("{} is not ≤ itself", labels[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(HeytingError::NotAPoset(format!(
                        "{} ≤ {} and {} ≤ {}",
                        labels[a], labels[b], labels[b], labels[a]
                    )));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(HeytingError::NotAPoset(format!(
                            "{} ≤ {} ≤ {} but not {} ≤ {}",
                            labels[a], labels[b], labels[c], labels[a], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    /// Reflexive-transitive closure of `pairs` (each `(a, b)` meaning `a ≤ b`),
    /// rejected if the closure is not antisymmetric.
    pub fn from_relation(
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<FinitePoset, HeytingError> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(HeytingError::Shape);
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        FinitePoset::new(labels, leq)
    }

    pub fn chain(n: usize) -> FinitePoset {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        FinitePoset { labels, leq }
    }

    pub fn antichain(n: usize) -> FinitePoset {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect();
        FinitePoset { labels, leq }
    }

    /// All partial orders on `n` elements (labeled `0..n`), in lexicographic
    /// order of their row-major order matrices.
    pub fn enumerate(n: usize) -> Vec<FinitePoset> {
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut out = Vec::new();
        fn go(
            k: usize,
            cells: &[(usize, usize)],
            leq: &mut Vec<Vec<bool>>,
            labels: &[String],
            out: &mut Vec<FinitePoset>,
        ) {
            if k == cells.len() {
                if let Ok(p) = FinitePoset::new(labels.to_vec(), leq.clone()) {
                    out.push(p);
                }
                return;
            }
            let (a, b) = cells[k];
            go(k + 1, cells, leq, labels, out);
            if !leq[b][a] {
                leq[a][b] = true;
                go(k + 1, cells, leq, labels, out);
                leq[a][b] = false;
            }
        }
        go(0, &cells, &mut leq, &labels, &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<FinitePoset, HeytingError> {
        FinitePoset::new(labels, self.leq.clone())
    }

    /// The order dual: `a ≤ b` in the result iff `b ≤ a` here.
    pub fn dual(&self) -> FinitePoset {
        let n = self.len();
        FinitePoset {
            labels: self.labels.clone(),
            leq: (0..n).map(|a| (0..n).map(|b| self.leq[b][a]).collect()).collect(),
        }
    }

    /// Cover relation as `(lower, upper)` pairs in lexicographic order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    fn check_subset_size(&self) -> Result<(), HeytingError> {
        if self.len() > MAX_SUBSET_POSET {
            Err(HeytingError::TooLarge(self.len()))
        } else {
            Ok(())
        }
    }

    /// Downward-closed subsets as bit masks, ascending.
    pub fn downsets(&self) -> Result<Vec<u32>, HeytingError> {
        self.check_subset_size()?;
        let n = self.len();
        Ok((0u32..1 << n)
            .filter(|&m| {
                (0..n).all(|b| m >> b & 1 == 0 || (0..n).all(|a| !self.leq[a][b] || m >> a & 1 == 1))
            })
            .collect())
    }

    /// Upward-closed subsets as bit masks, ascending.
    pub fn upsets(&self) -> Result<Vec<u32>, HeytingError> {
        self.dual().downsets()
    }

    /// Bit mask of `{ b : a ≤ b }`.
    pub fn up(&self, a: usize) -> u32 {
        (0..self.len())
            .filter(|&b| self.leq[a][b])
            .fold(0, |m, b| m | 1 << b)
    }

    /// Bit mask of `{ b : b ≤ a }`.
    pub fn down(&self, a: usize) -> u32 {
        (0..self.len())
            .filter(|&b| self.leq[b][a])
            .fold(0, |m, b| m | 1 << b)
    }

    /// An order isomorphism `self → other` (as an index map), found by
    /// backtracking.
    pub fn isomorphism(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let profile = |p: &FinitePoset, a: usize| {
            (
                (0..p.len()).filter(|&b| p.leq[a][b]).count(),
                (0..p.len()).filter(|&b| p.leq[b][a]).count(),
            )
        };
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            a: usize,
            p: &FinitePoset,
            q: &FinitePoset,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            profile: &dyn Fn(&FinitePoset, usize) -> (usize, usize),
        ) -> bool {
            if a == p.len() {
                return true;
            }
            for b in 0..q.len() {
                if used[b] || profile(p, a) != profile(q, b) {
                    continue;
                }
                let consistent = (0..a).all(|c| {
                    p.leq[a][c] == q.leq[b][map[c]] && p.leq[c][a] == q.leq[map[c]][b]
                });
                if consistent {
                    map[a] = b;
                    used[b] = true;
                    if go(a + 1, p, q, map, used, profile) {
                        return true;
                    }
                    used[b] = false;
                }
            }
            false
        }
        go(0, self, other, &mut map, &mut used, &profile).then_some(map)
    }

    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        self.isomorphism(other).is_some()
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .hasse_edges()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "FinitePoset[{}; {}]", self.labels.join(" "), edges.join(" "))
    }
}

/// Parses the line-based lattice format:
///
/// ```text
/// elements: 0 1/2 1
/// 0 <= 1/2
/// 1/2 <= 1
/// ```
///
/// Blank lines and `#` comments are skipped. The reflexive-transitive
/// closure of the listed pairs is taken; the result must be a lattice.
pub fn parse_lattice_spec(text: &str) -> Result<FinitePoset, HeytingError> {
    let mut labels: Option<Vec<String>> = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| HeytingError::Parse { line: line_no, msg };
        match &labels {
            None => {
                let rest = line
                    .strip_prefix("elements:")
                    .ok_or_else(|| err("first line must be `elements: ...`".into()))?;
                let ls: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if ls.is_empty() {
                    return Err(err("no elements listed".into()));
                }
                labels = Some(ls);
            }
            Some(ls) => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let [a, "<=", b] = parts.as_slice() else {
                    return Err(err(format!("expected `a <= b`, got `{line}`")));
                };
                let find = |x: &str| {
                    ls.iter()
                        .position(|l| l == x)
                        .ok_or_else(|| err(format!("unknown element `{x}`")))
                };
                pairs.push((find(a)?, find(b)?));
            }
        }
    }
    let labels = labels.ok_or(HeytingError::Parse {
        line: 1,
        msg: "empty lattice file".into(),
    })?;
    let poset = FinitePoset::from_relation(labels, &pairs)?;
    super::algebra::lattice_tables(&poset)?;
    Ok(poset)
}
