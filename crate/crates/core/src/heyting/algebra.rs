use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use super::{FinitePoset, HeytingError};
use crate::logic::Formula;

/// Elements of an algebra are indices into its carrier.
pub type Elem = usize;

pub(super) struct LatticeTables {
    pub bottom: Elem,
    pub top: Elem,
    pub meet: Vec<Vec<Elem>>,
    pub join: Vec<Vec<Elem>>,
}

/// Meet and join tables of `p`, or the first pair lacking a bound.
pub(super) fn lattice_tables(p: &FinitePoset) -> Result<LatticeTables, HeytingError> {
    let n = p.len();
    let not_lattice = |a: Elem, b: Elem| {
        HeytingError::NotALattice(p.label(a).to_string(), p.label(b).to_string())
    };
    if n == 0 {
        return Err(HeytingError::Empty);
    }
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<Elem> = (0..n).filter(|&c| p.leq(c, a) && p.leq(c, b)).collect();
            meet[a][b] = *lower
                .iter()
                .find(|&&m| lower.iter().all(|&c| p.leq(c, m)))
                .ok_or_else(|| not_lattice(a, b))?;
            let upper: Vec<Elem> = (0..n).filter(|&c| p.leq(a, c) && p.leq(b, c)).collect();
            join[a][b] = *upper
                .iter()
                .find(|&&j| upper.iter().all(|&c| p.leq(j, c)))
                .ok_or_else(|| not_lattice(a, b))?;
        }
    }
    let bottom = (0..n).find(|&b| (0..n).all(|x| p.leq(b, x)));
    let top = (0..n).find(|&t| (0..n).all(|x| p.leq(x, t)));
    match (bottom, top) {
        (Some(bottom), Some(top)) => Ok(LatticeTables {
            bottom,
            top,
            meet,
            join,
        }),
        _ => Err(not_lattice(0, 0)),
    }
}

/// A finite Heyting algebra with all operation tables precomputed.
#[derive(Clone, PartialEq, Eq)]
pub struct HeytingAlgebra {
    poset: FinitePoset,
    bottom: Elem,
    top: Elem,
    meet: Vec<Vec<Elem>>,
    join: Vec<Vec<Elem>>,
    imp: Vec<Vec<Elem>>,
}

impl HeytingAlgebra {
    /// Builds the algebra of a finite lattice, computing `a → b` as the
    /// largest `x` with `a ∧ x ≤ b`. Fails if the lattice is not
    /// distributive (some maximum does not exist).
    pub fn from_lattice(poset: FinitePoset) -> Result<HeytingAlgebra, HeytingError> {
        let t = lattice_tables(&poset)?;
        let n = poset.len();
        let mut imp = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let ok: Vec<Elem> = (0..n).filter(|&x| poset.leq(t.meet[a][x], b)).collect();
                imp[a][b] = *ok
                    .iter()
                    .find(|&&m| ok.iter().all(|&x| poset.leq(x, m)))
                    .ok_or_else(|| {
                        HeytingError::NotHeyting(poset.label(a).into(), poset.label(b).into())
                    })?;
            }
        }
        Ok(HeytingAlgebra {
            bottom: t.bottom,
            top: t.top,
            meet: t.meet,
            join: t.join,
            imp,
            poset,
        })
    }

    /// Lattice of `poset` with a caller-supplied implication table that is
    /// not checked against residuation. Use [`HeytingAlgebra::check_laws`]
    /// to audit it.
    pub fn from_parts(
        poset: FinitePoset,
        imp: Vec<Vec<Elem>>,
    ) -> Result<HeytingAlgebra, HeytingError> {
        let t = lattice_tables(&poset)?;
        let n = poset.len();
        if imp.len() != n || imp.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(HeytingError::Shape);
        }
        Ok(HeytingAlgebra {
            bottom: t.bottom,
            top: t.top,
            meet: t.meet,
            join: t.join,
            imp,
            poset,
        })
    }

    /// The chain `0 < 1/(n-1) < ... < 1`, with `a → b = 1` if `a ≤ b` and
    /// `b` otherwise.
    pub fn chain(n: usize) -> Result<HeytingAlgebra, HeytingError> {
        if n < 2 {
            return Err(HeytingError::ChainTooShort(n));
        }
        let den = (n - 1) as u64;
        let labels = (0..n as u64).map(|i| Ratio::new(i, den).to_string()).collect();
        let poset = FinitePoset::chain(n).with_labels(labels)?;
        let meet = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
        let join = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
        let imp = (0..n)
            .map(|a| (0..n).map(|b| if a <= b { n - 1 } else { b }).collect())
            .collect();
        Ok(HeytingAlgebra {
            poset,
            bottom: 0,
            top: n - 1,
            meet,
            join,
            imp,
        })
    }

    /// Downward-closed subsets of `p` under inclusion. `U → V` is the set of
    /// points whose whole down-set lies in `(P \ U) ∪ V`, i.e. the largest
    /// downset `W` with `U ∩ W ⊆ V`.
    pub fn downset_algebra(p: &FinitePoset) -> Result<HeytingAlgebra, HeytingError> {
        let sets = p.downsets()?;
        let k = sets.len();
        let index = |m: u32| sets.binary_search(&m).expect("closed under the operation");
        let labels: Vec<String> = sets
            .iter()
            .map(|&m| {
                let members: Vec<&str> = (0..p.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| p.label(i))
                    .collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        let leq = (0..k)
            .map(|a| (0..k).map(|b| sets[a] & !sets[b] == 0).collect())
            .collect();
        let poset = FinitePoset::new(labels, leq)?;
        let meet = (0..k)
            .map(|a| (0..k).map(|b| index(sets[a] & sets[b])).collect())
            .collect();
        let join = (0..k)
            .map(|a| (0..k).map(|b| index(sets[a] | sets[b])).collect())
            .collect();
        let imp = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let allowed = !sets[a] | sets[b];
                        let w = (0..p.len())
                            .filter(|&x| p.down(x) & !allowed == 0)
                            .fold(0u32, |m, x| m | 1 << x);
                        index(w)
                    })
                    .collect()
            })
            .collect();
        Ok(HeytingAlgebra {
            poset,
            bottom: 0,
            top: k - 1,
            meet,
            join,
            imp,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn label(&self, a: Elem) -> &str {
        self.poset.label(a)
    }

    pub fn element(&self, label: &str) -> Result<Elem, HeytingError> {
        self.poset
            .index_of(label)
            .ok_or_else(|| HeytingError::UnknownElement(label.to_string()))
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a][b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a][b]
    }

    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a][b]
    }

    /// Checked variant of [`HeytingAlgebra::imp`].
    pub fn try_imp(&self, a: Elem, b: Elem) -> Result<Elem, HeytingError> {
        let n = self.len();
        if a >= n || b >= n {
            return Err(HeytingError::UnknownElement(format!("#{}", a.max(b))));
        }
        Ok(self.imp[a][b])
    }

    /// `¬a = a → 0`.
    pub fn neg(&self, a: Elem) -> Elem {
        self.imp[a][self.bottom]
    }

    /// Least upper bound of a nonempty set.
    pub fn label_ceiling(&self, s: &[Elem]) -> Result<Elem, HeytingError> {
        s.iter()
            .copied()
            .reduce(|a, b| self.join(a, b))
            .ok_or(HeytingError::EmptySubset)
    }

    /// Greatest lower bound of a nonempty set.
    pub fn label_floor(&self, s: &[Elem]) -> Result<Elem, HeytingError> {
        s.iter()
            .copied()
            .reduce(|a, b| self.meet(a, b))
            .ok_or(HeytingError::EmptySubset)
    }

    pub fn hasse_edges(&self) -> Vec<(Elem, Elem)> {
        self.poset.hasse_edges()
    }

    pub fn is_isomorphic(&self, other: &HeytingAlgebra) -> bool {
        self.poset.is_isomorphic(&other.poset)
    }

    /// Value of `f` under an assignment of atoms to elements. `N(f1..fk)`
    /// is `¬f1 ∧ .. ∧ ¬fk`.
    pub fn eval(&self, f: &Formula, v: &BTreeMap<String, Elem>) -> Result<Elem, HeytingError> {
        Ok(match f {
            Formula::Atom(a) => {
                let x = *v
                    .get(a)
                    .ok_or_else(|| HeytingError::UnboundAtom(a.clone()))?;
                if x >= self.len() {
                    return Err(HeytingError::UnknownElement(format!("#{x}")));
                }
                x
            }
            Formula::Bottom => self.bottom,
            Formula::Top => self.top,
            Formula::Not(g) => self.neg(self.eval(g, v)?),
            Formula::And(a, b) => self.meet(self.eval(a, v)?, self.eval(b, v)?),
            Formula::Or(a, b) => self.join(self.eval(a, v)?, self.eval(b, v)?),
            Formula::Implies(a, b) => self.imp(self.eval(a, v)?, self.eval(b, v)?),
            Formula::N(args) => {
                let mut acc = self.top;
                for g in args {
                    acc = self.meet(acc, self.neg(self.eval(g, v)?));
                }
                acc
            }
        })
    }

    /// True iff `f` evaluates to top under every assignment of its atoms.
    pub fn validates(&self, f: &Formula) -> Result<bool, HeytingError> {
        let atoms: Vec<String> = f.atoms().into_iter().collect();
        let n = self.len();
        let total = n
            .checked_pow(atoms.len() as u32)
            .filter(|&t| t <= 1 << 24)
            .ok_or(HeytingError::TooLarge(n))?;
        for mut code in 0..total {
            let mut v = BTreeMap::new();
            for a in &atoms {
                v.insert(a.clone(), code % n);
                code /= n;
            }
            if self.eval(f, &v)? != self.top {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exhaustive audit of the lattice, distributivity and implication laws.
    pub fn check_laws(&self) -> LawReport {
        let n = self.len();
        let mut violations = Vec::new();
        let mut fail = |law: Law, w: &[Elem]| {
            violations.push(LawViolation {
                law,
                witness: w.iter().map(|&x| self.label(x).to_string()).collect(),
            })
        };
        let le = |a, b| self.leq(a, b);
        for a in 0..n {
            if !le(self.bottom, a) || !le(a, self.top) {
                fail(Law::Bounds, &[a]);
            }
            if !le(self.bottom, a) || self.imp(self.bottom, a) != self.top {
                fail(Law::ExFalso, &[a]);
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    fail(Law::Order, &[a, b]);
                }
                let (m, j, i) = (self.meet(a, b), self.join(a, b), self.imp(a, b));
                if !le(m, a) || !le(m, b) || (0..n).any(|c| le(c, a) && le(c, b) && !le(c, m)) {
                    fail(Law::Meet, &[a, b]);
                }
                if !le(a, j) || !le(b, j) || (0..n).any(|c| le(a, c) && le(b, c) && !le(j, c)) {
                    fail(Law::Join, &[a, b]);
                }
                if !le(self.meet(a, i), b) {
                    fail(Law::ModusPonens, &[a, b]);
                }
                if (i == self.top) != le(a, b) {
                    fail(Law::ImpTopIffLeq, &[a, b]);
                }
                for x in 0..n {
                    if le(self.meet(a, x), b) != le(x, i) {
                        fail(Law::Residuation, &[a, b, x]);
                    }
                    if le(a, b) && le(b, x) && !le(a, x) {
                        fail(Law::Order, &[a, b, x]);
                    }
                    let lhs = self.meet(a, self.join(b, x));
                    let rhs = self.join(self.meet(a, b), self.meet(a, x));
                    if lhs != rhs {
                        fail(Law::Distributivity, &[a, b, x]);
                    }
                }
            }
        }
        LawReport { violations }
    }
}

impl fmt::Debug for HeytingAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeytingAlgebra({:?})", self.poset)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    Order,
    Bounds,
    Meet,
    Join,
    Distributivity,
    Residuation,
    ModusPonens,
    ExFalso,
    ImpTopIffLeq,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Order => "partial order",
            Law::Bounds => "bounds",
            Law::Meet => "meet is greatest lower bound",
            Law::Join => "join is least upper bound",
            Law::Distributivity => "distributivity",
            Law::Residuation => "residuation (a∧x ≤ b iff x ≤ a→b)",
            Law::ModusPonens => "modus ponens (a∧(a→b) ≤ b)",
            Law::ExFalso => "ex falso (0 ≤ b, 0→b = 1)",
            Law::ImpTopIffLeq => "a→b = 1 iff a ≤ b",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    /// Labels of the offending elements, in argument order.
    pub witness: Vec<String>,
}

/// Violations in canonical order (by argument tuple, then law).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LawReport {
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "all laws hold");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.law, v.witness.join(", "))?;
        }
        Ok(())
    }
}
