use std::collections::BTreeSet;

use super::{Elem, FinitePoset, HeytingAlgebra, HeytingError};

/// A filter of a finite Heyting algebra: contains top, closed under meet,
/// upward closed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter {
    members: BTreeSet<Elem>,
}

impl Filter {
    pub fn members(&self) -> &BTreeSet<Elem> {
        &self.members
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(&a)
    }

    pub fn labels(&self, h: &HeytingAlgebra) -> Vec<String> {
        self.members.iter().map(|&a| h.label(a).to_string()).collect()
    }
}

/// An algebra quotiented by a filter, with the class map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: HeytingAlgebra,
    /// `class_of[x]` is the quotient element containing `x`.
    pub class_of: Vec<Elem>,
    pub classes: Vec<Vec<Elem>>,
}

impl HeytingAlgebra {
    pub fn is_filter(&self, set: &BTreeSet<Elem>) -> bool {
        set.contains(&self.top())
            && set.iter().all(|&x| {
                set.iter().all(|&y| set.contains(&self.meet(x, y)))
                    && self.elements().all(|z| !self.leq(x, z) || set.contains(&z))
            })
    }

    /// Checked conversion of a set of elements into a [`Filter`].
    pub fn filter(&self, set: BTreeSet<Elem>) -> Result<Filter, HeytingError> {
        if set.iter().any(|&x| x >= self.len()) || !self.is_filter(&set) {
            return Err(HeytingError::NotAFilter);
        }
        Ok(Filter { members: set })
    }

    /// Least filter containing `s`, by fixpoint iteration: add top, close
    /// under meets, close upward, repeat until nothing changes.
    pub fn generate(&self, s: &[Elem]) -> Result<Filter, HeytingError> {
        if let Some(&bad) = s.iter().find(|&&x| x >= self.len()) {
            return Err(HeytingError::UnknownElement(format!("#{bad}")));
        }
        let mut members: BTreeSet<Elem> = s.iter().copied().collect();
        members.insert(self.top());
        loop {
            let before = members.len();
            let snapshot: Vec<Elem> = members.iter().copied().collect();
            for &x in &snapshot {
                for &y in &snapshot {
                    members.insert(self.meet(x, y));
                }
            }
            let snapshot: Vec<Elem> = members.iter().copied().collect();
            for &x in &snapshot {
                members.extend(self.elements().filter(|&z| self.leq(x, z)));
            }
            if members.len() == before {
                return Ok(Filter { members });
            }
        }
    }

    /// Every filter of the algebra. In a finite lattice these are exactly
    /// the principal filters `↑a`.
    pub fn filters(&self) -> Vec<Filter> {
        let mut out: Vec<Filter> = self
            .elements()
            .map(|a| Filter {
                members: self.elements().filter(|&z| self.leq(a, z)).collect(),
            })
            .collect();
        out.sort();
        out
    }

    /// `x ~ y` iff `x → y` and `y → x` are both in `f`. Classes are listed
    /// by least member and labeled `[m]` after their greatest member `m`;
    /// `[x] ≤ [y]` iff `x → y ∈ f`.
    pub fn quotient(&self, f: &Filter) -> Result<Quotient, HeytingError> {
        if !self.is_filter(&f.members) {
            return Err(HeytingError::NotAFilter);
        }
        let n = self.len();
        let equiv = |x: Elem, y: Elem| f.contains(self.imp(x, y)) && f.contains(self.imp(y, x));
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let members: Vec<Elem> = (x..n).filter(|&y| equiv(x, y)).collect();
            for &y in &members {
                class_of[y] = classes.len();
            }
            classes.push(members);
        }
        let k = classes.len();
        let rep = |c: usize| classes[c][0];
        let labels: Vec<String> = classes
            .iter()
            .map(|members| {
                let greatest = members
                    .iter()
                    .copied()
                    .find(|&m| members.iter().all(|&y| self.leq(y, m)))
                    .unwrap_or(members[0]);
                format!("[{}]", self.label(greatest))
            })
            .collect();
        let leq = (0..k)
            .map(|c| (0..k).map(|d| f.contains(self.imp(rep(c), rep(d)))).collect())
            .collect();
        let poset = FinitePoset::new(labels, leq)?;
        let mut imp = vec![vec![0; k]; k];
        for x in 0..n {
            for y in 0..n {
                let (c, d) = (class_of[x], class_of[y]);
                let value = class_of[self.imp(x, y)];
                if x == rep(c) && y == rep(d) {
                    imp[c][d] = value;
                }
            }
        }
        // induced operations must not depend on representatives
        for x in 0..n {
            for y in 0..n {
                let (c, d) = (class_of[x], class_of[y]);
                if class_of[self.imp(x, y)] != imp[c][d] {
                    return Err(HeytingError::NotACongruence);
                }
            }
        }
        let algebra = HeytingAlgebra::from_parts(poset, imp)?;
        for x in 0..n {
            for y in 0..n {
                let (c, d) = (class_of[x], class_of[y]);
                if class_of[self.meet(x, y)] != algebra.meet(c, d)
                    || class_of[self.join(x, y)] != algebra.join(c, d)
                {
                    return Err(HeytingError::NotACongruence);
                }
            }
        }
        Ok(Quotient {
            algebra,
            class_of,
            classes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[Elem]) -> BTreeSet<Elem> {
        xs.iter().copied().collect()
    }

    /// Smallest filter containing `s`, by scanning every subset.
    fn brute_generate(h: &HeytingAlgebra, s: &[Elem]) -> BTreeSet<Elem> {
        let n = h.len();
        (0u32..1 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<BTreeSet<_>>())
            .filter(|c| s.iter().all(|x| c.contains(x)) && h.is_filter(c))
            .min_by_key(BTreeSet::len)
            .unwrap()
    }

    #[test]
    fn generated_filters_on_chain_three() {
        let h = HeytingAlgebra::chain(3).unwrap();
        let half = h.element("1/2").unwrap();
        assert_eq!(h.generate(&[half]).unwrap().labels(&h), ["1/2", "1"]);
        assert_eq!(h.generate(&[]).unwrap().labels(&h), ["1"]);
        assert_eq!(h.generate(&[h.bottom()]).unwrap().members().len(), 3);
    }

    #[test]
    fn generation_matches_brute_force() {
        for n in 0..=3 {
            for p in FinitePoset::enumerate(n) {
                let h = HeytingAlgebra::downset_algebra(&p).unwrap();
                for a in h.elements() {
                    for b in h.elements() {
                        let s = [a, b];
                        assert_eq!(h.generate(&s).unwrap().members(), &brute_generate(&h, &s));
                    }
                }
            }
        }
    }

    #[test]
    fn principal_filters_are_all_filters() {
        let h = HeytingAlgebra::downset_algebra(&FinitePoset::antichain(2)).unwrap();
        let n = h.len();
        let mut brute: Vec<BTreeSet<Elem>> = (0u32..1 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<BTreeSet<_>>())
            .filter(|c| h.is_filter(c))
            .collect();
        brute.sort();
        let mut listed: Vec<BTreeSet<Elem>> = h.filters().into_iter().map(|f| f.members).collect();
        listed.sort();
        assert_eq!(listed, brute);
    }

    #[test]
    fn quotient_of_chain_three() {
        let h = HeytingAlgebra::chain(3).unwrap();
        let f = h.generate(&[h.element("1/2").unwrap()]).unwrap();
        let q = h.quotient(&f).unwrap();
        assert_eq!(q.classes, vec![vec![0], vec![1, 2]]);
        assert!(q.algebra.is_isomorphic(&HeytingAlgebra::chain(2).unwrap()));
        assert_eq!(q.algebra.poset().labels(), ["[0]", "[1]"]);
    }

    #[test]
    fn trivial_and_improper_quotients() {
        let h = HeytingAlgebra::downset_algebra(&FinitePoset::chain(2)).unwrap();
        let id = h.quotient(&h.generate(&[]).unwrap()).unwrap();
        assert!(id.algebra.is_isomorphic(&h));
        let all = h.quotient(&h.generate(&[h.bottom()]).unwrap()).unwrap();
        assert_eq!(all.algebra.len(), 1);
    }

    #[test]
    fn non_filters_rejected() {
        let h = HeytingAlgebra::chain(3).unwrap();
        assert_eq!(h.filter(set(&[0])), Err(HeytingError::NotAFilter));
        assert!(h.filter(set(&[1, 2])).is_ok());
        let bogus = Filter { members: set(&[1]) };
        assert!(matches!(h.quotient(&bogus), Err(HeytingError::NotAFilter)));
    }
}
