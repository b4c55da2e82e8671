use std::collections::HashSet;
use std::fmt;

use super::HeytingError;

/// All total functions from a `domain`-element set to a `codomain`-element
/// set, each stored as its value table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FunctionSpace {
    pub domain: usize,
    pub codomain: usize,
}

impl FunctionSpace {
    /// `codomain ^ domain`.
    pub fn count(&self) -> u64 {
        (self.codomain as u64).pow(self.domain as u32)
    }

    /// Table of the `index`-th function: digit `i` in base `codomain`,
    /// least significant first.
    pub fn table(&self, mut index: u64) -> Vec<usize> {
        (0..self.domain)
            .map(|_| {
                let d = (index % self.codomain as u64) as usize;
                index /= self.codomain as u64;
                d
            })
            .collect()
    }

    pub fn index(&self, table: &[usize]) -> u64 {
        table
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.codomain as u64 + d as u64)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.count()).map(|i| self.table(i))
    }
}

/// Outcome of checking `C^(A×B) ≅ (C^B)^A` by enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurryReport {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Functions `A × B → C` actually enumerated.
    pub uncurried_count: u64,
    /// Functions `A → C^B` actually enumerated.
    pub curried_count: u64,
    /// `c^(a·b)`.
    pub expected: u64,
    /// `curry` is injective and `uncurry ∘ curry`, `curry ∘ uncurry` are identities.
    pub bijective: bool,
}

impl CurryReport {
    pub fn passed(&self) -> bool {
        self.uncurried_count == self.expected
            && self.curried_count == self.expected
            && self.bijective
    }
}

impl fmt::Display for CurryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "|A|={} |B|={} |C|={}", self.a, self.b, self.c)?;
        writeln!(f, "C^(AxB): {}", self.uncurried_count)?;
        writeln!(f, "(C^B)^A: {}", self.curried_count)?;
        writeln!(f, "bijection: {}", if self.bijective { "yes" } else { "no" })
    }
}

/// `f(x, y)` with tables indexed by `x * b + y`, to `g(x) = index of y ↦ f(x, y)`.
pub fn curry(f: &[usize], a: usize, b: usize, c: usize) -> Vec<usize> {
    let inner = FunctionSpace { domain: b, codomain: c };
    (0..a)
        .map(|x| inner.index(&f[x * b..(x + 1) * b]) as usize)
        .collect()
}

pub fn uncurry(g: &[usize], b: usize, c: usize) -> Vec<usize> {
    let inner = FunctionSpace { domain: b, codomain: c };
    g.iter().flat_map(|&h| inner.table(h as u64)).collect()
}

/// Enumerates both sides for set sizes in `1..=3`.
pub fn curry_check(a: usize, b: usize, c: usize) -> Result<CurryReport, HeytingError> {
    for s in [a, b, c] {
        if !(1..=3).contains(&s) {
            return Err(HeytingError::SizeOutOfRange(s));
        }
    }
    let uncurried = FunctionSpace { domain: a * b, codomain: c };
    let inner = FunctionSpace { domain: b, codomain: c };
    let curried = FunctionSpace {
        domain: a,
        codomain: inner.count() as usize,
    };
    let mut images = HashSet::new();
    let mut bijective = true;
    let mut uncurried_count = 0;
    for f in uncurried.iter() {
        uncurried_count += 1;
        let g = curry(&f, a, b, c);
        bijective &= uncurry(&g, b, c) == f;
        bijective &= images.insert(g);
    }
    let mut curried_count = 0;
    for g in curried.iter() {
        curried_count += 1;
        bijective &= curry(&uncurry(&g, b, c), a, b, c) == g;
        bijective &= images.contains(&g);
    }
    Ok(CurryReport {
        a,
        b,
        c,
        uncurried_count,
        curried_count,
        expected: (c as u64).pow((a * b) as u32),
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_three_two() {
        let r = curry_check(2, 3, 2).unwrap();
        assert_eq!((r.uncurried_count, r.curried_count), (64, 64));
        assert!(r.passed());
    }

    #[test]
    fn unit_domain() {
        for b in 1..=3 {
            for c in 1..=3 {
                let r = curry_check(1, b, c).unwrap();
                assert_eq!(r.uncurried_count, (c as u64).pow(b as u32));
                assert!(r.passed());
                // with one point in A, currying just re-reads the table
                let space = FunctionSpace { domain: b, codomain: c };
                for f in space.iter() {
                    assert_eq!(curry(&f, 1, b, c), vec![space.index(&f) as usize]);
                }
            }
        }
    }

    #[test]
    fn three_three_three() {
        let r = curry_check(3, 3, 3).unwrap();
        assert_eq!((r.uncurried_count, r.curried_count), (19683, 19683));
        assert!(r.passed());
    }

    #[test]
    fn out_of_range() {
        assert_eq!(curry_check(0, 1, 1), Err(HeytingError::SizeOutOfRange(0)));
        assert_eq!(curry_check(1, 4, 1), Err(HeytingError::SizeOutOfRange(4)));
    }
}
