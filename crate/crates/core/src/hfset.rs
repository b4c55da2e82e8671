//! Hereditarily finite sets, von Neumann ordinals, Kuratowski pairs and the
//! Boolean ring of subsets of a finite universe.
//!
//! [`HFSet`] values are hash-consed into a process-wide arena, so equality is
//! an id comparison and the ordinal `n`, whose tree form has `2^n` nodes, is
//! stored as `n` shared nodes. The arena is never observable: every operation
//! has value semantics.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, PoisonError, RwLock};

use thiserror::Error;

/// Largest ordinal the crate will construct.
pub const MAX_ORDINAL: usize = 64;

/// Largest rank accepted by [`HFSet::universe`] (`V_5` already has 2^16 members).
pub const MAX_UNIVERSE_RANK: u32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HfError {
    #[error("ordinal overflow: the supported range is 0..={max}")]
    OrdinalOverflow { max: usize },
    #[error("set is not a von Neumann ordinal: {0}")]
    NotAnOrdinal(String),
    #[error("cannot nest an empty sequence")]
    EmptyNest,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("rank {0} is too large to enumerate")]
    RankTooLarge(u32),
    #[error("subset ring universes differ")]
    UniverseMismatch,
    #[error("subset ring universe must have at most 64 distinct atoms")]
    BadUniverse,
    #[error("atom `{0}` is not in the universe")]
    UnknownAtom(String),
}

/// A hereditarily finite set.
///
/// Elements are kept duplicate-free in canonical order: by rank, then by
/// cardinality, then lexicographically on the (canonically ordered) element
/// lists. [`Ord`] on `HFSet` is exactly that order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct HFSet(u32);

struct Node {
    rank: u32,
    elems: Box<[HFSet]>,
}

struct Arena {
    nodes: Vec<Node>,
    index: HashMap<Box<[HFSet]>, HFSet>,
}

impl Arena {
    fn new() -> Self {
        let mut arena = Arena {
            nodes: Vec::new(),
            index: HashMap::new(),
        };
        arena.intern(Vec::new());
        arena
    }

    fn node(&self, s: HFSet) -> &Node {
        &self.nodes[s.0 as usize]
    }

    fn cmp(&self, a: HFSet, b: HFSet) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let (x, y) = (self.node(a), self.node(b));
        x.rank
            .cmp(&y.rank)
            .then(x.elems.len().cmp(&y.elems.len()))
            .then_with(|| {
                x.elems
                    .iter()
                    .zip(y.elems.iter())
                    .find(|(p, q)| p != q)
                    .map(|(p, q)| self.cmp(*p, *q))
                    .unwrap_or(Ordering::Equal)
            })
    }

    /// `elems` must already be sorted and deduplicated.
    fn intern(&mut self, elems: Vec<HFSet>) -> HFSet {
        if let Some(&id) = self.index.get(elems.as_slice()) {
            return id;
        }
        let rank = elems.last().map_or(0, |e| self.node(*e).rank + 1);
        let id = HFSet(u32::try_from(self.nodes.len()).expect("hereditarily finite set arena exhausted"));
        let elems: Box<[HFSet]> = elems.into_boxed_slice();
        self.nodes.push(Node {
            rank,
            elems: elems.clone(),
        });
        self.index.insert(elems, id);
        id
    }
}

fn arena() -> &'static RwLock<Arena> {
    static ARENA: OnceLock<RwLock<Arena>> = OnceLock::new();
    ARENA.get_or_init(|| RwLock::new(Arena::new()))
}

fn with_arena<T>(f: impl FnOnce(&Arena) -> T) -> T {
    let guard = arena().read().unwrap_or_else(PoisonError::into_inner);
    f(&guard)
}

impl HFSet {
    /// The empty set, `0`.
    pub fn empty() -> HFSet {
        HFSet(0)
    }

    pub fn from_elems<I: IntoIterator<Item = HFSet>>(elems: I) -> HFSet {
        let mut elems: Vec<HFSet> = elems.into_iter().collect();
        with_arena(|a| elems.sort_by(|x, y| a.cmp(*x, *y)));
        elems.dedup();
        let mut guard = arena().write().unwrap_or_else(PoisonError::into_inner);
        guard.intern(elems)
    }

    pub fn singleton(x: HFSet) -> HFSet {
        HFSet::from_elems([x])
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> Vec<HFSet> {
        with_arena(|a| a.node(*self).elems.to_vec())
    }

    pub fn len(&self) -> usize {
        with_arena(|a| a.node(*self).elems.len())
    }

    pub fn is_empty(&self) -> bool {
        *self == HFSet::empty()
    }

    /// Von Neumann rank: 0 for the empty set, otherwise one more than the
    /// largest rank of an element.
    pub fn rank(&self) -> u32 {
        with_arena(|a| a.node(*self).rank)
    }

    pub fn contains(&self, x: &HFSet) -> bool {
        with_arena(|a| {
            a.node(*self)
                .elems
                .binary_search_by(|e| a.cmp(*e, *x))
                .is_ok()
        })
    }

    pub fn union(&self, other: &HFSet) -> HFSet {
        let mut elems = self.elements();
        elems.extend(other.elements());
        HFSet::from_elems(elems)
    }

    pub fn is_subset(&self, other: &HFSet) -> bool {
        self.elements().iter().all(|e| other.contains(e))
    }

    /// Every element is also a subset.
    pub fn is_transitive(&self) -> bool {
        self.elements().iter().all(|e| e.is_subset(self))
    }

    /// True when the set is a von Neumann ordinal, i.e. `{0, 1, ..., k-1}`.
    ///
    /// Ordinal `i` is the unique ordinal of rank `i`, so the canonically
    /// ordered elements of an ordinal of cardinality `k` are exactly the
    /// ordinals `0..k`.
    pub fn is_ordinal(&self) -> bool {
        let elems = self.elements();
        let mut prev = HFSet::empty();
        for (i, e) in elems.iter().enumerate() {
            let expected = if i == 0 {
                HFSet::empty()
            } else {
                prev.union(&HFSet::singleton(prev))
            };
            if *e != expected {
                return false;
            }
            prev = expected;
        }
        true
    }

    /// All hereditarily finite sets of rank at most `rank`, in canonical order.
    pub fn universe(rank: u32) -> Result<Vec<HFSet>, HfError> {
        if rank > MAX_UNIVERSE_RANK {
            return Err(HfError::RankTooLarge(rank));
        }
        let mut level = vec![HFSet::empty()];
        for _ in 0..rank {
            let n = level.len();
            level = (0u64..1 << n)
                .map(|mask| {
                    HFSet::from_elems((0..n).filter(|i| mask >> i & 1 == 1).map(|i| level[i]))
                })
                .collect();
        }
        level.sort();
        Ok(level)
    }

    /// Length in bytes of the canonical serialization, without building it.
    pub fn serialized_len(&self) -> u128 {
        fn go(a: &Arena, s: HFSet, memo: &mut HashMap<HFSet, u128>) -> u128 {
            if let Some(&n) = memo.get(&s) {
                return n;
            }
            let elems = &a.node(s).elems;
            let commas = elems.len().saturating_sub(1) as u128;
            let total = elems
                .iter()
                .fold(2 + commas, |acc, e| acc.saturating_add(go(a, *e, memo)));
            memo.insert(s, total);
            total
        }
        with_arena(|a| go(a, *self, &mut HashMap::new()))
    }
}

impl Default for HFSet {
    fn default() -> Self {
        HFSet::empty()
    }
}

impl PartialOrd for HFSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HFSet {
    fn cmp(&self, other: &Self) -> Ordering {
        with_arena(|a| a.cmp(*self, *other))
    }
}

impl fmt::Display for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(a: &Arena, s: HFSet, out: &mut String) {
            out.push('{');
            for (i, e) in a.node(s).elems.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                go(a, *e, out);
            }
            out.push('}');
        }
        let mut out = String::new();
        with_arena(|a| go(a, *self, &mut out));
        f.write_str(&out)
    }
}

impl fmt::Debug for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HFSet {
    type Err = HfError;

    /// Parses `{}` / `{e1,e2,...}`. Whitespace is ignored and element order
    /// or repetition in the input does not matter.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        struct P<'a> {
            bytes: &'a [u8],
            pos: usize,
        }
        impl P<'_> {
            fn skip_ws(&mut self) {
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                    self.pos += 1;
                }
            }
            fn err(&self, msg: &str) -> HfError {
                HfError::Parse {
                    pos: self.pos,
                    msg: msg.to_string(),
                }
            }
            fn expect(&mut self, c: u8) -> Result<(), HfError> {
                self.skip_ws();
                if self.bytes.get(self.pos) == Some(&c) {
                    self.pos += 1;
                    Ok(())
                } else {
                    Err(self.err(&format!("expected `{}`", c as char)))
                }
            }
            fn set(&mut self) -> Result<HFSet, HfError> {
                self.expect(b'{')?;
                let mut elems = Vec::new();
                self.skip_ws();
                if self.bytes.get(self.pos) == Some(&b'}') {
                    self.pos += 1;
                    return Ok(HFSet::empty());
                }
                loop {
                    elems.push(self.set()?);
                    self.skip_ws();
                    match self.bytes.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            return Ok(HFSet::from_elems(elems));
                        }
                        _ => return Err(self.err("expected `,` or `}`")),
                    }
                }
            }
        }
        let mut p = P {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let set = p.set()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(set)
    }
}

/// A von Neumann ordinal in the range `0..=MAX_ORDINAL`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Ordinal(HFSet);

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal(HFSet::empty())
    }

    pub fn from_nat(n: usize) -> Result<Ordinal, HfError> {
        if n > MAX_ORDINAL {
            return Err(HfError::OrdinalOverflow { max: MAX_ORDINAL });
        }
        let mut o = Ordinal::zero();
        for _ in 0..n {
            o = o.succ()?;
        }
        Ok(o)
    }

    /// `o ∪ {o}`.
    pub fn succ(&self) -> Result<Ordinal, HfError> {
        if self.to_nat() >= MAX_ORDINAL {
            return Err(HfError::OrdinalOverflow { max: MAX_ORDINAL });
        }
        Ok(Ordinal(self.0.union(&HFSet::singleton(self.0))))
    }

    /// An ordinal's cardinality is its natural-number value.
    pub fn to_nat(&self) -> usize {
        self.0.len()
    }

    /// `a ≤ b` iff `a ∈ b` or `a = b`.
    pub fn leq(&self, other: &Ordinal) -> bool {
        self == other || other.0.contains(&self.0)
    }

    pub fn as_set(&self) -> HFSet {
        self.0
    }
}

impl TryFrom<HFSet> for Ordinal {
    type Error = HfError;

    fn try_from(set: HFSet) -> Result<Self, Self::Error> {
        if set.len() > MAX_ORDINAL {
            return Err(HfError::OrdinalOverflow { max: MAX_ORDINAL });
        }
        if set.is_ordinal() {
            Ok(Ordinal(set))
        } else {
            Err(HfError::NotAnOrdinal(set.to_string()))
        }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Kuratowski pair `{{a},{a,b}}`.
pub fn pair(a: HFSet, b: HFSet) -> HFSet {
    HFSet::from_elems([HFSet::singleton(a), HFSet::from_elems([a, b])])
}

/// Inverse of [`pair`]; `None` if `p` is not a Kuratowski pair.
pub fn unpair(p: &HFSet) -> Option<(HFSet, HFSet)> {
    match p.elements().as_slice() {
        [only] => match only.elements().as_slice() {
            [a] => Some((*a, *a)),
            _ => None,
        },
        [small, big] => {
            let a = match small.elements().as_slice() {
                [a] => *a,
                _ => return None,
            };
            match big.elements().as_slice() {
                [x, y] if *x == a => Some((a, *y)),
                [x, y] if *y == a => Some((a, *x)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Right-nested tuple: `nest([x]) = x`, `nest([x, rest..]) = pair(x, nest(rest))`.
pub fn nest(seq: &[HFSet]) -> Result<HFSet, HfError> {
    let (last, init) = seq.split_last().ok_or(HfError::EmptyNest)?;
    Ok(init.iter().rev().fold(*last, |acc, x| pair(*x, acc)))
}

/// An element of the Boolean ring of subsets of a finite universe: addition is
/// symmetric difference, multiplication is intersection.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubsetRing {
    universe: Vec<String>,
    bits: u64,
}

impl SubsetRing {
    fn check_universe(universe: &[String]) -> Result<(), HfError> {
        let mut sorted: Vec<&String> = universe.iter().collect();
        sorted.sort();
        sorted.dedup();
        if universe.len() > 64 || sorted.len() != universe.len() {
            return Err(HfError::BadUniverse);
        }
        Ok(())
    }

    pub fn new<S: AsRef<str>>(universe: &[String], members: &[S]) -> Result<SubsetRing, HfError> {
        Self::check_universe(universe)?;
        let mut bits = 0u64;
        for m in members {
            let i = universe
                .iter()
                .position(|u| u == m.as_ref())
                .ok_or_else(|| HfError::UnknownAtom(m.as_ref().to_string()))?;
            bits |= 1 << i;
        }
        Ok(SubsetRing {
            universe: universe.to_vec(),
            bits,
        })
    }

    /// Every subset of `universe`, in bit-mask order.
    pub fn all(universe: &[String]) -> Result<Vec<SubsetRing>, HfError> {
        Self::check_universe(universe)?;
        if universe.len() > 20 {
            return Err(HfError::BadUniverse);
        }
        Ok((0u64..1 << universe.len())
            .map(|bits| SubsetRing {
                universe: universe.to_vec(),
                bits,
            })
            .collect())
    }

    pub fn zero(universe: &[String]) -> Result<SubsetRing, HfError> {
        Self::new::<&str>(universe, &[])
    }

    pub fn one(universe: &[String]) -> Result<SubsetRing, HfError> {
        let mut r = Self::zero(universe)?;
        r.bits = if universe.len() == 64 {
            u64::MAX
        } else {
            (1 << universe.len()) - 1
        };
        Ok(r)
    }

    fn same_universe(&self, other: &SubsetRing) -> Result<(), HfError> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(HfError::UniverseMismatch)
        }
    }

    pub fn add(&self, other: &SubsetRing) -> Result<SubsetRing, HfError> {
        self.same_universe(other)?;
        Ok(SubsetRing {
            universe: self.universe.clone(),
            bits: self.bits ^ other.bits,
        })
    }

    pub fn mul(&self, other: &SubsetRing) -> Result<SubsetRing, HfError> {
        self.same_universe(other)?;
        Ok(SubsetRing {
            universe: self.universe.clone(),
            bits: self.bits & other.bits,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn members(&self) -> Vec<&str> {
        self.universe
            .iter()
            .enumerate()
            .filter(|(i, _)| self.bits >> i & 1 == 1)
            .map(|(_, u)| u.as_str())
            .collect()
    }
}

impl fmt::Display for SubsetRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: usize) -> Ordinal {
        Ordinal::from_nat(n).unwrap()
    }

    #[test]
    fn empty_set() {
        assert_eq!(HFSet::empty().to_string(), "{}");
        assert_eq!(HFSet::empty(), HFSet::from_elems([]));
        assert!(HFSet::empty().is_ordinal());
    }

    #[test]
    fn small_ordinals_display() {
        assert_eq!(ord(1).to_string(), "{{}}");
        assert_eq!(ord(2).to_string(), "{{},{{}}}");
        assert_eq!(ord(3).to_string(), "{{},{{}},{{},{{}}}}");
    }

    #[test]
    fn succ_caps_at_max() {
        let top = ord(MAX_ORDINAL);
        assert_eq!(top.to_nat(), MAX_ORDINAL);
        assert_eq!(
            top.succ(),
            Err(HfError::OrdinalOverflow { max: MAX_ORDINAL })
        );
        assert!(Ordinal::from_nat(MAX_ORDINAL + 1).is_err());
    }

    #[test]
    fn large_ordinal_is_cheap() {
        let o = ord(MAX_ORDINAL);
        assert_eq!(o.as_set().rank(), MAX_ORDINAL as u32);
        assert!(o.as_set().is_ordinal());
        // 2^64 braces in tree form
        assert!(o.as_set().serialized_len() > u64::MAX as u128);
    }

    #[test]
    fn leq_basics() {
        assert!(ord(2).leq(&ord(3)));
        assert!(!ord(3).leq(&ord(2)));
        for n in 0..10 {
            assert!(ord(n).leq(&ord(n)));
        }
    }

    #[test]
    fn leq_is_total_order_on_small_ordinals() {
        let os: Vec<Ordinal> = (0..=10).map(ord).collect();
        for a in &os {
            for b in &os {
                assert!(a.leq(b) || b.leq(a));
                if a.leq(b) && b.leq(a) {
                    assert_eq!(a, b);
                }
                assert_eq!(a.leq(b), a.to_nat() <= b.to_nat());
                for c in &os {
                    if a.leq(b) && b.leq(c) {
                        assert!(a.leq(c));
                    }
                }
            }
        }
    }

    #[test]
    fn nat_round_trip() {
        for k in 0..=MAX_ORDINAL {
            assert_eq!(ord(k).to_nat(), k);
        }
    }

    #[test]
    fn ordinal_check_matches_transitive_definition() {
        // an ordinal is a transitive set of transitive sets (foundation holds)
        for s in HFSet::universe(3).unwrap() {
            let by_def = s.is_transitive() && s.elements().iter().all(HFSet::is_transitive);
            assert_eq!(s.is_ordinal(), by_def, "{s}");
        }
    }

    #[test]
    fn not_an_ordinal() {
        let s: HFSet = "{{{}}}".parse().unwrap();
        assert!(matches!(Ordinal::try_from(s), Err(HfError::NotAnOrdinal(_))));
        assert_eq!(Ordinal::try_from(ord(3).as_set()).unwrap(), ord(3));
    }

    #[test]
    fn universe_sizes() {
        let sizes: Vec<usize> = (0..=3).map(|r| HFSet::universe(r).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 16]);
        assert!(HFSet::universe(5).is_err());
    }

    #[test]
    fn canonical_order_is_rank_then_size() {
        let u = HFSet::universe(3).unwrap();
        for w in u.windows(2) {
            let (a, b) = (w[0], w[1]);
            assert!(a < b);
            assert!((a.rank(), a.len()) <= (b.rank(), b.len()));
        }
    }

    #[test]
    fn parse_is_order_insensitive() {
        let a: HFSet = "{ {{}}, {} }".parse().unwrap();
        let b: HFSet = "{{},{{}},{}}".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, ord(2).as_set());
        assert_eq!(a.to_string(), "{{},{{}}}");
        assert!("{".parse::<HFSet>().is_err());
        assert!("{}}".parse::<HFSet>().is_err());
    }

    #[test]
    fn pair_collapses_on_equal_components() {
        let z = HFSet::empty();
        assert_eq!(pair(z, z).to_string(), "{{{}}}");
        assert_ne!(pair(z, ord(1).as_set()), pair(ord(1).as_set(), z));
    }

    #[test]
    fn pair_injective_and_projections_over_rank_two() {
        let u = HFSet::universe(2).unwrap();
        let mut seen = std::collections::HashMap::new();
        for &a in &u {
            for &b in &u {
                let p = pair(a, b);
                assert_eq!(unpair(&p), Some((a, b)));
                if let Some(prev) = seen.insert(p, (a, b)) {
                    panic!("pair collision {prev:?} and {:?}", (a, b));
                }
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn unpair_rejects_non_pairs() {
        assert_eq!(unpair(&ord(3).as_set()), None);
        assert_eq!(unpair(&HFSet::empty()), None);
    }

    #[test]
    fn nest_shapes() {
        let (one, two, three) = (ord(1).as_set(), ord(2).as_set(), ord(3).as_set());
        assert_eq!(nest(&[three, two, one]).unwrap(), pair(three, pair(two, one)));
        assert_eq!(nest(&[two]).unwrap(), two);
        assert_eq!(nest(&[]), Err(HfError::EmptyNest));
    }

    fn atoms() -> Vec<String> {
        vec!["1".into(), "2".into(), "3".into()]
    }

    #[test]
    fn ring_char_two_idempotent_commutative() {
        let all = SubsetRing::all(&atoms()).unwrap();
        assert_eq!(all.len(), 8);
        for x in &all {
            assert!(x.add(x).unwrap().is_zero());
            assert_eq!(&x.mul(x).unwrap(), x);
            for y in &all {
                assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap());
            }
        }
    }

    #[test]
    fn ring_mismatch_and_unknown_atom() {
        let a = SubsetRing::new(&atoms(), &["1"]).unwrap();
        let b = SubsetRing::new(&["x".to_string()], &["x"]).unwrap();
        assert_eq!(a.add(&b), Err(HfError::UniverseMismatch));
        assert_eq!(
            SubsetRing::new(&atoms(), &["9"]),
            Err(HfError::UnknownAtom("9".into()))
        );
        assert_eq!(a.to_string(), "{1}");
        assert_eq!(SubsetRing::one(&atoms()).unwrap().to_string(), "{1,2,3}");
    }
}
