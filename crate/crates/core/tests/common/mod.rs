//! Independent reference implementations used as oracles. None of these
//! call the code under test beyond reading structures.

#![allow(dead_code)]

use std::collections::BTreeMap;

use context_calculus::heyting::FinitePoset;
use context_calculus::logic::Formula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Forcing by the textbook clauses, quantifying over successors directly.
pub fn force(order: &FinitePoset, val: &BTreeMap<String, u32>, w: usize, f: &Formula) -> bool {
    let above = |w: usize| (0..order.len()).filter(move |&v| order.leq(w, v));
    match f {
        Formula::Atom(a) => val[a] >> w & 1 == 1,
        Formula::Bottom => false,
        Formula::Top => true,
        Formula::And(a, b) => force(order, val, w, a) && force(order, val, w, b),
        Formula::Or(a, b) => force(order, val, w, a) || force(order, val, w, b),
        Formula::Not(a) => above(w).all(|v| !force(order, val, v, a)),
        Formula::Implies(a, b) => {
            above(w).all(|v| !force(order, val, v, a) || force(order, val, v, b))
        }
        Formula::N(args) => above(w).all(|v| args.iter().all(|a| !force(order, val, v, a))),
    }
}

/// Upward-closed subsets of `order`, found by testing every subset.
pub fn upsets(order: &FinitePoset) -> Vec<u32> {
    let n = order.len();
    (0u32..1 << n)
        .filter(|&m| {
            (0..n).all(|a| m >> a & 1 == 0 || (0..n).all(|b| !order.leq(a, b) || m >> b & 1 == 1))
        })
        .collect()
}

/// A random persistent valuation over a random poset from the enumeration.
pub fn random_model(rng: &mut ChaCha8Rng, max_worlds: usize, atoms: &[&str]) -> (FinitePoset, BTreeMap<String, u32>) {
    let n = rng.gen_range(1..=max_worlds);
    let posets = FinitePoset::enumerate(n);
    let order = posets[rng.gen_range(0..posets.len())].clone();
    let ups = upsets(&order);
    let val = atoms
        .iter()
        .map(|a| (a.to_string(), ups[rng.gen_range(0..ups.len())]))
        .collect();
    (order, val)
}
