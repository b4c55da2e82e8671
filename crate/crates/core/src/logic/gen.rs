//! Seeded random formulas for property suites.

use rand::Rng;

use super::Formula;

/// Random formula of depth at most `max_depth` over the given atoms.
///
/// `with_n` allows `N` nodes (one to three arguments) alongside the usual
/// connectives.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &[&str],
    max_depth: usize,
    with_n: bool,
) -> Formula {
    assert!(!atoms.is_empty(), "need at least one atom");
    let leaf = |rng: &mut R| match rng.gen_range(0..10) {
        0 => Formula::Bottom,
        1 => Formula::Top,
        _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())]),
    };
    if max_depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    let d = max_depth - 1;
    let kinds = if with_n { 5 } else { 4 };
    match rng.gen_range(0..kinds) {
        0 => Formula::not(random_formula(rng, atoms, d, with_n)),
        1 => Formula::and(
            random_formula(rng, atoms, d, with_n),
            random_formula(rng, atoms, d, with_n),
        ),
        2 => Formula::or(
            random_formula(rng, atoms, d, with_n),
            random_formula(rng, atoms, d, with_n),
        ),
        3 => Formula::implies(
            random_formula(rng, atoms, d, with_n),
            random_formula(rng, atoms, d, with_n),
        ),
        _ => {
            let k = rng.gen_range(1..=3);
            Formula::N((0..k).map(|_| random_formula(rng, atoms, d, with_n)).collect())
        }
    }
}
