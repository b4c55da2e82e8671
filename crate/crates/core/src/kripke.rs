//! Intuitionistic Kripke semantics over finite partially ordered frames:
//! forcing, frame validity, canonical countermodel search and the
//! agreement check against downset algebras.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::heyting::{FinitePoset, HeytingAlgebra, HeytingError};
use crate::logic::Formula;

/// Most worlds accepted by [`valid_in_frame`].
pub const MAX_VALIDITY_WORLDS: usize = 6;
/// Most distinct atoms accepted by validity checks and countermodel search.
pub const MAX_ATOMS: usize = 4;
/// Most worlds accepted by [`countermodel_search`].
pub const MAX_SEARCH_WORLDS: usize = 5;
/// Bounds for [`correspondence_check`].
pub const MAX_CORRESPONDENCE_ELEMENTS: usize = 3;
pub const MAX_CORRESPONDENCE_ATOMS: usize = 2;

const MAX_WORLDS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KripkeError {
    #[error("unknown world {0}")]
    UnknownWorld(usize),
    #[error("atom `{0}` has no valuation")]
    UnboundAtom(String),
    #[error("valuation of `{0}` is not upward closed")]
    NotPersistent(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("frame semantics and algebraic semantics disagree on {0}")]
    Disagreement(String),
    #[error(transparent)]
    Heyting(#[from] HeytingError),
}

/// Worlds ordered by accessibility (a partial order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KripkeFrame {
    order: FinitePoset,
}

impl KripkeFrame {
    pub fn new(order: FinitePoset) -> Result<KripkeFrame, KripkeError> {
        if order.len() > MAX_WORLDS {
            return Err(KripkeError::Budget(format!(
                "{} worlds (at most {MAX_WORLDS})",
                order.len()
            )));
        }
        Ok(KripkeFrame { order })
    }

    /// Same order, worlds relabeled `w0, w1, ...`.
    pub fn with_world_names(order: &FinitePoset) -> Result<KripkeFrame, KripkeError> {
        let labels = (0..order.len()).map(|i| format!("w{i}")).collect();
        KripkeFrame::new(order.with_labels(labels)?)
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn world(&self, w: usize) -> &str {
        self.order.label(w)
    }

    /// Upward-closed world sets as bit masks, ascending.
    pub fn upsets(&self) -> Vec<u32> {
        self.order.upsets().expect("frames have at most 32 worlds")
    }

    fn all(&self) -> u32 {
        if self.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.len()) - 1
        }
    }

    fn is_upset(&self, m: u32) -> bool {
        (0..self.len()).all(|w| m >> w & 1 == 0 || self.order.up(w) & !m == 0)
    }
}

/// A frame with a persistent valuation of atoms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KripkeModel {
    frame: KripkeFrame,
    valuation: BTreeMap<String, u32>,
}

impl KripkeModel {
    /// `valuation` maps each atom to the bit mask of worlds where it holds;
    /// every mask must be upward closed.
    pub fn new(
        frame: KripkeFrame,
        valuation: BTreeMap<String, u32>,
    ) -> Result<KripkeModel, KripkeError> {
        for (atom, &m) in &valuation {
            if m & !frame.all() != 0 || !frame.is_upset(m) {
                return Err(KripkeError::NotPersistent(atom.clone()));
            }
        }
        Ok(KripkeModel { frame, valuation })
    }

    pub fn frame(&self) -> &KripkeFrame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, u32> {
        &self.valuation
    }

    /// Worlds forcing `f`, as a bit mask.
    pub fn truth_set(&self, f: &Formula) -> Result<u32, KripkeError> {
        self.eval(&f.expand_n())
    }

    fn eval(&self, f: &Formula) -> Result<u32, KripkeError> {
        Ok(match f {
            Formula::Atom(a) => *self
                .valuation
                .get(a)
                .ok_or_else(|| KripkeError::UnboundAtom(a.clone()))?,
            Formula::Bottom => 0,
            Formula::Top => self.frame.all(),
            Formula::And(a, b) => self.eval(a)? & self.eval(b)?,
            Formula::Or(a, b) => self.eval(a)? | self.eval(b)?,
            Formula::Not(a) => self.implication(self.eval(a)?, 0),
            Formula::Implies(a, b) => self.implication(self.eval(a)?, self.eval(b)?),
            Formula::N(_) => unreachable!("N is expanded before evaluation"),
        })
    }

    /// `{ w : every v ≥ w in A is in B }`.
    fn implication(&self, a: u32, b: u32) -> u32 {
        (0..self.frame.len())
            .filter(|&w| self.frame.order.up(w) & a & !b == 0)
            .fold(0, |m, w| m | 1 << w)
    }

    pub fn forces(&self, w: usize, f: &Formula) -> Result<bool, KripkeError> {
        if w >= self.frame.len() {
            return Err(KripkeError::UnknownWorld(w));
        }
        Ok(self.truth_set(f)? >> w & 1 == 1)
    }
}

/// Countermodel display: cover edges, valuation lines, refuting world.
impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = self.frame.order();
        writeln!(f, "worlds: {}", order.labels().join(" "))?;
        for (a, b) in order.hasse_edges() {
            writeln!(f, "{} < {}", order.label(a), order.label(b))?;
        }
        for (atom, m) in &self.valuation {
            let worlds: Vec<&str> = (0..order.len())
                .filter(|w| m >> w & 1 == 1)
                .map(|w| order.label(w))
                .collect();
            writeln!(f, "{atom}: {{{}}}", worlds.join(","))?;
        }
        Ok(())
    }
}

fn check_atoms(f: &Formula, max: usize) -> Result<Vec<String>, KripkeError> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    if atoms.len() > max {
        return Err(KripkeError::Budget(format!(
            "{} atoms (at most {max})",
            atoms.len()
        )));
    }
    Ok(atoms)
}

/// Visits valuations of `atoms` by upsets in lexicographic order (first
/// atom most significant, upsets ascending by mask) until `visit` returns
/// `Some`.
fn first_valuation<T>(
    frame: &KripkeFrame,
    atoms: &[String],
    mut visit: impl FnMut(BTreeMap<String, u32>) -> Option<T>,
) -> Option<T> {
    let ups = frame.upsets();
    let mut idx = vec![0usize; atoms.len()];
    loop {
        let v = atoms
            .iter()
            .zip(&idx)
            .map(|(a, &i)| (a.clone(), ups[i]))
            .collect();
        if let Some(t) = visit(v) {
            return Some(t);
        }
        // odometer, last atom fastest
        let mut k = atoms.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < ups.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// A model and a world that does not force the formula.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Countermodel {
    pub model: KripkeModel,
    pub world: usize,
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.model)?;
        writeln!(f, "refuted at: {}", self.model.frame().world(self.world))
    }
}

/// First refuting valuation on a fixed frame, refuted at the lowest-index
/// world.
fn refute_on(frame: &KripkeFrame, f: &Formula, atoms: &[String]) -> Option<Countermodel> {
    let expanded = f.expand_n();
    first_valuation(frame, atoms, |v| {
        let model = KripkeModel {
            frame: frame.clone(),
            valuation: v,
        };
        let forced = model.eval(&expanded).expect("all atoms valued");
        let missing = !forced & frame.all();
        (missing != 0).then(|| Countermodel {
            world: missing.trailing_zeros() as usize,
            model,
        })
    })
}

/// True iff `f` is forced at every world under every persistent valuation.
pub fn valid_in_frame(frame: &KripkeFrame, f: &Formula) -> Result<bool, KripkeError> {
    if frame.len() > MAX_VALIDITY_WORLDS {
        return Err(KripkeError::Budget(format!(
            "{} worlds (at most {MAX_VALIDITY_WORLDS})",
            frame.len()
        )));
    }
    let atoms = check_atoms(f, MAX_ATOMS)?;
    Ok(refute_on(frame, f, &atoms).is_none())
}

/// Searches frames of `1..=max_worlds` worlds for a countermodel.
///
/// Canonical order: fewer worlds first; for a given size, frames in
/// lexicographic order of their row-major order matrices (see
/// [`FinitePoset::enumerate`]); on a frame, valuations in lexicographic order
/// of their upset masks. The first countermodel in that order is returned,
/// independent of how the frames are split across threads.
pub fn countermodel_search(
    f: &Formula,
    max_worlds: usize,
) -> Result<Option<Countermodel>, KripkeError> {
    if max_worlds > MAX_SEARCH_WORLDS {
        return Err(KripkeError::Budget(format!(
            "{max_worlds} worlds (at most {MAX_SEARCH_WORLDS})"
        )));
    }
    let atoms = check_atoms(f, MAX_ATOMS)?;
    for n in 1..=max_worlds {
        let frames = FinitePoset::enumerate(n)
            .iter()
            .map(KripkeFrame::with_world_names)
            .collect::<Result<Vec<_>, _>>()?;
        let found = frames
            .par_iter()
            .find_map_first(|frame| refute_on(frame, f, &atoms));
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Checks that validity on the frame of `p` agrees with validity in
/// `downset_algebra(p)`, and returns the shared verdict.
///
/// Downsets of `p` are the upsets of its order dual, so the frame used is
/// `p` reversed.
pub fn correspondence_check(p: &FinitePoset, f: &Formula) -> Result<bool, KripkeError> {
    if p.len() > MAX_CORRESPONDENCE_ELEMENTS {
        return Err(KripkeError::Budget(format!(
            "{} elements (at most {MAX_CORRESPONDENCE_ELEMENTS})",
            p.len()
        )));
    }
    check_atoms(f, MAX_CORRESPONDENCE_ATOMS)?;
    let frame = KripkeFrame::with_world_names(&p.dual())?;
    let by_frame = valid_in_frame(&frame, f)?;
    let by_algebra = HeytingAlgebra::downset_algebra(p)?.validates(f)?;
    if by_frame != by_algebra {
        return Err(KripkeError::Disagreement(format!("{f} over {p:?}")));
    }
    Ok(by_frame)
}
