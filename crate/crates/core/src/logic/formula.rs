use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::LogicError;

/// Propositional formula over named atoms, including the variadic joint-denial
/// connective `N`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Bottom,
    Top,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// Joint denial: true iff every argument is false. Never empty.
    N(Vec<Formula>),
}

/// True if `name` matches `[a-z][a-z0-9_]*`.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Builds `N(args..)`; errors on an empty argument list.
    pub fn n(args: Vec<Formula>) -> Result<Formula, LogicError> {
        if args.is_empty() {
            Err(LogicError::EmptyN)
        } else {
            Ok(Formula::N(args))
        }
    }

    /// Distinct atom names, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Bottom | Formula::Top => {}
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::N(args) => args.iter().for_each(|f| f.collect_atoms(out)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::N(args) => 1 + args.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    /// Number of atom occurrences equal to `name`.
    pub fn count_atom(&self, name: &str) -> usize {
        match self {
            Formula::Atom(a) => usize::from(a == name),
            Formula::Bottom | Formula::Top => 0,
            Formula::Not(f) => f.count_atom(name),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.count_atom(name) + b.count_atom(name)
            }
            Formula::N(args) => args.iter().map(|f| f.count_atom(name)).sum(),
        }
    }

    /// Replaces every atom for which `f` returns `Some`.
    pub fn map_atoms(&self, f: &impl Fn(&str) -> Option<Formula>) -> Formula {
        match self {
            Formula::Atom(a) => f(a).unwrap_or_else(|| self.clone()),
            Formula::Bottom | Formula::Top => self.clone(),
            Formula::Not(g) => Formula::not(g.map_atoms(f)),
            Formula::And(a, b) => Formula::and(a.map_atoms(f), b.map_atoms(f)),
            Formula::Or(a, b) => Formula::or(a.map_atoms(f), b.map_atoms(f)),
            Formula::Implies(a, b) => Formula::implies(a.map_atoms(f), b.map_atoms(f)),
            Formula::N(args) => Formula::N(args.iter().map(|g| g.map_atoms(f)).collect()),
        }
    }

    /// Replaces every `N(f1..fk)` by `~f1 & .. & ~fk` (left-nested).
    pub fn expand_n(&self) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => self.clone(),
            Formula::Not(f) => Formula::not(f.expand_n()),
            Formula::And(a, b) => Formula::and(a.expand_n(), b.expand_n()),
            Formula::Or(a, b) => Formula::or(a.expand_n(), b.expand_n()),
            Formula::Implies(a, b) => Formula::implies(a.expand_n(), b.expand_n()),
            Formula::N(args) => args
                .iter()
                .map(|f| Formula::not(f.expand_n()))
                .reduce(Formula::and)
                .expect("N has at least one argument"),
        }
    }

    /// True when the formula is built from atoms and `N` only.
    pub fn is_n_only(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::N(args) => args.iter().all(Formula::is_n_only),
            _ => false,
        }
    }

    /// Classical evaluation; every atom must be bound.
    pub fn eval_classical(&self, v: &BTreeMap<String, bool>) -> Result<bool, LogicError> {
        Ok(match self {
            Formula::Atom(a) => *v.get(a).ok_or_else(|| LogicError::UnboundAtom(a.clone()))?,
            Formula::Bottom => false,
            Formula::Top => true,
            Formula::Not(f) => !f.eval_classical(v)?,
            Formula::And(a, b) => a.eval_classical(v)? & b.eval_classical(v)?,
            Formula::Or(a, b) => a.eval_classical(v)? | b.eval_classical(v)?,
            Formula::Implies(a, b) => !a.eval_classical(v)? | b.eval_classical(v)?,
            Formula::N(args) => {
                let mut all_false = true;
                for f in args {
                    all_false &= !f.eval_classical(v)?;
                }
                all_false
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }

    fn write_prec(&self, out: &mut String, min: u8) {
        let paren = self.precedence() < min;
        if paren {
            out.push('(');
        }
        match self {
            Formula::Atom(a) => out.push_str(a),
            Formula::Bottom => out.push('0'),
            Formula::Top => out.push('1'),
            Formula::Not(f) => {
                out.push('~');
                f.write_prec(out, 3);
            }
            // `&` and `|` associate to the left, `->` to the right
            Formula::And(a, b) => {
                a.write_prec(out, 2);
                out.push_str(" & ");
                b.write_prec(out, 3);
            }
            Formula::Or(a, b) => {
                a.write_prec(out, 1);
                out.push_str(" | ");
                b.write_prec(out, 2);
            }
            Formula::Implies(a, b) => {
                a.write_prec(out, 1);
                out.push_str(" -> ");
                b.write_prec(out, 0);
            }
            Formula::N(args) => {
                out.push_str("N(");
                for (i, f) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    f.write_prec(out, 0);
                }
                out.push(')');
            }
        }
        if paren {
            out.push(')');
        }
    }
}

/// Pretty-prints in the formula DSL with the minimum parentheses needed to
/// parse back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_prec(&mut out, 0);
        f.write_str(&out)
    }
}

/// Classical truth table over the sorted atom list.
///
/// Row `i` assigns to atom `j` the bit `(i >> (k-1-j)) & 1`, where `k` is the
/// number of atoms: the first atom is the most significant bit, so rows count
/// up in binary from all-false to all-true.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruthTable {
    pub atoms: Vec<String>,
    pub rows: Vec<bool>,
}

/// Tables wider than this are refused.
pub const MAX_TABLE_ATOMS: usize = 20;

impl TruthTable {
    /// Table of `f` over its own atoms.
    pub fn of(f: &Formula) -> Result<TruthTable, LogicError> {
        let atoms: Vec<String> = f.atoms().into_iter().collect();
        TruthTable::over(f, &atoms)
    }

    /// Table of `f` over a given (sorted, duplicate-free) atom list, which
    /// must include every atom of `f`.
    pub fn over(f: &Formula, atoms: &[String]) -> Result<TruthTable, LogicError> {
        if atoms.len() > MAX_TABLE_ATOMS {
            return Err(LogicError::TooManyAtoms(atoms.len()));
        }
        let k = atoms.len();
        let rows = (0usize..1 << k)
            .map(|i| f.eval_classical(&Self::assignment(atoms, i)))
            .collect::<Result<Vec<bool>, _>>()?;
        Ok(TruthTable {
            atoms: atoms.to_vec(),
            rows,
        })
    }

    /// The assignment of row `i`.
    pub fn assignment(atoms: &[String], i: usize) -> BTreeMap<String, bool> {
        let k = atoms.len();
        atoms
            .iter()
            .enumerate()
            .map(|(j, a)| (a.clone(), (i >> (k - 1 - j)) & 1 == 1))
            .collect()
    }

    pub fn is_tautology(&self) -> bool {
        self.rows.iter().all(|r| *r)
    }
}

/// Renders one header line (atoms then the formula column) and one line per
/// row, bits separated by spaces.
impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut header: Vec<&str> = self.atoms.iter().map(String::as_str).collect();
        header.push("|");
        header.push("out");
        writeln!(f, "{}", header.join(" "))?;
        for (i, out) in self.rows.iter().enumerate() {
            let v = Self::assignment(&self.atoms, i);
            let mut cells: Vec<String> = self
                .atoms
                .iter()
                .map(|a| format!("{:>w$}", u8::from(v[a]), w = a.len()))
                .collect();
            cells.push("|".into());
            cells.push(format!("{:>3}", u8::from(*out)));
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
