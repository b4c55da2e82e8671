//! Translation into joint-denial (`N`) normal form and the search that
//! realizes all sixteen binary truth functions with `N` alone.

use std::collections::BTreeMap;
use std::fmt;

use super::{Formula, LogicError, TruthTable};

/// Atom used for constants when the input formula has no atoms of its own.
pub const RESERVED_ATOM: &str = "p0";

fn n1(f: Formula) -> Formula {
    Formula::N(vec![f])
}

fn n2(a: Formula, b: Formula) -> Formula {
    Formula::N(vec![a, b])
}

/// Rewrites `f` into an equivalent formula built only from atoms and `N`:
///
/// ```text
/// ~a     => N(a)
/// a | b  => N(N(a, b))
/// a & b  => N(N(a), N(b))
/// a -> b => N(N(N(a), b))
/// 0      => N(p, N(p))
/// 1      => N(N(p, N(p)))
/// ```
///
/// where `p` is the alphabetically first atom of `f`, or [`RESERVED_ATOM`]
/// for a closed formula.
pub fn to_n_form(f: &Formula) -> Formula {
    let anchor = f
        .atoms()
        .into_iter()
        .next()
        .unwrap_or_else(|| RESERVED_ATOM.to_string());
    rewrite(f, &Formula::Atom(anchor))
}

fn falsum(p: &Formula) -> Formula {
    n2(p.clone(), n1(p.clone()))
}

fn rewrite(f: &Formula, p: &Formula) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Bottom => falsum(p),
        Formula::Top => n1(falsum(p)),
        Formula::Not(a) => n1(rewrite(a, p)),
        Formula::Or(a, b) => n1(n2(rewrite(a, p), rewrite(b, p))),
        Formula::And(a, b) => n2(n1(rewrite(a, p)), n1(rewrite(b, p))),
        Formula::Implies(a, b) => n1(n2(n1(rewrite(a, p)), rewrite(b, p))),
        Formula::N(args) => Formula::N(args.iter().map(|g| rewrite(g, p)).collect()),
    }
}

/// Conventional names of the sixteen binary truth functions, indexed by the
/// 4-bit code whose bit `i` is the output on row `i` of the `(p, q)` table
/// (rows `00, 01, 10, 11`).
pub const BINARY_FUNCTION_NAMES: [&str; 16] = [
    "false",
    "nor",
    "~p & q",
    "~p",
    "p & ~q",
    "~q",
    "xor",
    "nand",
    "and",
    "xnor",
    "q",
    "p -> q",
    "p",
    "q -> p",
    "or",
    "true",
];

fn code_of(table: &TruthTable) -> u8 {
    table
        .rows
        .iter()
        .enumerate()
        .fold(0, |acc, (i, b)| acc | (u8::from(*b) << i))
}

/// One realized binary truth function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyEntry {
    pub code: u8,
    pub name: &'static str,
    pub formula: Formula,
    /// Table of `formula` over `p, q` matches `code`.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    pub entries: Vec<SurveyEntry>,
}

impl SurveyReport {
    pub fn all_verified(&self) -> bool {
        self.entries.len() == 16 && self.entries.iter().all(|e| e.verified)
    }
}

impl fmt::Display for SurveyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "{:04b} {:<7} {} [{}]",
                e.code.reverse_bits() >> 4,
                e.name,
                e.formula,
                if e.verified { "ok" } else { "MISMATCH" }
            )?;
        }
        Ok(())
    }
}

fn pq() -> Vec<String> {
    vec!["p".into(), "q".into()]
}

/// Searches `N`-only formulas over `p, q` by increasing size (number of `N`
/// nodes plus atoms), keeping the first formula found for each table, until
/// all sixteen binary functions are realized. Each is then checked against
/// its table independently of the search.
pub fn nor_complete_survey() -> Result<SurveyReport, LogicError> {
    let atoms = pq();
    // smallest known formula for each truth-table code, with its size
    let mut best: BTreeMap<u8, (usize, Formula)> = BTreeMap::new();
    for name in ["p", "q"] {
        let f = Formula::atom(name);
        best.entry(code_of(&TruthTable::over(&f, &atoms)?))
            .or_insert((1, f));
    }
    let mut size = 1;
    while best.len() < 16 {
        size += 1;
        let mut known: Vec<(usize, Formula)> = best.values().cloned().collect();
        known.sort();
        let mut found = Vec::new();
        for (s, f) in &known {
            if s + 1 == size {
                found.push(n1(f.clone()));
            }
        }
        for (s1, f1) in &known {
            for (s2, f2) in &known {
                if s1 + s2 + 1 == size {
                    found.push(n2(f1.clone(), f2.clone()));
                }
            }
        }
        for f in found {
            let code = code_of(&TruthTable::over(&f, &atoms)?);
            best.entry(code).or_insert((size, f));
        }
        if size > 64 {
            break;
        }
    }
    let entries = (0u8..16)
        .filter_map(|code| {
            best.get(&code).map(|(_, formula)| {
                let verified = formula.is_n_only()
                    && TruthTable::over(formula, &atoms)
                        .map(|t| code_of(&t) == code)
                        .unwrap_or(false);
                SurveyEntry {
                    code,
                    name: BINARY_FUNCTION_NAMES[code as usize],
                    formula: formula.clone(),
                    verified,
                }
            })
        })
        .collect();
    Ok(SurveyReport { entries })
}
