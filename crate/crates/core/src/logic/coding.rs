//! Structural numbering of formulas and the diagonal (fixed-point)
//! construction over it.
//!
//! The numbering is `code(f) = 8 * payload + tag`, with `π` the Cantor pairing
//! function and
//!
//! | node            | tag | payload                         |
//! |-----------------|-----|---------------------------------|
//! | `0`             | 0   | 0                               |
//! | `1`             | 1   | 0                               |
//! | atom `name`     | 2   | big-endian bytes of `name` after a leading `0x01` |
//! | `~f`            | 3   | `code(f)`                       |
//! | `f & g`         | 4   | `π(code f, code g)`             |
//! | `f \| g`        | 5   | `π(code f, code g)`             |
//! | `f -> g`        | 6   | `π(code f, code g)`             |
//! | `N(f1..fk)`     | 7   | `list(code f1, .., code fk)`    |
//!
//! with `list([]) = 0` and `list(x :: rest) = 1 + π(x, list(rest))`. Every
//! component is a bijection onto its range, so the numbering is injective and
//! [`decode`] inverts it.

use num_bigint::BigUint;

use super::{is_atom_name, Formula, LogicError};

const TAGS: u32 = 8;

/// A formula together with its structural number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodedFormula {
    pub formula: Formula,
    pub code: BigUint,
}

impl CodedFormula {
    pub fn new(formula: Formula) -> CodedFormula {
        let code = encode(&formula);
        CodedFormula { formula, code }
    }
}

/// Cantor pairing.
pub fn cantor_pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

pub fn cantor_unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - t;
    let x = w - &y;
    (x, y)
}

fn encode_list(codes: &[BigUint]) -> BigUint {
    codes
        .iter()
        .rev()
        .fold(BigUint::ZERO, |acc, c| cantor_pair(c, &acc) + 1u32)
}

fn decode_list(mut n: BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    while n != BigUint::ZERO {
        let (head, tail) = cantor_unpair(&(n - 1u32));
        out.push(head);
        n = tail;
    }
    out
}

pub fn encode(f: &Formula) -> BigUint {
    let (tag, payload): (u32, BigUint) = match f {
        Formula::Bottom => (0, BigUint::ZERO),
        Formula::Top => (1, BigUint::ZERO),
        Formula::Atom(name) => {
            let mut bytes = vec![1u8];
            bytes.extend_from_slice(name.as_bytes());
            (2, BigUint::from_bytes_be(&bytes))
        }
        Formula::Not(g) => (3, encode(g)),
        Formula::And(a, b) => (4, cantor_pair(&encode(a), &encode(b))),
        Formula::Or(a, b) => (5, cantor_pair(&encode(a), &encode(b))),
        Formula::Implies(a, b) => (6, cantor_pair(&encode(a), &encode(b))),
        Formula::N(args) => (7, encode_list(&args.iter().map(encode).collect::<Vec<_>>())),
    };
    payload * TAGS + BigUint::from(tag)
}

/// Inverse of [`encode`]. Numbers outside the image are rejected.
pub fn decode(code: &BigUint) -> Result<Formula, LogicError> {
    let bad = || LogicError::NotACode(code.to_string());
    let tag = (code % TAGS).to_u32_digits().first().copied().unwrap_or(0);
    let payload = code / TAGS;
    let binary = |ctor: fn(Box<Formula>, Box<Formula>) -> Formula| {
        let (a, b) = cantor_unpair(&payload);
        Ok::<_, LogicError>(ctor(Box::new(decode(&a)?), Box::new(decode(&b)?)))
    };
    match tag {
        0 | 1 if payload != BigUint::ZERO => Err(bad()),
        0 => Ok(Formula::Bottom),
        1 => Ok(Formula::Top),
        2 => {
            let bytes = payload.to_bytes_be();
            match bytes.split_first() {
                Some((1, rest)) => {
                    let name = std::str::from_utf8(rest).map_err(|_| bad())?;
                    if is_atom_name(name) {
                        Ok(Formula::Atom(name.to_string()))
                    } else {
                        Err(bad())
                    }
                }
                _ => Err(bad()),
            }
        }
        3 => Ok(Formula::not(decode(&payload)?)),
        4 => binary(Formula::And),
        5 => binary(Formula::Or),
        6 => binary(Formula::Implies),
        7 => {
            let args = decode_list(payload)
                .iter()
                .map(decode)
                .collect::<Result<Vec<_>, _>>()?;
            Formula::n(args).map_err(|_| bad())
        }
        _ => unreachable!("tag is reduced mod 8"),
    }
}

/// Atom naming the literal code `n` (a quotation `⌜φ⌝`).
pub fn quote_atom(code: &BigUint) -> Formula {
    Formula::Atom(format!("{QUOTE_PREFIX}{code}"))
}

/// Prefix of quotation atoms: `qt_<n>` stands for the numeral of `n`.
pub const QUOTE_PREFIX: &str = "qt_";
/// Prefix of diagonal-term atoms: `dg_<n>` stands for `diag(n)`.
pub const DIAG_PREFIX: &str = "dg_";
/// Atom marking `diag(x)` where `x` is the free code variable.
pub const DIAG_VAR: &str = "dg_x";

fn reserved(name: &str) -> bool {
    name.starts_with(QUOTE_PREFIX) || name.starts_with(DIAG_PREFIX)
}

/// Result of the diagonal construction for a one-hole context `C(·)`.
///
/// `diagonalized` is `B = C(diag(x))`; `sentence` is `D = B[x := ⌜B⌝]`, i.e.
/// `C(diag(⌜B⌝))`. Since `diag(⌜B⌝)` evaluates to `⌜D⌝`, expanding the
/// diagonal term in `D` yields `expansion = C(⌜D⌝)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub hole: String,
    pub context: Formula,
    pub diagonalized: CodedFormula,
    pub sentence: CodedFormula,
    pub expansion: Formula,
}

/// `diag(n)`: decode `n` to a formula `B` containing the `diag(x)` marker and
/// return the code of `B` with the marker replaced by the diagonal term for
/// `n` itself.
pub fn diag(n: &BigUint) -> Result<BigUint, LogicError> {
    let b = decode(n)?;
    if b.count_atom(DIAG_VAR) != 1 {
        return Err(LogicError::NotACode(n.to_string()));
    }
    Ok(encode(&substitute_diag_var(&b, n)))
}

fn substitute_diag_var(b: &Formula, n: &BigUint) -> Formula {
    let term = Formula::Atom(format!("{DIAG_PREFIX}{n}"));
    b.map_atoms(&|a| (a == DIAG_VAR).then(|| term.clone()))
}

/// Builds the fixed point of the context `C(·)` whose hole is the atom named
/// `hole`, which must occur exactly once.
pub fn fixed_point(context: &Formula, hole: &str) -> Result<FixedPoint, LogicError> {
    let holes = context.count_atom(hole);
    if holes != 1 {
        return Err(LogicError::HoleCount(holes));
    }
    if let Some(bad) = context.atoms().into_iter().find(|a| reserved(a)) {
        return Err(LogicError::ReservedAtom(bad));
    }
    let fill = |with: Formula| context.map_atoms(&|a| (a == hole).then(|| with.clone()));
    let b = CodedFormula::new(fill(Formula::atom(DIAG_VAR)));
    let d = CodedFormula::new(substitute_diag_var(&b.formula, &b.code));
    let expansion = fill(quote_atom(&d.code));
    Ok(FixedPoint {
        hole: hole.to_string(),
        context: context.clone(),
        diagonalized: b,
        sentence: d,
        expansion,
    })
}

impl FixedPoint {
    /// Mechanical check: evaluate the diagonal term occurring in the
    /// sentence, confirm it equals the sentence's own code, and confirm that
    /// replacing the term by that quotation gives `C(⌜D⌝)`.
    pub fn verify(&self) -> bool {
        let dg: Vec<String> = self
            .sentence
            .formula
            .atoms()
            .into_iter()
            .filter(|a| a.starts_with(DIAG_PREFIX))
            .collect();
        let [term] = dg.as_slice() else {
            return false;
        };
        let Ok(arg) = term[DIAG_PREFIX.len()..].parse::<BigUint>() else {
            return false;
        };
        let Ok(value) = diag(&arg) else {
            return false;
        };
        if value != self.sentence.code || encode(&self.sentence.formula) != value {
            return false;
        }
        let expanded = self
            .sentence
            .formula
            .map_atoms(&|a| (a == term).then(|| quote_atom(&value)));
        let direct = self
            .context
            .map_atoms(&|a| (a == self.hole).then(|| quote_atom(&value)));
        expanded == self.expansion && direct == self.expansion
    }
}
