//! Deterministic Turing machines with an explicit halt target, a loader
//! for machine files, and exhaustive enumeration of the `[2,2]` and `[2,3]`
//! classes.
//!
//! Machine file format:
//!
//! ```text
//! states 2
//! symbols 2
//! # state symbol -> write move next
//! 0 0 -> 1 R 1
//! 0 1 -> 1 L H
//! ```

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("transition table is not total: missing ({state}, {symbol})")]
    Missing { state: usize, symbol: usize },
    #[error("a machine needs at least one state and two symbols")]
    Shape,
    #[error("symbol {0} is out of range")]
    Symbol(usize),
    #[error("state {0} is out of range")]
    State(usize),
    #[error("input symbol `{0}` is out of range")]
    Input(char),
    #[error("code {code} is outside 0..{total}")]
    Code { code: u64, total: u64 },
    #[error("enumeration supports 2 states and 2 or 3 symbols, got [{states},{symbols}]")]
    Class { states: usize, symbols: usize },
    #[error("budget {0} exceeds {MAX_ENUM_BUDGET}")]
    Budget(u64),
}

pub const MAX_ENUM_BUDGET: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
}

/// `next == None` halts after writing and moving.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub write: usize,
    pub mv: Move,
    pub next: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MachineSpec {
    states: usize,
    symbols: usize,
    /// Indexed by `state * symbols + symbol`.
    table: Vec<Transition>,
}

impl MachineSpec {
    pub fn new(states: usize, symbols: usize, table: Vec<Transition>) -> Result<MachineSpec, MachineError> {
        if states == 0 || symbols < 2 {
            return Err(MachineError::Shape);
        }
        if table.len() != states * symbols {
            let i = table.len().min(states * symbols);
            return Err(MachineError::Missing {
                state: i / symbols,
                symbol: i % symbols,
            });
        }
        for t in &table {
            if t.write >= symbols {
                return Err(MachineError::Symbol(t.write));
            }
            if let Some(q) = t.next.filter(|&q| q >= states) {
                return Err(MachineError::State(q));
            }
        }
        Ok(MachineSpec {
            states,
            symbols,
            table,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn transition(&self, state: usize, symbol: usize) -> Transition {
        self.table[state * self.symbols + symbol]
    }

    /// Digit base of the canonical encoding: `2·s·k` ordinary transitions
    /// plus one halt.
    pub fn base(states: usize, symbols: usize) -> u64 {
        (2 * states * symbols + 1) as u64
    }

    /// Size of the class, `base^(s·k)`.
    pub fn class_size(states: usize, symbols: usize) -> u64 {
        Self::base(states, symbols).pow((states * symbols) as u32)
    }

    /// Decodes a canonical code. Transitions `(q, a)` are digits in
    /// row-major order, most significant first. Digit 0 halts, writing the
    /// scanned symbol and moving right. Digit `d > 0` has
    /// `d - 1 = (write·2 + move)·s + next`, with `L = 0` and `R = 1`.
    pub fn decode(states: usize, symbols: usize, code: u64) -> Result<MachineSpec, MachineError> {
        if states == 0 || symbols < 2 {
            return Err(MachineError::Shape);
        }
        let base = Self::base(states, symbols);
        let total = Self::class_size(states, symbols);
        if code >= total {
            return Err(MachineError::Code { code, total });
        }
        let cells = states * symbols;
        let mut table = Vec::with_capacity(cells);
        let mut rest = code;
        let mut digits = vec![0u64; cells];
        for d in digits.iter_mut().rev() {
            *d = rest % base;
            rest /= base;
        }
        for (i, &d) in digits.iter().enumerate() {
            table.push(if d == 0 {
                Transition {
                    write: i % symbols,
                    mv: Move::R,
                    next: None,
                }
            } else {
                let d = (d - 1) as usize;
                let next = d % states;
                let wm = d / states;
                Transition {
                    write: wm / 2,
                    mv: if wm & 1 == 0 { Move::L } else { Move::R },
                    next: Some(next),
                }
            });
        }
        MachineSpec::new(states, symbols, table)
    }

    /// Inverse of [`MachineSpec::decode`]; `None` when a halt transition is
    /// not the canonical one.
    pub fn encode(&self) -> Option<u64> {
        let base = Self::base(self.states, self.symbols);
        let mut code = 0u64;
        for (i, t) in self.table.iter().enumerate() {
            let digit = match t.next {
                None if t.write == i % self.symbols && t.mv == Move::R => 0,
                None => return None,
                Some(q) => {
                    let m = usize::from(t.mv == Move::R);
                    ((t.write * 2 + m) * self.states + q + 1) as u64
                }
            };
            code = code * base + digit;
        }
        Some(code)
    }

    /// Runs on `input` (cell 0 under the head, state 0) for at most
    /// `budget` steps. The halting transition counts as a step.
    pub fn run(&self, input: &[usize], budget: u64) -> Result<RunResult, MachineError> {
        if let Some(&bad) = input.iter().find(|&&a| a >= self.symbols) {
            return Err(MachineError::Symbol(bad));
        }
        let mut tape: VecDeque<usize> = input.iter().copied().collect();
        if tape.is_empty() {
            tape.push_back(0);
        }
        // tape[0] is cell `origin`
        let mut origin: i64 = 0;
        let mut head: i64 = 0;
        let mut state = 0;
        let mut steps = 0;
        let outcome = loop {
            if steps == budget {
                break Outcome::BudgetExhausted;
            }
            let cell = (head - origin) as usize;
            let t = self.transition(state, tape[cell]);
            tape[cell] = t.write;
            steps += 1;
            head += match t.mv {
                Move::L => -1,
                Move::R => 1,
            };
            if head < origin {
                tape.push_front(0);
                origin -= 1;
            } else if (head - origin) as usize == tape.len() {
                tape.push_back(0);
            }
            match t.next {
                Some(q) => state = q,
                None => break Outcome::Halted(steps),
            }
        };
        let first = tape.iter().position(|&a| a != 0);
        let (span_start, span) = match first {
            None => (head, Vec::new()),
            Some(f) => {
                let l = tape.iter().rposition(|&a| a != 0).expect("nonblank exists");
                (origin + f as i64, tape.range(f..=l).copied().collect())
            }
        };
        Ok(RunResult {
            outcome,
            tape: span,
            span_start,
            head,
        })
    }
}

/// Symbols as digits, e.g. `"110"`.
pub fn parse_input(s: &str, symbols: usize) -> Result<Vec<usize>, MachineError> {
    s.chars()
        .map(|c| match c.to_digit(10) {
            Some(d) if (d as usize) < symbols => Ok(d as usize),
            _ => Err(MachineError::Input(c)),
        })
        .collect()
}

impl FromStr for MachineSpec {
    type Err = MachineError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, msg: &str| MachineError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut states = None;
        let mut symbols = None;
        let mut entries: Vec<(usize, usize, usize, Transition)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let words: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
            let num = |w: &str| w.parse::<usize>().map_err(|_| err(line, &format!("expected a number, found `{w}`")));
            match words.as_slice() {
                [] => {}
                ["states", n] => states = Some(num(n)?),
                ["symbols", n] => symbols = Some(num(n)?),
                [q, a, "->", w, m, next] => {
                    let mv = match *m {
                        "L" => Move::L,
                        "R" => Move::R,
                        _ => return Err(err(line, "move must be L or R")),
                    };
                    let next = match *next {
                        "H" => None,
                        q => Some(num(q)?),
                    };
                    entries.push((line, num(q)?, num(a)?, Transition { write: num(w)?, mv, next }));
                }
                _ => return Err(err(line, "expected `states N`, `symbols K` or `q a -> w M q'`")),
            }
        }
        let states = states.ok_or_else(|| err(0, "missing `states` line"))?;
        let symbols = symbols.ok_or_else(|| err(0, "missing `symbols` line"))?;
        if states == 0 || symbols < 2 {
            return Err(MachineError::Shape);
        }
        let mut table: Vec<Option<Transition>> = vec![None; states * symbols];
        for (line, q, a, t) in entries {
            if q >= states || a >= symbols {
                return Err(err(line, "state or symbol out of range"));
            }
            if table[q * symbols + a].replace(t).is_some() {
                return Err(err(line, "duplicate transition"));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or(MachineError::Missing {
                    state: i / symbols,
                    symbol: i % symbols,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        MachineSpec::new(states, symbols, table)
    }
}

impl fmt::Display for MachineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.states)?;
        writeln!(f, "symbols {}", self.symbols)?;
        for (i, t) in self.table.iter().enumerate() {
            let next = t.next.map_or("H".to_string(), |q| q.to_string());
            let mv = if t.mv == Move::L { "L" } else { "R" };
            writeln!(f, "{} {} -> {} {mv} {next}", i / self.symbols, i % self.symbols, t.write)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Halted(u64),
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RunResult {
    pub outcome: Outcome,
    /// Tape from the first to the last nonblank cell.
    pub tape: Vec<usize>,
    /// Cell index of `tape[0]`; the head position when the tape is blank.
    pub span_start: i64,
    pub head: i64,
}

impl RunResult {
    pub fn tape_string(&self) -> String {
        self.tape.iter().map(|a| a.to_string()).collect()
    }
}

impl fmt::Display for RunResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.outcome {
            Outcome::Halted(steps) => writeln!(f, "halted after {steps} steps")?,
            Outcome::BudgetExhausted => writeln!(f, "budget exhausted")?,
        }
        writeln!(f, "tape: {}", self.tape_string())?;
        writeln!(f, "span start: {}", self.span_start)?;
        writeln!(f, "head: {}", self.head)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    HaltedBlank,
    HaltedNonblank,
    Exhausted,
}

impl RunResult {
    pub fn category(&self) -> Category {
        match self.outcome {
            Outcome::BudgetExhausted => Category::Exhausted,
            Outcome::Halted(_) if self.tape.is_empty() => Category::HaltedBlank,
            Outcome::Halted(_) => Category::HaltedNonblank,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub states: usize,
    pub symbols: usize,
    pub budget: u64,
    pub total: u64,
    pub halted_blank: u64,
    pub halted_nonblank: u64,
    pub exhausted: u64,
    /// Longest halting run and the least code attaining it.
    pub longest_halt: Option<(u64, u64)>,
}

impl EnumerationReport {
    pub fn nonblank_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.halted_nonblank, self.total)
    }
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let frac = self.nonblank_fraction();
        writeln!(f, "class: [{},{}]", self.states, self.symbols)?;
        writeln!(f, "budget: {}", self.budget)?;
        writeln!(f, "machines: {}", self.total)?;
        writeln!(f, "halted, blank output: {}", self.halted_blank)?;
        writeln!(f, "halted, nonblank output: {}", self.halted_nonblank)?;
        writeln!(f, "budget exhausted: {}", self.exhausted)?;
        writeln!(
            f,
            "nonblank fraction: {} ({:.4})",
            frac,
            *frac.numer() as f64 / *frac.denom() as f64
        )?;
        if let Some((steps, code)) = self.longest_halt {
            writeln!(f, "longest halt: {steps} steps (code {code})")?;
        }
        Ok(())
    }
}

/// Runs every machine of the class on a blank tape, in code order.
pub fn enumerate(states: usize, symbols: usize, budget: u64) -> Result<EnumerationReport, MachineError> {
    if states != 2 || !(2..=3).contains(&symbols) {
        return Err(MachineError::Class { states, symbols });
    }
    if budget > MAX_ENUM_BUDGET {
        return Err(MachineError::Budget(budget));
    }
    let total = MachineSpec::class_size(states, symbols);
    // indexed collect keeps results in code order whatever the schedule
    let results: Vec<(Category, Outcome)> = (0..total)
        .into_par_iter()
        .map(|code| {
            let r = MachineSpec::decode(states, symbols, code)
                .and_then(|m| m.run(&[], budget))
                .expect("canonical codes decode to valid machines");
            (r.category(), r.outcome)
        })
        .collect();
    let mut report = EnumerationReport {
        states,
        symbols,
        budget,
        total,
        halted_blank: 0,
        halted_nonblank: 0,
        exhausted: 0,
        longest_halt: None,
    };
    for (code, (cat, outcome)) in results.into_iter().enumerate() {
        match cat {
            Category::HaltedBlank => report.halted_blank += 1,
            Category::HaltedNonblank => report.halted_nonblank += 1,
            Category::Exhausted => report.exhausted += 1,
        }
        if let Outcome::Halted(steps) = outcome {
            if report.longest_halt.is_none_or(|(best, _)| steps > best) {
                report.longest_halt = Some((steps, code as u64));
            }
        }
    }
    Ok(report)
}
