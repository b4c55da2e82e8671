//! Recursive-descent parser for the formula DSL.
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | atom | "0" | "1" | "(" formula ")"
//!          | "N(" formula ("," formula)* ")"
//! atom    := [a-z][a-z0-9_]*
//! ```

use super::{Formula, LogicError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Zero,
    One,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    Comma,
    N,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Atom(a) => format!("atom `{a}`"),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::N => "`N`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, LogicError> {
        let mut out = Vec::new();
        loop {
            while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.bump() else {
                out.push((Tok::Eof, line, col));
                return Ok(out);
            };
            let tok = match c {
                '~' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '0' => Tok::Zero,
                '1' => Tok::One,
                'N' => Tok::N,
                '-' if self.chars.peek() == Some(&'>') => {
                    self.bump();
                    Tok::Arrow
                }
                'a'..='z' => {
                    let mut name = String::from(c);
                    while let Some(&d) = self.chars.peek() {
                        if matches!(d, 'a'..='z' | '0'..='9' | '_') {
                            name.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Atom(name)
                }
                other => {
                    return Err(LogicError::Syntax {
                        line,
                        col,
                        msg: format!("unexpected character `{other}`"),
                    })
                }
            };
            out.push((tok, line, col));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: String) -> LogicError {
        let (_, line, col) = self.toks[self.pos];
        LogicError::Syntax { line, col, msg }
    }

    fn expect(&mut self, want: Tok) -> Result<(), LogicError> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    fn imp(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.next();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.next();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.next();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        match self.peek().clone() {
            Tok::Not => {
                self.next();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Atom(a) => {
                self.next();
                Ok(Formula::Atom(a))
            }
            Tok::Zero => {
                self.next();
                Ok(Formula::Bottom)
            }
            Tok::One => {
                self.next();
                Ok(Formula::Top)
            }
            Tok::LParen => {
                self.next();
                let f = self.imp()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::N => {
                self.next();
                self.expect(Tok::LParen)?;
                let mut args = vec![self.imp()?];
                while *self.peek() == Tok::Comma {
                    self.next();
                    args.push(self.imp()?);
                }
                self.expect(Tok::RParen)?;
                Ok(Formula::N(args))
            }
            other => Err(self.error(format!("expected a formula, found {}", other.describe()))),
        }
    }
}

/// Parses a formula; syntax errors carry a 1-based line and column.
pub fn parse(text: &str) -> Result<Formula, LogicError> {
    let toks = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    }
    .tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.imp()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(format!("unexpected {}", p.peek().describe())));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn arrow_binds_loosest() {
        assert_eq!(
            p("p -> q | r"),
            Formula::implies(a("p"), Formula::or(a("q"), a("r")))
        );
    }

    #[test]
    fn arrow_is_right_associative() {
        assert_eq!(
            p("p -> q -> r"),
            Formula::implies(a("p"), Formula::implies(a("q"), a("r")))
        );
    }

    #[test]
    fn n_with_arguments() {
        assert_eq!(
            p("N(p, ~q)"),
            Formula::N(vec![a("p"), Formula::not(a("q"))])
        );
        assert_eq!(p("N ( p )"), Formula::N(vec![a("p")]));
    }

    #[test]
    fn and_binds_tighter_and_left_assoc() {
        assert_eq!(
            p("a & b & c | d"),
            Formula::or(
                Formula::and(Formula::and(a("a"), a("b")), a("c")),
                a("d")
            )
        );
        assert_eq!(p("~~x_1"), Formula::not(Formula::not(a("x_1"))));
        assert_eq!(p("0 -> 1"), Formula::implies(Formula::Bottom, Formula::Top));
    }

    #[test]
    fn errors_carry_position() {
        match parse("p &\n  | q") {
            Err(LogicError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("N()"),
            Err(LogicError::Syntax { line: 1, col: 3, .. })
        ));
        assert!(matches!(parse("P"), Err(LogicError::Syntax { col: 1, .. })));
        assert!(parse("p q").is_err());
        assert!(parse("(p").is_err());
        assert!(parse("p - q").is_err());
    }

    #[test]
    fn printer_uses_minimal_parens() {
        for s in [
            "p -> q -> r",
            "(p -> q) -> r",
            "p & (q & r)",
            "p & q & r",
            "~(p | q)",
            "N(p -> q, ~r, 0)",
            "(p | q) & r",
        ] {
            assert_eq!(p(s).to_string(), s);
        }
    }
}
