//! Ordinal expressions: `w` for ω, natural literals, `+`, `*`, `^` and
//! parentheses. `^` binds tightest and associates to the right; its base must
//! be `w` or the literal `2`.

use std::fmt;
use std::panic::{self, AssertUnwindSafe};

use dilator_core::ordinal::{self, Ordinal};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Omega,
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Nat(u64),
    Omega,
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Base, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at position {pos}: unexpected character `{ch}`")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("at position {pos}: expected {expected}, found {found}")]
    Unexpected { pos: usize, expected: &'static str, found: String },
    #[error("at position {pos}: literal {text} does not fit in 32 bits")]
    LiteralTooLarge { pos: usize, text: String },
    #[error("at position {pos}: only `w` and `2` may be raised to a power")]
    BadBase { pos: usize },
    #[error("arithmetic overflow while evaluating")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(u64),
    W,
    Plus,
    Star,
    Caret,
    Open,
    Close,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::W => write!(f, "`w`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Open => write!(f, "`(`"),
            Tok::Close => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value =
                    digits.parse::<u32>().map_err(|_| ParseError::LiteralTooLarge { pos: start, text: digits })?;
                out.push((start, Tok::Num(value.into())));
                continue;
            }
            'w' | 'ω' => Tok::W,
            '+' => Tok::Plus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            ch => return Err(ParseError::UnexpectedChar { pos: i, ch }),
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base_pos = self.pos();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let base = match base {
            Expr::Omega => Base::Omega,
            Expr::Nat(2) if self.toks[self.at - 1].0 == base_pos => Base::Two,
            _ => return Err(ParseError::BadBase { pos: base_pos }),
        };
        self.bump();
        Ok(Expr::Pow(base, Box::new(self.power()?)))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(Expr::Nat(n)),
            Tok::W => Ok(Expr::Omega),
            Tok::Open => {
                let inner = self.sum()?;
                match self.bump() {
                    Tok::Close => Ok(inner),
                    other => Err(ParseError::Unexpected {
                        pos: self.toks[self.at.saturating_sub(1)].0,
                        expected: "`)`",
                        found: other.to_string(),
                    }),
                }
            }
            other => Err(ParseError::Unexpected { pos, expected: "a literal, `w` or `(`", found: other.to_string() }),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.sum()?;
    match p.peek() {
        Tok::End => Ok(e),
        other => Err(ParseError::Unexpected {
            pos: p.pos(),
            expected: "an operator or end of input",
            found: other.to_string(),
        }),
    }
}

fn eval_inner(e: &Expr) -> Ordinal {
    match e {
        Expr::Nat(n) => Ordinal::nat(*n),
        Expr::Omega => Ordinal::omega(),
        Expr::Add(a, b) => ordinal::add(&eval_inner(a), &eval_inner(b)),
        Expr::Mul(a, b) => ordinal::mul(&eval_inner(a), &eval_inner(b)),
        Expr::Pow(Base::Omega, x) => ordinal::omega_pow(&eval_inner(x)),
        Expr::Pow(Base::Two, x) => ordinal::two_pow(&eval_inner(x)),
    }
}

/// Evaluates to normal form; coefficient overflow is reported, not raised.
pub fn eval(e: &Expr) -> Result<Ordinal, ParseError> {
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let out = panic::catch_unwind(AssertUnwindSafe(|| eval_inner(e)));
    panic::set_hook(hook);
    out.map_err(|_| ParseError::Overflow)
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseError> {
    eval(&parse_expr(text)?)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Nat(n) => write!(f, "{n}"),
            Expr::Omega => write!(f, "w"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Pow(Base::Omega, x) => write!(f, "w^({x})"),
            Expr::Pow(Base::Two, x) => write!(f, "2^({x})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    #[test]
    fn precedence() {
        let w = Ordinal::omega();
        let ww = ordinal::omega_pow(&w);
        let want = ordinal::add(&ordinal::add(&ww, &ordinal::mul(&w, &Ordinal::nat(2))), &Ordinal::nat(3));
        assert_eq!(ev("w^w + w*2 + 3"), want);
        assert_eq!(ev("w^(w+1)"), ordinal::omega_pow(&ordinal::add(&w, &Ordinal::one())));
        assert_eq!(ev("2^w"), w);
        assert_eq!(ev("w^w^2"), ordinal::omega_pow(&ordinal::omega_pow(&Ordinal::nat(2))));
        assert_eq!(ev("2*w"), w);
        assert_eq!(ev(" 1 + w "), w);
        assert_eq!(ev("ω·2"), ordinal::mul(&w, &Ordinal::nat(2)));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_expr("w + + 1"),
            Err(ParseError::Unexpected { pos: 4, expected: "a literal, `w` or `(`", found: "`+`".into() })
        );
        assert!(matches!(parse_expr("3^w"), Err(ParseError::BadBase { pos: 0 })));
        assert!(matches!(parse_expr("(2)^w"), Err(ParseError::BadBase { pos: 0 })));
        assert!(matches!(parse_expr("w $"), Err(ParseError::UnexpectedChar { pos: 2, ch: '$' })));
        assert!(matches!(parse_expr("(w"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_expr("4294967296"), Err(ParseError::LiteralTooLarge { pos: 0, .. })));
        assert!(parse_expr("4294967295").is_ok());
        assert_eq!(parse_ordinal("4294967295*4294967295*4294967295"), Err(ParseError::Overflow));
    }
}
