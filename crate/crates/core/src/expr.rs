//! Series-rational expressions: syntax, parsing, printing, and the simple
//! syntactic predicates (acceptance of the empty pomset, emptiness, parallel
//! depth, congruence).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::normal::{normalize, NormalExpr};
use crate::symbol::{is_symbol_continue, is_symbol_start, Symbol};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Zero,
    One,
    Letter(Symbol),
    Plus(Arc<Expr>, Arc<Expr>),
    Dot(Arc<Expr>, Arc<Expr>),
    Par(Arc<Expr>, Arc<Expr>),
    Star(Arc<Expr>),
}

impl Expr {
    pub fn letter(name: &str) -> Result<Expr> {
        Ok(Expr::Letter(Symbol::new(name)?))
    }

    pub fn plus(lhs: impl Into<Arc<Expr>>, rhs: impl Into<Arc<Expr>>) -> Expr {
        Expr::Plus(lhs.into(), rhs.into())
    }

    pub fn dot(lhs: impl Into<Arc<Expr>>, rhs: impl Into<Arc<Expr>>) -> Expr {
        Expr::Dot(lhs.into(), rhs.into())
    }

    pub fn par(lhs: impl Into<Arc<Expr>>, rhs: impl Into<Arc<Expr>>) -> Expr {
        Expr::Par(lhs.into(), rhs.into())
    }

    pub fn star(body: impl Into<Arc<Expr>>) -> Expr {
        Expr::Star(body.into())
    }

    /// Left-nested sum of the given terms; the empty sum is `0`.
    pub fn sum<I: IntoIterator<Item = Expr>>(terms: I) -> Expr {
        terms.into_iter().reduce(Expr::plus).unwrap_or(Expr::Zero)
    }

    /// Number of syntax nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Zero | Expr::One | Expr::Letter(_) => 1,
            Expr::Plus(l, r) | Expr::Dot(l, r) | Expr::Par(l, r) => 1 + l.size() + r.size(),
            Expr::Star(b) => 1 + b.size(),
        }
    }

    /// Letters occurring in the expression.
    pub fn alphabet(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Expr::Zero | Expr::One => {}
            Expr::Letter(a) => {
                out.insert(a.clone());
            }
            Expr::Plus(l, r) | Expr::Dot(l, r) | Expr::Par(l, r) => {
                l.collect_letters(out);
                r.collect_letters(out);
            }
            Expr::Star(b) => b.collect_letters(out),
        }
    }

    /// Whether the expression belongs to the set of accepting terms, i.e.
    /// whether its language contains the empty pomset.
    pub fn nullable(&self) -> bool {
        match self {
            Expr::Zero | Expr::Letter(_) => false,
            Expr::One | Expr::Star(_) => true,
            Expr::Plus(l, r) => l.nullable() || r.nullable(),
            Expr::Dot(l, r) | Expr::Par(l, r) => l.nullable() && r.nullable(),
        }
    }

    /// Whether the expression is congruent to `0`, equivalently whether its
    /// language is empty.
    pub fn is_empty(&self) -> bool {
        match self {
            Expr::Zero => true,
            Expr::One | Expr::Letter(_) | Expr::Star(_) => false,
            Expr::Plus(l, r) => l.is_empty() && r.is_empty(),
            Expr::Dot(l, r) | Expr::Par(l, r) => l.is_empty() || r.is_empty(),
        }
    }

    /// Nesting depth of parallel composition; `0` for expressions congruent
    /// to `0`.
    pub fn parallel_depth(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        match self {
            Expr::Zero | Expr::One => 0,
            Expr::Letter(_) => 1,
            Expr::Plus(l, r) | Expr::Dot(l, r) => l.parallel_depth().max(r.parallel_depth()),
            Expr::Par(l, r) => l.parallel_depth().max(r.parallel_depth()) + 1,
            Expr::Star(b) => b.parallel_depth(),
        }
    }

    pub fn normalize(&self) -> NormalExpr {
        normalize(self)
    }

    pub fn congruent(&self, other: &Expr) -> bool {
        congruent(self, other)
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    text.parse()
}

pub fn nullable(e: &Expr) -> bool {
    e.nullable()
}

pub fn is_empty(e: &Expr) -> bool {
    e.is_empty()
}

pub fn parallel_depth(e: &Expr) -> usize {
    e.parallel_depth()
}

pub fn congruent(e: &Expr, f: &Expr) -> bool {
    normalize(e) == normalize(f)
}

const PREC_PLUS: u8 = 0;
const PREC_PAR: u8 = 1;
const PREC_DOT: u8 = 2;
const PREC_STAR: u8 = 3;
const PREC_ATOM: u8 = 4;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Plus(..) => PREC_PLUS,
        Expr::Par(..) => PREC_PAR,
        Expr::Dot(..) => PREC_DOT,
        Expr::Star(_) => PREC_STAR,
        _ => PREC_ATOM,
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

// Binary operators are printed left-associatively, so a right operand of the
// same precedence keeps its parentheses and parsing gives back the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, l: &Expr, op: &str, r: &Expr, prec: u8| {
            write_operand(f, l, precedence(l) < prec)?;
            f.write_str(op)?;
            write_operand(f, r, precedence(r) <= prec)
        };
        match self {
            Expr::Zero => f.write_str("0"),
            Expr::One => f.write_str("1"),
            Expr::Letter(a) => write!(f, "{a}"),
            Expr::Plus(l, r) => binary(f, l, " + ", r, PREC_PLUS),
            Expr::Par(l, r) => binary(f, l, " || ", r, PREC_PAR),
            Expr::Dot(l, r) => binary(f, l, ".", r, PREC_DOT),
            Expr::Star(b) => {
                write_operand(f, b, precedence(b) < PREC_STAR)?;
                f.write_str("*")
            }
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Zero => f.write_str("Zero"),
            Expr::One => f.write_str("One"),
            Expr::Letter(a) => write!(f, "Letter({a})"),
            Expr::Plus(l, r) => write!(f, "Plus({l:?}, {r:?})"),
            Expr::Dot(l, r) => write!(f, "Dot({l:?}, {r:?})"),
            Expr::Par(l, r) => write!(f, "Par({l:?}, {r:?})"),
            Expr::Star(b) => write!(f, "Star({b:?})"),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(text: &str) -> Result<Expr> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            end_column: text.chars().count() + 1,
        };
        let e = parser.parse_plus()?;
        if let Some((tok, column)) = parser.tokens.get(parser.pos) {
            return Err(Error::Syntax {
                column: *column,
                message: format!("unexpected `{tok}`"),
            });
        }
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Zero,
    One,
    Letter(Symbol),
    Plus,
    Dot,
    Par,
    Star,
    Open,
    Close,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Zero => f.write_str("0"),
            Token::One => f.write_str("1"),
            Token::Letter(a) => write!(f, "{a}"),
            Token::Plus => f.write_str("+"),
            Token::Dot => f.write_str("."),
            Token::Par => f.write_str("||"),
            Token::Star => f.write_str("*"),
            Token::Open => f.write_str("("),
            Token::Close => f.write_str(")"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let column = i + 1;
        let c = chars[i];
        let single = match c {
            '0' => Some(Token::Zero),
            '1' => Some(Token::One),
            '+' => Some(Token::Plus),
            '.' => Some(Token::Dot),
            '*' => Some(Token::Star),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(tok) = single {
            tokens.push((tok, column));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '|' {
            if chars.get(i + 1) != Some(&'|') {
                return Err(Error::Syntax {
                    column,
                    message: "expected `||`".into(),
                });
            }
            tokens.push((Token::Par, column));
            i += 2;
        } else if is_symbol_start(c) {
            let start = i;
            while i < chars.len() && is_symbol_continue(chars[i]) {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            tokens.push((Token::Letter(Symbol::new(&name)?), column));
        } else {
            return Err(Error::Syntax {
                column,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn error_here(&self, message: &str) -> Error {
        match self.tokens.get(self.pos) {
            Some((tok, column)) => Error::Syntax {
                column: *column,
                message: format!("{message}, found `{tok}`"),
            },
            None => Error::Syntax {
                column: self.end_column,
                message: format!("{message}, found end of input"),
            },
        }
    }

    fn parse_plus(&mut self) -> Result<Expr> {
        let mut acc = self.parse_par()?;
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            acc = Expr::plus(acc, self.parse_par()?);
        }
        Ok(acc)
    }

    fn parse_par(&mut self) -> Result<Expr> {
        let mut acc = self.parse_dot()?;
        while self.peek() == Some(&Token::Par) {
            self.pos += 1;
            acc = Expr::par(acc, self.parse_dot()?);
        }
        Ok(acc)
    }

    fn parse_dot(&mut self) -> Result<Expr> {
        let mut acc = self.parse_star()?;
        while self.peek() == Some(&Token::Dot) {
            self.pos += 1;
            acc = Expr::dot(acc, self.parse_star()?);
        }
        Ok(acc)
    }

    fn parse_star(&mut self) -> Result<Expr> {
        let mut acc = self.parse_atom()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = Expr::star(acc);
        }
        Ok(acc)
    }

    fn parse_atom(&mut self) -> Result<Expr> {
        let e = match self.peek() {
            Some(Token::Zero) => Expr::Zero,
            Some(Token::One) => Expr::One,
            Some(Token::Letter(a)) => Expr::Letter(a.clone()),
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.parse_plus()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error_here("expected `)`"));
                }
                inner
            }
            _ => return Err(self.error_here("expected an expression")),
        };
        self.pos += 1;
        Ok(e)
    }
}
