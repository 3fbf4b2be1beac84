//! Series-parallel pomsets as canonical terms.
//!
//! A [`Pomset`] is the normal form of a series-parallel term: sequential and
//! parallel nodes are flattened, empty children are dropped, and the children
//! of a parallel node are sorted by their canonical serialization. Two terms
//! built by any sequence of compositions denote isomorphic labelled posets
//! exactly when they are equal.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symbol::{is_symbol_continue, is_symbol_start, Symbol};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pomset(Node);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Node {
    Empty,
    Primitive(Symbol),
    /// At least two children, none of them empty or sequential.
    Seq(Vec<Pomset>),
    /// At least two children, none of them empty or parallel, sorted by
    /// canonical serialization.
    Par(Vec<Pomset>),
}

/// The unique top-level decomposition of a non-empty pomset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factorization<'a> {
    Primitive(&'a Symbol),
    /// Ordered factors; none is empty or itself sequential.
    SeqSplit(&'a [Pomset]),
    /// Parallel factors (a multiset, listed in canonical order); none is
    /// empty or itself parallel.
    ParSplit(&'a [Pomset]),
}

impl Pomset {
    pub fn empty() -> Pomset {
        Pomset(Node::Empty)
    }

    pub fn primitive(a: Symbol) -> Pomset {
        Pomset(Node::Primitive(a))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.0, Node::Empty)
    }

    /// Sequential composition `self · other`.
    pub fn seq(&self, other: &Pomset) -> Pomset {
        seq_compose(self, other)
    }

    /// Parallel composition `self ∥ other`.
    pub fn par(&self, other: &Pomset) -> Pomset {
        par_compose(self, other)
    }

    /// Sequential composition of a list of factors, in order.
    pub fn seq_all<'a, I: IntoIterator<Item = &'a Pomset>>(parts: I) -> Pomset {
        let mut children = Vec::new();
        for p in parts {
            push_seq_child(&mut children, p);
        }
        from_seq_children(children)
    }

    /// Parallel composition of a collection of factors.
    pub fn par_all<'a, I: IntoIterator<Item = &'a Pomset>>(parts: I) -> Pomset {
        let mut children = Vec::new();
        for p in parts {
            push_par_child(&mut children, p);
        }
        from_par_children(children)
    }

    /// Number of labelled events.
    pub fn size(&self) -> usize {
        match &self.0 {
            Node::Empty => 0,
            Node::Primitive(_) => 1,
            Node::Seq(cs) | Node::Par(cs) => cs.iter().map(Pomset::size).sum(),
        }
    }

    /// Size of the largest antichain.
    pub fn width(&self) -> usize {
        match &self.0 {
            Node::Empty => 0,
            Node::Primitive(_) => 1,
            Node::Seq(cs) => cs.iter().map(Pomset::width).max().unwrap_or(0),
            Node::Par(cs) => cs.iter().map(Pomset::width).sum(),
        }
    }

    pub fn factorize(&self) -> Result<Factorization<'_>> {
        match &self.0 {
            Node::Empty => Err(Error::EmptyPomset),
            Node::Primitive(a) => Ok(Factorization::Primitive(a)),
            Node::Seq(cs) => Ok(Factorization::SeqSplit(cs)),
            Node::Par(cs) => Ok(Factorization::ParSplit(cs)),
        }
    }

    /// Labels of all events, in serialization order.
    pub fn labels(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<Symbol>) {
        match &self.0 {
            Node::Empty => {}
            Node::Primitive(a) => out.push(a.clone()),
            Node::Seq(cs) | Node::Par(cs) => cs.iter().for_each(|c| c.collect_labels(out)),
        }
    }
}

pub fn seq_compose(u: &Pomset, v: &Pomset) -> Pomset {
    Pomset::seq_all([u, v])
}

pub fn par_compose(u: &Pomset, v: &Pomset) -> Pomset {
    Pomset::par_all([u, v])
}

fn push_seq_child(children: &mut Vec<Pomset>, p: &Pomset) {
    match &p.0 {
        Node::Empty => {}
        Node::Seq(cs) => children.extend(cs.iter().cloned()),
        _ => children.push(p.clone()),
    }
}

fn push_par_child(children: &mut Vec<Pomset>, p: &Pomset) {
    match &p.0 {
        Node::Empty => {}
        Node::Par(cs) => children.extend(cs.iter().cloned()),
        _ => children.push(p.clone()),
    }
}

fn from_seq_children(mut children: Vec<Pomset>) -> Pomset {
    match children.len() {
        0 => Pomset::empty(),
        1 => children.pop().unwrap(),
        _ => Pomset(Node::Seq(children)),
    }
}

fn from_par_children(mut children: Vec<Pomset>) -> Pomset {
    match children.len() {
        0 => Pomset::empty(),
        1 => children.pop().unwrap(),
        _ => {
            children.sort_by_cached_key(|c| c.to_string());
            Pomset(Node::Par(children))
        }
    }
}

// Serialization: `.` chains for Seq, `|` for Par; a Par nested in a Seq and a
// Seq nested in a Par are both parenthesized.
impl fmt::Display for Pomset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Node::Empty => f.write_str("1"),
            Node::Primitive(a) => write!(f, "{a}"),
            Node::Seq(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(".")?;
                    }
                    if matches!(c.0, Node::Par(_)) {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "{c}")?;
                    }
                }
                Ok(())
            }
            Node::Par(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    if matches!(c.0, Node::Seq(_)) {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "{c}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Pomset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pomset({self})")
    }
}

impl FromStr for Pomset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pomset> {
        let mut p = PomsetParser {
            chars: s.char_indices().collect(),
            pos: 0,
        };
        let result = p.parse_par()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(result)
    }
}

struct PomsetParser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl PomsetParser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn parse_par(&mut self) -> Result<Pomset> {
        let mut acc = self.parse_seq()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let rhs = self.parse_seq()?;
            acc = par_compose(&acc, &rhs);
        }
        Ok(acc)
    }

    fn parse_seq(&mut self) -> Result<Pomset> {
        let mut acc = self.parse_atom()?;
        while self.peek() == Some('.') {
            self.pos += 1;
            let rhs = self.parse_atom()?;
            acc = seq_compose(&acc, &rhs);
        }
        Ok(acc)
    }

    fn parse_atom(&mut self) -> Result<Pomset> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(Pomset::empty())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_par()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if is_symbol_start(c) => {
                let start = self.pos;
                while self.pos < self.chars.len() && is_symbol_continue(self.chars[self.pos].1) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos]
                    .iter()
                    .map(|&(_, c)| c)
                    .collect();
                Ok(Pomset::primitive(Symbol::new(&name)?))
            }
            Some(_) => Err(self.error("expected a pomset")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
