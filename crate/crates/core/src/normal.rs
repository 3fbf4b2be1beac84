//! Normal forms modulo the additive congruence.
//!
//! The congruence identifies terms up to associativity, commutativity and
//! idempotence of `+`, the unit `0` of `+`, and annihilation of `·` and `∥`
//! by `0`. A [`NormalExpr`] picks one representative per class: sums are
//! n-ary, flattened, sorted and duplicate-free, and the empty sum stands for
//! `0`. Sequential and parallel composition stay binary and ordered.

use std::fmt;

use crate::expr::Expr;
use crate::symbol::Symbol;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormalExpr {
    /// Sorted, duplicate-free summands, none of which is a sum. Holds either
    /// no summand (the class of `0`) or at least two.
    Sum(Vec<NormalExpr>),
    One,
    Letter(Symbol),
    /// Neither operand is `0`.
    Dot(Box<NormalExpr>, Box<NormalExpr>),
    /// Neither operand is `0`.
    Par(Box<NormalExpr>, Box<NormalExpr>),
    Star(Box<NormalExpr>),
}

impl NormalExpr {
    pub fn zero() -> NormalExpr {
        NormalExpr::Sum(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NormalExpr::Sum(ts) if ts.is_empty())
    }

    /// Normalizing sum of a collection of normal forms.
    pub fn sum<I: IntoIterator<Item = NormalExpr>>(terms: I) -> NormalExpr {
        let mut summands = Vec::new();
        for t in terms {
            match t {
                NormalExpr::Sum(ts) => summands.extend(ts),
                other => summands.push(other),
            }
        }
        summands.sort();
        summands.dedup();
        if summands.len() == 1 {
            summands.pop().unwrap()
        } else {
            NormalExpr::Sum(summands)
        }
    }

    pub fn dot(lhs: NormalExpr, rhs: NormalExpr) -> NormalExpr {
        if lhs.is_zero() || rhs.is_zero() {
            NormalExpr::zero()
        } else {
            NormalExpr::Dot(Box::new(lhs), Box::new(rhs))
        }
    }

    pub fn par(lhs: NormalExpr, rhs: NormalExpr) -> NormalExpr {
        if lhs.is_zero() || rhs.is_zero() {
            NormalExpr::zero()
        } else {
            NormalExpr::Par(Box::new(lhs), Box::new(rhs))
        }
    }

    pub fn star(body: NormalExpr) -> NormalExpr {
        NormalExpr::Star(Box::new(body))
    }

    /// The representative as a plain expression; sums become left-nested.
    pub fn to_expr(&self) -> Expr {
        match self {
            NormalExpr::Sum(ts) => Expr::sum(ts.iter().map(NormalExpr::to_expr)),
            NormalExpr::One => Expr::One,
            NormalExpr::Letter(a) => Expr::Letter(a.clone()),
            NormalExpr::Dot(l, r) => Expr::dot(l.to_expr(), r.to_expr()),
            NormalExpr::Par(l, r) => Expr::par(l.to_expr(), r.to_expr()),
            NormalExpr::Star(b) => Expr::star(b.to_expr()),
        }
    }

    pub fn nullable(&self) -> bool {
        match self {
            NormalExpr::Sum(ts) => ts.iter().any(NormalExpr::nullable),
            NormalExpr::One | NormalExpr::Star(_) => true,
            NormalExpr::Letter(_) => false,
            NormalExpr::Dot(l, r) | NormalExpr::Par(l, r) => l.nullable() && r.nullable(),
        }
    }

    pub fn parallel_depth(&self) -> usize {
        match self {
            NormalExpr::Sum(ts) => ts.iter().map(NormalExpr::parallel_depth).max().unwrap_or(0),
            NormalExpr::One => 0,
            NormalExpr::Letter(_) => 1,
            NormalExpr::Dot(l, r) => l.parallel_depth().max(r.parallel_depth()),
            NormalExpr::Par(l, r) => l.parallel_depth().max(r.parallel_depth()) + 1,
            NormalExpr::Star(b) => b.parallel_depth(),
        }
    }
}

pub fn normalize(e: &Expr) -> NormalExpr {
    match e {
        Expr::Zero => NormalExpr::zero(),
        Expr::One => NormalExpr::One,
        Expr::Letter(a) => NormalExpr::Letter(a.clone()),
        Expr::Plus(l, r) => NormalExpr::sum([normalize(l), normalize(r)]),
        Expr::Dot(l, r) => NormalExpr::dot(normalize(l), normalize(r)),
        Expr::Par(l, r) => NormalExpr::par(normalize(l), normalize(r)),
        Expr::Star(b) => NormalExpr::star(normalize(b)),
    }
}

impl fmt::Display for NormalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl fmt::Debug for NormalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
