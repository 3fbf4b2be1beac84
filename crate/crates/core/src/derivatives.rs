//! Sequential and parallel derivatives, and compilation of expressions to
//! pomset automata.
//!
//! `δ(e, a)` describes what remains of `e` after an `a` event at the start.
//! `γ(e, {g, h})` describes what remains after forking into two threads that
//! run `g` and `h` to completion and join. Taken modulo the additive
//! congruence, the states reachable from an expression are finitely many, so
//! the syntactic automaton can be materialized.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::automaton::{bounded_subpa, ForkPair, PomsetAutomaton, StateId, StateSpace};
use crate::error::Result;
use crate::expr::Expr;
use crate::normal::{normalize, NormalExpr};
use crate::symbol::Symbol;

/// `e ⋆ f`: `f` when `e` accepts the empty pomset, `0` otherwise.
fn guard(e: &Expr, f: Expr) -> Expr {
    if e.nullable() {
        f
    } else {
        Expr::Zero
    }
}

/// The sequential derivative, built term by term without simplification.
pub fn delta_deriv(e: &Expr, a: &Symbol) -> Expr {
    delta_shared(&Arc::new(e.clone()), a)
}

fn delta_shared(e: &Arc<Expr>, a: &Symbol) -> Expr {
    match &**e {
        Expr::Zero | Expr::One => Expr::Zero,
        Expr::Letter(b) => {
            if a == b {
                Expr::One
            } else {
                Expr::Zero
            }
        }
        Expr::Plus(l, r) => Expr::plus(delta_shared(l, a), delta_shared(r, a)),
        Expr::Dot(l, r) => Expr::plus(
            Expr::dot(delta_shared(l, a), r.clone()),
            guard(l, delta_shared(r, a)),
        ),
        Expr::Par(l, r) => Expr::plus(guard(l, delta_shared(r, a)), guard(r, delta_shared(l, a))),
        Expr::Star(b) => Expr::dot(delta_shared(b, a), e.clone()),
    }
}

/// The parallel derivative with respect to the fork `{g, h}`, built term by
/// term without simplification. A parallel subterm `l ∥ r` contributes `1`
/// when `{l, r}` and `{g, h}` agree as multisets up to congruence.
pub fn gamma_deriv(e: &Expr, g: &Expr, h: &Expr) -> Expr {
    let fork = ForkPair::new(normalize(g), normalize(h));
    gamma_shared(&Arc::new(e.clone()), &fork)
}

fn gamma_shared(e: &Arc<Expr>, fork: &ForkPair<NormalExpr>) -> Expr {
    match &**e {
        Expr::Zero | Expr::One | Expr::Letter(_) => Expr::Zero,
        Expr::Plus(l, r) => Expr::plus(gamma_shared(l, fork), gamma_shared(r, fork)),
        Expr::Dot(l, r) => Expr::plus(
            Expr::dot(gamma_shared(l, fork), r.clone()),
            guard(l, gamma_shared(r, fork)),
        ),
        Expr::Par(l, r) => {
            let hit = ForkPair::new(normalize(l), normalize(r)) == *fork;
            Expr::plus(
                Expr::plus(
                    if hit { Expr::One } else { Expr::Zero },
                    guard(l, gamma_shared(r, fork)),
                ),
                guard(r, gamma_shared(l, fork)),
            )
        }
        Expr::Star(b) => Expr::dot(gamma_shared(b, fork), e.clone()),
    }
}

/// Forks `{g, h}` for every parallel subterm `g ∥ h` of `e`.
///
/// Every fork with a non-zero parallel derivative at `e` is among them.
pub fn candidate_forks(e: &NormalExpr) -> BTreeSet<ForkPair<NormalExpr>> {
    fn walk(e: &NormalExpr, out: &mut BTreeSet<ForkPair<NormalExpr>>) {
        match e {
            NormalExpr::Sum(ts) => ts.iter().for_each(|t| walk(t, out)),
            NormalExpr::One | NormalExpr::Letter(_) => {}
            NormalExpr::Dot(l, r) => {
                walk(l, out);
                walk(r, out);
            }
            NormalExpr::Par(l, r) => {
                out.insert(ForkPair::new((**l).clone(), (**r).clone()));
                walk(l, out);
                walk(r, out);
            }
            NormalExpr::Star(b) => walk(b, out),
        }
    }
    let mut out = BTreeSet::new();
    walk(e, &mut out);
    out
}

fn normal_guard(e: &NormalExpr, f: NormalExpr) -> NormalExpr {
    if e.nullable() {
        f
    } else {
        NormalExpr::zero()
    }
}

/// `normalize(delta_deriv(e, a))`, computed on the normal form directly.
fn delta_normal(e: &NormalExpr, a: &Symbol) -> NormalExpr {
    match e {
        NormalExpr::Sum(ts) => NormalExpr::sum(ts.iter().map(|t| delta_normal(t, a))),
        NormalExpr::One => NormalExpr::zero(),
        NormalExpr::Letter(b) => {
            if a == b {
                NormalExpr::One
            } else {
                NormalExpr::zero()
            }
        }
        NormalExpr::Dot(l, r) => NormalExpr::sum([
            NormalExpr::dot(delta_normal(l, a), (**r).clone()),
            normal_guard(l, delta_normal(r, a)),
        ]),
        NormalExpr::Par(l, r) => NormalExpr::sum([
            normal_guard(l, delta_normal(r, a)),
            normal_guard(r, delta_normal(l, a)),
        ]),
        NormalExpr::Star(b) => NormalExpr::dot(delta_normal(b, a), e.clone()),
    }
}

/// `normalize(gamma_deriv(e, φ))`, computed on the normal form directly.
fn gamma_normal(e: &NormalExpr, fork: &ForkPair<NormalExpr>) -> NormalExpr {
    match e {
        NormalExpr::Sum(ts) => NormalExpr::sum(ts.iter().map(|t| gamma_normal(t, fork))),
        NormalExpr::One | NormalExpr::Letter(_) => NormalExpr::zero(),
        NormalExpr::Dot(l, r) => NormalExpr::sum([
            NormalExpr::dot(gamma_normal(l, fork), (**r).clone()),
            normal_guard(l, gamma_normal(r, fork)),
        ]),
        NormalExpr::Par(l, r) => {
            let hit =
                fork.lo() == &**l && fork.hi() == &**r || fork.lo() == &**r && fork.hi() == &**l;
            NormalExpr::sum([
                if hit {
                    NormalExpr::One
                } else {
                    NormalExpr::zero()
                },
                normal_guard(l, gamma_normal(r, fork)),
                normal_guard(r, gamma_normal(l, fork)),
            ])
        }
        NormalExpr::Star(b) => NormalExpr::dot(gamma_normal(b, fork), e.clone()),
    }
}

/// The syntactic pomset automaton quotiented by the additive congruence:
/// states are normal forms, `[0]` is the sink, and a state is final when it
/// accepts the empty pomset.
#[derive(Debug, Clone)]
pub struct SyntacticStateSpace {
    alphabet: Vec<Symbol>,
}

impl SyntacticStateSpace {
    pub fn new<I: IntoIterator<Item = Symbol>>(alphabet: I) -> Self {
        let set: BTreeSet<Symbol> = alphabet.into_iter().collect();
        SyntacticStateSpace {
            alphabet: set.into_iter().collect(),
        }
    }
}

impl StateSpace for SyntacticStateSpace {
    type State = NormalExpr;

    fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    fn sink(&self) -> NormalExpr {
        NormalExpr::zero()
    }

    fn is_final(&self, q: &NormalExpr) -> bool {
        q.nullable()
    }

    fn delta(&self, q: &NormalExpr, a: &Symbol) -> NormalExpr {
        delta_normal(q, a)
    }

    fn gamma(&self, q: &NormalExpr, fork: &ForkPair<NormalExpr>) -> NormalExpr {
        if fork.lo().is_zero() || fork.hi().is_zero() {
            return NormalExpr::zero();
        }
        gamma_normal(q, fork)
    }

    fn fork_candidates(&self, q: &NormalExpr) -> Vec<ForkPair<NormalExpr>> {
        candidate_forks(q).into_iter().collect()
    }

    fn state_name(&self, q: &NormalExpr) -> String {
        q.to_string()
    }
}

/// An expression compiled to an explicit automaton.
#[derive(Debug, Clone)]
pub struct CompiledPA {
    pub pa: PomsetAutomaton,
    pub start: StateId,
    /// The normal form behind each state; state names are their
    /// serializations.
    pub states: Vec<NormalExpr>,
}

impl CompiledPA {
    pub fn state_labels(&self) -> &[String] {
        self.pa.names()
    }
}

/// Compiles `e` over its own alphabet.
pub fn expr_to_pa(e: &Expr, cap: usize) -> Result<CompiledPA> {
    expr_to_pa_over(e, e.alphabet(), cap)
}

/// Compiles `e` over `alphabet` together with the symbols of `e`.
pub fn expr_to_pa_over<I: IntoIterator<Item = Symbol>>(
    e: &Expr,
    alphabet: I,
    cap: usize,
) -> Result<CompiledPA> {
    let space = SyntacticStateSpace::new(alphabet.into_iter().chain(e.alphabet()));
    let m = bounded_subpa(&space, &normalize(e), cap)?;
    Ok(CompiledPA {
        pa: m.pa,
        start: m.start,
        states: m.states,
    })
}
