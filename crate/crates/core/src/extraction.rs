//! From fork-acyclic pomset automata back to expressions, by state
//! elimination generalized to parallel transitions.
//!
//! `e(q, q', Q'')` denotes the pomsets that take `q` to `q'` while every
//! intermediate state of the top-level sequential run lies in `Q''`. With
//! `Q''` empty only single steps remain: a letter, or a fork `{r, s}` whose
//! threads are described by `e_r⁺ ∥ e_s⁺`. Fork components sit strictly
//! lower in the fork hierarchy, so their expressions `e_r⁺` are computed
//! first.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::automaton::{PomsetAutomaton, StateId};
use crate::error::Result;
use crate::expr::Expr;
use crate::normal::normalize;

/// Memoized path expressions of one automaton.
pub struct PathExprTable<'a> {
    pa: &'a PomsetAutomaton,
    memo: HashMap<(StateId, StateId, Vec<StateId>), Arc<Expr>>,
    /// `e_r⁺` for every fork component `r`.
    plus_exprs: BTreeMap<StateId, Arc<Expr>>,
}

// Smart constructors that apply only the zero laws of the congruence.

fn plus(l: Arc<Expr>, r: Arc<Expr>) -> Arc<Expr> {
    match (&*l, &*r) {
        (Expr::Zero, _) => r,
        (_, Expr::Zero) => l,
        _ if Arc::ptr_eq(&l, &r) => l,
        _ => Arc::new(Expr::Plus(l, r)),
    }
}

fn dot(l: Arc<Expr>, r: Arc<Expr>) -> Arc<Expr> {
    if matches!(*l, Expr::Zero) || matches!(*r, Expr::Zero) {
        Arc::new(Expr::Zero)
    } else {
        Arc::new(Expr::Dot(l, r))
    }
}

fn par(l: Arc<Expr>, r: Arc<Expr>) -> Arc<Expr> {
    if matches!(*l, Expr::Zero) || matches!(*r, Expr::Zero) {
        Arc::new(Expr::Zero)
    } else {
        Arc::new(Expr::Par(l, r))
    }
}

fn zero() -> Arc<Expr> {
    Arc::new(Expr::Zero)
}

impl<'a> PathExprTable<'a> {
    /// Prepares the table, computing `e_r⁺` for every fork component in
    /// increasing order of the fork hierarchy.
    pub fn new(pa: &'a PomsetAutomaton) -> Result<Self> {
        let order = pa.fork_order()?;
        let mut table = PathExprTable {
            pa,
            memo: HashMap::new(),
            plus_exprs: BTreeMap::new(),
        };
        let components: BTreeSet<StateId> = pa
            .states()
            .flat_map(|q| pa.support(q))
            .flat_map(|fork| [*fork.lo(), *fork.hi()])
            .collect();
        let mut components: Vec<StateId> = components.into_iter().collect();
        components.sort_by_key(|&r| (order.chain_length_below(r), r));
        for r in components {
            let e = table.plus_expr(r);
            table.plus_exprs.insert(r, e);
        }
        Ok(table)
    }

    /// `e(q, q', Q'')`.
    pub fn path_expr(&mut self, q: StateId, target: StateId, via: &BTreeSet<StateId>) -> Arc<Expr> {
        let via: Vec<StateId> = via.iter().copied().collect();
        self.path(q, target, &via)
    }

    fn path(&mut self, q: StateId, target: StateId, via: &[StateId]) -> Arc<Expr> {
        let key = (q, target, via.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let e = match via.split_first() {
            None => self.single_step(q, target),
            Some((&pivot, rest)) => {
                let direct = self.path(q, target, rest);
                let into = self.path(q, pivot, rest);
                let around = self.path(pivot, pivot, rest);
                let out = self.path(pivot, target, rest);
                let detour = dot(dot(into, Arc::new(Expr::Star(around))), out);
                plus(direct, detour)
            }
        };
        self.memo.insert(key, e.clone());
        e
    }

    fn single_step(&self, q: StateId, target: StateId) -> Arc<Expr> {
        let mut e = zero();
        for (a, &t) in self.pa.alphabet().iter().zip(self.pa.delta_row(q)) {
            if t == target {
                e = plus(e, Arc::new(Expr::Letter(a.clone())));
            }
        }
        for fork in self.pa.support(q) {
            if self.pa.gamma(q, &fork) == target {
                let threads = par(
                    self.plus_exprs[fork.lo()].clone(),
                    self.plus_exprs[fork.hi()].clone(),
                );
                e = plus(e, threads);
            }
        }
        e
    }

    /// `e_q⁺`: the non-empty pomsets accepted from `q`.
    fn plus_expr(&mut self, q: StateId) -> Arc<Expr> {
        let reach = self.pa.reach(q);
        let finals: Vec<StateId> = reach
            .iter()
            .copied()
            .filter(|&t| self.pa.is_final(t))
            .collect();
        let mut e = zero();
        for t in finals {
            e = plus(e, self.path_expr(q, t, &reach));
        }
        e
    }

    /// `e_q`: `e_q⁺`, plus `1` when `q` is final. Not normalized.
    pub fn state_expr(&mut self, q: StateId) -> Arc<Expr> {
        let e = self.plus_expr(q);
        if self.pa.is_final(q) {
            plus(e, Arc::new(Expr::One))
        } else {
            e
        }
    }
}

/// `e(q, q', Q'')` for a one-off query.
pub fn path_expr(
    pa: &PomsetAutomaton,
    q: StateId,
    target: StateId,
    via: &BTreeSet<StateId>,
) -> Result<Expr> {
    let mut table = PathExprTable::new(pa)?;
    Ok(Expr::clone(&table.path_expr(q, target, via)))
}

/// An expression denoting the language of `q`, in normal form.
pub fn pa_to_expr(pa: &PomsetAutomaton, q: StateId) -> Result<Expr> {
    let mut table = PathExprTable::new(pa)?;
    Ok(normalize(&table.state_expr(q)).to_expr())
}
