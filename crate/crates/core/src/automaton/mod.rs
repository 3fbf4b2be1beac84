//! Pomset automata.
//!
//! A pomset automaton has a total sequential transition function `δ`, a
//! parallel transition function `γ` taking a state and an unordered pair of
//! states (the starting points of two forked threads) to the join state, and
//! a set of final states. A designated non-final sink absorbs every
//! transition.
//!
//! [`StateSpace`] abstracts over the transition structure so that both
//! explicit tables ([`PomsetAutomaton`]) and lazily unfolded automata (the
//! syntactic automaton of [`crate::derivatives`]) share membership and
//! materialization.

mod dot;
mod explicit;
mod json;
mod membership;

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

pub use explicit::{ForkOrder, PomsetAutomaton, StateId};
pub use membership::{membership, Tracer};

use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// Upper bound on materialized states unless a caller asks otherwise.
pub const DEFAULT_STATE_CAP: usize = 10_000;

/// An unordered pair of states `{lo, hi}`, stored with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ForkPair<T> {
    lo: T,
    hi: T,
}

impl<T: Ord> ForkPair<T> {
    pub fn new(a: T, b: T) -> Self {
        if a <= b {
            ForkPair { lo: a, hi: b }
        } else {
            ForkPair { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo == x || &self.hi == x
    }

    pub fn map<U: Ord>(&self, f: impl Fn(&T) -> U) -> ForkPair<U> {
        ForkPair::new(f(&self.lo), f(&self.hi))
    }
}

/// The transition structure of a pomset automaton.
///
/// Implementors guarantee that `delta(sink, a)` and `gamma(sink, φ)` are the
/// sink, that the sink is not final, and that `gamma(q, φ)` is the sink for
/// every `φ` outside `fork_candidates(q)`.
pub trait StateSpace {
    type State: Clone + Eq + Ord + Hash + Debug;

    fn alphabet(&self) -> &[Symbol];
    fn sink(&self) -> Self::State;
    fn is_final(&self, q: &Self::State) -> bool;
    fn delta(&self, q: &Self::State, a: &Symbol) -> Self::State;
    fn gamma(&self, q: &Self::State, fork: &ForkPair<Self::State>) -> Self::State;
    /// A finite superset of the support of `q`, in a deterministic order.
    fn fork_candidates(&self, q: &Self::State) -> Vec<ForkPair<Self::State>>;
    fn state_name(&self, q: &Self::State) -> String;
}

/// The support of `q` in a state space: candidate forks whose components and
/// join are all distinct from the sink.
pub fn support_of<S: StateSpace>(space: &S, q: &S::State) -> Vec<ForkPair<S::State>> {
    let sink = space.sink();
    if *q == sink {
        return Vec::new();
    }
    space
        .fork_candidates(q)
        .into_iter()
        .filter(|fork| !fork.contains(&sink) && space.gamma(q, fork) != sink)
        .collect()
}

/// A finite closed fragment of a state space, materialized as an explicit
/// automaton.
#[derive(Debug, Clone)]
pub struct Materialized<T> {
    pub pa: PomsetAutomaton,
    pub start: StateId,
    /// The original state behind each explicit state index.
    pub states: Vec<T>,
}

/// Materializes the least closed set of states containing `q`: the sink, the
/// reach of `q`, and recursively the closed sets of every supported fork
/// component met along the way.
///
/// Fails with [`Error::CapExceeded`] once more than `cap` states have been
/// discovered.
pub fn bounded_subpa<S: StateSpace>(
    space: &S,
    q: &S::State,
    cap: usize,
) -> Result<Materialized<S::State>> {
    let sink = space.sink();
    let mut index: HashMap<S::State, StateId> = HashMap::new();
    let mut states: Vec<S::State> = Vec::new();
    let mut queue = VecDeque::new();

    let mut intern = |x: &S::State,
                      states: &mut Vec<S::State>,
                      queue: &mut VecDeque<StateId>|
     -> Result<StateId> {
        if let Some(&i) = index.get(x) {
            return Ok(i);
        }
        if states.len() >= cap {
            return Err(Error::CapExceeded { cap });
        }
        let i = states.len();
        index.insert(x.clone(), i);
        states.push(x.clone());
        queue.push_back(i);
        Ok(i)
    };

    let start = intern(q, &mut states, &mut queue)?;
    let sink_id = intern(&sink, &mut states, &mut queue)?;

    let alphabet = space.alphabet().to_vec();
    let mut delta: Vec<Vec<StateId>> = Vec::new();
    let mut gamma: Vec<Vec<(ForkPair<StateId>, StateId)>> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let x = states[i].clone();
        let mut row = Vec::with_capacity(alphabet.len());
        for a in &alphabet {
            let y = space.delta(&x, a);
            row.push(intern(&y, &mut states, &mut queue)?);
        }
        let mut forks = Vec::new();
        for fork in support_of(space, &x) {
            let r = intern(fork.lo(), &mut states, &mut queue)?;
            let s = intern(fork.hi(), &mut states, &mut queue)?;
            let t = intern(&space.gamma(&x, &fork), &mut states, &mut queue)?;
            forks.push((ForkPair::new(r, s), t));
        }
        if delta.len() <= i {
            delta.resize(i + 1, Vec::new());
            gamma.resize(i + 1, Vec::new());
        }
        delta[i] = row;
        gamma[i] = forks;
    }

    let names = states.iter().map(|x| space.state_name(x)).collect();
    let finals = (0..states.len())
        .filter(|&i| space.is_final(&states[i]))
        .collect();
    let pa = PomsetAutomaton::new(
        alphabet,
        names,
        sink_id,
        finals,
        delta,
        gamma.into_iter().map(|g| g.into_iter().collect()).collect(),
    )?;
    Ok(Materialized { pa, start, states })
}
