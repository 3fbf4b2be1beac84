use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{ForkPair, StateSpace};
use crate::error::{Error, Result};
use crate::symbol::Symbol;

pub type StateId = usize;

/// A finite pomset automaton given by explicit tables.
///
/// `δ` is total over states × alphabet. `γ` is stored sparsely: a missing
/// entry means the sink. Symbols outside the alphabet lead to the sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PomsetAutomaton {
    alphabet: Vec<Symbol>,
    names: Vec<String>,
    sink: StateId,
    finals: BTreeSet<StateId>,
    delta: Vec<Vec<StateId>>,
    gamma: Vec<BTreeMap<ForkPair<StateId>, StateId>>,
}

impl PomsetAutomaton {
    /// Builds and validates an automaton. `delta[q][i]` is the successor of
    /// `q` on `alphabet[i]`; `gamma[q]` lists the non-sink fork entries of
    /// `q`. Entries of `gamma` that target the sink are dropped.
    pub fn new(
        alphabet: Vec<Symbol>,
        names: Vec<String>,
        sink: StateId,
        finals: BTreeSet<StateId>,
        delta: Vec<Vec<StateId>>,
        gamma: Vec<BTreeMap<ForkPair<StateId>, StateId>>,
    ) -> Result<PomsetAutomaton> {
        let n = names.len();
        let invalid = |msg: String| Err(Error::InvalidAutomaton(msg));
        if sink >= n {
            return invalid("sink is not a state".into());
        }
        if names.iter().collect::<BTreeSet<_>>().len() != n {
            return invalid("duplicate state name".into());
        }
        if alphabet.iter().collect::<BTreeSet<_>>().len() != alphabet.len() {
            return invalid("duplicate alphabet symbol".into());
        }
        if finals.contains(&sink) {
            return invalid("the sink must not be final".into());
        }
        if finals.iter().any(|&q| q >= n) {
            return invalid("final state out of range".into());
        }
        if delta.len() != n || gamma.len() != n {
            return invalid("transition tables do not cover every state".into());
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return invalid(format!("state `{}` lacks sequential transitions", names[q]));
            }
            if row.iter().any(|&t| t >= n) {
                return invalid("sequential target out of range".into());
            }
        }
        if delta[sink].iter().any(|&t| t != sink) {
            return invalid("sequential transitions of the sink must loop".into());
        }
        let mut gamma = gamma;
        for (q, entries) in gamma.iter_mut().enumerate() {
            entries.retain(|_, t| *t != sink);
            if q == sink && !entries.is_empty() {
                return invalid("the sink has no parallel transitions".into());
            }
            for (fork, &t) in entries.iter() {
                if *fork.hi() >= n || t >= n {
                    return invalid("parallel transition out of range".into());
                }
            }
        }
        Ok(PomsetAutomaton {
            alphabet,
            names,
            sink,
            finals,
            delta,
            gamma,
        })
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.names.len()
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_by_name(&self, name: &str) -> Result<StateId> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn sink(&self) -> StateId {
        self.sink
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn delta(&self, q: StateId, a: &Symbol) -> StateId {
        match self
            .alphabet
            .binary_search(a)
            .ok()
            .or_else(|| self.alphabet.iter().position(|b| b == a))
        {
            Some(i) => self.delta[q][i],
            None => self.sink,
        }
    }

    /// Successors of `q`, one per alphabet symbol (in alphabet order).
    pub fn delta_row(&self, q: StateId) -> &[StateId] {
        &self.delta[q]
    }

    pub fn gamma(&self, q: StateId, fork: &ForkPair<StateId>) -> StateId {
        self.gamma[q].get(fork).copied().unwrap_or(self.sink)
    }

    /// Stored (non-sink) parallel transitions of `q`.
    pub fn gamma_entries(&self, q: StateId) -> &BTreeMap<ForkPair<StateId>, StateId> {
        &self.gamma[q]
    }

    /// Forks `{r, s}` at `q` whose join and components all differ from the
    /// sink.
    pub fn support(&self, q: StateId) -> BTreeSet<ForkPair<StateId>> {
        self.gamma[q]
            .iter()
            .filter(|(fork, &t)| t != self.sink && !fork.contains(&self.sink))
            .map(|(fork, _)| fork.clone())
            .collect()
    }

    fn supported(&self, q: StateId) -> impl Iterator<Item = (&ForkPair<StateId>, StateId)> + '_ {
        self.gamma[q]
            .iter()
            .filter(move |(fork, &t)| t != self.sink && !fork.contains(&self.sink))
            .map(|(fork, &t)| (fork, t))
    }

    /// Least set containing `q` and closed under sequential transitions and
    /// supported joins.
    pub fn reach(&self, q: StateId) -> BTreeSet<StateId> {
        let mut seen = BTreeSet::from([q]);
        let mut stack = vec![q];
        while let Some(x) = stack.pop() {
            let succ = self.delta[x]
                .iter()
                .copied()
                .chain(self.supported(x).map(|(_, t)| t));
            for y in succ.collect::<Vec<_>>() {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn is_closed(&self, set: &BTreeSet<StateId>) -> bool {
        self.closure_violation(set).is_none()
    }

    fn closure_violation(&self, set: &BTreeSet<StateId>) -> Option<String> {
        if !set.contains(&self.sink) {
            return Some("the sink is missing".into());
        }
        for &q in set {
            for (i, &t) in self.delta[q].iter().enumerate() {
                if !set.contains(&t) {
                    return Some(format!(
                        "`{}` --{}--> `{}` leaves the set",
                        self.names[q], self.alphabet[i], self.names[t]
                    ));
                }
            }
            for (fork, t) in self.supported(q) {
                if !set.contains(&t) {
                    return Some(format!(
                        "join `{}` of `{}` leaves the set",
                        self.names[t], self.names[q]
                    ));
                }
                for c in [fork.lo(), fork.hi()] {
                    if !set.contains(c) {
                        return Some(format!(
                            "fork component `{}` of `{}` is missing",
                            self.names[*c], self.names[q]
                        ));
                    }
                }
            }
        }
        None
    }

    /// The generated sub-automaton on a closed set of states. State indices
    /// are renumbered in increasing order; names are kept.
    pub fn restrict(&self, set: &BTreeSet<StateId>) -> Result<PomsetAutomaton> {
        if let Some(why) = self.closure_violation(set) {
            return Err(Error::NotClosed(why));
        }
        let renumber: BTreeMap<StateId, StateId> =
            set.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let names = set.iter().map(|&q| self.names[q].clone()).collect();
        let finals = set
            .iter()
            .filter(|q| self.finals.contains(q))
            .map(|q| renumber[q])
            .collect();
        let delta = set
            .iter()
            .map(|&q| self.delta[q].iter().map(|t| renumber[t]).collect())
            .collect();
        let gamma = set
            .iter()
            .map(|&q| {
                self.supported(q)
                    .map(|(fork, t)| (fork.map(|c| renumber[c]), renumber[&t]))
                    .collect()
            })
            .collect();
        PomsetAutomaton::new(
            self.alphabet.clone(),
            names,
            renumber[&self.sink],
            finals,
            delta,
            gamma,
        )
    }

    /// Successors in the dependency graph behind the fork hierarchy: every
    /// sequential successor, every supported join, and every supported fork
    /// component. The flag marks fork-component edges.
    fn dependency_edges(&self, q: StateId) -> Vec<(StateId, bool)> {
        let mut out: Vec<(StateId, bool)> = self.delta[q].iter().map(|&t| (t, false)).collect();
        for (fork, t) in self.supported(q) {
            out.push((t, false));
            out.push((*fork.lo(), true));
            out.push((*fork.hi(), true));
        }
        out
    }

    /// Computes the least fork hierarchy, failing if it is reflexive
    /// anywhere.
    ///
    /// `r ≺ q` holds exactly when some dependency path from `q` ends with a
    /// fork-component edge into `r`: fork components sit below the forking
    /// state, and that fact propagates backwards along transitions and
    /// supported joins.
    pub fn fork_order(&self) -> Result<ForkOrder> {
        let n = self.num_states();
        let mut below = vec![BTreeSet::new(); n];
        for (q, slot) in below.iter_mut().enumerate() {
            let mut seen = vec![false; n];
            seen[q] = true;
            let mut stack = vec![q];
            while let Some(x) = stack.pop() {
                for (y, is_fork) in self.dependency_edges(x) {
                    if is_fork {
                        slot.insert(y);
                    }
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if let Some(q) = (0..n).find(|&q| below[q].contains(&q)) {
            let cycle = self.fork_cycle_through(q);
            return Err(Error::NotForkAcyclic {
                cycle: cycle.into_iter().map(|x| self.names[x].clone()).collect(),
            });
        }
        Ok(ForkOrder { below })
    }

    /// A dependency cycle through `q` containing a fork edge, as a state
    /// sequence starting and ending at the forking state.
    fn fork_cycle_through(&self, q: StateId) -> Vec<StateId> {
        // q ≺ q: some x reachable from q forks into a component c from which
        // q is reachable again. Report x -> c -> ... -> x.
        let reachable_from_q = self.dependency_paths(q);
        for x in self.states() {
            if !reachable_from_q.contains_key(&x) {
                continue;
            }
            for (fork, _) in self.supported(x) {
                for &c in [fork.lo(), fork.hi()] {
                    let from_c = self.dependency_paths(c);
                    if from_c.contains_key(&x) {
                        let mut cycle = vec![x];
                        cycle.extend(path_to(&from_c, c, x));
                        return cycle;
                    }
                }
            }
        }
        vec![q, q]
    }

    /// BFS parent links over dependency edges.
    fn dependency_paths(&self, from: StateId) -> BTreeMap<StateId, StateId> {
        let mut parent = BTreeMap::from([(from, from)]);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for (y, _) in self.dependency_edges(x) {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(y) {
                    e.insert(x);
                    queue.push_back(y);
                }
            }
        }
        parent
    }
}

fn path_to(parent: &BTreeMap<StateId, StateId>, from: StateId, to: StateId) -> Vec<StateId> {
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[&cur];
        path.push(cur);
    }
    path.reverse();
    if from == to {
        // a fork component that is the forking state itself
        path.push(to);
    }
    path
}

/// A strict, transitively closed order placing fork components below the
/// states that fork into them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForkOrder {
    below: Vec<BTreeSet<StateId>>,
}

impl ForkOrder {
    /// Whether `lower ≺ upper`.
    pub fn precedes(&self, lower: StateId, upper: StateId) -> bool {
        self.below[upper].contains(&lower)
    }

    pub fn below(&self, q: StateId) -> &BTreeSet<StateId> {
        &self.below[q]
    }

    /// All pairs `(lower, upper)` with `lower ≺ upper`.
    pub fn pairs(&self) -> Vec<(StateId, StateId)> {
        self.below
            .iter()
            .enumerate()
            .flat_map(|(hi, lows)| lows.iter().map(move |&lo| (lo, hi)))
            .collect()
    }

    /// Length of the longest descending chain `r₁ ≺ … ≺ rₘ ≺ q` below `q`.
    pub fn chain_length_below(&self, q: StateId) -> usize {
        let mut memo = vec![None; self.below.len()];
        self.height(q, &mut memo)
    }

    fn height(&self, q: StateId, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(h) = memo[q] {
            return h;
        }
        let below: Vec<StateId> = self.below[q].iter().copied().collect();
        let h = below
            .into_iter()
            .map(|r| self.height(r, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[q] = Some(h);
        h
    }

    /// States ordered so that everything below a state comes before it.
    pub fn topological(&self) -> Vec<StateId> {
        let mut memo = vec![None; self.below.len()];
        let mut order: Vec<StateId> = (0..self.below.len()).collect();
        let heights: Vec<usize> = order.iter().map(|&q| self.height(q, &mut memo)).collect();
        order.sort_by_key(|&q| (heights[q], q));
        order
    }
}

impl StateSpace for PomsetAutomaton {
    type State = StateId;

    fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    fn sink(&self) -> StateId {
        self.sink
    }

    fn is_final(&self, q: &StateId) -> bool {
        self.finals.contains(q)
    }

    fn delta(&self, q: &StateId, a: &Symbol) -> StateId {
        PomsetAutomaton::delta(self, *q, a)
    }

    fn gamma(&self, q: &StateId, fork: &ForkPair<StateId>) -> StateId {
        PomsetAutomaton::gamma(self, *q, fork)
    }

    fn fork_candidates(&self, q: &StateId) -> Vec<ForkPair<StateId>> {
        self.gamma[*q].keys().cloned().collect()
    }

    fn state_name(&self, q: &StateId) -> String {
        self.names[*q].clone()
    }
}
