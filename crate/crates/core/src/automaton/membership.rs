use std::collections::{BTreeSet, HashMap};

use super::StateSpace;
use crate::pomset::{Factorization, Pomset};

/// Computes the trace relation `q --u--> q'` of a state space.
///
/// Results are memoized per `(state, pomset)`, so one tracer can answer many
/// queries over the same automaton cheaply. Targets are exact except that
/// the sink may be missing from them: forks outside the candidate set are
/// not explored, and they can only lead to the sink.
pub struct Tracer<'a, S: StateSpace> {
    space: &'a S,
    memo: HashMap<(S::State, Pomset), BTreeSet<S::State>>,
}

impl<'a, S: StateSpace> Tracer<'a, S> {
    pub fn new(space: &'a S) -> Self {
        Tracer {
            space,
            memo: HashMap::new(),
        }
    }

    /// Whether some trace for `u` from `q` ends in a final state.
    pub fn accepts(&mut self, q: &S::State, u: &Pomset) -> bool {
        self.targets(q, u).iter().any(|t| self.space.is_final(t))
    }

    /// States `q'` with `q --u--> q'`.
    pub fn targets(&mut self, q: &S::State, u: &Pomset) -> BTreeSet<S::State> {
        if u.is_empty() {
            return BTreeSet::from([q.clone()]);
        }
        let sink = self.space.sink();
        if *q == sink {
            return BTreeSet::from([sink]);
        }
        let key = (q.clone(), u.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let result = match u.factorize().expect("non-empty pomset") {
            Factorization::Primitive(a) => BTreeSet::from([self.space.delta(q, a)]),
            Factorization::SeqSplit(parts) => {
                let mut current = BTreeSet::from([q.clone()]);
                for part in parts {
                    let mut next = BTreeSet::new();
                    for x in &current {
                        next.extend(self.targets(x, part));
                    }
                    current = next;
                }
                current
            }
            Factorization::ParSplit(parts) => self.parallel_targets(q, parts),
        };
        self.memo.insert(key, result.clone());
        result
    }

    fn parallel_targets(&mut self, q: &S::State, parts: &[Pomset]) -> BTreeSet<S::State> {
        let forks = self.space.fork_candidates(q);
        let mut out = BTreeSet::new();
        if forks.is_empty() {
            return out;
        }
        let n = parts.len();
        // Each split into two non-empty halves, with part 0 always on the
        // left; both assignments of halves to fork components are tried.
        for mask in (1u64..(1 << n) - 1).filter(|m| m & 1 == 1) {
            let left: Vec<&Pomset> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &parts[i])
                .collect();
            let right: Vec<&Pomset> = (0..n)
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| &parts[i])
                .collect();
            let (u, v) = (Pomset::par_all(left), Pomset::par_all(right));
            for fork in &forks {
                let (r, s) = (fork.lo(), fork.hi());
                if (self.accepts(r, &u) && self.accepts(s, &v))
                    || (self.accepts(r, &v) && self.accepts(s, &u))
                {
                    out.insert(self.space.gamma(q, fork));
                }
            }
        }
        out
    }
}

/// Whether the pomset `u` is accepted from state `q`.
pub fn membership<S: StateSpace>(space: &S, q: &S::State, u: &Pomset) -> bool {
    Tracer::new(space).accepts(q, u)
}
