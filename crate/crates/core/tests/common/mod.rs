//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use pomset_kleene::automaton::{ForkPair, PomsetAutomaton, StateId};
use pomset_kleene::expr::Expr;
use pomset_kleene::poset::LabeledPoset;
use pomset_kleene::Symbol;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sym(s: &str) -> Symbol {
    Symbol::new(s).unwrap()
}

pub fn alphabet(n: usize) -> Vec<Symbol> {
    ["a", "b", "c"][..n].iter().map(|s| sym(s)).collect()
}

pub fn expr(s: &str) -> Expr {
    s.parse().unwrap()
}

/// A random expression with exactly `size` syntax nodes.
pub fn random_expr_of_size(rng: &mut TestRng, sigma: &[Symbol], size: usize) -> Expr {
    if size <= 1 {
        return match rng.gen_range(0..6) {
            0 => Expr::Zero,
            1 => Expr::One,
            _ => Expr::Letter(sigma.choose(rng).unwrap().clone()),
        };
    }
    if size == 2 || rng.gen_bool(0.2) {
        return Expr::star(random_expr_of_size(rng, sigma, size - 1));
    }
    let left = rng.gen_range(1..size - 1);
    let (l, r) = (
        random_expr_of_size(rng, sigma, left),
        random_expr_of_size(rng, sigma, size - 1 - left),
    );
    match rng.gen_range(0..3) {
        0 => Expr::plus(l, r),
        1 => Expr::dot(l, r),
        _ => Expr::par(l, r),
    }
}

/// A random expression of size at most `max_size` over at most `max_sigma`
/// letters.
pub fn random_expr(rng: &mut TestRng, max_sigma: usize, max_size: usize) -> Expr {
    let sigma = alphabet(rng.gen_range(1..=max_sigma));
    let size = rng.gen_range(1..=max_size);
    random_expr_of_size(rng, &sigma, size)
}

/// A batch of random expressions that together use every constructor.
pub fn random_exprs(seed: u64, count: usize, max_sigma: usize, max_size: usize) -> Vec<Expr> {
    let mut r = rng(seed);
    let mut out: Vec<Expr> = vec![
        expr("0"),
        expr("1"),
        expr("a"),
        expr("a + b"),
        expr("a.b"),
        expr("a || b"),
        expr("a*"),
    ];
    while out.len() < count {
        out.push(random_expr(&mut r, max_sigma, max_size));
    }
    out
}

/// Rewrites `e` into a congruent expression by applying the axioms of the
/// additive congruence at random positions.
pub fn congruent_variant(rng: &mut TestRng, e: &Expr, sigma: &[Symbol]) -> Expr {
    let inner = match e {
        Expr::Zero | Expr::One | Expr::Letter(_) => e.clone(),
        Expr::Plus(l, r) => Expr::plus(
            congruent_variant(rng, l, sigma),
            congruent_variant(rng, r, sigma),
        ),
        Expr::Dot(l, r) => Expr::dot(
            congruent_variant(rng, l, sigma),
            congruent_variant(rng, r, sigma),
        ),
        Expr::Par(l, r) => Expr::par(
            congruent_variant(rng, l, sigma),
            congruent_variant(rng, r, sigma),
        ),
        Expr::Star(b) => Expr::star(congruent_variant(rng, b, sigma)),
    };
    match rng.gen_range(0..12) {
        0 => Expr::plus(inner.clone(), inner),
        1 => Expr::plus(inner, Expr::Zero),
        2 => Expr::plus(Expr::Zero, inner),
        3 => match &inner {
            Expr::Plus(l, r) => Expr::Plus(r.clone(), l.clone()),
            _ => inner,
        },
        4 => match &inner {
            Expr::Plus(l, r) => match &**l {
                Expr::Plus(a, b) => Expr::plus(a.clone(), Expr::Plus(b.clone(), r.clone())),
                _ => inner,
            },
            _ => inner,
        },
        5 => match &inner {
            Expr::Zero => {
                let junk = random_expr_of_size(rng, sigma, 2);
                match rng.gen_range(0..4) {
                    0 => Expr::dot(Expr::Zero, junk),
                    1 => Expr::dot(junk, Expr::Zero),
                    2 => Expr::par(Expr::Zero, junk),
                    _ => Expr::par(junk, Expr::Zero),
                }
            }
            _ => inner,
        },
        6 => match &inner {
            Expr::Dot(l, _) | Expr::Par(l, _) if **l == Expr::Zero => Expr::Zero,
            Expr::Dot(_, r) | Expr::Par(_, r) if **r == Expr::Zero => Expr::Zero,
            _ => inner,
        },
        _ => inner,
    }
}

/// A random explicit automaton with `n` states (the last is the sink).
pub fn random_pa(
    rng: &mut TestRng,
    n: usize,
    sigma: &[Symbol],
    fork_density: f64,
) -> PomsetAutomaton {
    let sink = n - 1;
    let names = (0..n)
        .map(|i| {
            if i == sink {
                "bot".to_string()
            } else {
                format!("q{i}")
            }
        })
        .collect();
    let finals = (0..sink).filter(|_| rng.gen_bool(0.4)).collect();
    let delta = (0..n)
        .map(|q| {
            sigma
                .iter()
                .map(|_| {
                    if q == sink || rng.gen_bool(0.3) {
                        sink
                    } else {
                        rng.gen_range(0..n)
                    }
                })
                .collect()
        })
        .collect();
    let gamma = (0..n)
        .map(|q| {
            let mut entries = BTreeMap::new();
            if q != sink {
                for r in 0..sink {
                    for s in r..sink {
                        if rng.gen_bool(fork_density) {
                            entries.insert(ForkPair::new(r, s), rng.gen_range(0..n));
                        }
                    }
                }
            }
            entries
        })
        .collect();
    PomsetAutomaton::new(sigma.to_vec(), names, sink, finals, delta, gamma).unwrap()
}

/// A random fork-acyclic automaton, by rejection sampling.
pub fn random_fork_acyclic_pa(rng: &mut TestRng, n: usize, sigma: &[Symbol]) -> PomsetAutomaton {
    loop {
        let pa = random_pa(rng, n, sigma, 0.15);
        if pa.fork_order().is_ok() {
            return pa;
        }
    }
}

/// The least closed set containing `seed` (computed from the rules, not via
/// the library's closure code).
pub fn close(pa: &PomsetAutomaton, seed: &BTreeSet<StateId>) -> BTreeSet<StateId> {
    let mut set = seed.clone();
    set.insert(pa.sink());
    loop {
        let mut next = set.clone();
        for &q in &set {
            next.extend(pa.delta_row(q).iter().copied());
            for (fork, &t) in pa.gamma_entries(q) {
                if t != pa.sink() && !fork.contains(&pa.sink()) {
                    next.insert(t);
                    next.insert(*fork.lo());
                    next.insert(*fork.hi());
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Exhaustive trace search on an explicit poset, straight from the rules of
/// the trace relation: runs are sequences of single steps (a letter, or a
/// fork whose two threads end in final states), each step consuming a
/// non-empty prefix of the remaining events. Every pair of states is tried
/// as a fork, and every split of the events is considered.
pub struct TraceOracle<'a> {
    pa: &'a PomsetAutomaton,
    poset: LabeledPoset,
    full: u32,
    runs: HashMap<(StateId, u32), BTreeSet<StateId>>,
    steps: HashMap<(StateId, u32), BTreeSet<StateId>>,
}

impl<'a> TraceOracle<'a> {
    pub fn new(pa: &'a PomsetAutomaton, poset: LabeledPoset) -> Self {
        let full = if poset.is_empty() {
            0
        } else {
            (1u32 << poset.len()) - 1
        };
        TraceOracle {
            pa,
            poset,
            full,
            runs: HashMap::new(),
            steps: HashMap::new(),
        }
    }

    fn below_all(&self, lower: u32, upper: u32) -> bool {
        bits(lower).all(|i| bits(upper).all(|j| self.poset.less(i, j)))
    }

    fn unrelated(&self, x: u32, y: u32) -> bool {
        bits(x).all(|i| bits(y).all(|j| !self.poset.less(i, j) && !self.poset.less(j, i)))
    }

    fn accepts(&mut self, q: StateId, mask: u32) -> bool {
        let all: BTreeSet<StateId> = self.pa.states().collect();
        self.runs_within(q, mask, &all)
            .iter()
            .any(|&t| self.pa.is_final(t))
    }

    /// States reachable in one step on exactly the events in `mask`.
    fn step(&mut self, q: StateId, mask: u32) -> BTreeSet<StateId> {
        if let Some(hit) = self.steps.get(&(q, mask)) {
            return hit.clone();
        }
        let mut out = BTreeSet::new();
        if mask.count_ones() == 1 {
            let i = mask.trailing_zeros() as usize;
            out.insert(self.pa.delta(q, &self.poset.labels()[i].clone()));
        } else {
            let mut u = (mask - 1) & mask;
            while u != 0 {
                let v = mask & !u;
                if self.unrelated(u, v) {
                    for r in self.pa.states() {
                        for s in self.pa.states() {
                            if self.accepts(r, u) && self.accepts(s, v) {
                                out.insert(self.pa.gamma(q, &ForkPair::new(r, s)));
                            }
                        }
                    }
                }
                u = (u - 1) & mask;
            }
        }
        self.steps.insert((q, mask), out.clone());
        out
    }

    /// Targets of runs on the events in `mask` whose intermediate states lie
    /// in `via`.
    pub fn runs_within(
        &mut self,
        q: StateId,
        mask: u32,
        via: &BTreeSet<StateId>,
    ) -> BTreeSet<StateId> {
        let all = via.len() == self.pa.num_states();
        if all {
            if let Some(hit) = self.runs.get(&(q, mask)) {
                return hit.clone();
            }
        }
        let mut out = BTreeSet::new();
        if mask == 0 {
            out.insert(q);
        } else {
            let mut first = mask;
            while first != 0 {
                let rest = mask & !first;
                if self.below_all(first, rest) {
                    for m in self.step(q, first) {
                        if rest == 0 {
                            out.insert(m);
                        } else if via.contains(&m) {
                            out.extend(self.runs_within(m, rest, via));
                        }
                    }
                }
                first = (first - 1) & mask;
            }
        }
        if all {
            self.runs.insert((q, mask), out.clone());
        }
        out
    }

    pub fn targets(&mut self, q: StateId) -> BTreeSet<StateId> {
        let all: BTreeSet<StateId> = self.pa.states().collect();
        self.runs_within(q, self.full, &all)
    }

    pub fn targets_via(&mut self, q: StateId, via: &BTreeSet<StateId>) -> BTreeSet<StateId> {
        self.runs_within(q, self.full, via)
    }

    pub fn member(&mut self, q: StateId) -> bool {
        self.targets(q).iter().any(|&t| self.pa.is_final(t))
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// Brute-force isomorphism of labelled posets: tries every bijection that
/// preserves labels, extending it node by node and pruning on the order.
pub fn isomorphic(p: &LabeledPoset, q: &LabeledPoset) -> bool {
    if p.len() != q.len() {
        return false;
    }
    let mut lp: Vec<&Symbol> = p.labels().iter().collect();
    let mut lq: Vec<&Symbol> = q.labels().iter().collect();
    lp.sort();
    lq.sort();
    if lp != lq {
        return false;
    }
    fn extend(
        p: &LabeledPoset,
        q: &LabeledPoset,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = map.len();
        if i == p.len() {
            return true;
        }
        for j in 0..q.len() {
            if used[j] || p.labels()[i] != q.labels()[j] {
                continue;
            }
            let consistent = (0..i)
                .all(|k| p.less(k, i) == q.less(map[k], j) && p.less(i, k) == q.less(j, map[k]));
            if consistent {
                used[j] = true;
                map.push(j);
                if extend(p, q, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    extend(p, q, &mut Vec::new(), &mut vec![false; q.len()])
}

/// Size of the largest antichain, by trying every subset.
pub fn brute_width(p: &LabeledPoset) -> usize {
    let n = p.len();
    (0u32..1 << n)
        .filter(|&m| {
            let nodes: Vec<usize> = bits(m).collect();
            nodes.iter().all(|&i| nodes.iter().all(|&j| !p.less(i, j)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn cookie_pa() -> PomsetAutomaton {
    PomsetAutomaton::from_json(&fixture("cookie.json")).unwrap()
}

pub const COOKIE: &str = "prepare.(bake|caramelize).glaze";
pub const COOKIE_EXPR: &str = "prepare . (bake || caramelize) . glaze";

/// Pomsets of at most `n` events accepted at each state, generated from the
/// transition table: a non-empty accepted pomset is a first step (a letter,
/// or `U ∥ V` for a fork whose threads accept `U` and `V`) followed by a
/// pomset accepted at the step's target.
pub fn accepted_languages(
    pa: &PomsetAutomaton,
    n: usize,
) -> Vec<BTreeSet<pomset_kleene::pomset::Pomset>> {
    use pomset_kleene::pomset::Pomset;
    let mut lang: Vec<BTreeSet<Pomset>> = pa
        .states()
        .map(|q| {
            if pa.is_final(q) {
                BTreeSet::from([Pomset::empty()])
            } else {
                BTreeSet::new()
            }
        })
        .collect();
    loop {
        let mut changed = false;
        for q in pa.states() {
            let mut new = Vec::new();
            for (a, &t) in pa.alphabet().iter().zip(pa.delta_row(q)) {
                let first = Pomset::primitive(a.clone());
                new.extend(
                    lang[t]
                        .iter()
                        .filter(|w| w.size() < n)
                        .map(|w| first.seq(w)),
                );
            }
            for (fork, &t) in pa.gamma_entries(q) {
                for u in lang[*fork.lo()].iter().filter(|u| !u.is_empty()) {
                    for v in lang[*fork.hi()]
                        .iter()
                        .filter(|v| !v.is_empty() && u.size() + v.size() <= n)
                    {
                        let first = u.par(v);
                        new.extend(
                            lang[t]
                                .iter()
                                .filter(|w| first.size() + w.size() <= n)
                                .map(|w| first.seq(w)),
                        );
                    }
                }
            }
            for u in new {
                changed |= lang[q].insert(u);
            }
        }
        if !changed {
            return lang;
        }
    }
}
