//! Size-bounded pomset languages.
//!
//! [`enumerate_language`] evaluates the denotational semantics of an
//! expression restricted to pomsets of at most a given size. It serves as the
//! reference semantics that the automaton constructions are checked against.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::expr::Expr;
use crate::pomset::Pomset;
use crate::symbol::Symbol;

/// A finite set of pomsets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LanguageSample(BTreeSet<Pomset>);

impl LanguageSample {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, u: &Pomset) -> bool {
        self.0.contains(u)
    }

    pub fn insert(&mut self, u: Pomset) -> bool {
        self.0.insert(u)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Pomset> {
        self.0.iter()
    }

    pub fn width(&self) -> usize {
        language_width(self)
    }

    /// Members sorted by canonical serialization.
    pub fn sorted_strings(&self) -> Vec<String> {
        let mut out: Vec<String> = self.0.iter().map(Pomset::to_string).collect();
        out.sort();
        out
    }

    /// Pomsets of at most `max_size` events.
    pub fn truncate(&self, max_size: usize) -> LanguageSample {
        self.0
            .iter()
            .filter(|u| u.size() <= max_size)
            .cloned()
            .collect()
    }

    /// Some member of the symmetric difference, smallest first.
    pub fn first_difference<'a>(&'a self, other: &'a LanguageSample) -> Option<&'a Pomset> {
        self.0.symmetric_difference(&other.0).min_by(|u, v| {
            u.size()
                .cmp(&v.size())
                .then_with(|| u.to_string().cmp(&v.to_string()))
        })
    }
}

impl FromIterator<Pomset> for LanguageSample {
    fn from_iter<I: IntoIterator<Item = Pomset>>(iter: I) -> Self {
        LanguageSample(iter.into_iter().collect())
    }
}

impl IntoIterator for LanguageSample {
    type Item = Pomset;
    type IntoIter = std::collections::btree_set::IntoIter<Pomset>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a LanguageSample {
    type Item = &'a Pomset;
    type IntoIter = std::collections::btree_set::Iter<'a, Pomset>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub fn language_width(s: &LanguageSample) -> usize {
    s.iter().map(Pomset::width).max().unwrap_or(0)
}

/// Members of the language of `e` with at most `max_size` events.
pub fn enumerate_language(e: &Expr, max_size: usize) -> LanguageSample {
    let mut eval = Evaluator {
        max_size,
        memo: HashMap::new(),
    };
    let by_size = eval.eval(e);
    by_size.iter().flatten().cloned().collect()
}

/// Language members grouped by size: `sets[k]` holds the members of size `k`.
type BySize = Arc<Vec<BTreeSet<Pomset>>>;

struct Evaluator {
    max_size: usize,
    // Keyed by node address; shared subterms are evaluated once.
    memo: HashMap<*const Expr, BySize>,
}

impl Evaluator {
    fn empty(&self) -> Vec<BTreeSet<Pomset>> {
        vec![BTreeSet::new(); self.max_size + 1]
    }

    fn eval_shared(&mut self, e: &Arc<Expr>) -> BySize {
        let key = Arc::as_ptr(e);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let result = self.eval(e);
        self.memo.insert(key, result.clone());
        result
    }

    fn eval(&mut self, e: &Expr) -> BySize {
        let mut out = self.empty();
        match e {
            Expr::Zero => {}
            Expr::One => {
                out[0].insert(Pomset::empty());
            }
            Expr::Letter(a) => {
                if self.max_size >= 1 {
                    out[1].insert(Pomset::primitive(a.clone()));
                }
            }
            Expr::Plus(l, r) => {
                let (l, r) = (self.eval_shared(l), self.eval_shared(r));
                for (k, slot) in out.iter_mut().enumerate() {
                    slot.extend(l[k].iter().cloned());
                    slot.extend(r[k].iter().cloned());
                }
            }
            Expr::Dot(l, r) => {
                let (l, r) = (self.eval_shared(l), self.eval_shared(r));
                self.combine(&l, &r, &mut out, Pomset::seq);
            }
            Expr::Par(l, r) => {
                let (l, r) = (self.eval_shared(l), self.eval_shared(r));
                self.combine(&l, &r, &mut out, Pomset::par);
            }
            Expr::Star(b) => {
                let body = self.eval_shared(b);
                out[0].insert(Pomset::empty());
                // Powers of the non-empty part; each factor adds at least one
                // event, so the frontier dies out past `max_size`.
                let mut frontier: Vec<Pomset> = vec![Pomset::empty()];
                while !frontier.is_empty() {
                    let mut next = Vec::new();
                    for w in &frontier {
                        let room = self.max_size - w.size();
                        for k in 1..=room {
                            for p in &body[k] {
                                let u = p.seq(w);
                                if out[u.size()].insert(u.clone()) {
                                    next.push(u);
                                }
                            }
                        }
                    }
                    frontier = next;
                }
            }
        }
        Arc::new(out)
    }

    fn combine(
        &self,
        l: &[BTreeSet<Pomset>],
        r: &[BTreeSet<Pomset>],
        out: &mut [BTreeSet<Pomset>],
        op: fn(&Pomset, &Pomset) -> Pomset,
    ) {
        for i in 0..=self.max_size {
            for j in 0..=self.max_size - i {
                for u in &l[i] {
                    for v in &r[j] {
                        out[i + j].insert(op(u, v));
                    }
                }
            }
        }
    }
}

/// Every series-parallel pomset over `alphabet` with at most `max_size`
/// events, including the empty pomset.
pub fn all_pomsets(alphabet: &[Symbol], max_size: usize) -> Vec<Pomset> {
    let mut by_size: Vec<BTreeSet<Pomset>> = vec![BTreeSet::new(); max_size + 1];
    by_size[0].insert(Pomset::empty());
    if max_size >= 1 {
        by_size[1].extend(alphabet.iter().cloned().map(Pomset::primitive));
    }
    for k in 2..=max_size {
        let mut layer = BTreeSet::new();
        for i in 1..k {
            for u in &by_size[i] {
                for v in &by_size[k - i] {
                    layer.insert(u.seq(v));
                    layer.insert(u.par(v));
                }
            }
        }
        by_size[k] = layer;
    }
    by_size.into_iter().flatten().collect()
}
