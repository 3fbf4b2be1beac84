//! Explicit labelled posets and their recognition as series-parallel terms.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pomset::{Factorization, Pomset};
use crate::symbol::Symbol;

/// A finite labelled poset with a transitively closed strict order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoset {
    ids: Vec<String>,
    labels: Vec<Symbol>,
    /// `less[i][j]` iff node `i` is strictly below node `j`.
    less: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PosetJson {
    nodes: Vec<NodeJson>,
    order: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct NodeJson {
    id: String,
    label: Symbol,
}

impl LabeledPoset {
    /// Builds a poset from node ids, labels and order pairs (given by
    /// index). The transitive closure is taken; a cycle is an error.
    pub fn new(ids: Vec<String>, labels: Vec<Symbol>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        if labels.len() != n {
            return Err(Error::InvalidPoset(
                "every node needs exactly one label".into(),
            ));
        }
        let distinct: BTreeSet<&String> = ids.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidPoset("duplicate node id".into()));
        }
        let mut less = vec![vec![false; n]; n];
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidPoset(format!(
                    "order pair ({i}, {j}) out of range"
                )));
            }
            less[i][j] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    let row_k = less[k].clone();
                    for (cell, &via) in less[i].iter_mut().zip(&row_k) {
                        *cell |= via;
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::InvalidPoset(format!(
                "order is cyclic through node `{}`",
                ids[i]
            )));
        }
        Ok(LabeledPoset { ids, labels, less })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn labels(&self) -> &[Symbol] {
        &self.labels
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    /// All strict order pairs, by index.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.less[i][j])
            .collect()
    }

    /// The explicit poset of a pomset term, with node ids `n0, n1, ...` in
    /// serialization order.
    pub fn of_pomset(u: &Pomset) -> LabeledPoset {
        fn walk(
            u: &Pomset,
            labels: &mut Vec<Symbol>,
            pairs: &mut Vec<(usize, usize)>,
        ) -> Vec<usize> {
            match u.factorize() {
                Err(_) => Vec::new(),
                Ok(Factorization::Primitive(a)) => {
                    labels.push(a.clone());
                    vec![labels.len() - 1]
                }
                Ok(Factorization::SeqSplit(cs)) => {
                    let mut all: Vec<usize> = Vec::new();
                    for c in cs {
                        let part = walk(c, labels, pairs);
                        for &x in &all {
                            for &y in &part {
                                pairs.push((x, y));
                            }
                        }
                        all.extend(part);
                    }
                    all
                }
                Ok(Factorization::ParSplit(cs)) => {
                    cs.iter().flat_map(|c| walk(c, labels, pairs)).collect()
                }
            }
        }
        let mut labels = Vec::new();
        let mut pairs = Vec::new();
        walk(u, &mut labels, &mut pairs);
        let ids = (0..labels.len()).map(|i| format!("n{i}")).collect();
        LabeledPoset::new(ids, labels, &pairs).expect("pomset expansion is a valid poset")
    }

    /// Recognizes a series-parallel poset and returns its canonical term.
    ///
    /// Parallel splits (components of the comparability graph) are tried
    /// first, then the earliest sequential cut along a linear extension.
    pub fn sp_decompose(&self) -> Result<Pomset> {
        let nodes: Vec<usize> = (0..self.len()).collect();
        self.decompose(&nodes)
    }

    fn decompose(&self, nodes: &[usize]) -> Result<Pomset> {
        match nodes {
            [] => return Ok(Pomset::empty()),
            [x] => return Ok(Pomset::primitive(self.labels[*x].clone())),
            _ => {}
        }
        let components = self.comparability_components(nodes);
        if components.len() > 1 {
            let parts = components
                .iter()
                .map(|c| self.decompose(c))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Pomset::par_all(&parts));
        }
        let mut linear = nodes.to_vec();
        linear.sort_by_key(|&x| nodes.iter().filter(|&&y| self.less[y][x]).count());
        for cut in 1..linear.len() {
            let (prefix, suffix) = linear.split_at(cut);
            if prefix
                .iter()
                .all(|&x| suffix.iter().all(|&y| self.less[x][y]))
            {
                let head = self.decompose(prefix)?;
                let tail = self.decompose(suffix)?;
                return Ok(head.seq(&tail));
            }
        }
        Err(Error::NotSeriesParallel)
    }

    fn comparability_components(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut components = Vec::new();
        for &start in nodes {
            if !seen.insert(start) {
                continue;
            }
            let mut component = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in nodes {
                    if (self.less[x][y] || self.less[y][x]) && seen.insert(y) {
                        component.push(y);
                        stack.push(y);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    pub fn from_json(text: &str) -> Result<LabeledPoset> {
        let raw: PosetJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidPoset(e.to_string()))?;
        let index: BTreeMap<&str, usize> = raw
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.as_str(), i))
            .collect();
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidPoset(format!("unknown node `{id}`")))
        };
        let pairs = raw
            .order
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let ids = raw.nodes.iter().map(|n| n.id.clone()).collect();
        let labels = raw.nodes.iter().map(|n| n.label.clone()).collect();
        LabeledPoset::new(ids, labels, &pairs)
    }

    pub fn to_json(&self) -> String {
        let raw = PosetJson {
            nodes: self
                .ids
                .iter()
                .zip(&self.labels)
                .map(|(id, label)| NodeJson {
                    id: id.clone(),
                    label: label.clone(),
                })
                .collect(),
            order: self
                .pairs()
                .into_iter()
                .map(|(i, j)| (self.ids[i].clone(), self.ids[j].clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("poset serializes")
    }
}
