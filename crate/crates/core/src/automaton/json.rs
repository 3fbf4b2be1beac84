//! JSON encoding of explicit automata.
//!
//! ```json
//! { "alphabet": ["a"], "states": ["q", "f", "bot"], "sink": "bot",
//!   "finals": ["f"], "delta": [["q", "a", "f"], ...],
//!   "gamma": [["q", ["f", "f"], "f"]] }
//! ```
//!
//! Every `(state, symbol)` pair needs a `delta` entry; missing `gamma`
//! entries go to the sink.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Deserialize;
use serde_json::{json, Value};

use super::{ForkPair, PomsetAutomaton, StateId};
use crate::error::{Error, Result};
use crate::symbol::Symbol;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    alphabet: Vec<Symbol>,
    states: Vec<String>,
    sink: String,
    #[serde(default)]
    finals: Vec<String>,
    #[serde(default)]
    delta: Vec<(String, Symbol, String)>,
    #[serde(default)]
    gamma: Vec<(String, (String, String), String)>,
}

impl PomsetAutomaton {
    pub fn from_json(text: &str) -> Result<PomsetAutomaton> {
        let raw: Raw =
            serde_json::from_str(text).map_err(|e| Error::InvalidAutomaton(e.to_string()))?;
        let mut alphabet = raw.alphabet;
        alphabet.sort();
        alphabet.dedup();

        let index: HashMap<&str, StateId> = raw
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        if index.len() != raw.states.len() {
            return Err(Error::InvalidAutomaton("duplicate state name".into()));
        }
        let state = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownState(name.to_string()))
        };

        let sink = state(&raw.sink)?;
        let finals = raw
            .finals
            .iter()
            .map(|s| state(s))
            .collect::<Result<BTreeSet<_>>>()?;

        let n = raw.states.len();
        let mut delta: Vec<Vec<Option<StateId>>> = vec![vec![None; alphabet.len()]; n];
        for (from, a, to) in &raw.delta {
            let q = state(from)?;
            let i = alphabet.binary_search(a).map_err(|_| {
                Error::InvalidAutomaton(format!("symbol `{a}` is not in the alphabet"))
            })?;
            let t = state(to)?;
            match delta[q][i] {
                Some(prev) if prev != t => {
                    return Err(Error::InvalidAutomaton(format!(
                        "conflicting transitions from `{from}` on `{a}`"
                    )))
                }
                _ => delta[q][i] = Some(t),
            }
        }
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(q, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(i, t)| {
                        t.ok_or_else(|| Error::Totality {
                            state: raw.states[q].clone(),
                            symbol: alphabet[i].to_string(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        let mut gamma: Vec<BTreeMap<ForkPair<StateId>, StateId>> = vec![BTreeMap::new(); n];
        for (from, (r, s), to) in &raw.gamma {
            let q = state(from)?;
            let fork = ForkPair::new(state(r)?, state(s)?);
            let t = state(to)?;
            if let Some(prev) = gamma[q].insert(fork, t) {
                if prev != t {
                    return Err(Error::InvalidAutomaton(format!(
                        "conflicting parallel transitions from `{from}` on {{{r}, {s}}}"
                    )));
                }
            }
        }
        PomsetAutomaton::new(alphabet, raw.states, sink, finals, delta, gamma)
    }

    pub fn to_json_value(&self) -> Value {
        let name = |q: StateId| self.name(q).to_string();
        let mut delta = Vec::new();
        let mut gamma = Vec::new();
        for q in self.states() {
            for (a, &t) in self.alphabet().iter().zip(self.delta_row(q)) {
                delta.push(json!([name(q), a.as_str(), name(t)]));
            }
            for (fork, &t) in self.gamma_entries(q) {
                gamma.push(json!([
                    name(q),
                    [name(*fork.lo()), name(*fork.hi())],
                    name(t)
                ]));
            }
        }
        json!({
            "alphabet": self.alphabet().iter().map(Symbol::as_str).collect::<Vec<_>>(),
            "states": self.names(),
            "sink": name(self.sink()),
            "finals": self.finals().iter().map(|&q| name(q)).collect::<Vec<_>>(),
            "delta": delta,
            "gamma": gamma,
        })
    }

    /// Pretty-printed JSON with sorted keys.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("JSON values always serialize")
    }
}
