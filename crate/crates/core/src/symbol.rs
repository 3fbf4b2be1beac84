use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A letter of the alphabet: a token matching `[a-zA-Z][a-zA-Z0-9_]*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Result<Symbol> {
        if is_symbol(name) {
            Ok(Symbol(Arc::from(name)))
        } else {
            Err(Error::Syntax {
                column: 1,
                message: format!("`{name}` is not a valid symbol"),
            })
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_symbol_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

pub(crate) fn is_symbol_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if is_symbol_start(c)) && chars.all(is_symbol_continue)
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol> {
        Symbol::new(s)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Symbol, D::Error> {
        let s = String::deserialize(deserializer)?;
        Symbol::new(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_identifiers() {
        assert!(Symbol::new("bake").is_ok());
        assert!(Symbol::new("q_1").is_ok());
        assert!(Symbol::new("A9").is_ok());
    }

    #[test]
    fn rejects_non_identifiers() {
        assert!(Symbol::new("").is_err());
        assert!(Symbol::new("1a").is_err());
        assert!(Symbol::new("_a").is_err());
        assert!(Symbol::new("a-b").is_err());
    }
}
