//! Series-rational expressions over series-parallel pomsets, pomset automata,
//! and the two translations between them.
//!
//! Expressions compile to finite pomset automata through Brzozowski-style
//! sequential and parallel derivatives, taken modulo the additive congruence
//! (see [`normal`]). Going the other way, a fork-acyclic automaton is turned
//! back into an expression by generalized state elimination
//! (see [`extraction`]).
//!
//! ```
//! use pomset_kleene::{derivatives, expr::Expr, pomset::Pomset, automaton};
//!
//! let e: Expr = "prepare.(bake || caramelize).glaze".parse().unwrap();
//! let compiled = derivatives::expr_to_pa(&e, automaton::DEFAULT_STATE_CAP).unwrap();
//! let cookie: Pomset = "prepare.(caramelize|bake).glaze".parse().unwrap();
//! assert!(automaton::membership(&compiled.pa, &compiled.start, &cookie));
//! ```

pub mod automaton;
pub mod derivatives;
pub mod error;
pub mod expr;
pub mod extraction;
pub mod language;
pub mod normal;
pub mod pomset;
pub mod poset;
pub mod symbol;

pub use error::{Error, Result};
pub use symbol::Symbol;
