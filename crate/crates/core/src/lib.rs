//! Compiler from Finitary Idealised Concurrent Algol to saturating automata.

pub mod automaton;
pub mod cli;
pub mod compile;
pub mod config;
pub mod corpus;
pub mod dot;
pub mod forest;
pub mod handbuilt;
pub mod interp;
pub mod invariants;
pub mod lemmas;
pub mod moves;
pub mod play;
pub mod saturation;
pub mod search;
pub mod settings;
pub mod syntax;
pub mod word;

pub use settings::{OpTable, Settings};
