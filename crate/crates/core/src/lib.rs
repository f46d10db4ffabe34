//! Parameter synthesis for parametric timed automata with one parametric clock,
//! plus structural analyses for two-clock, one-parameter automata.

pub mod algebra;
pub mod corpus;
pub mod decomposition;
pub mod error;
pub mod feasibility;
pub mod gen;
pub mod model;
pub mod selftest;
pub mod semantics;
pub mod synthesis;
pub mod transforms;
pub mod two_clock;

pub use error::{Error, Result};
pub use model::*;
