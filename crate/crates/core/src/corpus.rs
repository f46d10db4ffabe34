//! Shipped example models.

use crate::error::Result;
use crate::model::parse::{parse_model, parse_property};
use crate::model::{Pta, SystemProperty};

macro_rules! two_one {
    ($($name:literal),* $(,)?) => {
        &[$((
            $name,
            include_str!(concat!("../data/two_one/", $name, ".pta")),
            include_str!(concat!("../data/two_one/", $name, ".prop")),
        )),*]
    };
}

/// `(name, model, property)` for the two-clock one-parameter suite.
pub const TWO_ONE: &[(&str, &str, &str)] = two_one!(
    "bounded_window",
    "diagonal_loop",
    "diagonal_steps",
    "even",
    "guarded_reset",
    "invariant_safety",
    "lower_bound",
    "multiple_of_three",
    "odd_safety",
    "parameter_free",
    "two_phase",
    "upper_bound",
);

pub const GATE: &str = include_str!("../data/gate.pta");
pub const GATE_PROP: &str = include_str!("../data/ef.prop");

pub fn two_one_models() -> Result<Vec<(&'static str, Pta, SystemProperty)>> {
    TWO_ONE
        .iter()
        .map(|(name, model, prop)| {
            let pta = parse_model(model)?;
            let psi = parse_property(prop.trim(), &pta)?;
            Ok((*name, pta, psi))
        })
        .collect()
}
