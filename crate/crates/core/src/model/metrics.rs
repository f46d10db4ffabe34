//! `maxC`, `maxV` and the two-one thresholds `S₀`, `S₁`.

use num_traits::{Signed, ToPrimitive};

use super::{AtomicConstraint, Pta, SystemProperty};
use crate::error::{Error, Result};

fn max_abs_constant<'a>(atoms: impl Iterator<Item = &'a AtomicConstraint>) -> Result<u64> {
    let mut m = 0u64;
    for a in atoms {
        if !a.rhs.is_linear() {
            return Err(Error::Unsupported("maxC/maxV need linear expressions".into()));
        }
        if let Some(c) = a.rhs.con() {
            let c = c.abs().to_u64().ok_or_else(|| Error::Unsupported("constant out of range".into()))?;
            m = m.max(c);
        }
    }
    Ok(m)
}

/// `maxC(𝒜)`: largest absolute constant term; 0 without expressions.
pub fn max_c(pta: &Pta) -> Result<u64> {
    max_abs_constant(pta.atoms())
}

/// `maxV(ψ)`: largest absolute constant term in the property.
pub fn max_v(psi: &SystemProperty) -> Result<u64> {
    max_abs_constant(psi.phi.atoms().into_iter())
}

/// `S₀ = 2K·max{maxC, maxV} + 1` and `S₁ = 4S₀` with `K` the number of transitions.
pub fn thresholds(pta: &Pta, psi: &SystemProperty) -> Result<(u64, u64)> {
    Ok(thresholds_from(pta.transitions.len() as u64, max_c(pta)?, max_v(psi)?))
}

pub fn thresholds_from(k: u64, max_c: u64, max_v: u64) -> (u64, u64) {
    let s0 = 2 * k * max_c.max(max_v) + 1;
    (s0, 4 * s0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse::{parse_model, parse_property};

    #[test]
    fn threshold_formula() {
        assert_eq!(thresholds_from(4, 2, 1), (17, 68));
        assert_eq!(thresholds_from(0, 9, 9), (1, 4));
        assert_eq!(thresholds_from(3, 5, 2), (31, 124));
    }

    #[test]
    fn max_constants() {
        let pta = parse_model(
            "clocks: x\nparams: p\nloc q0 init inv: x <= p + 3\nedge q0 -> q0 : x <= 2p - 5 ; a ;\nedge q0 -> q0 : x <= 7 ; b ;",
        )
        .unwrap();
        assert_eq!(max_c(&pta).unwrap(), 7);
        let empty = parse_model("loc q0 init inv: true").unwrap();
        assert_eq!(max_c(&empty).unwrap(), 0);
        let just_p = parse_model("clocks: x\nparams: p\nloc q0 init inv: x <= p").unwrap();
        assert_eq!(max_c(&just_p).unwrap(), 0);
        let psi = parse_property("EF x >= 1", &just_p).unwrap();
        assert_eq!(max_v(&psi).unwrap(), 1);
        let poly = parse_model("clocks: x\nparams: p\nloc q0 init inv: x <= p^2").unwrap();
        assert!(matches!(max_c(&poly), Err(Error::Unsupported(_))));
    }
}
