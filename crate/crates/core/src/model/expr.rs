//! Parameter expressions: integer-linear, polynomial, or `∞`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{ParamId, ParamPoint, ParameterValuation};
use crate::algebra::{AlgebraicNumber, Extended, MPoly, Rational, Real, UPoly};
use crate::error::{Error, Result};

/// `constant + Σ coeffs[p]·p` with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinExpr {
    pub constant: i64,
    pub coeffs: BTreeMap<ParamId, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Linear(LinExpr),
    /// Always of total degree at least two; lower degrees are stored as `Linear`.
    Polynomial(MPoly<ParamId>),
    Infinity,
}

impl Expr {
    pub fn constant(c: i64) -> Expr {
        Expr::Linear(LinExpr { constant: c, coeffs: BTreeMap::new() })
    }

    pub fn param(p: ParamId) -> Expr {
        Expr::Linear(LinExpr { constant: 0, coeffs: BTreeMap::from([(p, 1)]) })
    }

    pub fn linear(constant: i64, coeffs: impl IntoIterator<Item = (ParamId, i64)>) -> Expr {
        let coeffs = coeffs.into_iter().filter(|(_, c)| *c != 0).collect();
        Expr::Linear(LinExpr { constant, coeffs })
    }

    /// Canonical form of a polynomial: linear when the degree allows it.
    pub fn from_poly(poly: MPoly<ParamId>) -> Result<Expr> {
        if poly.total_degree() >= 2 {
            return Ok(Expr::Polynomial(poly));
        }
        let small = |c: &BigInt| {
            c.to_i64().ok_or_else(|| Error::Unsupported(format!("coefficient {c} exceeds 64 bits")))
        };
        let constant = small(&poly.constant_term())?;
        let mut coeffs = BTreeMap::new();
        for p in poly.vars() {
            coeffs.insert(p, small(&poly.linear_coeff(&p))?);
        }
        Ok(Expr::Linear(LinExpr { constant, coeffs }))
    }

    pub fn to_poly(&self) -> Option<MPoly<ParamId>> {
        match self {
            Expr::Linear(l) => {
                let mut p = MPoly::constant(l.constant.into());
                for (v, c) in &l.coeffs {
                    p.add_term(vec![(*v, 1)], (*c).into());
                }
                Some(p)
            }
            Expr::Polynomial(p) => Some(p.clone()),
            Expr::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Expr::Infinity)
    }

    pub fn is_linear(&self) -> bool {
        !matches!(self, Expr::Polynomial(_))
    }

    /// `con(e)`: the constant term (`None` for `∞`).
    pub fn con(&self) -> Option<BigInt> {
        match self {
            Expr::Linear(l) => Some(l.constant.into()),
            Expr::Polynomial(p) => Some(p.constant_term()),
            Expr::Infinity => None,
        }
    }

    /// `cf(e, p)`: the coefficient of the degree-one monomial `p`.
    pub fn cf(&self, p: ParamId) -> i64 {
        match self {
            Expr::Linear(l) => l.coeffs.get(&p).copied().unwrap_or(0),
            Expr::Polynomial(m) => m.linear_coeff(&p).to_i64().unwrap_or(0),
            Expr::Infinity => 0,
        }
    }

    pub fn params(&self) -> BTreeSet<ParamId> {
        match self {
            Expr::Linear(l) => l.coeffs.keys().copied().collect(),
            Expr::Polynomial(p) => p.vars(),
            Expr::Infinity => BTreeSet::new(),
        }
    }

    pub fn is_param_free(&self) -> bool {
        self.params().is_empty()
    }

    /// `-e`; `None` for `∞`.
    pub fn neg(&self) -> Option<Expr> {
        match self {
            Expr::Linear(l) => Some(Expr::Linear(LinExpr {
                constant: -l.constant,
                coeffs: l.coeffs.iter().map(|(p, c)| (*p, -c)).collect(),
            })),
            Expr::Polynomial(p) => Some(Expr::Polynomial(-p)),
            Expr::Infinity => None,
        }
    }

    /// `e + c`.
    pub fn add_const(&self, c: i64) -> Expr {
        match self {
            Expr::Linear(l) => Expr::Linear(LinExpr { constant: l.constant + c, coeffs: l.coeffs.clone() }),
            Expr::Polynomial(p) => Expr::Polynomial(p + &MPoly::constant(c.into())),
            Expr::Infinity => Expr::Infinity,
        }
    }

    /// `e[γ]`.
    pub fn evaluate(&self, gamma: &ParameterValuation) -> Result<Extended<Rational>> {
        for p in self.params() {
            if gamma.get(p).is_none() {
                return Err(Error::MissingParameter(format!("#{}", p.0)));
            }
        }
        let val = |p: &ParamId| gamma.get(*p).cloned().unwrap_or_else(Rational::zero);
        Ok(match self {
            Expr::Infinity => Extended::Infinity,
            e => Extended::Finite(e.to_poly().unwrap().eval(&val)),
        })
    }

    /// `e` at a rational or algebraic parameter point.
    pub fn evaluate_at(&self, point: &ParamPoint) -> Result<Extended<Real>> {
        match point {
            ParamPoint::Rational(g) => Ok(self.evaluate(g)?.map(Real::Rat)),
            ParamPoint::Algebraic(alpha) => self.evaluate_algebraic(alpha),
        }
    }

    fn evaluate_algebraic(&self, alpha: &Arc<AlgebraicNumber>) -> Result<Extended<Real>> {
        let Some(poly) = self.to_poly() else {
            return Ok(Extended::Infinity);
        };
        if poly.vars().iter().any(|p| p.0 != 0) {
            return Err(Error::Unsupported(
                "algebraic parameter points are one-dimensional".into(),
            ));
        }
        let u: UPoly = poly.to_upoly(&ParamId(0));
        Ok(Extended::Finite(Real::at(alpha, u)))
    }

    pub fn render(&self, params: &[String]) -> String {
        match self {
            Expr::Infinity => "inf".into(),
            e => e.to_poly().unwrap().render(|p| params[p.0].clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(i: usize) -> ParamId {
        ParamId(i)
    }

    #[test]
    fn evaluation_examples() {
        let e = Expr::linear(-5, [(p(0), 2)]);
        assert_eq!(e.evaluate(&ParameterValuation(vec![rat(3)])).unwrap(), Extended::Finite(rat(1)));
        assert_eq!(Expr::Infinity.evaluate(&ParameterValuation(vec![])).unwrap(), Extended::Infinity);
        let pq = &(&MPoly::var(p(0)) * &MPoly::var(p(1))) + &MPoly::constant(1.into());
        let e = Expr::from_poly(pq).unwrap();
        assert!(matches!(e, Expr::Polynomial(_)));
        assert_eq!(
            e.evaluate(&ParameterValuation(vec![rat(2), rat(3)])).unwrap(),
            Extended::Finite(rat(7))
        );
    }

    #[test]
    fn missing_parameter() {
        let e = Expr::param(p(1));
        assert!(matches!(e.evaluate(&ParameterValuation(vec![rat(1)])), Err(Error::MissingParameter(_))));
    }

    #[test]
    fn canonical_linear_form() {
        let poly = &MPoly::var(p(0)).scale(&2.into()) + &MPoly::constant(3.into());
        assert_eq!(Expr::from_poly(poly).unwrap(), Expr::linear(3, [(p(0), 2)]));
    }

    #[test]
    fn con_and_cf() {
        let e = Expr::linear(-5, [(p(0), 2)]);
        assert_eq!(e.con(), Some((-5).into()));
        assert_eq!(e.cf(p(0)), 2);
        assert_eq!(e.cf(p(1)), 0);
        assert_eq!(e.neg().unwrap(), Expr::linear(5, [(p(0), -2)]));
        assert_eq!(Expr::Infinity.neg(), None);
    }
}
