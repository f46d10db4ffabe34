//! Exact arithmetic: rationals, univariate polynomials, real algebraic
//! numbers and the `Real` values that concrete semantics compare.

pub mod algebraic;
pub mod mpoly;
pub mod upoly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use algebraic::AlgebraicNumber;
pub use mpoly::MPoly;
pub use upoly::UPoly;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// A value that may be `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<T> {
    Finite(T),
    Infinity,
}

impl<T> Extended<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinity => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Extended<U> {
        match self {
            Extended::Finite(v) => Extended::Finite(f(v)),
            Extended::Infinity => Extended::Infinity,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => v.fmt(f),
            Extended::Infinity => f.write_str("inf"),
        }
    }
}

/// `value(alpha)` for a polynomial `value` in the parameter.
#[derive(Clone, Debug)]
pub struct AlgValue {
    pub alpha: Arc<AlgebraicNumber>,
    pub value: UPoly,
}

/// A real number that is either rational or a polynomial image of one
/// shared algebraic number.
#[derive(Clone, Debug)]
pub enum Real {
    Rat(Rational),
    Alg(AlgValue),
}

impl Real {
    pub fn int(n: i64) -> Real {
        Real::Rat(rat(n))
    }

    /// `value(alpha)`, collapsed to a rational when it is one syntactically.
    pub fn at(alpha: &Arc<AlgebraicNumber>, value: UPoly) -> Real {
        if let Some(r) = alpha.as_rational() {
            return Real::Rat(value.eval(r));
        }
        let value = if value.degree() >= alpha.poly().degree() {
            value.div_rem(alpha.poly()).1
        } else {
            value
        };
        if value.is_constant() {
            Real::Rat(value.coeff(0))
        } else {
            Real::Alg(AlgValue { alpha: alpha.clone(), value })
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Real::Rat(r) => Some(r),
            Real::Alg(_) => None,
        }
    }

    fn parts(&self) -> (Option<&Arc<AlgebraicNumber>>, UPoly) {
        match self {
            Real::Rat(r) => (None, UPoly::constant(r.clone())),
            Real::Alg(a) => (Some(&a.alpha), a.value.clone()),
        }
    }

    pub fn sign(&self) -> i8 {
        match self {
            Real::Rat(r) => upoly::sign(r),
            Real::Alg(a) => a.alpha.sign_of(&a.value),
        }
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Rat(r) => Real::Rat(-r),
            Real::Alg(a) => Real::Alg(AlgValue { alpha: a.alpha.clone(), value: -&a.value }),
        }
    }

    pub fn add_rational(&self, c: &Rational) -> Real {
        match self {
            Real::Rat(r) => Real::Rat(r + c),
            Real::Alg(a) => Real::Alg(AlgValue {
                alpha: a.alpha.clone(),
                value: &a.value + &UPoly::constant(c.clone()),
            }),
        }
    }

    pub fn floor(&self) -> BigInt {
        match self {
            Real::Rat(r) => r.floor().to_integer(),
            Real::Alg(a) => {
                let approx = a.value.eval(&a.alpha.approx(&ratio(1, 1 << 20)));
                let mut k = approx.floor().to_integer();
                let below = |k: &BigInt| {
                    self.cmp(&Real::Rat(Rational::from_integer(k.clone()))) == Ordering::Less
                };
                while below(&k) {
                    k -= 1;
                }
                while !below(&(&k + 1)) {
                    k += 1;
                }
                k
            }
        }
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// A rational within `2^-20` of the value; exact for rationals.
    pub fn approx(&self) -> Rational {
        match self {
            Real::Rat(r) => r.clone(),
            Real::Alg(a) => a.value.eval(&a.alpha.approx(&ratio(1, 1 << 20))),
        }
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Real::Rat(a), Real::Rat(b)) = (self, other) {
            return a.cmp(b);
        }
        let (aa, pa) = self.parts();
        let (ab, pb) = other.parts();
        let alpha = aa.or(ab).expect("one side is algebraic");
        debug_assert!(aa.is_none() || ab.is_none() || Arc::ptr_eq(aa.unwrap(), ab.unwrap()));
        match alpha.sign_of(&(&pa - &pb)) {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rat(r) => write!(f, "{r}"),
            Real::Alg(a) => write!(f, "({})[p = {}]", a.value, a.alpha),
        }
    }
}

impl From<Rational> for Real {
    fn from(r: Rational) -> Real {
        Real::Rat(r)
    }
}

/// Renders a rational as `a` or `a/b`.
pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
