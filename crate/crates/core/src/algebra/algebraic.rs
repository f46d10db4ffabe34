//! Real algebraic numbers as a square-free defining polynomial plus an
//! isolating interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::upoly::{count_roots, sturm_sequence, UPoly};
use super::Rational;

/// A real root of `poly` located in the open interval `(lo, hi)`.
///
/// When `lo == hi` the number is the rational `lo` and `poly` is the
/// corresponding primitive linear factor.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    poly: UPoly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicNumber {
    pub fn from_rational(r: Rational) -> Self {
        let poly = UPoly::from_coeffs(vec![-r.clone(), Rational::one()]).primitive();
        AlgebraicNumber { poly, lo: r.clone(), hi: r }
    }

    /// Builds an irrational root. The caller guarantees that `poly` is square-free,
    /// has exactly one root in `(lo, hi)` and is nonzero at both endpoints.
    pub fn from_isolating(poly: UPoly, lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo < hi);
        AlgebraicNumber { poly: poly.primitive(), lo, hi }
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    /// Halves the isolating interval, collapsing to a rational if the midpoint is the root.
    pub fn refine(&mut self) {
        if self.as_rational().is_some() {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        let sm = self.poly.sign_at(&mid);
        if sm == 0 {
            *self = AlgebraicNumber::from_rational(mid);
            return;
        }
        if self.poly.sign_at(&self.lo) == sm {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Rational) {
        while self.as_rational().is_none() && &(&self.hi - &self.lo) > width {
            self.refine();
        }
    }

    /// Exact sign of `g` at this number.
    pub fn sign_of(&self, g: &UPoly) -> i8 {
        if let Some(r) = self.as_rational() {
            return g.sign_at(r);
        }
        if g.is_zero() {
            return 0;
        }
        let h = UPoly::gcd(&self.poly, g);
        if h.degree().unwrap_or(0) > 0 {
            let seq = sturm_sequence(&h.square_free());
            if count_roots(&seq, &self.lo, &self.hi) > 0 {
                return 0;
            }
        }
        let seq = sturm_sequence(&g.square_free());
        let mut a = self.clone();
        loop {
            if let Some(r) = a.as_rational() {
                return g.sign_at(r);
            }
            if count_roots(&seq, &a.lo, &a.hi) == 0 {
                return g.sign_at(&a.hi);
            }
            a.refine();
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if let Some(v) = self.as_rational() {
            return v.cmp(r);
        }
        if r <= &self.lo {
            return Ordering::Greater;
        }
        if r >= &self.hi {
            return Ordering::Less;
        }
        let sl = self.poly.sign_at(&self.lo);
        let sr = self.poly.sign_at(r);
        if sr == 0 {
            // the only root inside the interval is this number
            return Ordering::Equal;
        }
        if sl == sr {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Largest integer not above this number.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.as_rational() {
            return r.floor().to_integer();
        }
        let mut a = self.clone();
        loop {
            let fl = a.lo.floor().to_integer();
            if Rational::from_integer(&fl + 1) >= a.hi {
                return fl;
            }
            a.refine();
            if let Some(r) = a.as_rational() {
                return r.floor().to_integer();
            }
        }
    }

    pub fn ceil(&self) -> BigInt {
        match self.as_rational() {
            Some(r) => r.ceil().to_integer(),
            None => self.floor() + 1,
        }
    }

    /// A rational approximation within `width` of the number.
    pub fn approx(&self, width: &Rational) -> Rational {
        let mut a = self.clone();
        a.refine_to(width);
        (&a.lo + &a.hi) / Rational::from_integer(2.into())
    }

    pub fn to_json(&self) -> AlgebraicJson {
        match self.as_rational() {
            Some(r) => AlgebraicJson::Rational(r.to_string()),
            None => AlgebraicJson::Root {
                poly: self.poly.to_string(),
                lo: self.lo.to_string(),
                hi: self.hi.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum AlgebraicJson {
    Rational(String),
    Root { poly: String, lo: String, hi: String },
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        if let Some(r) = other.as_rational() {
            return self.cmp_rational(r);
        }
        if let Some(r) = self.as_rational() {
            return other.cmp_rational(r).reverse();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let lo = (&a.lo).max(&b.lo).clone();
        let hi = (&a.hi).min(&b.hi).clone();
        if lo < hi {
            let h = UPoly::gcd(&a.poly, &b.poly);
            if h.degree().unwrap_or(0) > 0 {
                let seq = sturm_sequence(&h.square_free());
                let at_hi = usize::from(h.sign_at(&hi) == 0);
                if count_roots(&seq, &lo, &hi) > at_hi {
                    return Ordering::Equal;
                }
            }
        }
        loop {
            if let Some(r) = b.as_rational() {
                return a.cmp_rational(r);
            }
            if let Some(r) = a.as_rational() {
                return b.cmp_rational(r).reverse();
            }
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            a.refine();
            b.refine();
        }
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicNumber {}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "root of {} in ({}, {})", self.poly, self.lo, self.hi),
        }
    }
}

/// Simplest rational (least denominator, then least magnitude) strictly
/// between `lo` and `hi`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    let zero = Rational::zero();
    if lo < &zero && &zero < hi {
        return zero;
    }
    if hi <= &zero {
        return -simplest_between(&-hi, &-lo);
    }
    let a = lo.floor();
    let n = &a + Rational::one();
    if &n < hi {
        return n;
    }
    let frac_lo = lo - &a;
    let inv_hi = (hi - &a).recip();
    let y = if frac_lo.is_zero() {
        inv_hi.floor() + Rational::one()
    } else {
        simplest_between(&inv_hi, &frac_lo.recip())
    };
    a + y.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sqrt2() -> AlgebraicNumber {
        AlgebraicNumber::from_isolating(UPoly::from_ints(&[-2, 0, 1]), q(1, 1), q(2, 1))
    }

    #[test]
    fn sign_of_exact_zero() {
        let a = sqrt2();
        assert_eq!(a.sign_of(&UPoly::from_ints(&[-2, 0, 1])), 0);
        assert_eq!(a.sign_of(&UPoly::from_ints(&[-1, 1])), 1);
        assert_eq!(a.sign_of(&UPoly::from_ints(&[-3, 2])), -1);
        // (p^2 - 2)(p + 5) vanishes too
        assert_eq!(a.sign_of(&UPoly::from_ints(&[-10, -2, 5, 1])), 0);
    }

    #[test]
    fn comparisons() {
        let a = sqrt2();
        assert_eq!(a.cmp_rational(&q(7, 5)), Ordering::Greater);
        assert_eq!(a.cmp_rational(&q(3, 2)), Ordering::Less);
        assert_eq!(a.floor(), BigInt::from(1));
        assert_eq!(a.ceil(), BigInt::from(2));
        let b = AlgebraicNumber::from_isolating(UPoly::from_ints(&[-3, 0, 1]), q(1, 1), q(2, 1));
        assert_eq!(a.cmp(&b), Ordering::Less);
        let a2 = AlgebraicNumber::from_isolating(
            &UPoly::from_ints(&[-2, 0, 1]) * &UPoly::from_ints(&[-7, 1]),
            q(5, 4),
            q(3, 2),
        );
        assert_eq!(a.cmp(&a2), Ordering::Equal);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&q(1, 3), &q(1, 2)), q(2, 5));
        assert_eq!(simplest_between(&q(-1, 2), &q(1, 2)), q(0, 1));
        assert_eq!(simplest_between(&q(3, 2), &q(7, 2)), q(2, 1));
        assert_eq!(simplest_between(&q(-7, 2), &q(-3, 2)), q(-2, 1));
        assert_eq!(simplest_between(&q(-1, 2), &q(-1, 3)), q(-2, 5));
        assert_eq!(simplest_between(&q(0, 1), &q(1, 3)), q(1, 4));
    }
}
