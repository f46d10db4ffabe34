//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Coefficients are stored lowest degree first with no trailing zeros,
/// so the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn sign_at(&self, t: &Rational) -> i8 {
        sign(&self.eval(t))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Radical of the polynomial, returned in primitive integer form.
    pub fn square_free(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = UPoly::gcd(self, &self.derivative());
        self.div_rem(&g).0.primitive()
    }

    /// Scales to coprime integer coefficients with a positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        UPoly::from_coeffs(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
    }

    /// Integer coefficients of the primitive form.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive().coeffs.iter().map(|c| c.to_integer()).collect()
    }

    /// Composition `self(other(t))`.
    pub fn compose(&self, other: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// Human-readable form over the variable name `v`.
    pub fn display_in(&self, v: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("p"))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::from_coeffs((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Sturm sequence of a square-free polynomial.
pub fn sturm_sequence(f: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        seq.push(-&r);
    }
    seq.pop();
    seq
}

fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs {
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

pub fn variations_at(seq: &[UPoly], t: &Rational) -> usize {
    variations(seq.iter().map(|p| p.sign_at(t)))
}

/// Number of distinct roots in the half-open interval `(a, b]`.
pub fn count_roots(seq: &[UPoly], a: &Rational, b: &Rational) -> usize {
    variations_at(seq, a).saturating_sub(variations_at(seq, b))
}

/// Exclusive bound on the absolute value of every real root.
pub fn cauchy_bound(f: &UPoly) -> Rational {
    let lc = f.lc().abs();
    let m = f
        .coeffs
        .iter()
        .take(f.coeffs.len().saturating_sub(1))
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::from_integer((m + Rational::one()).ceil().to_integer() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn arithmetic_and_division() {
        let f = UPoly::from_ints(&[-4, 0, 1]);
        let g = UPoly::from_ints(&[-2, 1]);
        let (q, rem) = f.div_rem(&g);
        assert_eq!(q, UPoly::from_ints(&[2, 1]));
        assert!(rem.is_zero());
        assert_eq!(&q * &g, f);
        assert_eq!(f.eval(&r(3)), r(5));
    }

    #[test]
    fn gcd_and_square_free() {
        let a = &UPoly::from_ints(&[-1, 1]) * &UPoly::from_ints(&[-1, 1]);
        let b = &a * &UPoly::from_ints(&[2, 1]);
        assert_eq!(UPoly::gcd(&a, &b), a.monic());
        assert_eq!(b.square_free(), UPoly::from_ints(&[-2, 1, 1]));
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let f = UPoly::from_ints(&[4, -6]);
        assert_eq!(f.primitive(), UPoly::from_ints(&[-2, 3]));
    }

    #[test]
    fn sturm_counts() {
        let f = UPoly::from_ints(&[-2, 0, 1]);
        let s = sturm_sequence(&f);
        assert_eq!(count_roots(&s, &r(-2), &r(2)), 2);
        assert_eq!(count_roots(&s, &r(0), &r(2)), 1);
        assert_eq!(count_roots(&s, &r(2), &r(3)), 0);
    }

    #[test]
    fn display() {
        assert_eq!(UPoly::from_ints(&[-1, 0, 2]).to_string(), "2*p^2 - 1");
        assert_eq!(UPoly::from_ints(&[0, -1]).to_string(), "-p");
    }
}
