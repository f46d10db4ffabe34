//! Sparse multivariate polynomials with integer coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Rational, UPoly};

/// Variables with positive exponents, sorted by variable.
pub type Monomial<V> = Vec<(V, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly<V: Ord + Clone> {
    terms: BTreeMap<Monomial<V>, BigInt>,
}

impl<V: Ord + Clone> Default for MPoly<V> {
    fn default() -> Self {
        MPoly { terms: BTreeMap::new() }
    }
}

fn mono_mul<V: Ord + Clone>(a: &Monomial<V>, b: &Monomial<V>) -> Monomial<V> {
    let mut m: BTreeMap<V, u32> = BTreeMap::new();
    for (v, e) in a.iter().chain(b.iter()) {
        *m.entry(v.clone()).or_insert(0) += e;
    }
    m.into_iter().collect()
}

impl<V: Ord + Clone> MPoly<V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: V) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![(v, 1)], BigInt::one());
        p
    }

    pub fn add_term(&mut self, mono: Monomial<V>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mono.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|(_, e)| e).sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e))
            .max()
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of the degree-one monomial `v`.
    pub fn linear_coeff(&self, v: &V) -> BigInt {
        self.terms.get(&vec![(v.clone(), 1)]).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn vars(&self) -> BTreeSet<V> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v.clone())).collect()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn eval(&self, val: &impl Fn(&V) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (v, e) in m {
                let x = val(v);
                for _ in 0..*e {
                    t *= &x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients with respect to `v`, lowest power first.
    pub fn coeffs_in(&self, v: &V) -> Vec<MPoly<V>> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        for (m, c) in &self.terms {
            let k = m.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e) as usize;
            let rest: Monomial<V> = m.iter().filter(|(w, _)| w != v).cloned().collect();
            out[k].add_term(rest, c.clone());
        }
        out
    }

    /// Univariate view, assuming `v` is the only variable present.
    pub fn to_upoly(&self, v: &V) -> UPoly {
        let coeffs = self.coeffs_in(v);
        UPoly::from_coeffs(coeffs.iter().map(|c| Rational::from_integer(c.constant_term())).collect())
    }

    pub fn map_vars<W: Ord + Clone>(&self, f: impl Fn(&V) -> W) -> MPoly<W> {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut mm: BTreeMap<W, u32> = BTreeMap::new();
            for (v, e) in m {
                *mm.entry(f(v)).or_insert(0) += e;
            }
            out.add_term(mm.into_iter().collect(), c.clone());
        }
        out
    }

    /// Renders with `name` for variables, highest-degree monomials first.
    pub fn render(&self, name: impl Fn(&V) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().map(|(_, e)| e).sum();
            let db: u32 = b.iter().map(|(_, e)| e).sum();
            db.cmp(&da).then_with(|| a.cmp(b))
        });
        let mut out = String::new();
        for (m, c) in terms {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .map(|(v, e)| if *e == 1 { name(v) } else { format!("{}^{e}", name(v)) })
                .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{a}*{}", mono.join("*")));
            }
        }
        out
    }
}

impl<V: Ord + Clone> Add for &MPoly<V> {
    type Output = MPoly<V>;
    fn add(self, o: &MPoly<V>) -> MPoly<V> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<V: Ord + Clone> Sub for &MPoly<V> {
    type Output = MPoly<V>;
    fn sub(self, o: &MPoly<V>) -> MPoly<V> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<V: Ord + Clone> Mul for &MPoly<V> {
    type Output = MPoly<V>;
    fn mul(self, o: &MPoly<V>) -> MPoly<V> {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl<V: Ord + Clone> Neg for &MPoly<V> {
    type Output = MPoly<V>;
    fn neg(self) -> MPoly<V> {
        self.scale(&-BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_views() {
        let p = MPoly::var(0u8);
        let x = MPoly::var(1u8);
        let f = &(&x * &x) - &p; // x^2 - p
        assert_eq!(f.total_degree(), 2);
        assert_eq!(f.degree_in(&1), 2);
        let cs = f.coeffs_in(&1);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], -&p);
        assert!(cs[1].is_zero());
        assert_eq!(f.render(|v| if *v == 0 { "p".into() } else { "x".into() }), "x^2 - p");
        let v = f.eval(&|v| if *v == 0 { Rational::from_integer(4.into()) } else { Rational::from_integer(3.into()) });
        assert_eq!(v, Rational::from_integer(5.into()));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = MPoly::var('p');
        assert!((&p - &p).is_zero());
    }
}
