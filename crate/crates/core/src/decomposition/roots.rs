//! Real root isolation by Sturm sequences and bisection.

use num_traits::Signed;

use crate::algebra::algebraic::simplest_between;
use crate::algebra::upoly::{cauchy_bound, count_roots, sturm_sequence};
use crate::algebra::{AlgebraicNumber, Rational, UPoly};
use crate::error::{Error, Result};

/// All distinct real roots of `f` in increasing order. Rational roots come
/// back with degenerate intervals.
pub fn isolate_real_roots(f: &UPoly) -> Result<Vec<AlgebraicNumber>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = f.square_free();
    if g.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(&g);
    let b = cauchy_bound(&g);
    let lc = g.lc().abs();
    let rational_width = (&lc * &lc).recip();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    // left-to-right traversal: push the right half first
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && g.sign_at(&hi) == 0 {
            out.push(AlgebraicNumber::from_rational(hi));
            continue;
        }
        if n == 1 && g.sign_at(&lo) != 0 {
            out.push(finish(&g, lo, hi, &rational_width));
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    Ok(out)
}

/// Turns an isolating interval into a number, detecting rational roots: a
/// rational root of a primitive integer polynomial has a denominator dividing
/// the leading coefficient, so once the interval is narrower than `1/lc²` the
/// simplest rational inside is the only candidate.
fn finish(g: &UPoly, lo: Rational, hi: Rational, width: &Rational) -> AlgebraicNumber {
    let mut a = AlgebraicNumber::from_isolating(g.clone(), lo, hi);
    a.refine_to(width);
    if a.as_rational().is_some() {
        return a;
    }
    let c = simplest_between(a.lo(), a.hi());
    if g.sign_at(&c) == 0 {
        return AlgebraicNumber::from_rational(c);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn examples() {
        let r = isolate_real_roots(&UPoly::from_ints(&[-4, 0, 1])).unwrap();
        let vals: Vec<_> = r.iter().map(|a| a.as_rational().cloned()).collect();
        assert_eq!(vals, vec![Some(rat(-2)), Some(rat(2))]);
        assert!(isolate_real_roots(&UPoly::from_ints(&[1, 0, 1])).unwrap().is_empty());
        let r = isolate_real_roots(&UPoly::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|a| a.as_rational().is_none()));
        assert!(r[0].hi() < &rat(0) && r[1].lo() >= &rat(0));
        assert!(matches!(isolate_real_roots(&UPoly::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (3p - 1)(2p + 5)(p^2 - 3)
        let f = &(&UPoly::from_ints(&[-1, 3]) * &UPoly::from_ints(&[5, 2])) * &UPoly::from_ints(&[-3, 0, 1]);
        let r = isolate_real_roots(&f).unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r[0].as_rational(), Some(&crate::algebra::ratio(-5, 2)));
        assert_eq!(r[2].as_rational(), Some(&crate::algebra::ratio(1, 3)));
        assert!(r[1].as_rational().is_none() && r[3].as_rational().is_none());
        for w in r.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn repeated_roots_collapse() {
        let f = &UPoly::from_ints(&[-1, 1]) * &UPoly::from_ints(&[-1, 1]);
        assert_eq!(isolate_real_roots(&f).unwrap().len(), 1);
    }
}
