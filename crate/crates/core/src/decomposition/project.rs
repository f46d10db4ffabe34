//! Resultants and the projection of `ℤ[p, x]` onto `ℤ[p]`.

use num_traits::Zero;

use crate::algebra::{MPoly, Rational, UPoly};

/// Variables of the bivariate projection: the parameter and the clock.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PX {
    P,
    X,
}

pub type Bivariate = MPoly<PX>;

fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut acc = Rational::from_integer(1.into());
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if r != c {
            m.swap(r, c);
            acc = -acc;
        }
        let pivot = m[c][c].clone();
        acc *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    acc
}

/// Resultant of two univariate coefficient lists (lowest degree first) of formal
/// degrees `a.len() - 1` and `b.len() - 1`.
pub fn sylvester_resultant(a: &[Rational], b: &[Rational]) -> Rational {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return Rational::from_integer(1.into());
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    det(rows)
}

fn interpolate(points: &[(Rational, Rational)]) -> UPoly {
    let mut out = UPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = UPoly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let lin = UPoly::from_coeffs(vec![-xj.clone(), Rational::from_integer(1.into())]);
                basis = (&basis * &lin).scale(&(xi - xj).recip());
            }
        }
        out = &out + &basis;
    }
    out
}

fn coeffs_at(f: &Bivariate, p: &Rational) -> Vec<Rational> {
    f.coeffs_in(&PX::X).iter().map(|c| c.eval(&|_| p.clone())).collect()
}

/// `Res_x(f, g)` as a polynomial in `p`, by evaluation at integer points and
/// interpolation.
pub fn resultant_x(f: &Bivariate, g: &Bivariate) -> UPoly {
    let (m, n) = (f.degree_in(&PX::X) as usize, g.degree_in(&PX::X) as usize);
    let bound = n * f.degree_in(&PX::P) as usize + m * g.degree_in(&PX::P) as usize;
    let points: Vec<(Rational, Rational)> = (0..=bound)
        .map(|k| {
            let p = Rational::from_integer((k as i64).into());
            let (mut a, mut b) = (coeffs_at(f, &p), coeffs_at(g, &p));
            a.resize(m + 1, Rational::zero());
            b.resize(n + 1, Rational::zero());
            (p, sylvester_resultant(&a, &b))
        })
        .collect();
    interpolate(&points)
}

fn derivative_x(f: &Bivariate) -> Bivariate {
    let mut out = Bivariate::zero();
    for (m, c) in f.terms() {
        let Some(&(_, e)) = m.iter().find(|(v, _)| *v == PX::X) else {
            continue;
        };
        let mono: Vec<(PX, u32)> = m
            .iter()
            .filter_map(|&(v, k)| if v == PX::X { (k > 1).then_some((v, k - 1)) } else { Some((v, k)) })
            .collect();
        out.add_term(mono, c * e);
    }
    out
}

/// Projection of `F ⊂ ℤ[p, x]`: coefficients in `x` of positive degree,
/// discriminants, pairwise resultants and the `x`-free members themselves.
/// Zero and constant results are dropped; the rest are made square-free and
/// deduplicated.
pub fn project_clock(family: &[Bivariate]) -> Vec<UPoly> {
    let mut out: Vec<UPoly> = Vec::new();
    let mut push = |u: UPoly| {
        if u.degree().unwrap_or(0) > 0 {
            let u = u.square_free();
            if !out.contains(&u) {
                out.push(u);
            }
        }
    };
    let with_x: Vec<&Bivariate> = family.iter().filter(|f| f.degree_in(&PX::X) > 0).collect();
    for f in family {
        if f.degree_in(&PX::X) == 0 {
            push(f.to_upoly(&PX::P));
        }
    }
    for f in &with_x {
        for c in f.coeffs_in(&PX::X).iter().skip(1) {
            push(c.to_upoly(&PX::P));
        }
        if f.degree_in(&PX::X) >= 2 {
            push(resultant_x(f, &derivative_x(f)));
        }
    }
    for (i, f) in with_x.iter().enumerate() {
        for g in &with_x[i + 1..] {
            push(resultant_x(f, g));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, MPoly};
    use num_traits::Signed;

    fn x() -> Bivariate {
        MPoly::var(PX::X)
    }
    fn p() -> Bivariate {
        MPoly::var(PX::P)
    }
    fn k(c: i64) -> Bivariate {
        MPoly::constant(c.into())
    }

    #[test]
    fn sylvester() {
        // Res(x - 2, x - 5) = 2 - 5 up to sign
        let r = sylvester_resultant(&[rat(-2), rat(1)], &[rat(-5), rat(1)]);
        assert_eq!(r.abs(), rat(3));
        // Res(x^2 - 4, x - 2) = 0
        assert_eq!(sylvester_resultant(&[rat(-4), rat(0), rat(1)], &[rat(-2), rat(1)]), rat(0));
    }

    #[test]
    fn projections() {
        let f = &x() - &(&k(2) * &p());
        assert!(project_clock(&[f]).is_empty());
        let f = &(&p() * &x()) - &k(1);
        assert_eq!(project_clock(&[f]), vec![UPoly::from_ints(&[0, 1])]);
        let f = &(&x() * &x()) - &p();
        assert_eq!(project_clock(&[f]), vec![UPoly::from_ints(&[0, 1])]);
        let a = &x() - &p();
        let b = &k(2) - &x();
        assert_eq!(project_clock(&[a, b]), vec![UPoly::from_ints(&[-2, 1])]);
    }

    #[test]
    fn resultant_in_p() {
        // Res_x(x - p^2, x - 1) = ±(p^2 - 1)
        let a = &x() - &(&p() * &p());
        let b = &x() - &k(1);
        let r = resultant_x(&a, &b);
        assert_eq!(r.square_free(), UPoly::from_ints(&[-1, 0, 1]));
    }
}
