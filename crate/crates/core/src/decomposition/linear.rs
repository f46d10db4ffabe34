//! Cells of a hyperplane arrangement over the parameters, decided by exact
//! Fourier–Motzkin elimination with strictness flags, plus the slack-variable
//! form and bounded integer search.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::algebraic::simplest_between;
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::model::{Expr, ParamId};

/// `coeffs · P + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinForm {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl LinForm {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        LinForm { coeffs, constant }
    }

    pub fn from_ints(coeffs: &[i64], constant: i64) -> Self {
        LinForm {
            coeffs: coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
            constant: Rational::from_integer(constant.into()),
        }
    }

    /// `e` as a form over `m` parameters; `None` for `∞`.
    pub fn from_expr(e: &Expr, m: usize) -> Result<Option<LinForm>> {
        match e {
            Expr::Infinity => Ok(None),
            Expr::Polynomial(_) => Err(Error::Unsupported("polynomial expression in a linear decomposition".into())),
            Expr::Linear(l) => {
                let mut coeffs = vec![Rational::zero(); m];
                for (ParamId(p), c) in &l.coeffs {
                    if *p >= m {
                        return Err(Error::Invalid(format!("parameter #{p} outside dimension {m}")));
                    }
                    coeffs[*p] = Rational::from_integer((*c).into());
                }
                Ok(Some(LinForm { coeffs, constant: Rational::from_integer(l.constant.into()) }))
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().zip(point).fold(self.constant.clone(), |acc, (c, v)| acc + c * v)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> LinForm {
        LinForm { coeffs: self.coeffs.iter().map(|c| -c).collect(), constant: -&self.constant }
    }

    pub fn sub(&self, o: &LinForm) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
            constant: &self.constant - &o.constant,
        }
    }

    fn scale(&self, k: &Rational) -> LinForm {
        LinForm { coeffs: self.coeffs.iter().map(|c| c * k).collect(), constant: &self.constant * k }
    }

    fn add(&self, o: &LinForm) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &o.constant,
        }
    }

    /// Positive multiple with coprime integer entries.
    fn primitive(&self) -> LinForm {
        let all = self.coeffs.iter().chain(std::iter::once(&self.constant));
        let den = all.clone().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = all.fold(BigInt::zero(), |acc, c| acc.gcd(&(c * Rational::from_integer(den.clone())).to_integer()));
        if num.is_zero() {
            return self.clone();
        }
        self.scale(&Rational::new(den, num))
    }

    /// Primitive form whose first nonzero coefficient is positive, and the sign
    /// applied; `None` for constant forms.
    pub fn normalized(&self) -> Option<(LinForm, i8)> {
        let lead = self.coeffs.iter().find(|c| !c.is_zero())?;
        let p = self.primitive();
        Some(if lead.is_negative() { (p.neg(), -1) } else { (p, 1) })
    }

    pub fn render(&self, params: &[String]) -> String {
        let mut out = String::new();
        for (c, name) in self.coeffs.iter().zip(params) {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            out.push_str(match (out.is_empty(), c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            if !a.is_one() {
                out.push_str(&format!("{a}*"));
            }
            out.push_str(name);
        }
        if out.is_empty() {
            return self.constant.to_string();
        }
        if !self.constant.is_zero() {
            let sep = if self.constant.is_negative() { " - " } else { " + " };
            out.push_str(&format!("{sep}{}", self.constant.abs()));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LinRel {
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for LinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinRel::Gt => ">",
            LinRel::Ge => ">=",
            LinRel::Eq => "=",
        })
    }
}

/// `form rel 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinConstraint {
    pub form: LinForm,
    pub rel: LinRel,
}

impl LinConstraint {
    pub fn new(form: LinForm, rel: LinRel) -> Self {
        LinConstraint { form, rel }
    }

    /// The constraint `sign(form) = s`.
    pub fn of_sign(form: &LinForm, s: i8) -> Self {
        match s {
            0 => LinConstraint::new(form.clone(), LinRel::Eq),
            s if s > 0 => LinConstraint::new(form.clone(), LinRel::Gt),
            _ => LinConstraint::new(form.neg(), LinRel::Gt),
        }
    }

    pub fn holds(&self, point: &[Rational]) -> bool {
        let v = self.form.eval(point);
        match self.rel {
            LinRel::Gt => v.is_positive(),
            LinRel::Ge => !v.is_negative(),
            LinRel::Eq => v.is_zero(),
        }
    }

    pub fn render(&self, params: &[String]) -> String {
        format!("{} {} 0", self.form.render(params), self.rel)
    }
}

/// One elimination stage: the variable removed and the inequalities it appeared in.
struct Stage {
    var: usize,
    rows: Vec<(LinForm, bool)>,
}

/// `x_var = form` from an equality.
struct Substitution {
    var: usize,
    form: LinForm,
}

fn substitute(f: &LinForm, s: &Substitution) -> LinForm {
    let c = f.coeffs[s.var].clone();
    if c.is_zero() {
        return f.clone();
    }
    let mut g = f.clone();
    g.coeffs[s.var] = Rational::zero();
    g.add(&s.form.scale(&c))
}

/// Keeps the tightest row per direction.
fn prune(rows: Vec<(LinForm, bool)>) -> Option<Vec<(LinForm, bool)>> {
    let mut best: std::collections::BTreeMap<Vec<Rational>, (Rational, bool)> = Default::default();
    for (f, strict) in rows {
        let Some(scale) = f.coeffs.iter().map(|c| c.abs()).filter(|c| !c.is_zero()).max() else {
            let ok = if strict { f.constant.is_positive() } else { !f.constant.is_negative() };
            if !ok {
                return None;
            }
            continue;
        };
        let g = f.scale(&scale.recip());
        let e = best.entry(g.coeffs.clone()).or_insert((g.constant.clone(), strict));
        if g.constant < e.0 || (g.constant == e.0 && strict) {
            *e = (g.constant, strict);
        }
    }
    Some(best.into_iter().map(|(coeffs, (constant, strict))| (LinForm { coeffs, constant }, strict)).collect())
}

/// A rational point of `{x : f(x) rel 0}`, or `None` when empty.
pub fn solve(constraints: &[LinConstraint], m: usize) -> Option<Vec<Rational>> {
    let mut subs: Vec<Substitution> = Vec::new();
    let mut eqs: Vec<LinForm> = Vec::new();
    let mut rows: Vec<(LinForm, bool)> = Vec::new();
    for c in constraints {
        match c.rel {
            LinRel::Eq => eqs.push(c.form.clone()),
            LinRel::Gt => rows.push((c.form.clone(), true)),
            LinRel::Ge => rows.push((c.form.clone(), false)),
        }
    }
    while let Some(e) = eqs.pop() {
        let Some(v) = e.coeffs.iter().position(|c| !c.is_zero()) else {
            if !e.constant.is_zero() {
                return None;
            }
            continue;
        };
        // x_v = -(e - a_v x_v) / a_v
        let a = e.coeffs[v].clone();
        let mut rest = e.clone();
        rest.coeffs[v] = Rational::zero();
        let s = Substitution { var: v, form: rest.scale(&(-a.recip())) };
        for f in eqs.iter_mut() {
            *f = substitute(f, &s);
        }
        for (f, _) in rows.iter_mut() {
            *f = substitute(f, &s);
        }
        subs.push(s);
    }
    let eliminated: Vec<usize> = subs.iter().map(|s| s.var).collect();
    let free: Vec<usize> = (0..m).filter(|v| !eliminated.contains(v)).collect();
    let mut stages: Vec<Stage> = Vec::new();
    let mut rows = prune(rows)?;
    for &v in free.iter().rev() {
        let (mut lower, mut upper, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for (f, s) in &rows {
            match f.coeffs[v].cmp(&Rational::zero()) {
                std::cmp::Ordering::Greater => lower.push((f.clone(), *s)),
                std::cmp::Ordering::Less => upper.push((f.clone(), *s)),
                std::cmp::Ordering::Equal => keep.push((f.clone(), *s)),
            }
        }
        for (l, sl) in &lower {
            for (u, su) in &upper {
                let combined = l.scale(&-u.coeffs[v].clone()).add(&u.scale(&l.coeffs[v]));
                keep.push((combined, *sl || *su));
            }
        }
        stages.push(Stage { var: v, rows: rows.clone() });
        rows = prune(keep)?;
    }
    let mut point = vec![Rational::zero(); m];
    for stage in stages.iter().rev() {
        let v = stage.var;
        let mut lo: Option<(Rational, bool)> = None;
        let mut hi: Option<(Rational, bool)> = None;
        for (f, strict) in &stage.rows {
            let a = &f.coeffs[v];
            if a.is_zero() {
                continue;
            }
            let mut rest = f.clone();
            rest.coeffs[v] = Rational::zero();
            let bound = -rest.eval(&point) / a;
            if a.is_positive() {
                if lo.as_ref().map_or(true, |(b, s)| bound > *b || (bound == *b && *strict && !*s)) {
                    lo = Some((bound, *strict));
                }
            } else if hi.as_ref().map_or(true, |(b, s)| bound < *b || (bound == *b && *strict && !*s)) {
                hi = Some((bound, *strict));
            }
        }
        point[v] = pick(lo, hi);
    }
    for s in subs.iter().rev() {
        point[s.var] = s.form.eval(&point);
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&point)));
    Some(point)
}

/// A simple value in the interval given by optional `(bound, strict)` ends.
fn pick(lo: Option<(Rational, bool)>, hi: Option<(Rational, bool)>) -> Rational {
    let inside = |v: &Rational| {
        lo.as_ref().map_or(true, |(b, s)| if *s { v > b } else { v >= b })
            && hi.as_ref().map_or(true, |(b, s)| if *s { v < b } else { v <= b })
    };
    let zero = Rational::zero();
    if inside(&zero) {
        return zero;
    }
    match (&lo, &hi) {
        (Some((l, _)), Some((h, _))) if l == h => l.clone(),
        (Some((l, _)), Some((h, _))) => {
            let c = if l.is_negative() { h.ceil() - Rational::one() } else { l.floor() + Rational::one() };
            if inside(&c) {
                c
            } else {
                simplest_between(l, h)
            }
        }
        (Some((l, _)), None) => l.floor() + Rational::one(),
        (None, Some((h, _))) => h.ceil() - Rational::one(),
        (None, None) => zero,
    }
}

pub fn feasible(constraints: &[LinConstraint], m: usize) -> bool {
    solve(constraints, m).is_some()
}

/// A cell of the arrangement: the sign of each (normalized) hyperplane form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCell {
    pub constraints: Vec<LinConstraint>,
    pub signs: Vec<i8>,
    pub sample: Vec<Rational>,
}

/// Integer points of `[lo, hi]^m` by increasing coordinate sum (or `L1` norm), then lexicographically.
fn integer_candidates(m: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut all = vec![Vec::new()];
    for _ in 0..m {
        all = all
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    all.sort_by_key(|v| (v.iter().map(|k| k.abs()).sum::<i64>(), v.clone()));
    all
}

const SAMPLE_BOX: i64 = 4;

/// Deduplicated normalized hyperplanes of non-constant forms.
pub fn hyperplanes(forms: &[LinForm]) -> Vec<LinForm> {
    let mut out: Vec<LinForm> = Vec::new();
    for f in forms {
        if let Some((g, _)) = f.normalized() {
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out
}

/// All realizable sign vectors of the hyperplanes `forms` (after
/// normalization), each with a rational sample, ordered by sign vector.
pub fn arrangement(forms: &[LinForm], m: usize) -> Result<Vec<LinearCell>> {
    if m > 3 {
        return Err(Error::Unsupported(format!("linear decomposition in dimension {m} (at most 3)")));
    }
    if forms.iter().any(|f| f.dim() != m) {
        return Err(Error::Invalid("form dimension mismatch".into()));
    }
    let planes = hyperplanes(forms);
    let candidates = [integer_candidates(m, 0, SAMPLE_BOX), integer_candidates(m, -SAMPLE_BOX, SAMPLE_BOX)];
    let mut out = Vec::new();
    let mut cons = Vec::new();
    let mut signs = Vec::new();
    dfs(&planes, m, &mut cons, &mut signs, &candidates, &mut out);
    Ok(out)
}

fn dfs(
    planes: &[LinForm],
    m: usize,
    cons: &mut Vec<LinConstraint>,
    signs: &mut Vec<i8>,
    candidates: &[Vec<Vec<i64>>; 2],
    out: &mut Vec<LinearCell>,
) {
    let k = signs.len();
    if k == planes.len() {
        let sample = candidates
            .iter()
            .flatten()
            .map(|v| v.iter().map(|&x| Rational::from_integer(x.into())).collect::<Vec<_>>())
            .find(|p| cons.iter().all(|c| c.holds(p)))
            .or_else(|| solve(cons, m))
            .expect("feasible cell");
        out.push(LinearCell { constraints: cons.clone(), signs: signs.clone(), sample });
        return;
    }
    for s in [-1i8, 0, 1] {
        cons.push(LinConstraint::of_sign(&planes[k], s));
        if feasible(cons, m) {
            signs.push(s);
            dfs(planes, m, cons, signs, candidates, out);
            signs.pop();
        }
        cons.pop();
    }
}

/// Lexicographically least integer point of the system inside `bounds`.
pub fn integer_point(constraints: &[LinConstraint], bounds: &[(i64, i64)]) -> Option<Vec<i64>> {
    let m = bounds.len();
    let mut prefix = Vec::with_capacity(m);
    search(constraints, bounds, &mut prefix)
}

fn search(constraints: &[LinConstraint], bounds: &[(i64, i64)], prefix: &mut Vec<i64>) -> Option<Vec<i64>> {
    let m = bounds.len();
    let k = prefix.len();
    // fix the prefix and keep the remaining coordinates free inside the box
    let mut fixed: Vec<LinConstraint> = constraints.iter().map(|c| fix(c, prefix)).collect();
    for (j, (lo, hi)) in bounds.iter().enumerate().skip(k) {
        let mut up = vec![Rational::zero(); m];
        up[j] = -Rational::one();
        fixed.push(LinConstraint::new(LinForm::new(up.clone(), Rational::from_integer((*hi).into())), LinRel::Ge));
        up[j] = Rational::one();
        fixed.push(LinConstraint::new(LinForm::new(up, Rational::from_integer((-lo).into())), LinRel::Ge));
    }
    if !feasible(&fixed, m) {
        return None;
    }
    if k == m {
        return Some(prefix.clone());
    }
    let (lo, hi) = bounds[k];
    for v in lo..=hi {
        prefix.push(v);
        if let Some(p) = search(constraints, bounds, prefix) {
            return Some(p);
        }
        prefix.pop();
    }
    None
}

fn fix(c: &LinConstraint, prefix: &[i64]) -> LinConstraint {
    let mut f = c.form.clone();
    for (i, v) in prefix.iter().enumerate() {
        f.constant += &f.coeffs[i] * Rational::from_integer((*v).into());
        f.coeffs[i] = Rational::zero();
    }
    LinConstraint::new(f, c.rel)
}

/// `Σ coeffs·v = rhs` over the original parameters followed by slack variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlackSystem {
    pub params: usize,
    pub slacks: usize,
    pub rows: Vec<(Vec<BigInt>, BigInt)>,
}

impl SlackSystem {
    /// Slack values extending `point`, if all are nonnegative and every row holds.
    pub fn extend(&self, point: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut full = point.to_vec();
        full.resize(self.params + self.slacks, BigInt::zero());
        for (coeffs, rhs) in &self.rows {
            if let Some(s) = (self.params..self.params + self.slacks).find(|&s| !coeffs[s].is_zero()) {
                let partial: BigInt = coeffs[..self.params].iter().zip(point).map(|(a, v)| a * v).sum();
                // partial - slack = rhs
                full[s] = (&partial - rhs) * &coeffs[s] * -1;
            }
        }
        let ok = full[self.params..].iter().all(|s| !s.is_negative())
            && self.rows.iter().all(|(c, r)| c.iter().zip(&full).map(|(a, v)| a * v).sum::<BigInt>() == *r);
        ok.then_some(full)
    }

    pub fn render(&self, names: &[String]) -> Vec<String> {
        let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("p{}", i + 1));
        self.rows
            .iter()
            .map(|(coeffs, rhs)| {
                let coeffs: Vec<Rational> = coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect();
                let all: Vec<String> = (0..coeffs.len()).map(name).collect();
                format!("{} = {rhs}", LinForm::new(coeffs, Rational::zero()).render(&all))
            })
            .collect()
    }
}

/// Rewrites `a·P + c ≥ 0` as `a·P − s = −c` with a fresh slack `s ≥ 0`; strict
/// rows first become `a·P + c − 1 ≥ 0` (integer parameters). Equalities stay.
pub fn slack_form(system: &[LinConstraint]) -> Result<SlackSystem> {
    let m = system.first().map_or(0, |c| c.form.dim());
    let int = |r: &Rational| {
        r.is_integer().then(|| r.to_integer()).ok_or_else(|| Error::NonInteger(r.to_string()))
    };
    let slacks = system.iter().filter(|c| c.rel != LinRel::Eq).count();
    let mut rows = Vec::new();
    let mut next = m;
    for c in system {
        let mut coeffs = c.form.coeffs.iter().map(int).collect::<Result<Vec<_>>>()?;
        coeffs.resize(m + slacks, BigInt::zero());
        let mut rhs = -int(&c.form.constant)?;
        if c.rel == LinRel::Gt {
            rhs += 1;
        }
        if c.rel != LinRel::Eq {
            coeffs[next] = BigInt::from(-1);
            next += 1;
        }
        rows.push((coeffs, rhs));
    }
    Ok(SlackSystem { params: m, slacks, rows })
}

/// Integer coordinates as `i64` when they fit.
pub fn small_ints(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter().map(|r| if r.is_integer() { r.to_integer().to_i64() } else { None }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn ints(v: &[Rational]) -> Vec<i64> {
        small_ints(v).unwrap()
    }

    #[test]
    fn one_dimension() {
        let cells = arrangement(&[LinForm::from_ints(&[1], -2)], 1).unwrap();
        let samples: Vec<Vec<i64>> = cells.iter().map(|c| ints(&c.sample)).collect();
        assert_eq!(samples, vec![vec![0], vec![2], vec![3]]);
        assert_eq!(cells.iter().map(|c| c.signs[0]).collect::<Vec<_>>(), vec![-1, 0, 1]);
    }

    #[test]
    fn diagonal_line() {
        let cells = arrangement(&[LinForm::from_ints(&[1, -1], 0)], 2).unwrap();
        let samples: Vec<Vec<i64>> = cells.iter().map(|c| ints(&c.sample)).collect();
        assert_eq!(samples, vec![vec![0, 1], vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn three_lines_match_census() {
        let forms = [LinForm::from_ints(&[1, 0], 0), LinForm::from_ints(&[0, 1], 0), LinForm::from_ints(&[1, 1], -2)];
        let cells = arrangement(&forms, 2).unwrap();
        // census on a fine grid of [-3,3]^2 with step 1/4
        let mut seen = std::collections::BTreeSet::new();
        for i in -12..=12 {
            for j in -12..=12 {
                let p = [ratio(i, 4), ratio(j, 4)];
                let s: Vec<i8> = forms.iter().map(|f| crate::algebra::upoly::sign(&f.eval(&p))).collect();
                seen.insert(s);
            }
        }
        assert_eq!(cells.len(), seen.len());
        assert_eq!(cells.len(), 19);
        for c in &cells {
            assert!(c.constraints.iter().all(|k| k.holds(&c.sample)));
        }
    }

    #[test]
    fn solving_strict_systems() {
        // 0 < p < 1 has no integer but a rational point
        let cons = [
            LinConstraint::new(LinForm::from_ints(&[1], 0), LinRel::Gt),
            LinConstraint::new(LinForm::from_ints(&[-1], 1), LinRel::Gt),
        ];
        let p = solve(&cons, 1).unwrap();
        assert_eq!(p, vec![ratio(1, 2)]);
        let empty = [
            LinConstraint::new(LinForm::from_ints(&[1], -1), LinRel::Gt),
            LinConstraint::new(LinForm::from_ints(&[-1], 1), LinRel::Ge),
        ];
        assert!(solve(&empty, 1).is_none());
    }

    #[test]
    fn integer_points() {
        let ge2 = [LinConstraint::new(LinForm::from_ints(&[1], -2), LinRel::Ge)];
        assert_eq!(integer_point(&ge2, &[(0, 10)]), Some(vec![2]));
        let eq = [
            LinConstraint::new(LinForm::from_ints(&[2, 3], -5), LinRel::Eq),
            LinConstraint::new(LinForm::from_ints(&[1, 0], 0), LinRel::Ge),
            LinConstraint::new(LinForm::from_ints(&[0, 1], 0), LinRel::Ge),
        ];
        assert_eq!(integer_point(&eq, &[(0, 5), (0, 5)]), Some(vec![1, 1]));
        let half = [LinConstraint::new(LinForm::new(vec![rat(2)], rat(-1)), LinRel::Eq)];
        assert_eq!(integer_point(&half, &[(-10, 10)]), None);
    }

    #[test]
    fn slack_variables() {
        let s = slack_form(&[LinConstraint::new(LinForm::from_ints(&[2, 3], -5), LinRel::Ge)]).unwrap();
        assert_eq!(s.render(&[]), vec!["2*p1 + 3*p2 - p3 = 5"]);
        let s = slack_form(&[LinConstraint::new(LinForm::from_ints(&[1], -4), LinRel::Eq)]).unwrap();
        assert_eq!(s.render(&[]), vec!["p1 = 4"]);
        let s = slack_form(&[LinConstraint::new(LinForm::from_ints(&[1], -2), LinRel::Gt)]).unwrap();
        assert_eq!(s.render(&[]), vec!["p1 - p2 = 3"]);
        assert!(s.extend(&[BigInt::from(3)]).is_some());
        assert!(s.extend(&[BigInt::from(2)]).is_none());
        let bad = slack_form(&[LinConstraint::new(LinForm::new(vec![ratio(1, 2)], rat(0)), LinRel::Ge)]);
        assert!(matches!(bad, Err(Error::NonInteger(_))));
    }
}
