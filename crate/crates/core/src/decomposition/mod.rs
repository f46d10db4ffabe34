//! Sign-invariant decompositions of the parameter space with exact samples.

pub mod linear;
pub mod project;
pub mod roots;

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::algebra::algebraic::simplest_between;
use crate::algebra::{AlgebraicNumber, Rational, UPoly};
use crate::error::Result;
use crate::model::{ParamPoint, ParameterValuation};

pub use linear::{LinConstraint, LinForm, LinRel};

/// `δ`: one sign per polynomial, in input order.
pub type SignAssignment = Vec<i8>;

#[derive(Clone, Debug)]
pub enum CellKind {
    /// Open interval; `None` marks an infinite end.
    Interval1D { lo: Option<Arc<AlgebraicNumber>>, hi: Option<Arc<AlgebraicNumber>> },
    Point1D(Arc<AlgebraicNumber>),
    LinearSystem(Vec<LinConstraint>),
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub kind: CellKind,
    pub sample: ParamPoint,
    pub signs: SignAssignment,
}

fn rpoint(v: Vec<Rational>) -> ParamPoint {
    ParamPoint::Rational(ParameterValuation(v))
}

impl Cell {
    /// Whether the rational point lies in the cell.
    pub fn contains(&self, gamma: &[Rational]) -> bool {
        match &self.kind {
            CellKind::Interval1D { lo, hi } => {
                let g = &gamma[0];
                lo.as_ref().map_or(true, |a| a.cmp_rational(g) == Ordering::Less)
                    && hi.as_ref().map_or(true, |b| b.cmp_rational(g) == Ordering::Greater)
            }
            CellKind::Point1D(a) => a.cmp_rational(&gamma[0]) == Ordering::Equal,
            CellKind::LinearSystem(cons) => cons.iter().all(|c| c.holds(gamma)),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            CellKind::Interval1D { .. } => "interval",
            CellKind::Point1D(_) => "point",
            CellKind::LinearSystem(_) => "linear",
        }
    }

    /// Random points of the cell's relative interior. A point cell yields its
    /// sample; irrational samples appear only there.
    pub fn interior_samples(&self, rng: &mut impl Rng, count: usize) -> Vec<ParamPoint> {
        match &self.kind {
            CellKind::Point1D(_) => vec![self.sample.clone(); count.min(1)],
            CellKind::Interval1D { lo, hi } => {
                let (l, h) = rational_hull(lo.as_deref(), hi.as_deref());
                (0..count).map(|_| rpoint(vec![between(rng, &l, &h)])).collect()
            }
            CellKind::LinearSystem(cons) => {
                let s = self.sample.as_rational().expect("linear samples are rational").0.clone();
                (0..count).map(|_| rpoint(ray_point(rng, cons, &s))).collect()
            }
        }
    }

    pub fn to_json(&self, params: &[String], polys: &[String]) -> Value {
        let mut v = json!({ "kind": self.kind_name() });
        match &self.kind {
            CellKind::Interval1D { lo, hi } => {
                let end = |e: &Option<Arc<AlgebraicNumber>>, inf: &str| match e {
                    Some(a) => serde_json::to_value(a.to_json()).expect("json"),
                    None => json!(inf),
                };
                v["endpoints"] = json!([end(lo, "-inf"), end(hi, "inf")]);
            }
            CellKind::Point1D(a) => v["endpoints"] = json!([a.to_json(), a.to_json()]),
            CellKind::LinearSystem(cons) => {
                v["constraints"] = json!(cons.iter().map(|c| c.render(params)).collect::<Vec<_>>());
            }
        }
        v["sample"] = sample_json(&self.sample);
        let signs: serde_json::Map<String, Value> =
            polys.iter().zip(&self.signs).map(|(n, s)| (n.clone(), json!(s))).collect();
        v["signs"] = Value::Object(signs);
        v
    }
}

pub fn sample_json(p: &ParamPoint) -> Value {
    match p {
        ParamPoint::Rational(g) => json!(g.0.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
        ParamPoint::Algebraic(a) => json!([a.to_json()]),
    }
}

/// Rational bounds strictly inside the gaps next to the given ends; infinite
/// ends are replaced by a window of width 10.
fn rational_hull(lo: Option<&AlgebraicNumber>, hi: Option<&AlgebraicNumber>) -> (Rational, Rational) {
    let ten = Rational::from_integer(10.into());
    let above = |a: &AlgebraicNumber| a.as_rational().cloned().unwrap_or_else(|| a.hi().clone());
    let below = |a: &AlgebraicNumber| a.as_rational().cloned().unwrap_or_else(|| a.lo().clone());
    match (lo, hi) {
        (None, None) => (-ten.clone(), ten),
        (Some(a), None) => {
            let l = above(a);
            (l.clone(), l + ten)
        }
        (None, Some(b)) => {
            let h = below(b);
            (&h - ten, h)
        }
        (Some(a), Some(b)) => {
            let (mut a, mut b) = (a.clone(), b.clone());
            while above(&a) >= below(&b) {
                a.refine();
                b.refine();
            }
            (above(&a), below(&b))
        }
    }
}

/// A random rational strictly inside `(lo, hi)`.
fn between(rng: &mut impl Rng, lo: &Rational, hi: &Rational) -> Rational {
    let den: i64 = 1 << 16;
    let k = rng.gen_range(1..den);
    lo + (hi - lo) * Rational::new(k.into(), den.into())
}

/// Null-space basis of the equality rows.
fn null_space(rows: &[Vec<Rational>], m: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for k in 0..m {
            a[r][k] = &a[r][k] * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..m {
                    let v = &f * &a[r][k];
                    a[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..m)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); m];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// A random point of the cell along a random direction inside its affine hull.
fn ray_point(rng: &mut impl Rng, cons: &[LinConstraint], s: &[Rational]) -> Vec<Rational> {
    let m = s.len();
    let eqs: Vec<Vec<Rational>> =
        cons.iter().filter(|c| c.rel == LinRel::Eq).map(|c| c.form.coeffs.clone()).collect();
    let basis = null_space(&eqs, m);
    if basis.is_empty() {
        return s.to_vec();
    }
    let mut d = vec![Rational::zero(); m];
    for b in &basis {
        let w = Rational::from_integer(rng.gen_range(-5i64..=5).into());
        for k in 0..m {
            d[k] += &w * &b[k];
        }
    }
    let mut t_max: Option<Rational> = None;
    for c in cons.iter().filter(|c| c.rel != LinRel::Eq) {
        let slope: Rational = c.form.coeffs.iter().zip(&d).map(|(a, x)| a * x).sum();
        if slope < Rational::zero() {
            let t = c.form.eval(s) / -slope;
            if t_max.as_ref().map_or(true, |u| &t < u) {
                t_max = Some(t);
            }
        }
    }
    let t = between(rng, &Rational::zero(), &t_max.unwrap_or_else(|| Rational::from_integer(3.into())));
    s.iter().zip(&d).map(|(x, dx)| x + &t * dx).collect()
}

/// Exact sign of each polynomial at a one-dimensional point.
pub fn signs_at(polys: &[UPoly], point: &ParamPoint) -> SignAssignment {
    match point {
        ParamPoint::Rational(g) => polys.iter().map(|f| f.sign_at(&g.0[0])).collect(),
        ParamPoint::Algebraic(a) => polys.iter().map(|f| a.sign_of(f)).collect(),
    }
}

/// Exact sign of each linear form at a rational point.
pub fn linear_signs_at(forms: &[LinForm], point: &[Rational]) -> SignAssignment {
    forms.iter().map(|f| crate::algebra::upoly::sign(&f.eval(point))).collect()
}

fn sample_below(a: &AlgebraicNumber) -> Rational {
    match a.as_rational() {
        Some(r) => r - Rational::one(),
        None => Rational::from_integer(a.floor()),
    }
}

fn sample_above(a: &AlgebraicNumber) -> Rational {
    match a.as_rational() {
        Some(r) => r + Rational::one(),
        None => Rational::from_integer(a.ceil()),
    }
}

fn sample_between(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Rational {
    if let (Some(x), Some(y)) = (a.as_rational(), b.as_rational()) {
        return (x + y) / Rational::from_integer(2.into());
    }
    let (l, h) = rational_hull(Some(a), Some(b));
    if l < h {
        (&l + &h) / Rational::from_integer(2.into())
    } else {
        simplest_between(&l, &h)
    }
}

/// The cylindrical decomposition of `ℝ` induced by the real roots of `polys`.
pub fn decompose_1d(polys: &[UPoly]) -> Result<Vec<Cell>> {
    let mut all: Vec<AlgebraicNumber> = Vec::new();
    for f in polys.iter().filter(|f| !f.is_constant()) {
        all.extend(roots::isolate_real_roots(f)?);
    }
    all.sort();
    all.dedup();
    let roots: Vec<Arc<AlgebraicNumber>> = all.into_iter().map(Arc::new).collect();
    let mut cells = Vec::with_capacity(2 * roots.len() + 1);
    let mut push = |kind: CellKind, sample: ParamPoint| {
        let signs = signs_at(polys, &sample);
        cells.push(Cell { kind, sample, signs });
    };
    let Some(first) = roots.first() else {
        push(CellKind::Interval1D { lo: None, hi: None }, rpoint(vec![Rational::zero()]));
        return Ok(cells);
    };
    push(CellKind::Interval1D { lo: None, hi: Some(first.clone()) }, rpoint(vec![sample_below(first)]));
    for (k, r) in roots.iter().enumerate() {
        let sample = match r.as_rational() {
            Some(q) => rpoint(vec![q.clone()]),
            None => ParamPoint::Algebraic(r.clone()),
        };
        push(CellKind::Point1D(r.clone()), sample);
        let (hi, s) = match roots.get(k + 1) {
            Some(n) => (Some(n.clone()), sample_between(r, n)),
            None => (None, sample_above(r)),
        };
        push(CellKind::Interval1D { lo: Some(r.clone()), hi }, rpoint(vec![s]));
    }
    Ok(cells)
}

/// Cells of the arrangement of `forms` in `ℝ^m`, ordered by sign vector.
pub fn decompose_linear(forms: &[LinForm], m: usize) -> Result<Vec<Cell>> {
    Ok(linear::arrangement(forms, m)?
        .into_iter()
        .map(|c| {
            let signs = linear_signs_at(forms, &c.sample);
            Cell { kind: CellKind::LinearSystem(c.constraints), sample: rpoint(c.sample), signs }
        })
        .collect())
}

/// The verdict-independent index of the cell containing `gamma`.
pub fn locate(cells: &[Cell], gamma: &[Rational]) -> Option<usize> {
    cells.iter().position(|c| c.contains(gamma))
}
