//! Linking number of an oriented real line `ℝA` with the cooriented real
//! base `ℝB` of a pencil, computed in two independent ways, and the identity
//! `½D = H∘V + lk(ℝA, ℝB)` tying it to the number of roots of `R + iS` in
//! one half of the complexified line.
//!
//! The line through `u` and `v` is parametrised as `ℓ(t₀:t₁) = t₀u + t₁v`
//! with affine parameter `t = t₀/t₁`, oriented by increasing `t`, and `H` is
//! the half `ℑt > 0`.

mod halfplane;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{det3, Interval};
use crate::poly::{complexify, cross, rat, restrict_to_line, GaussianRational, HomPoly, PolyError, Rational, RationalPoint};
use crate::slice::{CoorientationFrame, CoorientedBase};
use crate::solve::{CertifiedBasePoint, ChartId};

pub use halfplane::{halfplane_root_count, HalfPlaneCount};

/// Chart orientation constant for `lk_chart`.
pub const SIGMA_CHART: i8 = 1;
/// Seed orientation constant for `lk_boundary`.
pub const SIGMA_BOUNDARY: i8 = 1;

const AUX_ATTEMPTS: usize = 64;
const DEFAULT_AUX_SEED: u64 = 0xa11ce;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the line meets the real base")]
    LineMeetsBase,
    #[error("the restricted form has a real root")]
    RealRoot,
    #[error("the restricted form has a root at t = ∞")]
    RootAtInfinity,
    #[error("the complexified line lies in V")]
    IdenticallyZero,
    #[error("no admissible auxiliary line found")]
    DegenerateAuxiliary,
    #[error("invariant violated: {0}")]
    InvariantBreach(String),
}

/// A real projective line through `u` and `v`, oriented from `v` towards `u`
/// (increasing `t = t₀/t₁`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedLine {
    u: RationalPoint,
    v: RationalPoint,
}

impl OrientedLine {
    pub fn new(u: RationalPoint, v: RationalPoint) -> Result<Self, LinkError> {
        if cross(&u, &v).iter().all(Zero::is_zero) {
            return Err(PolyError::DependentPoints.into());
        }
        Ok(Self { u, v })
    }

    pub fn from_ints(u: [i64; 3], v: [i64; 3]) -> Result<Self, LinkError> {
        Self::new(u.map(rat), v.map(rat))
    }

    pub fn u(&self) -> &RationalPoint {
        &self.u
    }

    pub fn v(&self) -> &RationalPoint {
        &self.v
    }

    /// Same line, opposite orientation (`t ↦ 1/t`).
    pub fn reversed(&self) -> Self {
        Self { u: self.v.clone(), v: self.u.clone() }
    }

    /// Coordinate vector `u × v` of the line.
    pub fn normal(&self) -> RationalPoint {
        cross(&self.u, &self.v)
    }
}

impl std::fmt::Display for OrientedLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p = |w: &RationalPoint| w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", p(&self.u), p(&self.v))
    }
}

/// Everything the identity `½D = H∘V + lk` needs, for one instance.
#[derive(Clone, Debug, Serialize)]
pub struct LinkingReport {
    #[serde(serialize_with = "ser_line")]
    pub line: OrientedLine,
    pub degree: u32,
    pub points: usize,
    pub epsilons: Vec<i8>,
    #[serde(serialize_with = "ser_rat")]
    pub lk_chart: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub lk_boundary: Rational,
    pub h_dot_v: u32,
    #[serde(serialize_with = "ser_rat")]
    pub residual: Rational,
    pub aux_seed: u64,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_line<S: serde::Serializer>(l: &OrientedLine, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&l.to_string())
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Fails with `LineMeetsBase` if some base point lies on the line.
fn check_disjoint(line: &OrientedLine, base: &CoorientedBase) -> Result<(), LinkError> {
    let l = linear_form(&line.normal());
    if base.points.iter().any(|f| f.point.sign_of_form(&l) == 0) {
        return Err(LinkError::LineMeetsBase);
    }
    Ok(())
}

/// `H∘V`: roots of `(R + iS)∘ℓ` with `ℑt > 0`.
pub fn h_circle_v(line: &OrientedLine, base: &CoorientedBase) -> Result<u32, LinkError> {
    let p = complexify(base.pencil.r(), base.pencil.s())?;
    let form = restrict_to_line(&p, &line.u, &line.v).map_err(|e| match e {
        PolyError::IdenticallyZero => LinkError::IdenticallyZero,
        e => e.into(),
    })?;
    Ok(halfplane_root_count(&form)?.upper)
}

/// `sign det(q̃, a, b)` for the coordinate frame `(a, b)` of a chart, with
/// `q̃` the chart representative.
fn frame_sign(chart: ChartId) -> i8 {
    match chart {
        ChartId::Z => 1,
        ChartId::Y => -1,
        ChartId::X => 1,
    }
}

/// Per-point signs `ε(q)` in the affine plane `ℝP² ∖ ℝA`.
pub fn chart_epsilons(line: &OrientedLine, base: &CoorientedBase) -> Result<Vec<i8>, LinkError> {
    check_disjoint(line, base)?;
    let l = linear_form(&line.normal());
    Ok(base
        .points
        .iter()
        .map(|f| SIGMA_CHART * f.det_sign * f.point.sign_of_form(&l) * frame_sign(f.chart()))
        .collect())
}

/// `lk = ½ Σ ε(q)` from the orientation of the affine plane complementary
/// to the line.
pub fn lk_chart(line: &OrientedLine, base: &CoorientedBase) -> Result<Rational, LinkError> {
    let eps = chart_epsilons(line, base)?;
    Ok(half() * rat(eps.iter().map(|&e| e as i64).sum()))
}

pub fn lk_boundary(line: &OrientedLine, base: &CoorientedBase) -> Result<Rational, LinkError> {
    lk_boundary_with(line, base, DEFAULT_AUX_SEED)
}

/// `lk = ½ Σ ι(q)`, where `ι(q)` is the crossing sign of the line with an
/// auxiliary line through `q`, cooriented by transporting the coorientation
/// of `q` along the auxiliary line until it meets `ℝA`.
pub fn lk_boundary_with(line: &OrientedLine, base: &CoorientedBase, seed: u64) -> Result<Rational, LinkError> {
    check_disjoint(line, base)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0i64;
    for (i, f) in base.points.iter().enumerate() {
        let mut found = None;
        for _ in 0..AUX_ATTEMPTS {
            let e: RationalPoint = std::array::from_fn(|_| rat(rng.gen_range(-5..=5)));
            if let Some(iota) = crossing_sign(line, base, i, f, &e) {
                found = Some(iota);
                break;
            }
        }
        total += found.ok_or(LinkError::DegenerateAuxiliary)? as i64;
    }
    Ok(half() * rat(total))
}

type FormVec = [HomPoly; 3];

fn linear_form(c: &RationalPoint) -> HomPoly {
    let terms = (0..3).map(|i| {
        let mut e = [0; 3];
        e[i] = 1;
        (e, GaussianRational::real(c[i].clone()))
    });
    HomPoly::from_terms(1, terms).expect("linear terms")
}

fn coordinates() -> FormVec {
    [HomPoly::x(), HomPoly::y(), HomPoly::z()]
}

fn constant_vec(c: &RationalPoint) -> FormVec {
    std::array::from_fn(|i| HomPoly::constant(GaussianRational::real(c[i].clone())))
}

fn sub(a: &HomPoly, b: &HomPoly) -> HomPoly {
    a.sub(b).expect("forms of equal degree")
}

fn add(a: &HomPoly, b: &HomPoly) -> HomPoly {
    a.add(b).expect("forms of equal degree")
}

fn cross_forms(a: &FormVec, b: &FormVec) -> FormVec {
    [
        sub(&a[1].mul(&b[2]), &a[2].mul(&b[1])),
        sub(&a[2].mul(&b[0]), &a[0].mul(&b[2])),
        sub(&a[0].mul(&b[1]), &a[1].mul(&b[0])),
    ]
}

fn dot_forms(a: &FormVec, b: &FormVec) -> HomPoly {
    add(&add(&a[0].mul(&b[0]), &a[1].mul(&b[1])), &a[2].mul(&b[2]))
}

fn scale_forms(a: &FormVec, s: &HomPoly) -> FormVec {
    std::array::from_fn(|i| a[i].mul(s))
}

/// `ι(q)` for the auxiliary line through `q` and `e`, or `None` if that line
/// is degenerate for this purpose.
fn crossing_sign(
    line: &OrientedLine,
    base: &CoorientedBase,
    index: usize,
    f: &CoorientationFrame,
    e: &RationalPoint,
) -> Option<i8> {
    let q = &f.point;
    let w = coordinates();
    let ev = constant_vec(e);
    let m = constant_vec(&line.normal());
    let (uv, vv) = (constant_vec(&line.u), constant_vec(&line.v));

    // Normal vector of the auxiliary line L = span(q, e).
    let n = cross_forms(&w, &ev);
    if n.iter().all(|c| q.sign_of_form(c) == 0) {
        return None;
    }
    // L must differ from the line and avoid the other base points.
    let c = cross_forms(&n, &m);
    if c.iter().all(|x| q.sign_of_form(x) == 0) {
        return None;
    }
    for (j, other) in base.points.iter().enumerate() {
        if j != index && !avoids(q, e, &other.point) {
            return None;
        }
    }

    // Seed: the coorientation of L at q from the frame (n, e).
    let det_nq = dot_forms(&w, &cross_forms(&n, &ev));
    let s = SIGMA_BOUNDARY * f.det_sign * frame_sign(q.chart()) * q.sign_of_form(&det_nq);

    // Representative of the crossing point reached by leaving q towards e.
    let qq = dot_forms(&w, &w);
    let eq = dot_forms(&ev, &w);
    let e_perp: FormVec = std::array::from_fn(|i| sub(&ev[i].mul(&qq), &w[i].mul(&eq)));
    let side = q.sign_of_form(&dot_forms(&c, &e_perp));
    if side == 0 {
        return None;
    }
    // c = a u + b v; the oriented tangent of the line there is b u − a v.
    let a = dot_forms(&cross_forms(&c, &vv), &m);
    let b = dot_forms(&cross_forms(&uv, &c), &m);
    let tangent: FormVec = std::array::from_fn(|i| sub(&scale_forms(&uv, &b)[i], &scale_forms(&vv, &a)[i]));
    let cross_sign = q.sign_of_form(&dot_forms(&tangent, &n));
    if cross_sign == 0 {
        return None;
    }
    Some(s * side * cross_sign)
}

/// Whether the line through `q` and `e` certainly misses the base point `p`.
fn avoids(q: &CertifiedBasePoint, e: &RationalPoint, p: &CertifiedBasePoint) -> bool {
    let ei: [Interval; 3] = std::array::from_fn(|i| Interval::point(e[i].clone()));
    let limit = Rational::new(1.into(), num_bigint::BigInt::from(1u64 << 40));
    let (mut q, mut p) = (q.clone(), p.clone());
    loop {
        let d = det3([&q.chart_point(), &ei, &p.chart_point()]);
        if d.strict_sign().is_some() {
            return true;
        }
        if q.width() < limit && p.width() < limit {
            return false;
        }
        q = q.refine(&(q.width() / rat(16)));
        p = p.refine(&(p.width() / rat(16)));
    }
}

/// Computes both linking numbers and `H∘V`, and checks the invariants that
/// hold on every instance.
pub fn verify_theorem5(line: &OrientedLine, base: &CoorientedBase) -> Result<LinkingReport, LinkError> {
    verify_theorem5_with(line, base, DEFAULT_AUX_SEED)
}

pub fn verify_theorem5_with(line: &OrientedLine, base: &CoorientedBase, aux_seed: u64) -> Result<LinkingReport, LinkError> {
    let epsilons = chart_epsilons(line, base)?;
    let lk_c = half() * rat(epsilons.iter().map(|&e| e as i64).sum());
    let lk_b = lk_boundary_with(line, base, aux_seed)?;
    let hv = h_circle_v(line, base)?;
    let d = base.degree();
    let half_d = half() * rat(d as i64);
    let residual = &half_d - rat(hv as i64) - &lk_c;
    if lk_c != lk_b {
        return Err(LinkError::InvariantBreach(format!("lk_chart {lk_c} != lk_boundary {lk_b}")));
    }
    if lk_c.abs_sub_gt(&half_d) {
        return Err(LinkError::InvariantBreach(format!("|lk| = |{lk_c}| exceeds D/2")));
    }
    if hv > d {
        return Err(LinkError::InvariantBreach(format!("H∘V = {hv} exceeds D = {d}")));
    }
    Ok(LinkingReport {
        line: line.clone(),
        degree: d,
        points: base.points.len(),
        epsilons,
        lk_chart: lk_c,
        lk_boundary: lk_b,
        h_dot_v: hv,
        residual,
        aux_seed,
    })
}

trait AbsGt {
    fn abs_sub_gt(&self, bound: &Rational) -> bool;
}

impl AbsGt for Rational {
    fn abs_sub_gt(&self, bound: &Rational) -> bool {
        self > bound || -self.clone() > *bound
    }
}
