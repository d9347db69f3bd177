//! Certified real base points of a pencil `λR + μS` on ℝP².
//!
//! The system is moved to pseudorandom coordinates in which the projection
//! from `(0:1:0)` separates the base points and no base point lies on the
//! line at infinity. The resultant in `y` is then split by multiplicity and
//! each real root `α` gets its `y` coordinate as a rational function of `α`
//! read from the subresultant sequence. Everything, including the tests that
//! decide whether a coordinate vanishes, is exact; intervals only bound the
//! position of roots.

mod defect;
mod elim;
pub mod oracle;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{self, Interval};
use crate::poly::univariate::{sign, RootEnclosure, UPoly};
use crate::poly::{common_degree, rat, ratio, HomPoly, PolyError, Rational};

pub use defect::{real_pair_defect, transversality_defect, DefectError, TransversalityDefect};
pub use elim::Transform;

const MAX_ATTEMPTS: usize = 32;

/// Affine chart of ℝP² where one homogeneous coordinate equals 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartId {
    X,
    Y,
    Z,
}

impl ChartId {
    /// Ownership order.
    pub const ORDER: [ChartId; 3] = [ChartId::Z, ChartId::Y, ChartId::X];

    /// Index of the coordinate that is set to 1.
    pub fn index(self) -> usize {
        match self {
            ChartId::X => 0,
            ChartId::Y => 1,
            ChartId::Z => 2,
        }
    }

    /// Homogeneous indices of the two chart coordinates, in increasing order.
    pub fn coords(self) -> [usize; 2] {
        match self {
            ChartId::X => [1, 2],
            ChartId::Y => [0, 2],
            ChartId::Z => [0, 1],
        }
    }

    fn rank(self) -> usize {
        Self::ORDER.iter().position(|&c| c == self).unwrap()
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = ["x", "y", "z"][self.index()];
        write!(f, "{v}=1")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("forms share the factor {gcd}; the base is a curve")]
    CommonFactor { gcd: HomPoly },
    #[error("no admissible coordinate system found")]
    Degenerate,
    #[error("base point in chart {chart} is singular or a tangency (multiplicity {multiplicity})")]
    SingularOrTangent { chart: ChartId, bbox: Box<[Interval; 2]>, multiplicity: u32 },
    #[error("point does not lie in chart {0}")]
    ChartMissesPoint(ChartId),
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Seed for the pseudorandom change of coordinates.
    pub transform_seed: u64,
    /// Boxes are refined at least to this width.
    pub box_width: Rational,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { transform_seed: 0x5eed, box_width: ratio(1, 1024) }
    }
}

/// A real base point with an exact algebraic description.
///
/// The homogeneous coordinates are `(P₀(α) : P₁(α) : P₂(α))` where `α` is the
/// unique root of the square-free `eliminant` inside `root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedBasePoint {
    chart: ChartId,
    bbox: [Interval; 2],
    eliminant: UPoly,
    root: RootEnclosure,
    multiplicity: u32,
    coords: [UPoly; 3],
}

impl CertifiedBasePoint {
    pub fn chart(&self) -> ChartId {
        self.chart
    }

    /// Isolating box in the owning chart's coordinates.
    pub fn bbox(&self) -> &[Interval; 2] {
        &self.bbox
    }

    pub fn eliminant(&self) -> &UPoly {
        &self.eliminant
    }

    pub fn root(&self) -> &RootEnclosure {
        &self.root
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// Homogeneous coordinates as polynomials in the eliminant's variable.
    pub fn coordinate_polys(&self) -> &[UPoly; 3] {
        &self.coords
    }

    pub fn width(&self) -> Rational {
        let [a, b] = &self.bbox;
        a.width().max(b.width())
    }

    /// Enclosure of the chart representative, with 1 in the chart slot.
    pub fn chart_point(&self) -> [Interval; 3] {
        let mut out: [Interval; 3] = std::array::from_fn(|_| Interval::point(rat(1)));
        let [a, b] = self.chart.coords();
        out[a] = self.bbox[0].simplified();
        out[b] = self.bbox[1].simplified();
        out
    }

    /// Midpoint of the chart representative in floating point.
    pub fn approx(&self) -> [f64; 3] {
        let p = self.chart_point();
        std::array::from_fn(|i| interval::to_f64(&p[i].midpoint()))
    }

    /// Same point with both box sides at most `width`.
    pub fn refine(&self, width: &Rational) -> CertifiedBasePoint {
        let mut p = self.clone();
        while &p.width() > width {
            // The box shrinks roughly in proportion to the root interval.
            let target = p.root.width() * width / (p.width() * rat(2));
            loop {
                p.root = p.root.bisect(&p.eliminant);
                if p.root.width() <= target {
                    break;
                }
            }
            if let Some(b) = chart_box(&p.coords, &p.root, p.chart) {
                p.bbox = b;
            }
        }
        p
    }

    /// Whether homogeneous coordinate `i` vanishes.
    pub fn coordinate_vanishes(&self, i: usize) -> bool {
        vanishes_at(&self.coords[i], &self.eliminant, &self.root)
    }

    /// Box in another chart, if the point lies in it.
    pub fn box_in_chart(&self, chart: ChartId) -> Result<[Interval; 2], SolveError> {
        if self.coordinate_vanishes(chart.index()) {
            return Err(SolveError::ChartMissesPoint(chart));
        }
        let mut root = self.root.clone();
        loop {
            if let Some(b) = chart_box(&self.coords, &root, chart) {
                return Ok(b);
            }
            root = root.bisect(&self.eliminant);
        }
    }

    /// Exact sign of a real form at the chart representative of the point.
    pub fn sign_of_form(&self, g: &HomPoly) -> i8 {
        if let Some(s) = self.sign_by_enclosure(g) {
            return s;
        }
        let v = form_on_curve(g, &self.coords, &self.eliminant);
        let s = self.sign_of_poly(&v);
        let c = self.sign_of_poly(&self.coords[self.chart.index()]);
        if g.degree() % 2 == 1 {
            s * c
        } else {
            s
        }
    }

    /// Sign of a real form at the chart representative, read off an interval
    /// enclosure over refined boxes; `None` if zero is never excluded.
    fn sign_by_enclosure(&self, g: &HomPoly) -> Option<i8> {
        let mut p = self.clone();
        for _ in 0..ENCLOSURE_STEPS {
            if let Some(s) = g.evaluate_interval(&p.chart_point()).strict_sign() {
                return Some(s);
            }
            if p.width().is_zero() {
                return None;
            }
            p = p.refine(&(p.width() / rat(1 << 16)));
        }
        None
    }

    /// Exact sign of `p(α)`.
    pub fn sign_of_poly(&self, p: &UPoly) -> i8 {
        sign_at_root(p, &self.eliminant, &self.root)
    }

    fn order_key(&self, other: &Self) -> Ordering {
        self.chart
            .rank()
            .cmp(&other.chart.rank())
            .then_with(|| self.bbox[0].midpoint().cmp(&other.bbox[0].midpoint()))
            .then_with(|| self.bbox[1].midpoint().cmp(&other.bbox[1].midpoint()))
    }
}

impl fmt::Display for CertifiedBasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.approx();
        write!(f, "({:.6} : {:.6} : {:.6}) in chart {}", p[0], p[1], p[2], self.chart)
    }
}

/// `p(α) = 0` for the root of `q` in `root`.
pub(crate) fn vanishes_at(p: &UPoly, q: &UPoly, root: &RootEnclosure) -> bool {
    match root {
        RootEnclosure::Exact(v) => p.eval(v).is_zero(),
        RootEnclosure::Open { .. } => {
            if p.is_zero() {
                return true;
            }
            root.is_root_of_divisor(&q.gcd(p))
        }
    }
}

pub(crate) fn sign_at_root(p: &UPoly, q: &UPoly, root: &RootEnclosure) -> i8 {
    if let RootEnclosure::Exact(v) = root {
        return sign(&p.eval(v));
    }
    if vanishes_at(p, q, root) {
        return 0;
    }
    let mut r = root.clone();
    loop {
        if let RootEnclosure::Exact(v) = &r {
            return sign(&p.eval(v));
        }
        if let Some(s) = p.eval_interval(&r.interval()).strict_sign() {
            return s;
        }
        r = r.bisect(q);
    }
}

/// `g(P₀(t), P₁(t), P₂(t)) mod q`.
fn form_on_curve(g: &HomPoly, coords: &[UPoly; 3], q: &UPoly) -> UPoly {
    let d = g.degree();
    let powers: Vec<Vec<UPoly>> = coords
        .iter()
        .map(|c| {
            let mut v = vec![UPoly::constant(rat(1))];
            for _ in 0..d {
                let next = v.last().unwrap().mul(c).rem(q);
                v.push(next);
            }
            v
        })
        .collect();
    let mut acc = UPoly::zero();
    for (m, c) in g.terms() {
        let [a, b, e] = m.0;
        let t = powers[0][a as usize]
            .mul(&powers[1][b as usize])
            .rem(q)
            .mul(&powers[2][e as usize])
            .rem(q)
            .scale(&c.re);
        acc = acc.add(&t);
    }
    acc
}

fn chart_box(coords: &[UPoly; 3], root: &RootEnclosure, chart: ChartId) -> Option<[Interval; 2]> {
    let i = root.interval();
    let den = coords[chart.index()].eval_interval(&i);
    let [a, b] = chart.coords();
    Some([
        coords[a].eval_interval(&i).checked_div(&den)?,
        coords[b].eval_interval(&i).checked_div(&den)?,
    ])
}

fn validate(r: &HomPoly, s: &HomPoly) -> Result<(HomPoly, HomPoly), SolveError> {
    if !r.is_real() || !s.is_real() {
        return Err(PolyError::NotReal.into());
    }
    let (r, s) = common_degree(r, s)?;
    if r.is_zero() && s.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    if r.degree() == 0 {
        return Err(PolyError::DegreeZero.into());
    }
    if s.is_zero() {
        return Err(SolveError::CommonFactor { gcd: r.monic() });
    }
    if r.is_zero() {
        return Err(SolveError::CommonFactor { gcd: s.monic() });
    }
    Ok((r, s))
}

const ENCLOSURE_STEPS: usize = 4;

/// All real base points with default options.
pub fn real_base_points(r: &HomPoly, s: &HomPoly) -> Result<Vec<CertifiedBasePoint>, SolveError> {
    real_base_points_with(r, s, &SolverOptions::default())
}

/// Real zeros of a complex form `P`, i.e. the real base of `(ℜP, ℑP)`.
pub fn real_zeros(p: &HomPoly) -> Result<Vec<CertifiedBasePoint>, SolveError> {
    let (r, s) = crate::poly::realify(p);
    real_base_points(&r, &s)
}

pub fn real_base_points_with(
    r: &HomPoly,
    s: &HomPoly,
    opts: &SolverOptions,
) -> Result<Vec<CertifiedBasePoint>, SolveError> {
    let (r, s) = validate(r, s)?;
    let d = r.degree() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.transform_seed);
    for _ in 0..MAX_ATTEMPTS {
        let m = elim::random_transform(&mut rng);
        let ft = r.compose_linear(&m);
        let gt = s.compose_linear(&m);
        let top = [0, d as u32, 0];
        if ft.coeff(top).is_zero() || gt.coeff(top).is_zero() {
            continue;
        }
        let f = elim::by_y(&ft);
        let g = elim::by_y(&gt);
        let sres = elim::subresultants(&f, &g);
        let res = &sres[0][0];
        if res.is_zero() {
            let gcd = elim::common_factor(&sres, &elim::invert(&m));
            return Err(SolveError::CommonFactor { gcd });
        }
        if res.degree() != Some(d * d) {
            continue;
        }
        if let Some(points) = lift_roots(res, &sres, &m) {
            return Ok(separate(points, &opts.box_width));
        }
    }
    Err(SolveError::Degenerate)
}

/// Lifts every real root of the resultant to a base point, or `None` if the
/// projection fails to separate some fibre.
fn lift_roots(res: &UPoly, sres: &[Vec<UPoly>], m: &Transform) -> Option<Vec<CertifiedBasePoint>> {
    let d = sres.len() - 1;
    let mut out = Vec::new();
    for (q, mult) in res.square_free_decomposition() {
        let q = q.primitive();
        let roots = q.isolate_real_roots();
        if roots.is_empty() {
            continue;
        }
        // gcd(q, s_jj), shared by all roots of q.
        let mut lead_gcd: Vec<Option<UPoly>> = vec![None; d + 1];
        let mut lifts: Vec<Option<Lift>> = vec![None; d + 1];
        for root in roots {
            let k = (1..=d).find(|&j| {
                let g = lead_gcd[j].get_or_insert_with(|| q.gcd_primitive(&sres[j][j]));
                !root_of(g, &root)
            })?;
            let lift = lifts[k].get_or_insert_with(|| Lift::new(&sres[k], k, &q, m));
            if !lift.single_point_fibre(&root) {
                return None;
            }
            let chart = ChartId::ORDER
                .into_iter()
                .find(|c| !root_of(&lift.coord_gcd[c.index()], &root))
                .expect("some coordinate is nonzero");
            let mut root = root;
            let bbox = loop {
                if let Some(b) = chart_box(&lift.coords, &root, chart) {
                    break b;
                }
                root = root.bisect(&q);
            };
            out.push(CertifiedBasePoint {
                chart,
                bbox,
                eliminant: q.clone(),
                root,
                multiplicity: mult,
                coords: lift.coords.clone(),
            });
        }
    }
    Some(out)
}

/// Whether the root of the eliminant in `root` is a root of its divisor `g`.
fn root_of(g: &UPoly, root: &RootEnclosure) -> bool {
    match root {
        RootEnclosure::Exact(v) => g.eval(v).is_zero(),
        RootEnclosure::Open { .. } => root.is_root_of_divisor(g),
    }
}

/// Data for lifting roots whose fibre gcd has degree `k`.
#[derive(Clone)]
struct Lift {
    /// `gcd(q, E_j)` for the identities `E_j(α) = 0`, `2 ≤ j ≤ k`.
    identity_gcds: Vec<UPoly>,
    coords: [UPoly; 3],
    coord_gcd: [UPoly; 3],
}

impl Lift {
    fn new(s: &[UPoly], k: usize, q: &UPoly, m: &Transform) -> Self {
        let kk = rat(k as i64);
        let num = s[k - 1].neg();
        let den = s[k].scale(&kk);
        // The fibre is a single point iff sres_k(α, y) = s_kk (y − β)^k.
        let identity_gcds = (2..=k)
            .map(|j| {
                let lhs = s[k - j].mul(&den.pow(j as u32));
                let rhs = s[k].mul(&s[k - 1].pow(j as u32)).scale(&binomial(k, j));
                q.gcd_primitive(&lhs.sub(&rhs).rem(q))
            })
            .collect();
        // (x', y', 1) = (α, num/den, 1), scaled by den.
        let x = UPoly::x().mul(&den);
        let coords: [UPoly; 3] = std::array::from_fn(|i| {
            x.scale(&m[i][0]).add(&num.scale(&m[i][1])).add(&den.scale(&m[i][2])).rem(q)
        });
        let coords = common_primitive(coords);
        let coord_gcd = std::array::from_fn(|i| q.gcd_primitive(&coords[i]));
        Lift { identity_gcds, coords, coord_gcd }
    }

    fn single_point_fibre(&self, root: &RootEnclosure) -> bool {
        self.identity_gcds.iter().all(|g| root_of(g, root))
    }
}

/// Scales three polynomials by one positive constant so that together they
/// have coprime integer coefficients.
fn common_primitive(p: [UPoly; 3]) -> [UPoly; 3] {
    let all = UPoly::new(p.iter().flat_map(|c| c.coeffs().iter().cloned()).collect());
    let Some(i) = all.coeffs().iter().position(|c| !c.is_zero()) else {
        return p;
    };
    let k = &all.primitive().coeffs()[i] / &all.coeffs()[i];
    p.map(|c| c.scale(&k))
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut c = Rational::one();
    for i in 0..k {
        c = c * rat((n - i) as i64) / rat((i + 1) as i64);
    }
    c
}

/// Refines until boxes sharing a chart are disjoint and no wider than `width`.
fn separate(mut pts: Vec<CertifiedBasePoint>, width: &Rational) -> Vec<CertifiedBasePoint> {
    for p in pts.iter_mut() {
        *p = p.refine(width);
    }
    loop {
        let mut clash = None;
        'outer: for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let (a, b) = (&pts[i], &pts[j]);
                if a.chart == b.chart && a.bbox[0].intersects(&b.bbox[0]) && a.bbox[1].intersects(&b.bbox[1]) {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else { break };
        for k in [i, j] {
            let w = pts[k].width() / rat(2);
            pts[k] = pts[k].refine(&w);
        }
    }
    pts.sort_by(|a, b| a.order_key(b));
    pts
}

/// Refines the isolating box of `p` to width at most `width`.
pub fn refine_point(p: &CertifiedBasePoint, width: &Rational) -> CertifiedBasePoint {
    p.refine(width)
}

/// Jacobian determinant of `(R, S)` in the chart coordinates of `chart`.
fn chart_jacobian(r: &HomPoly, s: &HomPoly, chart: ChartId) -> Result<HomPoly, SolveError> {
    let [a, b] = chart.coords();
    let (ra, rb) = (r.partial(a)?, r.partial(b)?);
    let (sa, sb) = (s.partial(a)?, s.partial(b)?);
    Ok(ra.mul(&sb).sub(&rb.mul(&sa))?)
}

/// Certified sign of the Jacobian determinant of the dehomogenised `(R, S)`
/// at `p`, in the owning chart.
pub fn jacobian_certificate(r: &HomPoly, s: &HomPoly, p: &CertifiedBasePoint) -> Result<i8, SolveError> {
    jacobian_sign_in_chart(r, s, p, p.chart)
}

/// Like [`jacobian_certificate`] but in a chart of the caller's choice.
pub fn jacobian_sign_in_chart(
    r: &HomPoly,
    s: &HomPoly,
    p: &CertifiedBasePoint,
    chart: ChartId,
) -> Result<i8, SolveError> {
    let tangent = |p: &CertifiedBasePoint| SolveError::SingularOrTangent {
        chart: p.chart,
        bbox: Box::new(p.bbox.clone()),
        multiplicity: p.multiplicity,
    };
    if p.multiplicity > 1 {
        return Err(tangent(p));
    }
    if p.coordinate_vanishes(chart.index()) {
        return Err(SolveError::ChartMissesPoint(chart));
    }
    let (r, s) = common_degree(r, s)?;
    let j = chart_jacobian(&r, &s, chart)?;
    if let Some(sgn) = p.sign_by_enclosure(&j) {
        return Ok(sgn);
    }
    // The determinant is a form of even degree, so any representative works.
    let v = form_on_curve(&j, &p.coords, &p.eliminant);
    match p.sign_of_poly(&v) {
        0 => Err(tangent(p)),
        sgn => Ok(sgn),
    }
}
