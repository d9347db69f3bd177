//! The real base of a generic pencil as a slice of `V = {R + iS = 0}`, with
//! the coorientation every base point inherits from the complex structure
//! of the normal bundle of `V`.
//!
//! Convention: a frame `(v, w)` of the normal plane at a base point is
//! positive iff `det [[dR(v), dR(w)], [dS(v), dS(w)]] > 0`, i.e. `dP = dR + i dS`
//! sends it to a positively oriented basis `(1, i)` up to a positive factor.

use num_traits::Zero;
use thiserror::Error;

use crate::poly::{common_degree, rat, HomPoly, PolyError, Rational};
use crate::solve::{self, CertifiedBasePoint, ChartId, SolveError, SolverOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("R + iS is a real form up to a constant; its zero set is not a slice")]
    RealP,
}

/// The pencil `λR + μS` together with its common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilSpec {
    r: HomPoly,
    s: HomPoly,
    degree: u32,
}

impl PencilSpec {
    pub fn new(r: &HomPoly, s: &HomPoly) -> Result<Self, SliceError> {
        if !r.is_real() || !s.is_real() {
            return Err(PolyError::NotReal.into());
        }
        let (r, s) = common_degree(r, s)?;
        if r.is_zero() || s.is_zero() {
            return Err(SliceError::RealP);
        }
        if r.degree() == 0 {
            return Err(PolyError::DegreeZero.into());
        }
        let degree = r.degree();
        Ok(Self { r, s, degree })
    }

    pub fn r(&self) -> &HomPoly {
        &self.r
    }

    pub fn s(&self) -> &HomPoly {
        &self.s
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

/// A base point with a positively cooriented normal frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoorientationFrame {
    pub point: CertifiedBasePoint,
    /// `(v, w)` in the owning chart's coordinates; always positive.
    pub frame: [[Rational; 2]; 2],
    /// Sign of the Jacobian of `(R, S)` on the coordinate frame of the chart.
    pub det_sign: i8,
}

impl CoorientationFrame {
    fn new(point: CertifiedBasePoint, det_sign: i8) -> Self {
        let z = Rational::zero();
        let frame = [[rat(1), z.clone()], [z, rat(det_sign as i64)]];
        Self { point, frame, det_sign }
    }

    pub fn chart(&self) -> ChartId {
        self.point.chart()
    }
}

/// All real base points of a generic pencil, each cooriented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoorientedBase {
    pub pencil: PencilSpec,
    pub points: Vec<CoorientationFrame>,
}

impl CoorientedBase {
    pub fn degree(&self) -> u32 {
        self.pencil.degree
    }
}

pub fn certify_slice(r: &HomPoly, s: &HomPoly) -> Result<CoorientedBase, SliceError> {
    certify_slice_with(r, s, &SolverOptions::default())
}

/// Isolates the real base and certifies transversality at every point.
pub fn certify_slice_with(r: &HomPoly, s: &HomPoly, opts: &SolverOptions) -> Result<CoorientedBase, SliceError> {
    let pencil = PencilSpec::new(r, s)?;
    let pts = solve::real_base_points_with(&pencil.r, &pencil.s, opts)?;
    let points = pts
        .into_iter()
        .map(|p| {
            let sign = solve::jacobian_certificate(&pencil.r, &pencil.s, &p)?;
            Ok(CoorientationFrame::new(p, sign))
        })
        .collect::<Result<Vec<_>, SliceError>>()?;
    Ok(CoorientedBase { pencil, points })
}

/// The frame at `p`, which must be a transverse base point of the pencil.
pub fn coorientation_frame(base: &CoorientedBase, p: &CertifiedBasePoint) -> Result<CoorientationFrame, SliceError> {
    if let Some(f) = base.points.iter().find(|f| &f.point == p) {
        return Ok(f.clone());
    }
    let sign = solve::jacobian_certificate(&base.pencil.r, &base.pencil.s, p)?;
    Ok(CoorientationFrame::new(p.clone(), sign))
}

/// The cooriented base of `(R, −S)`, whose complex hypersurface is the
/// conjugate of `V`.
pub fn conjugate_flip(base: &CoorientedBase) -> CoorientedBase {
    let pencil = PencilSpec {
        r: base.pencil.r.clone(),
        s: base.pencil.s.neg(),
        degree: base.pencil.degree,
    };
    let points = base
        .points
        .iter()
        .map(|f| CoorientationFrame::new(f.point.clone(), -f.det_sign))
        .collect();
    CoorientedBase { pencil, points }
}

/// Coorientation of the point measured against an orientation `±1` of its
/// chart's coordinate frame.
pub fn chart_sign(frame: &CoorientationFrame, chart_orientation: i8) -> i8 {
    frame.det_sign * chart_orientation
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::orient::{semilinear_pullback_sign, ComplexMatrix};
    use crate::poly::parse_poly;
    use crate::solve::real_pair_defect;

    fn hp(s: &str) -> HomPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn circle_and_axes_is_a_slice() {
        let b = certify_slice(&hp("x^2+y^2-z^2"), &hp("xy")).unwrap();
        assert_eq!(b.points.len(), 4);
        for f in &b.points {
            let det = linalg::det(&[
                vec![f.frame[0][0].clone(), f.frame[1][0].clone()],
                vec![f.frame[0][1].clone(), f.frame[1][1].clone()],
            ]);
            assert_eq!(det, rat(f.det_sign as i64));
        }
        // (1:0:1): det [[2, 0], [0, 1]] in chart z = 1.
        let p = b.points.iter().find(|f| f.point.approx()[0] > 0.5).unwrap();
        assert_eq!(p.det_sign, 1);
    }

    #[test]
    fn tangency_is_rejected() {
        let e = certify_slice(&hp("x^2+y^2-z^2"), &hp("(y-z)x")).unwrap_err();
        assert!(matches!(e, SliceError::Solve(SolveError::SingularOrTangent { .. })));
    }

    #[test]
    fn real_p_is_rejected() {
        assert_eq!(certify_slice(&hp("x^2+y^2-z^2"), &hp("0")), Err(SliceError::RealP));
    }

    #[test]
    fn lines_have_identity_frame() {
        let b = certify_slice(&hp("x"), &hp("y")).unwrap();
        assert_eq!(b.points[0].det_sign, 1);
        assert_eq!(chart_sign(&b.points[0], 1), 1);
        assert_eq!(chart_sign(&b.points[0], -1), -1);
    }

    #[test]
    fn scaling_s() {
        let r = hp("x^2+y^2-z^2");
        let b = certify_slice(&r, &hp("xy")).unwrap();
        let pos = certify_slice(&r, &hp("3/2*xy")).unwrap();
        let neg = certify_slice(&r, &hp("-2xy")).unwrap();
        for ((a, p), n) in b.points.iter().zip(&pos.points).zip(&neg.points) {
            assert_eq!(a.det_sign, p.det_sign);
            assert_eq!(a.det_sign, -n.det_sign);
        }
    }

    #[test]
    fn conjugation_flips_every_sign() {
        let b = certify_slice(&hp("x^2+y^2-z^2"), &hp("xy")).unwrap();
        let c = conjugate_flip(&b);
        let flip = semilinear_pullback_sign(&ComplexMatrix::conjugation(1)).unwrap().value;
        for (f, g) in b.points.iter().zip(&c.points) {
            assert_eq!(f.point, g.point);
            assert_eq!(g.det_sign, flip * f.det_sign);
        }
        assert_eq!(conjugate_flip(&c), b);
        let direct = certify_slice(&hp("x^2+y^2-z^2"), &hp("-xy")).unwrap();
        for (f, g) in direct.points.iter().zip(&c.points) {
            assert_eq!(f.point.bbox(), g.point.bbox());
            assert_eq!(f.det_sign, g.det_sign);
        }
    }

    #[test]
    fn codimension_two() {
        assert_eq!(real_pair_defect(2, 0).unwrap().defect, 2);
    }
}
