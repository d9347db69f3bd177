//! Exact forms on the projective plane and the real/complex constructions
//! around pencils: members `λR+μS`, the complex member `R+iS`, its
//! realification, the sum of squares `R²+S²` and restriction to a line.

mod binary;
mod gaussian;
mod hompoly;
mod parse;
pub mod univariate;

use thiserror::Error;

pub use binary::BinaryForm;
pub use gaussian::{rat, ratio, GaussianRational, Rational};
pub use hompoly::{HomPoly, Monomial};
pub use parse::{parse_nonzero_poly, parse_poly};

use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("malformed polynomial at offset {pos}: {msg}")]
    MalformedInput { pos: usize, msg: String },
    #[error("polynomial is not homogeneous: terms of degree {expected} and {found}")]
    NotHomogeneous { expected: u32, found: u32 },
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("cannot differentiate a form of degree 0")]
    DegreeZero,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("pencil parameters (λ, μ) are both zero")]
    BothZero,
    #[error("form has non-real coefficients where a real form is required")]
    NotReal,
    #[error("points spanning the line are projectively dependent")]
    DependentPoints,
    #[error("the line lies in the zero set; restriction is identically zero")]
    IdenticallyZero,
}

/// A rational point of ℝP², as a homogeneous coordinate vector.
pub type RationalPoint = [Rational; 3];

fn require_real(p: &HomPoly) -> Result<(), PolyError> {
    if p.is_real() {
        Ok(())
    } else {
        Err(PolyError::NotReal)
    }
}

/// Brings `r` and `s` to a common degree, allowing a zero form to adopt the
/// degree of the other.
pub fn common_degree(r: &HomPoly, s: &HomPoly) -> Result<(HomPoly, HomPoly), PolyError> {
    if r.degree() == s.degree() {
        return Ok((r.clone(), s.clone()));
    }
    if s.is_zero() {
        return Ok((r.clone(), s.clone().with_degree(r.degree())?));
    }
    if r.is_zero() {
        return Ok((r.clone().with_degree(s.degree())?, s.clone()));
    }
    Err(PolyError::DegreeMismatch { left: r.degree(), right: s.degree() })
}

/// The pencil member `λR + μS`.
pub fn pencil_member(
    r: &HomPoly,
    s: &HomPoly,
    lambda: &Rational,
    mu: &Rational,
) -> Result<HomPoly, PolyError> {
    require_real(r)?;
    require_real(s)?;
    let (r, s) = common_degree(r, s)?;
    if lambda.is_zero() && mu.is_zero() {
        return Err(PolyError::BothZero);
    }
    r.scale_real(lambda).add(&s.scale_real(mu))
}

/// The complex member at `(λ:μ) = (1:i)`, `P = R + iS`.
pub fn complexify(r: &HomPoly, s: &HomPoly) -> Result<HomPoly, PolyError> {
    require_real(r)?;
    require_real(s)?;
    let (r, s) = common_degree(r, s)?;
    r.add(&s.scale(&GaussianRational::i()))
}

/// Splits `P` into `(ℜP, ℑP)`. Their common real zero set is the real zero set
/// of `P`.
pub fn realify(p: &HomPoly) -> (HomPoly, HomPoly) {
    (p.real_part(), p.imag_part())
}

/// `R² + S²`, a real form of degree `2D` whose real zeros are the real base of
/// the pencil spanned by `R` and `S`.
pub fn sum_of_squares(r: &HomPoly, s: &HomPoly) -> Result<HomPoly, PolyError> {
    require_real(r)?;
    require_real(s)?;
    let (r, s) = common_degree(r, s)?;
    r.mul(&r).add(&s.mul(&s))
}

/// Cross product of two rational vectors.
pub fn cross(u: &RationalPoint, v: &RationalPoint) -> RationalPoint {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

/// `p(t₀, t₁) = P(t₀u + t₁v)`.
pub fn restrict_to_line(
    p: &HomPoly,
    u: &RationalPoint,
    v: &RationalPoint,
) -> Result<BinaryForm, PolyError> {
    if cross(u, v).iter().all(Zero::is_zero) {
        return Err(PolyError::DependentPoints);
    }
    let zero = Rational::zero();
    let m = [
        [u[0].clone(), v[0].clone(), zero.clone()],
        [u[1].clone(), v[1].clone(), zero.clone()],
        [u[2].clone(), v[2].clone(), zero],
    ];
    let q = p.compose_linear(&m);
    if q.is_zero() {
        return Err(PolyError::IdenticallyZero);
    }
    let d = p.degree();
    let coeffs = (0..=d).map(|k| q.coeff([k, d - k, 0])).collect();
    Ok(BinaryForm::new(d, coeffs))
}
