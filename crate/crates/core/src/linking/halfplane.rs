use num_traits::Zero;
use serde::Serialize;

use crate::poly::univariate::{cauchy_index, UPoly};
use crate::poly::{BinaryForm, GaussianRational};

use super::LinkError;

/// Numbers of roots, with multiplicity, in the upper and lower half planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HalfPlaneCount {
    pub upper: u32,
    pub lower: u32,
    pub degree: u32,
}

/// Counts the roots of `p(t) = Σ c_k t^k`, with `t = t₀/t₁`, on either side
/// of the real axis using the Cauchy index of `ℑp/ℜp`.
pub fn halfplane_root_count(p: &BinaryForm) -> Result<HalfPlaneCount, LinkError> {
    if p.is_zero() {
        return Err(LinkError::IdenticallyZero);
    }
    let d = p.degree();
    let c = p.coeffs();
    if c[d as usize].is_zero() {
        return Err(LinkError::RootAtInfinity);
    }
    // Make the leading coefficient real and positive.
    let lc = c[d as usize].conj();
    let q: Vec<GaussianRational> = c.iter().map(|a| a * &lc).collect();
    let re = UPoly::new(q.iter().map(|a| a.re.clone()).collect());
    let im = UPoly::new(q.iter().map(|a| a.im.clone()).collect());
    let g = re.gcd(&im);
    if g.count_real_roots() > 0 {
        return Err(LinkError::RealRoot);
    }
    let index = cauchy_index(&im, &re);
    let upper = (d as i64 - index) / 2;
    debug_assert_eq!((d as i64 - index) % 2, 0);
    Ok(HalfPlaneCount { upper: upper as u32, lower: d - upper as u32, degree: d })
}
