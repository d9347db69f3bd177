//! Orientations of real and complex vector spaces, short exact sequences,
//! coorientations and local intersection signs, all reduced to signs of
//! exact rational determinants.
//!
//! Complex vectors are realified as `(ℜz₁, ℑz₁, …, ℜzₖ, ℑzₖ)`.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, Vector};
use crate::poly::{GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientError {
    #[error("vectors are linearly dependent")]
    RankDeficient,
    #[error("bases span different subspaces")]
    DifferentSpans,
    #[error("map is singular")]
    Singular,
    #[error("subspace and lifts are not complementary")]
    NotComplementary,
    #[error("subspaces are not transverse")]
    NotTransverse,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// An ordered basis of a `k`-dimensional subspace of ℚⁿ, stored as columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMatrix {
    n: usize,
    cols: Vec<Vector>,
}

impl BasisMatrix {
    pub fn new(n: usize, cols: Vec<Vector>) -> Result<Self, OrientError> {
        if let Some(c) = cols.iter().find(|c| c.len() != n) {
            return Err(OrientError::DimensionMismatch { expected: n, found: c.len() });
        }
        if linalg::rank(&cols) != cols.len() {
            return Err(OrientError::RankDeficient);
        }
        Ok(Self { n, cols })
    }

    pub fn from_int_columns(cols: &[&[i64]]) -> Result<Self, OrientError> {
        let n = cols.first().map_or(0, |c| c.len());
        Self::new(n, cols.iter().map(|c| c.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    }

    /// The standard basis `(e₁, …, eₙ)`.
    pub fn standard(n: usize) -> Self {
        let cols = (0..n)
            .map(|i| (0..n).map(|j| if i == j { crate::poly::rat(1) } else { Rational::zero() }).collect())
            .collect();
        Self { n, cols }
    }

    /// The zero subspace of ℚⁿ.
    pub fn empty(n: usize) -> Self {
        Self { n, cols: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    /// Concatenation of the columns of `self` and `other`.
    pub fn concat(&self, other: &BasisMatrix) -> Result<BasisMatrix, OrientError> {
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        BasisMatrix::new(self.n, cols)
    }

    pub fn negate_column(&self, j: usize) -> BasisMatrix {
        let mut b = self.clone();
        for x in b.cols[j].iter_mut() {
            *x = -x.clone();
        }
        b
    }

    fn contains(&self, v: &Vector) -> bool {
        linalg::coordinates(&self.cols, std::slice::from_ref(v)).is_some()
    }
}

impl fmt::Display for BasisMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .cols
            .iter()
            .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", cols.join(", "))
    }
}

/// Whether a complex matrix acts by `v ↦ Mv` or `v ↦ M·conj(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Linear,
    Semilinear,
}

/// A square complex matrix together with its linearity flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMatrix {
    rows: Vec<Vec<GaussianRational>>,
    kind: MapKind,
}

impl ComplexMatrix {
    pub fn new(rows: Vec<Vec<GaussianRational>>, kind: MapKind) -> Result<Self, OrientError> {
        let k = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != k) {
            return Err(OrientError::DimensionMismatch { expected: k, found: r.len() });
        }
        Ok(Self { rows, kind })
    }

    /// Plain complex conjugation on ℂᵏ.
    pub fn conjugation(k: usize) -> Self {
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { GaussianRational::from_int(1) } else { GaussianRational::zero() })
                    .collect()
            })
            .collect();
        Self { rows, kind: MapKind::Semilinear }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    /// The `2k × 2k` real matrix in interleaved coordinates.
    pub fn realify(&self) -> Vec<Vector> {
        let k = self.dim();
        let mut m = vec![vec![Rational::zero(); 2 * k]; 2 * k];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let (a, b) = (z.re.clone(), z.im.clone());
                let block = match self.kind {
                    MapKind::Linear => [[a.clone(), -b.clone()], [b, a]],
                    MapKind::Semilinear => [[a.clone(), b.clone()], [b, -a]],
                };
                for (di, brow) in block.into_iter().enumerate() {
                    for (dj, x) in brow.into_iter().enumerate() {
                        m[2 * i + di][2 * j + dj] = x;
                    }
                }
            }
        }
        m
    }
}

/// A sign `±1` relative to a named reference basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationSign {
    pub value: i8,
    pub reference: BasisMatrix,
}

impl OrientationSign {
    fn new(value: i8, reference: BasisMatrix) -> Self {
        debug_assert!(value == 1 || value == -1);
        Self { value, reference }
    }
}

/// An oriented basis of a quotient `ℚⁿ / sub`, given by ambient
/// representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    sub: BasisMatrix,
    reps: Vec<Vector>,
}

impl QuotientBasis {
    /// `reps` together with a basis of `sub` must be independent.
    pub fn new(sub: BasisMatrix, reps: Vec<Vector>) -> Result<Self, OrientError> {
        let n = sub.ambient_dim();
        if let Some(r) = reps.iter().find(|r| r.len() != n) {
            return Err(OrientError::DimensionMismatch { expected: n, found: r.len() });
        }
        let mut all = reps.clone();
        all.extend(sub.columns().iter().cloned());
        if linalg::rank(&all) != all.len() {
            return Err(OrientError::NotComplementary);
        }
        Ok(Self { sub, reps })
    }

    pub fn sub(&self) -> &BasisMatrix {
        &self.sub
    }

    pub fn reps(&self) -> &[Vector] {
        &self.reps
    }

    pub fn codim(&self) -> usize {
        self.reps.len()
    }

    /// The basis `(reps, sub)` of the ambient span.
    pub fn lifted_basis(&self) -> BasisMatrix {
        let mut cols = self.reps.clone();
        cols.extend(self.sub.columns().iter().cloned());
        BasisMatrix { n: self.sub.ambient_dim(), cols }
    }
}

/// `sign det T` where `b = b_ref · T`.
pub fn orientation_sign(b: &BasisMatrix, b_ref: &BasisMatrix) -> Result<OrientationSign, OrientError> {
    if b.ambient_dim() != b_ref.ambient_dim() || b.dim() != b_ref.dim() {
        return Err(OrientError::DifferentSpans);
    }
    let t = linalg::coordinates(b_ref.columns(), b.columns()).ok_or(OrientError::DifferentSpans)?;
    match linalg::det_sign(&t) {
        0 => Err(OrientError::RankDeficient),
        s => Ok(OrientationSign::new(s, b_ref.clone())),
    }
}

/// Compares two quotient bases of the same quotient.
pub fn quotient_sign(q: &QuotientBasis, q_ref: &QuotientBasis) -> Result<OrientationSign, OrientError> {
    let s = orientation_sign(&q.lifted_basis(), &q_ref.lifted_basis())?;
    let sub = orientation_sign(q.sub(), q_ref.sub())?;
    Ok(OrientationSign::new(s.value * sub.value, q_ref.lifted_basis()))
}

/// Realification of a vector: `(ℜz₁, ℑz₁, …)`.
pub fn realify_vector(z: &[GaussianRational]) -> Vector {
    z.iter().flat_map(|c| [c.re.clone(), c.im.clone()]).collect()
}

/// The real basis `(e₁, ie₁, …, eₖ, ieₖ)` of a complex basis `(e₁, …, eₖ)`.
pub fn complex_orientation_basis(complex_basis: &[Vec<GaussianRational>]) -> Result<BasisMatrix, OrientError> {
    let n = complex_basis.first().map_or(0, Vec::len);
    let i = GaussianRational::i();
    let mut cols = Vec::with_capacity(2 * complex_basis.len());
    for e in complex_basis {
        if e.len() != n {
            return Err(OrientError::DimensionMismatch { expected: n, found: e.len() });
        }
        cols.push(realify_vector(e));
        let ie: Vec<GaussianRational> = e.iter().map(|c| &i * c).collect();
        cols.push(realify_vector(&ie));
    }
    BasisMatrix::new(2 * n, cols)
}

/// Sign by which `f` pulls back the complex orientation of ℂᵏ.
pub fn semilinear_pullback_sign(f: &ComplexMatrix) -> Result<OrientationSign, OrientError> {
    let m = f.realify();
    match linalg::det_sign(&m) {
        0 => Err(OrientError::Singular),
        s => {
            let k = f.dim();
            let std: Vec<Vec<GaussianRational>> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| if i == j { GaussianRational::from_int(1) } else { GaussianRational::zero() })
                        .collect()
                })
                .collect();
            Ok(OrientationSign::new(s, complex_orientation_basis(&std)?))
        }
    }
}

/// The basis of `B` related to the bases of `A ⊂ B` and `B/A`: lifts of the
/// quotient basis first, then the basis of `A`.
pub fn ses_orientation(a_basis: &BasisMatrix, c_lifts: &BasisMatrix) -> Result<BasisMatrix, OrientError> {
    if a_basis.ambient_dim() != c_lifts.ambient_dim() {
        return Err(OrientError::DimensionMismatch {
            expected: a_basis.ambient_dim(),
            found: c_lifts.ambient_dim(),
        });
    }
    c_lifts.concat(a_basis).map_err(|_| OrientError::NotComplementary)
}

/// Local intersection sign of an oriented `Y` with a cooriented `Z`: the
/// sign of the projection `T_pY → T_pX / T_pZ` measured against the
/// coorientation.
pub fn intersection_sign(tangent_y: &BasisMatrix, coorient_z: &QuotientBasis) -> Result<OrientationSign, OrientError> {
    let k = coorient_z.codim();
    if tangent_y.dim() != k {
        return Err(OrientError::DimensionMismatch { expected: k, found: tangent_y.dim() });
    }
    let frame = coorient_z.lifted_basis();
    if frame.dim() != frame.ambient_dim() {
        return Err(OrientError::DimensionMismatch { expected: frame.ambient_dim(), found: frame.dim() });
    }
    let coords = linalg::coordinates(frame.columns(), tangent_y.columns()).ok_or(OrientError::NotComplementary)?;
    let c: Vec<Vector> = coords.iter().map(|col| col[..k].to_vec()).collect();
    match linalg::det_sign(&c) {
        0 => Err(OrientError::NotTransverse),
        s => Ok(OrientationSign::new(s, frame)),
    }
}

/// Coorientation of `Y ∩ Z` through `N(Y∩Z) ≅ N(Z) ⊕ N(Y)`: the
/// representatives of `Z` lifted into `T_pY`, then those of `Y` lifted into
/// `T_pZ`, modulo `T_pY ∩ T_pZ`.
pub fn cup_coorientation(coorient_y: &QuotientBasis, coorient_z: &QuotientBasis) -> Result<QuotientBasis, OrientError> {
    let ty = coorient_y.sub();
    let tz = coorient_z.sub();
    let n = ty.ambient_dim();
    if tz.ambient_dim() != n {
        return Err(OrientError::DimensionMismatch { expected: n, found: tz.ambient_dim() });
    }
    let mut both = ty.columns().to_vec();
    both.extend(tz.columns().iter().cloned());
    if linalg::rank(&both) != n {
        return Err(OrientError::NotTransverse);
    }
    // T_Y ∩ T_Z from the kernel of [T_Y | −T_Z].
    let kernel = linalg::kernel(&both);
    let ky = ty.dim();
    let meet: Vec<Vector> = kernel
        .iter()
        .map(|c| linalg::combine(ty.columns(), &c[..ky]))
        .collect();
    let meet = BasisMatrix::new(n, meet)?;

    // A spanning set that is a basis: T_Y plus a complement of the meet in T_Z.
    let split = split_basis(ty, tz, &meet);
    let lift = |v: &Vector, into_y: bool| -> Result<Vector, OrientError> {
        let c = linalg::coordinates(&split.cols, std::slice::from_ref(v)).ok_or(OrientError::NotTransverse)?;
        let c = &c[0];
        let (yc, zc) = c.split_at(ky);
        Ok(if into_y {
            linalg::combine(ty.columns(), yc)
        } else {
            let tail = &split.cols[ky..];
            linalg::combine(tail, zc)
        })
    };
    let mut reps = Vec::new();
    for v in coorient_z.reps() {
        reps.push(lift(v, true)?);
    }
    for v in coorient_y.reps() {
        let w = lift(v, false)?;
        reps.push(w);
    }
    QuotientBasis::new(meet, reps).map_err(|_| OrientError::NotTransverse)
}

/// Basis `(T_Y, c₁, …)` of ℚⁿ where the `cᵢ` complete the meet to `T_Z`.
fn split_basis(ty: &BasisMatrix, tz: &BasisMatrix, meet: &BasisMatrix) -> BasisMatrix {
    let mut cols = ty.columns().to_vec();
    let mut tz_part = meet.columns().to_vec();
    for c in tz.columns() {
        let mut trial = tz_part.clone();
        trial.push(c.clone());
        if linalg::rank(&trial) == trial.len() {
            tz_part.push(c.clone());
            cols.push(c.clone());
        }
    }
    debug_assert!(meet.columns().iter().all(|m| ty.contains(m)));
    BasisMatrix { n: ty.ambient_dim(), cols }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn b(cols: &[&[i64]]) -> BasisMatrix {
        BasisMatrix::from_int_columns(cols).unwrap()
    }

    fn v(a: &[i64]) -> Vector {
        a.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn orientation_sign_examples() {
        let std = b(&[&[1, 0], &[0, 1]]);
        assert_eq!(orientation_sign(&b(&[&[0, 1], &[1, 0]]), &std).unwrap().value, -1);
        assert_eq!(orientation_sign(&b(&[&[2, 0], &[0, 1]]), &std).unwrap().value, 1);
        assert_eq!(orientation_sign(&std, &std).unwrap().value, 1);
        let plane = b(&[&[1, 0, 0], &[0, 1, 0]]);
        let other = b(&[&[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(orientation_sign(&plane, &other), Err(OrientError::DifferentSpans));
        assert_eq!(BasisMatrix::from_int_columns(&[&[1, 2], &[2, 4]]), Err(OrientError::RankDeficient));
    }

    #[test]
    fn complex_basis_examples() {
        let one = GaussianRational::from_int(1);
        let zero = GaussianRational::zero();
        assert_eq!(complex_orientation_basis(&[vec![one.clone()]]).unwrap(), b(&[&[1, 0], &[0, 1]]));
        let got = complex_orientation_basis(&[vec![one.clone(), zero.clone()], vec![zero, one]]).unwrap();
        assert_eq!(got, BasisMatrix::standard(4));
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(semilinear_pullback_sign(&ComplexMatrix::conjugation(1)).unwrap().value, -1);
        assert_eq!(semilinear_pullback_sign(&ComplexMatrix::conjugation(2)).unwrap().value, 1);
        let g = GaussianRational::new;
        let d = ComplexMatrix::new(
            vec![vec![g(rat(2), rat(0)), g(rat(0), rat(0))], vec![g(rat(0), rat(0)), g(rat(0), rat(3))]],
            MapKind::Semilinear,
        )
        .unwrap();
        // Realified blocks [[2,0],[0,−2]] and [[0,3],[3,0]] have determinants −4 and −9.
        assert_eq!(linalg::det(&d.realify()), rat(36));
        assert_eq!(semilinear_pullback_sign(&d).unwrap().value, 1);
        let zero = ComplexMatrix::new(vec![vec![GaussianRational::zero()]], MapKind::Linear).unwrap();
        assert_eq!(semilinear_pullback_sign(&zero), Err(OrientError::Singular));
    }

    #[test]
    fn ses_examples() {
        let std2 = BasisMatrix::standard(2);
        let out = ses_orientation(&b(&[&[0, 1]]), &b(&[&[1, 0]])).unwrap();
        assert_eq!(out, std2);
        assert_eq!(orientation_sign(&out, &std2).unwrap().value, 1);
        let out = ses_orientation(&b(&[&[0, -1]]), &b(&[&[1, 0]])).unwrap();
        assert_eq!(orientation_sign(&out, &std2).unwrap().value, -1);
        let out = ses_orientation(&b(&[&[0, 0, 1]]), &b(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(out, BasisMatrix::standard(3));
        assert_eq!(
            ses_orientation(&b(&[&[1, 0]]), &b(&[&[2, 0]])),
            Err(OrientError::NotComplementary)
        );
    }

    #[test]
    fn intersection_examples() {
        let z = QuotientBasis::new(b(&[&[0, 1]]), vec![v(&[1, 0])]).unwrap();
        assert_eq!(intersection_sign(&b(&[&[1, 0]]), &z).unwrap().value, 1);
        assert_eq!(intersection_sign(&b(&[&[-1, 0]]), &z).unwrap().value, -1);
        assert_eq!(intersection_sign(&b(&[&[0, 3]]), &z), Err(OrientError::NotTransverse));
    }

    #[test]
    fn cup_examples() {
        let y = QuotientBasis::new(b(&[&[1, 0]]), vec![v(&[0, 1])]).unwrap();
        let z = QuotientBasis::new(b(&[&[0, 1]]), vec![v(&[1, 0])]).unwrap();
        let yz = cup_coorientation(&y, &z).unwrap();
        assert_eq!(yz.reps(), &[v(&[1, 0]), v(&[0, 1])]);
        let std = BasisMatrix::standard(2);
        assert_eq!(orientation_sign(&yz.lifted_basis(), &std).unwrap().value, 1);
        let zy = cup_coorientation(&z, &y).unwrap();
        assert_eq!(orientation_sign(&zy.lifted_basis(), &std).unwrap().value, -1);
        let same = QuotientBasis::new(b(&[&[1, 0]]), vec![v(&[0, 1])]).unwrap();
        assert_eq!(cup_coorientation(&y, &same), Err(OrientError::NotTransverse));
    }

    #[test]
    fn cup_in_four_space_ignores_representative_choice() {
        // Two hyperplanes of ℚ⁴ meeting in a plane.
        let ty = b(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let tz = b(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let y = QuotientBasis::new(ty.clone(), vec![v(&[0, 0, 0, 1])]).unwrap();
        let z = QuotientBasis::new(tz.clone(), vec![v(&[0, 0, 1, 0])]).unwrap();
        let y2 = QuotientBasis::new(ty, vec![v(&[3, -1, 2, 1])]).unwrap();
        let z2 = QuotientBasis::new(tz, vec![v(&[1, 1, 1, 5])]).unwrap();
        let a = cup_coorientation(&y, &z).unwrap();
        let c = cup_coorientation(&y2, &z2).unwrap();
        assert_eq!(quotient_sign(&c, &a).unwrap().value, 1);
        let swapped = cup_coorientation(&z, &y).unwrap();
        assert_eq!(quotient_sign(&swapped, &a).unwrap().value, -1);
    }
}
