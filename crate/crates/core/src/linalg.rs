//! Small dense exact linear algebra over ℚ. Vectors are `Vec<Rational>`;
//! a list of vectors is read as the columns of a matrix.

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type Vector = Vec<Rational>;

/// Determinant of a square matrix given by rows (or columns; it is the same).
pub fn det(m: &[Vector]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vector> = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

pub fn det_sign(m: &[Vector]) -> i8 {
    crate::poly::univariate::sign(&det(m))
}

/// Rows of the matrix whose columns are `cols`.
pub fn transpose(cols: &[Vector]) -> Vec<Vector> {
    let n = cols.first().map_or(0, Vec::len);
    (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut [Vector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..a[i].len() {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Dimension of the span of `vectors`.
pub fn rank(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut a = transpose(vectors);
    rref(&mut a, vectors.len()).len()
}

/// For each target, the coefficients expressing it in the independent
/// `basis`. `None` if some target is outside the span.
pub fn coordinates(basis: &[Vector], targets: &[Vector]) -> Option<Vec<Vector>> {
    let k = basis.len();
    let n = basis.first().or(targets.first()).map_or(0, Vec::len);
    let mut a: Vec<Vector> = (0..n)
        .map(|i| {
            basis
                .iter()
                .chain(targets.iter())
                .map(|c| c[i].clone())
                .collect()
        })
        .collect();
    let pivots = rref(&mut a, k + targets.len());
    if pivots.iter().any(|&p| p >= k) {
        return None;
    }
    debug_assert_eq!(pivots.len(), k, "basis is not independent");
    Some(
        (0..targets.len())
            .map(|t| (0..k).map(|j| a[j][k + t].clone()).collect())
            .collect(),
    )
}

/// Basis of `{c : Σ c_j v_j = 0}`.
pub fn kernel(vectors: &[Vector]) -> Vec<Vector> {
    let m = vectors.len();
    let mut a = transpose(vectors);
    let pivots = rref(&mut a, m);
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// `Σ coeffs_j cols_j`.
pub fn combine(cols: &[Vector], coeffs: &[Rational]) -> Vector {
    let n = cols.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); n];
    for (c, a) in cols.iter().zip(coeffs) {
        if a.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(c) {
            *o += a * x;
        }
    }
    out
}

/// Inverse of a square matrix given by rows, if it exists.
pub fn inverse(rows: &[Vector]) -> Option<Vec<Vector>> {
    let n = rows.len();
    let cols = transpose(rows);
    if rank(&cols) < n {
        return None;
    }
    let id: Vec<Vector> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    // Columns of the inverse are the coordinates of e_i in the columns of `rows`.
    let inv_cols = coordinates(&cols, &id)?;
    Some(transpose(&inv_cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn v(a: &[i64]) -> Vector {
        a.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn det_and_inverse() {
        let m = vec![v(&[2, 1, 0]), v(&[1, 3, 1]), v(&[0, 1, 4])];
        assert_eq!(det(&m), rat(18));
        let inv = inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Rational = (0..3).map(|k| &m[i][k] * &inv[k][j]).sum();
                assert_eq!(s, if i == j { rat(1) } else { rat(0) });
            }
        }
        assert!(inverse(&[v(&[1, 2]), v(&[2, 4])]).is_none());
    }

    #[test]
    fn coordinates_and_kernel() {
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let c = coordinates(&basis, &[v(&[2, 3, 5])]).unwrap();
        assert_eq!(c[0], v(&[2, 3]));
        assert!(coordinates(&basis, &[v(&[0, 0, 1])]).is_none());
        let k = kernel(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]);
        assert_eq!(k.len(), 1);
        assert!(combine(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])], &k[0]).iter().all(Zero::is_zero));
        assert_eq!(rank(&[v(&[1, 2]), v(&[2, 4])]), 1);
    }
}
