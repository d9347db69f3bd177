//! Elimination of `y` from two bivariate polynomials whose leading
//! coefficients in `y` are nonzero constants, through the subresultant
//! sequence computed as determinants over ℚ[x].

use num_traits::Zero;
use rand::Rng;

use crate::linalg;
use crate::poly::univariate::UPoly;
use crate::poly::{rat, GaussianRational, HomPoly, Rational};

pub type Transform = [[Rational; 3]; 3];

/// Random integer matrix with entries in `[-3, 3]` and nonzero determinant.
pub fn random_transform<R: Rng>(rng: &mut R) -> Transform {
    loop {
        let m: Transform = std::array::from_fn(|_| std::array::from_fn(|_| rat(rng.gen_range(-3..=3))));
        let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.to_vec()).collect();
        if !linalg::det(&rows).is_zero() {
            return m;
        }
    }
}

pub fn invert(m: &Transform) -> Transform {
    let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.to_vec()).collect();
    let inv = linalg::inverse(&rows).expect("transform is invertible");
    std::array::from_fn(|i| std::array::from_fn(|j| inv[i][j].clone()))
}

/// `F(x, y, 1)` as coefficients of powers of `y`, each a polynomial in `x`.
pub fn by_y(f: &HomPoly) -> Vec<UPoly> {
    let d = f.degree() as usize;
    let mut out: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d + 1]; d + 1];
    for (m, c) in f.terms() {
        let [a, b, _] = m.0;
        out[b as usize][a as usize] += &c.re;
    }
    out.into_iter().map(UPoly::new).collect()
}

/// Fraction-free determinant over ℚ[x].
pub fn det_poly(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::constant(rat(1));
    }
    let mut negate = false;
    let mut prev = UPoly::constant(rat(1));
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return UPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Subresultant coefficients `s[j][i]` for `0 ≤ i ≤ j ≤ d`, where `f` and `g`
/// both have degree `d` in `y` with constant leading coefficients. Index `d`
/// holds `f` itself, so that `s[j][j]` is nonzero for some `j` at every `x`.
pub fn subresultants(f: &[UPoly], g: &[UPoly]) -> Vec<Vec<UPoly>> {
    let d = f.len() - 1;
    debug_assert_eq!(g.len(), d + 1);
    let mut out = Vec::with_capacity(d + 1);
    for j in 0..d {
        let rows_each = d - j;
        let ncols = 2 * d - j;
        let top = ncols - 1; // power of y in column 0
        let mut rows: Vec<Vec<UPoly>> = Vec::with_capacity(2 * rows_each);
        for poly in [f, g] {
            for i in 0..rows_each {
                let shift = rows_each - 1 - i;
                let row = (0..ncols)
                    .map(|c| {
                        let p = top - c;
                        if p >= shift && p - shift <= d {
                            poly[p - shift].clone()
                        } else {
                            UPoly::zero()
                        }
                    })
                    .collect();
                rows.push(row);
            }
        }
        let lead = 2 * d - 2 * j - 1;
        let sj = (0..=j)
            .map(|i| {
                let col = top - i;
                let m = rows
                    .iter()
                    .map(|r| {
                        let mut v: Vec<UPoly> = r[..lead].to_vec();
                        v.push(r[col].clone());
                        v
                    })
                    .collect();
                det_poly(m)
            })
            .collect();
        out.push(sj);
    }
    out.push(f.to_vec());
    out
}

/// The bivariate gcd read off the first nonzero subresultant, homogenised
/// and pulled back through `inv`.
pub fn common_factor(sres: &[Vec<UPoly>], inv: &Transform) -> HomPoly {
    let k = sres
        .iter()
        .position(|s| s.iter().any(|c| !c.is_zero()))
        .expect("the last entry is nonzero");
    let s = &sres[k];
    let content = s.iter().fold(UPoly::zero(), |acc, c| acc.gcd(c));
    let parts: Vec<UPoly> = s.iter().map(|c| c.div_exact(&content)).collect();
    let deg = parts
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.degree().map(|dx| dx + i))
        .max()
        .unwrap_or(0) as u32;
    let mut terms = Vec::new();
    for (i, c) in parts.iter().enumerate() {
        for (a, v) in c.coeffs().iter().enumerate() {
            if !v.is_zero() {
                let (a, i) = (a as u32, i as u32);
                terms.push(([a, i, deg - a - i], GaussianRational::real(v.clone())));
            }
        }
    }
    let h = HomPoly::from_terms(deg, terms).expect("homogenised terms");
    h.compose_linear(inv).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn identity() -> Transform {
        std::array::from_fn(|i| std::array::from_fn(|j| rat((i == j) as i64)))
    }

    #[test]
    fn resultant_of_lines() {
        // y − x and y + x − 2 meet at x = 1.
        let f = by_y(&parse_poly("y - x").unwrap());
        let g = by_y(&parse_poly("y + x - 2z").unwrap());
        let s = subresultants(&f, &g);
        let res = &s[0][0];
        assert_eq!(res.degree(), Some(1));
        assert!(res.eval(&rat(1)).is_zero());
    }

    #[test]
    fn resultant_of_conics_has_degree_four() {
        let f = by_y(&parse_poly("y^2 + x^2 - z^2").unwrap());
        let g = by_y(&parse_poly("y^2 - x*z").unwrap());
        let s = subresultants(&f, &g);
        // Res = (x² − 1 + x)²-type quartic; check degree and a brute value.
        assert_eq!(s[0][0].degree(), Some(4));
        // At x = 0: f = y² − 1, g = y², resultant = (−1)² = 1.
        assert_eq!(s[0][0].eval(&rat(0)), rat(1));
    }

    #[test]
    fn first_subresultant_gives_the_common_root() {
        // f = (y − x)(y + 1), g = (y − x)(y − 2): at generic x the gcd is y − x.
        let f = by_y(&parse_poly("(y - x)(y + z)").unwrap());
        let g = by_y(&parse_poly("(y - x)(y - 2z)").unwrap());
        let s = subresultants(&f, &g);
        assert!(s[0][0].is_zero());
        let gcd = common_factor(&s, &identity());
        assert_eq!(gcd, parse_poly("x - y").unwrap().monic());
    }
}
