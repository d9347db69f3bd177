use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::gaussian::{GaussianRational, Rational};
use super::PolyError;
use crate::interval::Interval;

/// Exponent triple `(a, b, c)` of `x^a y^b z^c`.
///
/// Ordered graded-lexicographically with the largest monomial first, so that
/// iterating a term map yields `x^D, x^{D-1}y, …, z^D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(self, o: Monomial) -> Monomial {
        Monomial([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        o.degree().cmp(&self.degree()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Homogeneous polynomial in `x, y, z` with Gaussian-rational coefficients.
///
/// Every stored monomial has total degree `degree`; zero coefficients are never
/// stored. The zero polynomial is an empty term map that still carries a
/// degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPoly {
    degree: u32,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl HomPoly {
    pub fn zero(degree: u32) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = Self::zero(0);
        p.add_term(Monomial([0, 0, 0]), c);
        p
    }

    /// The coordinate form `x`, `y` or `z` for `var = 0, 1, 2`.
    pub fn var(var: usize) -> Self {
        let mut e = [0; 3];
        e[var] = 1;
        let mut p = Self::zero(1);
        p.add_term(Monomial(e), GaussianRational::one());
        p
    }

    pub fn x() -> Self {
        Self::var(0)
    }
    pub fn y() -> Self {
        Self::var(1)
    }
    pub fn z() -> Self {
        Self::var(2)
    }

    /// Builds a form from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = ([u32; 3], GaussianRational)>,
    {
        let mut p = Self::zero(degree);
        for (e, c) in terms {
            let m = Monomial(e);
            if m.degree() != degree {
                return Err(PolyError::NotHomogeneous { expected: degree, found: m.degree() });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Integer-coefficient convenience constructor used heavily in tests.
    pub fn from_int_terms(degree: u32, terms: &[([u32; 3], i64)]) -> Self {
        Self::from_terms(
            degree,
            terms.iter().map(|(e, c)| (*e, GaussianRational::from_int(*c))),
        )
        .expect("homogeneous integer terms")
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: [u32; 3]) -> GaussianRational {
        self.terms.get(&Monomial(e)).cloned().unwrap_or_default()
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    /// Re-tags the degree of a zero polynomial. Nonzero forms keep their degree.
    pub fn with_degree(mut self, degree: u32) -> Result<Self, PolyError> {
        if self.is_zero() {
            self.degree = degree;
            Ok(self)
        } else if self.degree == degree {
            Ok(self)
        } else {
            Err(PolyError::DegreeMismatch { left: self.degree, right: degree })
        }
    }

    pub fn real_part(&self) -> HomPoly {
        self.map_coeffs(|c| GaussianRational::real(c.re.clone()))
    }

    pub fn imag_part(&self) -> HomPoly {
        self.map_coeffs(|c| GaussianRational::real(c.im.clone()))
    }

    pub fn conj(&self) -> HomPoly {
        self.map_coeffs(GaussianRational::conj)
    }

    fn map_coeffs(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> HomPoly {
        let mut p = Self::zero(self.degree);
        for (m, c) in &self.terms {
            p.add_term(*m, f(c));
        }
        p
    }

    pub fn scale(&self, s: &GaussianRational) -> HomPoly {
        self.map_coeffs(|c| c * s)
    }

    pub fn scale_real(&self, s: &Rational) -> HomPoly {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn neg(&self) -> HomPoly {
        self.map_coeffs(|c| -c)
    }

    pub fn add(&self, o: &HomPoly) -> Result<HomPoly, PolyError> {
        let (a, b) = unify_degrees(self, o)?;
        let mut p = a;
        for (m, c) in &b.terms {
            p.add_term(*m, c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, o: &HomPoly) -> Result<HomPoly, PolyError> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &HomPoly) -> HomPoly {
        let mut p = Self::zero(self.degree + o.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> HomPoly {
        let mut acc = Self::constant(GaussianRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact value at the representative `(x, y, z)`.
    pub fn evaluate(&self, pt: &[GaussianRational; 3]) -> GaussianRational {
        let powers: Vec<Vec<GaussianRational>> = pt
            .iter()
            .map(|v| {
                let mut pw = vec![GaussianRational::one()];
                for k in 0..self.degree as usize {
                    let next = &pw[k] * v;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let e = m.0;
            let t = &(&(&powers[0][e[0] as usize] * &powers[1][e[1] as usize])
                * &powers[2][e[2] as usize])
                * c;
            acc += &t;
        }
        acc
    }

    /// Value of the real part of `self` at a real rational point.
    pub fn evaluate_real(&self, pt: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let e = m.0;
            let mut t = c.re.clone();
            for (v, k) in pt.iter().zip(e) {
                for _ in 0..k {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// Interval enclosure of the real part of `self` over a box.
    pub fn evaluate_interval(&self, pt: &[Interval; 3]) -> Interval {
        let powers: Vec<Vec<Interval>> =
            pt.iter().map(|v| (0..=self.degree).map(|k| v.pow(k)).collect()).collect();
        let mut acc = Interval::point(Rational::zero());
        for (m, c) in &self.terms {
            if c.re.is_zero() {
                continue;
            }
            let e = m.0;
            let mono = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize])
                * &powers[2][e[2] as usize];
            acc = &acc + &(&mono * &c.re);
        }
        acc
    }

    /// The partial derivative with respect to `var` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, var: usize) -> Result<HomPoly, PolyError> {
        if self.degree == 0 {
            return Err(PolyError::DegreeZero);
        }
        let mut p = Self::zero(self.degree - 1);
        for (m, c) in &self.terms {
            let k = m.0[var];
            if k == 0 {
                continue;
            }
            let mut e = m.0;
            e[var] -= 1;
            p.add_term(Monomial(e), c.scale(&Rational::from_integer(k.into())));
        }
        Ok(p)
    }

    /// `(∂ₓp, ∂ᵧp, ∂_z p)`.
    pub fn gradient(&self) -> Result<[HomPoly; 3], PolyError> {
        Ok([self.partial(0)?, self.partial(1)?, self.partial(2)?])
    }

    /// Substitutes `w ↦ M·w`, i.e. returns `q(w) = p(M w)`.
    pub fn compose_linear(&self, m: &[[Rational; 3]; 3]) -> HomPoly {
        let images: Vec<HomPoly> = (0..3)
            .map(|row| {
                let mut lin = HomPoly::zero(1);
                for (col, entry) in m[row].iter().enumerate() {
                    let mut e = [0; 3];
                    e[col] = 1;
                    lin.add_term(Monomial(e), GaussianRational::real(entry.clone()));
                }
                lin
            })
            .collect();
        let pw: Vec<Vec<HomPoly>> = images
            .iter()
            .map(|l| {
                let mut v = vec![HomPoly::constant(GaussianRational::one())];
                for k in 0..self.degree as usize {
                    let next = v[k].mul(l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(self.degree);
        for (mono, c) in &self.terms {
            let e = mono.0;
            let t = pw[0][e[0] as usize]
                .mul(&pw[1][e[1] as usize])
                .mul(&pw[2][e[2] as usize])
                .scale(c);
            for (m2, c2) in t.terms {
                out.add_term(m2, c2);
            }
        }
        out
    }

    /// Divides by the leading coefficient so the first term is `1`.
    pub fn monic(&self) -> HomPoly {
        match self.terms.values().next().and_then(GaussianRational::inv) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Makes the leading coefficient positive (real forms only), keeping the
    /// zero set and the scale.
    pub fn sign_normalized(&self) -> HomPoly {
        match self.terms.values().next() {
            Some(c) if c.re.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

fn unify_degrees(a: &HomPoly, b: &HomPoly) -> Result<(HomPoly, HomPoly), PolyError> {
    if a.degree == b.degree {
        return Ok((a.clone(), b.clone()));
    }
    if a.is_zero() {
        return Ok((HomPoly::zero(b.degree), b.clone()));
    }
    if b.is_zero() {
        return Ok((a.clone(), HomPoly::zero(a.degree)));
    }
    Err(PolyError::DegreeMismatch { left: a.degree, right: b.degree })
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono = format_monomial(m);
            let (negative, body) = if c.is_real() {
                let neg = c.re.is_negative();
                let a = c.re.abs();
                let body = match (a.is_one(), mono.is_empty()) {
                    (true, false) => mono.clone(),
                    (_, true) => a.to_string(),
                    (false, false) => format!("{a}*{mono}"),
                };
                (neg, body)
            } else if c.re.is_zero() {
                let neg = c.im.is_negative();
                let a = c.im.abs();
                let coeff = if a.is_one() { "i".to_string() } else { format!("{a}*i") };
                let body = if mono.is_empty() { coeff } else { format!("{coeff}*{mono}") };
                (neg, body)
            } else {
                let body =
                    if mono.is_empty() { c.to_string() } else { format!("{c}*{mono}") };
                (false, body)
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn format_monomial(m: &Monomial) -> String {
    let names = ['x', 'y', 'z'];
    let mut parts = Vec::new();
    for (k, name) in m.0.iter().zip(names) {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}
