//! Dense univariate polynomials over ℚ: Euclidean arithmetic, square-free
//! decomposition, Sturm chains, Cauchy indices and exact real-root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::gaussian::{rat, Rational};
use crate::interval::Interval;

/// `Σ coeffs[k] x^k`; trailing zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| rat(v)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Interval::point(c.clone());
        }
        acc
    }

    /// Sign of `self(x)`, evaluated in integers when the coefficients are
    /// integral.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        if !self.coeffs.iter().all(Ratio::is_integer) {
            return sign(&self.eval(x));
        }
        // b^n p(a/b) = Σ c_k a^k b^(n−k), with b > 0.
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c.numer() * &bpow;
            bpow *= b;
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, s: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut acc = UPoly::constant(rat(1));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = d.lc().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Quotient of an exact division. Debug builds check the remainder.
    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(&(c.numer() * &den / c.denom())));
        self.scale(&Rational::new(den, num))
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        self.gcd_primitive(o).monic()
    }

    /// Greatest common divisor scaled to a primitive integer polynomial.
    pub fn gcd_primitive(&self, o: &UPoly) -> UPoly {
        let mut a = to_int(self);
        let mut b = to_int(o);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = int_rem(a, &b);
            a = b;
            b = r;
        }
        from_int(a)
    }

    pub fn square_free_part(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_exact(&self.gcd(&self.derivative())).monic()
    }

    /// Yun's square-free decomposition: monic, pairwise coprime, square-free
    /// factors `(q_m, m)` with `self = lc · Π q_m^m`. Constant factors are
    /// omitted.
    pub fn square_free_decomposition(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.primitive();
        let df = f.derivative();
        let a0 = f.gcd_primitive(&df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut m = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd_primitive(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.monic(), m));
            }
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            d = c.sub(&b.derivative());
            m += 1;
        }
        out
    }

    /// Upper bound on the absolute value of every complex root.
    pub fn root_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let mut m = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let r = c.abs() / &lc;
            if r > m {
                m = r;
            }
        }
        m + rat(1)
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = SturmChain::new(self);
        chain.variations_at_neg_infinity() - chain.variations_at_pos_infinity()
    }

    /// Isolates every real root of a square-free polynomial.
    pub fn isolate_real_roots(&self) -> Vec<RootEnclosure> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let chain = SturmChain::new(self);
        let b = self.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = chain.variations(&lo) - chain.variations(&hi);
            match n {
                0 => {}
                1 => out.push(RootEnclosure::Open { lo, hi }),
                _ => {
                    let m = self.split_point(&lo, &hi);
                    stack.push((m.clone(), hi));
                    stack.push((lo, m));
                }
            }
        }
        out.sort_by(|a, b| a.lo().cmp(b.lo()));
        out
    }

    /// A point strictly inside `(lo, hi)` that is not a root.
    fn split_point(&self, lo: &Rational, hi: &Rational) -> Rational {
        let w = hi - lo;
        let mut k = 2i64;
        loop {
            for j in 1..k {
                let m = lo + &w * Rational::new(j.into(), k.into());
                if !self.eval(&m).is_zero() {
                    return m;
                }
            }
            k += 1;
        }
    }
}

pub(crate) fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{a}*x")?,
                _ if a.is_one() => write!(f, "x^{k}")?,
                _ => write!(f, "{a}*x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for UPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An isolated real root of a square-free polynomial: either known exactly,
/// or the unique root in the open interval `(lo, hi)` with the polynomial
/// nonzero and of opposite signs at both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootEnclosure {
    Exact(Rational),
    Open { lo: Rational, hi: Rational },
}

impl RootEnclosure {
    pub fn lo(&self) -> &Rational {
        match self {
            RootEnclosure::Exact(v) => v,
            RootEnclosure::Open { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rational {
        match self {
            RootEnclosure::Exact(v) => v,
            RootEnclosure::Open { hi, .. } => hi,
        }
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo().clone(), self.hi().clone())
    }

    pub fn width(&self) -> Rational {
        self.hi() - self.lo()
    }

    /// One bisection step against the square-free `q` owning this root.
    pub fn bisect(&self, q: &UPoly) -> RootEnclosure {
        match self {
            RootEnclosure::Exact(_) => self.clone(),
            RootEnclosure::Open { lo, hi } => {
                let m = (lo + hi) / rat(2);
                let sm = q.sign_at(&m);
                if sm == 0 {
                    RootEnclosure::Exact(m)
                } else if sm == q.sign_at(lo) {
                    RootEnclosure::Open { lo: m, hi: hi.clone() }
                } else {
                    RootEnclosure::Open { lo: lo.clone(), hi: m }
                }
            }
        }
    }

    /// Bisects until the width is at most `width`.
    pub fn refine_to(&self, q: &UPoly, width: &Rational) -> RootEnclosure {
        let mut r = self.clone();
        while &r.width() > width {
            r = r.bisect(q);
        }
        r
    }

    /// Whether the enclosed root is also a root of `g`, where `g` divides the
    /// square-free polynomial that owns this enclosure.
    pub fn is_root_of_divisor(&self, g: &UPoly) -> bool {
        match self {
            RootEnclosure::Exact(v) => g.eval(v).is_zero(),
            RootEnclosure::Open { lo, hi } => {
                if g.degree().unwrap_or(0) == 0 {
                    return g.is_zero();
                }
                g.sign_at(lo) * g.sign_at(hi) < 0
            }
        }
    }
}

/// Generalized Sturm chain `f₀, f₁, −rem(f₀, f₁), …`.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UPoly>,
}

impl SturmChain {
    /// Classical chain of `p` and `p'`.
    pub fn new(p: &UPoly) -> Self {
        Self::from_pair(p, &p.derivative())
    }

    /// Chain started from an arbitrary pair; its variation difference over
    /// `(a, b)` is the Cauchy index of `f1/f0`.
    pub fn from_pair(f0: &UPoly, f1: &UPoly) -> Self {
        let mut chain = vec![to_int(f0)];
        if !f1.is_zero() {
            chain.push(to_int(f1));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = int_rem(chain[n - 2].clone(), &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        Self { chain: chain.into_iter().map(from_int).collect() }
    }

    pub fn polys(&self) -> &[UPoly] {
        &self.chain
    }

    pub fn variations(&self, x: &Rational) -> usize {
        count_variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        count_variations(self.chain.iter().map(|p| sign(&p.lc())))
    }

    pub fn variations_at_neg_infinity(&self) -> usize {
        count_variations(self.chain.iter().map(|p| {
            let s = sign(&p.lc());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }
}

/// Coefficients of the primitive positive multiple of `p`.
fn to_int(p: &UPoly) -> Vec<BigInt> {
    p.primitive().coeffs.iter().map(|c| c.numer().clone()).collect()
}

fn from_int(v: Vec<BigInt>) -> UPoly {
    UPoly::new(v.into_iter().map(Rational::from_integer).collect())
}

/// Remainder of `a` by `b` up to a positive factor, made primitive.
fn int_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let (lb_abs, lb_neg) = (lb.abs(), lb.is_negative());
    while a.len() > db {
        let da = a.len() - 1;
        let la = if lb_neg { -a[da].clone() } else { a[da].clone() };
        let shift = da - db;
        for c in a.iter_mut() {
            *c *= &lb_abs;
        }
        for (j, bc) in b.iter().enumerate() {
            a[shift + j] -= &la * bc;
        }
        debug_assert!(a[da].is_zero());
        a.pop();
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in a.iter_mut() {
                *c /= &g;
            }
        }
    }
    a
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Cauchy index of `num/den` over the whole real line: the number of poles
/// where the function jumps from −∞ to +∞ minus those where it jumps from +∞
/// to −∞.
pub fn cauchy_index(num: &UPoly, den: &UPoly) -> i64 {
    let chain = SturmChain::from_pair(den, num);
    chain.variations_at_neg_infinity() as i64 - chain.variations_at_pos_infinity() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn divrem_and_gcd() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // x² − 1
        let b = UPoly::from_ints(&[1, 1]); // x + 1
        let (q, r) = a.divrem(&b);
        assert_eq!(q, UPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let g = a.gcd(&UPoly::from_ints(&[-1, 1]).mul(&UPoly::from_ints(&[2, 1])));
        assert_eq!(g, UPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x−1)(x+2)^2(x^2+1)^3
        let f = UPoly::from_ints(&[-1, 1])
            .mul(&UPoly::from_ints(&[2, 1]).pow(2))
            .mul(&UPoly::from_ints(&[1, 0, 1]).pow(3))
            .scale(&rat(7));
        let dec = f.square_free_decomposition();
        assert_eq!(
            dec,
            vec![
                (UPoly::from_ints(&[-1, 1]), 1),
                (UPoly::from_ints(&[2, 1]), 2),
                (UPoly::from_ints(&[1, 0, 1]), 3)
            ]
        );
    }

    #[test]
    fn isolation_of_known_roots() {
        // (x² − 2)(x − 1/3)(x + 5)
        let f = UPoly::from_ints(&[-2, 0, 1])
            .mul(&UPoly::new(vec![ratio(-1, 3), rat(1)]))
            .mul(&UPoly::from_ints(&[5, 1]));
        let roots = f.isolate_real_roots();
        assert_eq!(roots.len(), 4);
        let expect = [-5.0, -std::f64::consts::SQRT_2, 1.0 / 3.0, std::f64::consts::SQRT_2];
        for (r, e) in roots.iter().zip(expect) {
            let r = r.refine_to(&f, &ratio(1, 1_000_000));
            let (lo, hi) = r.interval().to_f64_pair();
            assert!(lo - 1e-9 <= e && e <= hi + 1e-9, "{e} not in [{lo}, {hi}]");
        }
        assert_eq!(UPoly::from_ints(&[1, 0, 1]).isolate_real_roots(), vec![]);
        assert_eq!(f.count_real_roots(), 4);
    }

    #[test]
    fn cauchy_index_simple_pole() {
        // −1/t jumps from +∞ to −∞ at 0
        assert_eq!(cauchy_index(&UPoly::from_ints(&[-1]), &UPoly::x()), -1);
        assert_eq!(cauchy_index(&UPoly::from_ints(&[1]), &UPoly::x()), 1);
        assert_eq!(cauchy_index(&UPoly::zero(), &UPoly::from_ints(&[1, 0, 1])), 0);
    }

    #[test]
    fn divisor_root_test() {
        let q = UPoly::from_ints(&[-2, 0, 1]);
        let roots = q.isolate_real_roots();
        let g = UPoly::from_ints(&[-2, 0, 1]);
        assert!(roots.iter().all(|r| r.is_root_of_divisor(&g)));
        assert!(roots.iter().all(|r| !r.is_root_of_divisor(&UPoly::from_ints(&[1]))));
    }
}
