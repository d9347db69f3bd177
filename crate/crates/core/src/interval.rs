//! Closed intervals with exact rational endpoints.
//!
//! Every operation returns an enclosure of the exact image, so a sign read off
//! an interval that excludes zero is a certified sign.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::poly::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    /// `Some(±1)` when the interval excludes zero, `Some(0)` for the point
    /// interval `[0,0]`, otherwise `None`.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Strict sign: `None` unless the interval excludes zero.
    pub fn strict_sign(&self) -> Option<i8> {
        match self.sign() {
            Some(0) | None => None,
            s => s,
        }
    }

    pub fn intersects(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn is_subset_of(&self, o: &Interval) -> bool {
        o.lo <= self.lo && self.hi <= o.hi
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    /// Interval quotient; `None` if the divisor contains zero.
    pub fn checked_div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let inv = Interval::new(o.hi.recip(), o.lo.recip());
        Some(self * &inv)
    }

    pub fn pow(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::point(rat(1));
        }
        if k % 2 == 1 || self.lo.is_positive() || self.lo.is_zero() {
            // monotone on the whole interval
            let a = pow_r(&self.lo, k);
            let b = pow_r(&self.hi, k);
            return Interval::new(a.clone().min(b.clone()), a.max(b));
        }
        if self.hi.is_negative() || self.hi.is_zero() {
            return Interval::new(pow_r(&self.hi, k), pow_r(&self.lo, k));
        }
        let a = pow_r(&self.lo, k);
        let b = pow_r(&self.hi, k);
        Interval::new(Rational::zero(), a.max(b))
    }

    /// Smallest enclosing interval whose endpoints are multiples of `2^-bits`.
    pub fn rounded_outward(&self, bits: u32) -> Interval {
        let scale = Rational::from_integer(num_bigint::BigInt::from(1) << bits);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Interval { lo, hi }
    }

    /// Outward rounding with precision relative to the width; point
    /// intervals are kept exact.
    pub fn simplified(&self) -> Interval {
        if self.is_point() {
            return self.clone();
        }
        let w = to_f64(&self.width());
        let bits = if w > 0.0 { (-w.log2()).max(0.0) as u32 + 24 } else { 64 };
        self.rounded_outward(bits)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.lo), to_f64(&self.hi))
    }
}

fn pow_r(r: &Rational, k: u32) -> Rational {
    let mut acc = rat(1);
    for _ in 0..k {
        acc = &acc * r;
    }
    acc
}

/// Nearest-ish `f64` of a rational; used only for display and plotting.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back through a scaled integer ratio for huge components
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = (n.max(d) - 900).max(0) as usize;
        let nn = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let dd = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        nn / dd
    })
}

impl From<Rational> for Interval {
    fn from(v: Rational) -> Self {
        Interval::point(v)
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        if self.is_point() && o.is_point() {
            return Interval::point(&self.lo * &o.lo);
        }
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if v < &lo {
                lo = v.clone();
            }
            if v > &hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }
}

impl<'a> Mul<&'a Rational> for &'a Interval {
    type Output = Interval;
    fn mul(self, s: &Rational) -> Interval {
        let a = &self.lo * s;
        let b = &self.hi * s;
        if s.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Serialized as decimal approximations alongside the exact endpoints.
impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Interval", 4)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("lo_approx", &to_f64(&self.lo))?;
        st.serialize_field("hi_approx", &to_f64(&self.hi))?;
        st.end()
    }
}

/// Interval determinant of a 2×2 matrix.
pub fn det2(m: [[&Interval; 2]; 2]) -> Interval {
    &(m[0][0] * m[1][1]) - &(m[0][1] * m[1][0])
}

/// Interval determinant of a 3×3 matrix given by rows.
pub fn det3(r: [&[Interval; 3]; 3]) -> Interval {
    let m = |a: usize, b: usize, c: usize, d: usize| -> Interval {
        &(&r[1][a] * &r[2][b]) - &(&r[1][c] * &r[2][d])
    };
    let t0 = &r[0][0] * &m(1, 2, 2, 1);
    let t1 = &r[0][1] * &m(0, 2, 2, 0);
    let t2 = &r[0][2] * &m(0, 1, 1, 0);
    &(&t0 - &t1) + &t2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(rat(a), rat(b))
    }

    #[test]
    fn product_covers_sign_mixed() {
        let p = &iv(-2, 3) * &iv(-1, 4);
        assert_eq!(p, iv(-8, 12));
    }

    #[test]
    fn even_power_straddling_zero() {
        assert_eq!(iv(-3, 2).pow(2), iv(0, 9));
        assert_eq!(iv(-3, -2).pow(2), iv(4, 9));
        assert_eq!(iv(-3, 2).pow(3), iv(-27, 8));
    }

    #[test]
    fn division_requires_zero_free_divisor() {
        assert!(iv(1, 2).checked_div(&iv(-1, 1)).is_none());
        let q = iv(1, 2).checked_div(&iv(2, 4)).unwrap();
        assert_eq!(q, Interval::new(ratio(1, 4), rat(1)));
    }

    #[test]
    fn signs() {
        assert_eq!(iv(1, 2).sign(), Some(1));
        assert_eq!(iv(-2, -1).strict_sign(), Some(-1));
        assert_eq!(iv(0, 0).sign(), Some(0));
        assert_eq!(iv(0, 0).strict_sign(), None);
        assert_eq!(iv(-1, 1).sign(), None);
    }
}
