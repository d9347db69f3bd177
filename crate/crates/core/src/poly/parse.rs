//! Text grammar for forms in `x, y, z`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor | '/' integer)*
//! factor := integer | 'i' | var ['^' integer] | '(' expr ')' ['^' integer]
//! var    := 'x' | 'y' | 'z'
//! ```
//!
//! Multiplication may be implicit (`2xy`, `3/4*i*x^2`), whitespace is ignored.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gaussian::{GaussianRational, Rational};
use super::hompoly::HomPoly;
use super::PolyError;

type Sparse = BTreeMap<[u32; 3], GaussianRational>;

/// Parses a homogeneous form. The zero polynomial is allowed and is tagged
/// with the largest degree written in the input.
pub fn parse_poly(text: &str) -> Result<HomPoly, PolyError> {
    let mut p = Parser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
    if p.chars.is_empty() {
        return Err(PolyError::MalformedInput { pos: 0, msg: "empty input".into() });
    }
    let (terms, written_degree) = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.err(format!("unexpected '{}'", p.chars[p.pos])));
    }
    let mut degree = None;
    for e in terms.keys() {
        let d: u32 = e.iter().sum();
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => {
                return Err(PolyError::NotHomogeneous { expected: d0.max(d), found: d0.min(d) })
            }
            _ => {}
        }
    }
    HomPoly::from_terms(degree.unwrap_or(written_degree), terms)
}

/// Like [`parse_poly`] but rejects inputs that simplify to zero.
pub fn parse_nonzero_poly(text: &str) -> Result<HomPoly, PolyError> {
    let p = parse_poly(text)?;
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(p)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: String) -> PolyError {
        PolyError::MalformedInput { pos: self.pos, msg }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Returns the expanded terms and the largest monomial degree written.
    fn expr(&mut self) -> Result<(Sparse, u32), PolyError> {
        let mut acc = Sparse::new();
        let mut max_deg = 0;
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let (t, d) = self.term()?;
            max_deg = max_deg.max(d);
            for (e, c) in t {
                let c = if sign < 0 { -c } else { c };
                let slot = acc.entry(e).or_insert_with(GaussianRational::zero);
                *slot += &c;
                if slot.is_zero() {
                    acc.remove(&e);
                }
            }
            sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                break;
            };
        }
        Ok((acc, max_deg))
    }

    fn term(&mut self) -> Result<(Sparse, u32), PolyError> {
        let (mut acc, mut deg) = self.factor()?;
        loop {
            if self.eat('*') {
                let (f, d) = self.factor()?;
                acc = mul(&acc, &f);
                deg += d;
            } else if self.eat('/') {
                let n = self.integer()?;
                if n.is_zero() {
                    return Err(self.err("division by zero".into()));
                }
                let inv = Rational::new(BigInt::one(), n);
                acc = acc.into_iter().map(|(e, c)| (e, c.scale(&inv))).collect();
            } else if matches!(self.peek(), Some(c) if c.is_ascii_digit() || "xyzi(".contains(c)) {
                let (f, d) = self.factor()?;
                acc = mul(&acc, &f);
                deg += d;
            } else {
                break;
            }
        }
        Ok((acc, deg))
    }

    fn factor(&mut self) -> Result<(Sparse, u32), PolyError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok((single([0, 0, 0], GaussianRational::real(Rational::from_integer(n))), 0))
            }
            Some('i') => {
                self.pos += 1;
                Ok((single([0, 0, 0], GaussianRational::i()), 0))
            }
            Some(v @ ('x' | 'y' | 'z')) => {
                self.pos += 1;
                let k = self.exponent()?;
                let mut e = [0; 3];
                e[(v as u8 - b'x') as usize] = k;
                Ok((single(e, GaussianRational::one()), k))
            }
            Some('(') => {
                self.pos += 1;
                let (inner, d) = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'".into()));
                }
                let k = self.exponent()?;
                let mut acc = single([0, 0, 0], GaussianRational::one());
                for _ in 0..k {
                    acc = mul(&acc, &inner);
                }
                Ok((acc, d * k))
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input".into())),
        }
    }

    fn exponent(&mut self) -> Result<u32, PolyError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| self.err("exponent out of range".into()))
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("bad integer".into()))
    }
}

fn single(e: [u32; 3], c: GaussianRational) -> Sparse {
    let mut m = Sparse::new();
    m.insert(e, c);
    m
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
            let slot = out.entry(e).or_insert_with(GaussianRational::zero);
            *slot += &(c1 * c2);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    #[test]
    fn reads_circle() {
        let p = parse_poly("x^2 + y^2 - z^2").unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coeff([0, 0, 2]), GaussianRational::from_int(-1));
    }

    #[test]
    fn rejects_mixed_degrees() {
        assert!(matches!(parse_poly("x^2 + y - z^2"), Err(PolyError::NotHomogeneous { .. })));
    }

    #[test]
    fn gaussian_coefficient() {
        let p = parse_poly("x^2 + i*x*y").unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.coeff([1, 1, 0]), GaussianRational::i());
    }

    #[test]
    fn coefficient_forms() {
        let p = parse_poly("3/4*i*x + (1/2-5/3*i)y + 2z").unwrap();
        assert_eq!(p.coeff([1, 0, 0]), GaussianRational::new(rat(0), ratio(3, 4)));
        assert_eq!(p.coeff([0, 1, 0]), GaussianRational::new(ratio(1, 2), ratio(-5, 3)));
        assert_eq!(p.coeff([0, 0, 1]), GaussianRational::from_int(2));
        assert_eq!(parse_poly("2xy").unwrap(), parse_poly("2*x*y").unwrap());
        assert_eq!(parse_poly("x y").unwrap(), parse_poly("xy").unwrap());
    }

    #[test]
    fn parenthesized_powers_expand() {
        let p = parse_poly("(x+y)^2").unwrap();
        assert_eq!(p, parse_poly("x^2 + 2xy + y^2").unwrap());
    }

    #[test]
    fn malformed() {
        assert!(matches!(parse_poly("x^"), Err(PolyError::MalformedInput { .. })));
        assert!(matches!(parse_poly("x + * y"), Err(PolyError::MalformedInput { .. })));
        assert!(matches!(parse_poly("(x + y"), Err(PolyError::MalformedInput { .. })));
        assert!(matches!(parse_poly("w"), Err(PolyError::MalformedInput { .. })));
        assert!(matches!(parse_poly(""), Err(PolyError::MalformedInput { .. })));
        assert!(matches!(parse_poly("x/0"), Err(PolyError::MalformedInput { .. })));
    }

    #[test]
    fn zero_inputs() {
        let z = parse_poly("x*y - y*x").unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 2);
        assert_eq!(parse_nonzero_poly("x - x"), Err(PolyError::ZeroPolynomial));
        assert_eq!(parse_poly("0").unwrap().degree(), 0);
    }
}
