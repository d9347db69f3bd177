use std::fmt;

use num_traits::Zero;

use super::gaussian::GaussianRational;

/// Binary form `Σ c_k t₀^k t₁^(D−k)`, stored with `coeffs[k] = c_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: u32,
    coeffs: Vec<GaussianRational>,
}

impl BinaryForm {
    /// Panics unless `coeffs.len() == degree + 1`.
    pub fn new(degree: u32, coeffs: Vec<GaussianRational>) -> Self {
        assert_eq!(coeffs.len(), degree as usize + 1, "binary form length");
        Self { degree, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn evaluate(&self, t0: &GaussianRational, t1: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let term = &(&t0.pow(k as u32) * &t1.pow(self.degree - k as u32)) * c;
            acc += &term;
        }
        acc
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let j = self.degree as usize - k;
            let mono = match (k, j) {
                (0, 0) => String::new(),
                (k, 0) => pow_str("t0", k),
                (0, j) => pow_str("t1", j),
                (k, j) => format!("{}*{}", pow_str("t0", k), pow_str("t1", j)),
            };
            parts.push(if mono.is_empty() { c.to_string() } else { format!("{c}*{mono}") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn pow_str(v: &str, k: usize) -> String {
    if k == 1 {
        v.to_string()
    } else {
        format!("{v}^{k}")
    }
}
