//! Truncated integer power series.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `c_0 + c_1 t + … + c_N t^N`, exact through degree `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IntegerSeries {
    coeffs: Vec<i128>,
}

/// `C(e, m)` for any integer `e`.
fn general_binomial(e: i64, m: usize) -> i128 {
    let mut acc: i128 = 1;
    for i in 0..m as i128 {
        acc = acc * (e as i128 - i) / (i + 1);
    }
    acc
}

impl IntegerSeries {
    pub fn new(mut coeffs: Vec<i128>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, 0);
        IntegerSeries { coeffs }
    }

    pub fn one(truncation: usize) -> Self {
        Self::new(vec![1], truncation)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> i128 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// `(1 − a t^k)^e`, for any integer exponent.
    pub fn binomial_factor(a: i64, k: usize, e: i64, truncation: usize) -> Self {
        assert!(k >= 1);
        let mut coeffs = vec![0i128; truncation + 1];
        let mut power: i128 = 1;
        for m in 0..=truncation / k {
            coeffs[m * k] = general_binomial(e, m) * power;
            power *= -(a as i128);
        }
        IntegerSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        let mut coeffs = vec![0i128; n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        IntegerSeries { coeffs }
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 != 1 && c0 != -1 {
            return Err(Error::precondition(format!("series with constant term {c0} is not invertible over Z")));
        }
        let n = self.truncation();
        let mut inv = vec![0i128; n + 1];
        inv[0] = c0;
        for k in 1..=n {
            let s: i128 = (1..=k).map(|i| self.coeffs[i] * inv[k - i]).sum();
            inv[k] = -s * c0;
        }
        Ok(IntegerSeries { coeffs: inv })
    }

    /// `t ↦ −t`.
    pub fn negate_variable(&self) -> Self {
        IntegerSeries {
            coeffs: self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 0 { *c } else { -c }).collect(),
        }
    }
}

impl fmt::Display for IntegerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a == 1 => write!(f, "t")?,
                1 => write!(f, "{a}t")?,
                _ if a == 1 => write!(f, "t^{k}")?,
                _ => write!(f, "{a}t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.truncation() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let s = IntegerSeries::binomial_factor(2, 1, -1, 5);
        assert_eq!(s.coeffs(), &[1, 2, 4, 8, 16, 32]);
        let back = s.reciprocal().unwrap();
        assert_eq!(back.coeffs(), &[1, -2, 0, 0, 0, 0]);
    }

    #[test]
    fn negative_binomial() {
        // (1 - t)^-2 = Σ (k+1) t^k
        let s = IntegerSeries::binomial_factor(1, 1, -2, 4);
        assert_eq!(s.coeffs(), &[1, 2, 3, 4, 5]);
        let t2 = IntegerSeries::binomial_factor(1, 2, 3, 6);
        assert_eq!(t2.coeffs(), &[1, 0, -3, 0, 3, 0, -1]);
    }

    #[test]
    fn substitution_and_display() {
        let s = IntegerSeries::new(vec![1, 3, 2], 3);
        assert_eq!(s.negate_variable().coeffs(), &[1, -3, 2, 0]);
        assert_eq!(s.to_string(), "1 + 3t + 2t^2 + O(t^4)");
        assert!(IntegerSeries::new(vec![2, 1], 2).reciprocal().is_err());
    }
}
