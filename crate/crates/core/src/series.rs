//! Truncated power series over complex coefficients.
//!
//! A [`TaylorSeries`] of order `K` stores `c_0..=c_K`. Binary operations
//! truncate eagerly to the smaller of the two orders, so a product never
//! grows past its inputs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{BohrError, Result};

/// Truncation order used when the caller does not pick one.
pub const DEFAULT_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
}

/// Result of a point evaluation: the truncated polynomial value and a bound
/// on the modulus of the discarded remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail: f64,
}

impl Evaluation {
    /// Lower and upper bounds on the modulus of the full series value.
    pub fn modulus_bounds(&self) -> (f64, f64) {
        let m = self.value.norm();
        ((m - self.tail).max(0.0), m + self.tail)
    }
}

impl TaylorSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// An empty vector is treated as the zero series of order 0.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `z^k` truncated at `order` (zero if `k > order`).
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = Complex64::new(1.0, 0.0);
        }
        s
    }

    /// `sum_{n=0}^{order} (a z)^n`.
    pub fn geometric(a: Complex64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut pw = Complex64::new(1.0, 0.0);
        for _ in 0..=order {
            coeffs.push(pw);
            pw *= a;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `c_n`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        Self {
            coeffs: (0..=k).map(|n| self.coeffs[n] + other.coeffs[n]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        Self {
            coeffs: (0..=k).map(|n| self.coeffs[n] - other.coeffs[n]).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// Multiplication by `z`, keeping the order fixed (the top coefficient drops).
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let mut out = vec![Complex64::new(0.0, 0.0); k + 1];
        for (i, &a) in self.coeffs[..=k].iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (o, &b) in out[i..].iter_mut().zip(&other.coeffs[..=k - i]) {
                *o += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse up to the same order.
    pub fn reciprocal(&self) -> Result<Self> {
        let one = Self::constant(Complex64::new(1.0, 0.0), self.order());
        one.div(self)
    }

    /// Quotient `self / other` truncated to the smaller order.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let c0 = other.coeffs[0];
        if c0.norm() == 0.0 {
            return Err(BohrError::ZeroLeadingCoefficient);
        }
        let k = self.order().min(other.order());
        let inv0 = c0.inv();
        // Only the nonzero support of the divisor enters the recurrence.
        let support: Vec<(usize, Complex64)> = other.coeffs[1..=k]
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
            .map(|(j, &c)| (j + 1, c))
            .collect();
        let mut q = Vec::with_capacity(k + 1);
        for n in 0..=k {
            let mut acc = self.coeffs[n];
            for &(j, c) in &support {
                if j > n {
                    break;
                }
                acc -= c * q[n - j];
            }
            q.push(acc * inv0);
        }
        Ok(Self { coeffs: q })
    }

    /// `z^m * s(z^p)`, truncated to the original order: `c_n` lands at index
    /// `p n + m` and every other index is zero.
    pub fn symmetrize(&self, p: usize, m: usize) -> Result<Self> {
        if p == 0 || m > p {
            return Err(crate::error::domain(format!(
                "symmetrize needs p >= 1 and 0 <= m <= p, got p={p}, m={m}"
            )));
        }
        let k = self.order();
        let mut out = Self::zero(k);
        for (n, &c) in self.coeffs.iter().enumerate() {
            let idx = p * n + m;
            if idx > k {
                break;
            }
            out.coeffs[idx] = c;
        }
        Ok(out)
    }

    /// Term-wise derivative, of order `K - 1` (order 0 for a constant).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(n, &c)| c * (n + 1) as f64)
                .collect(),
        }
    }

    /// Horner evaluation of the truncated polynomial. The attached tail is
    /// `M |z|^{K+1} / (1 - |z|)`, valid whenever every dropped coefficient is
    /// bounded by `coeff_bound` in modulus; pass `0.0` for a genuine polynomial.
    pub fn eval(&self, z: Complex64, coeff_bound: f64) -> Evaluation {
        let value = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let rho = z.norm();
        let tail = if coeff_bound == 0.0 {
            0.0
        } else if rho >= 1.0 {
            f64::INFINITY
        } else {
            coeff_bound * rho.powi(self.order() as i32 + 1) / (1.0 - rho)
        };
        Evaluation { value, tail }
    }

    /// Largest coefficient modulus difference against another series over the
    /// common range.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
