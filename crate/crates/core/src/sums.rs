//! Coefficient sums of Schur-class functions with rigorous remainders.
//!
//! For a member of the class `|a_n| <= 1 - |a_0|^2` for every `n >= 1`, so
//! every infinite sum truncated at the series order `K` is closed off by a
//! geometric-type tail in that bound.

use crate::interval::ValueInterval;
use crate::schur::SchurFunction;

/// `sum_{n >= first} (1 - |a0|^2) r^n`.
pub fn linear_tail(a0: f64, r: f64, first: usize) -> f64 {
    (1.0 - a0 * a0) * r.powi(first as i32) / (1.0 - r)
}

/// `sum_{n >= first} (1 - |a0|^2)^2 r^{2n}`.
pub fn quadratic_tail(a0: f64, r: f64, first: usize) -> f64 {
    let b = 1.0 - a0 * a0;
    b * b * r.powi(2 * first as i32) / (1.0 - r * r)
}

/// `sum_{n >= first} n (1 - |a0|^2)^2 r^{2n}`.
pub fn area_tail(a0: f64, r: f64, first: usize) -> f64 {
    let b = 1.0 - a0 * a0;
    let x = r * r;
    let k = first as f64;
    b * b * x.powi(first as i32) * (k - (k - 1.0) * x) / ((1.0 - x) * (1.0 - x))
}

/// `sum_{n > order} n M r^{n-1}`: remainder of the derivative series at `|z| = r`.
pub fn derivative_tail(bound: f64, r: f64, order: usize) -> f64 {
    let k = order as f64;
    bound * r.powi(order as i32) * ((k + 1.0) - k * r) / ((1.0 - r) * (1.0 - r))
}

/// `sum_{n >= start} |a_n| r^n`.
pub fn abs_sum(f: &SchurFunction, r: f64, start: usize) -> ValueInterval {
    let order = f.order();
    let mut total = 0.0;
    if start <= order {
        let mut pw = r.powi(start as i32);
        for n in start..=order {
            total += f.coeff_abs(n) * pw;
            pw *= r;
        }
    }
    ValueInterval::with_tail(total, linear_tail(f.head_modulus(), r, start.max(order + 1)))
}

/// `sum_{n >= start} |a_n|^2 r^{2n}`.
pub fn square_sum(f: &SchurFunction, r: f64, start: usize) -> ValueInterval {
    let order = f.order();
    let x = r * r;
    let mut total = 0.0;
    if start <= order {
        let mut pw = x.powi(start as i32);
        for n in start..=order {
            let c = f.coeff_abs(n);
            total += c * c * pw;
            pw *= x;
        }
    }
    ValueInterval::with_tail(total, quadratic_tail(f.head_modulus(), r, start.max(order + 1)))
}

/// `sum_{n=1}^{last} |a_n|^2`, a finite sum; indices past the order are bounded
/// by `(1 - |a0|^2)^2` each.
pub fn finite_square_sum(f: &SchurFunction, last: usize) -> ValueInterval {
    let order = f.order();
    let total: f64 = (1..=last.min(order)).map(|n| f.coeff_abs(n).powi(2)).sum();
    let missing = last.saturating_sub(order) as f64;
    let b = 1.0 - f.head_modulus().powi(2);
    ValueInterval::with_tail(total, missing * b * b)
}

/// `sum_{n >= 1} n |a_n|^2 r^{2n}`, the normalized area `S_r / pi`.
pub fn area(f: &SchurFunction, r: f64) -> ValueInterval {
    let order = f.order();
    let x = r * r;
    let mut total = 0.0;
    let mut pw = x;
    for n in 1..=order {
        let c = f.coeff_abs(n);
        total += n as f64 * c * c * pw;
        pw *= x;
    }
    ValueInterval::with_tail(total, area_tail(f.head_modulus(), r, order + 1))
}

/// `sum_{n >= 1} n |a_n| r^{n-1}`, the majorant of `|f'|` on `|z| = r`.
pub fn derivative_majorant(f: &SchurFunction, r: f64) -> ValueInterval {
    let order = f.order();
    let mut total = 0.0;
    let mut pw = 1.0;
    for n in 1..=order {
        total += n as f64 * f.coeff_abs(n) * pw;
        pw *= r;
    }
    let b = 1.0 - f.head_modulus().powi(2);
    ValueInterval::with_tail(total, derivative_tail(b, r, order))
}
