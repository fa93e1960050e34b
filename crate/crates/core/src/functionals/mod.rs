//! Bohr-type left-hand sides as rigorous enclosures.
//!
//! Every evaluator returns a [`ValueInterval`]: `lower` is the truncated value
//! and `upper` adds analytic tails. Sums over `|a_n|` use the coefficient bound
//! `1 - |a_0|^2`; point evaluations `|f(z)|`, `|f(z) - a_0|`, `|f'(z)|` use the
//! bound 1.

pub mod closed_form;
mod theorem;

pub use theorem::{
    assemble, evaluate, evaluate_at, holds, Assembly, Decider, PointMode, PointTerm, TheoremValue,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{rogosinski_split, sgn};
use crate::interval::ValueInterval;
use crate::schur::SchurFunction;
use crate::series::TaylorSeries;
use crate::sums;

/// Head of the refined sums: `|a_0|` or `|a_0|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Head {
    Modulus,
    Square,
}

impl Head {
    pub fn apply(self, a: f64) -> f64 {
        match self {
            Head::Modulus => a,
            Head::Square => a * a,
        }
    }
}

/// `sum_{n >= start} |a_n| r^n`.
pub fn bohr_sum(f: &SchurFunction, r: f64, start: usize) -> ValueInterval {
    sums::abs_sum(f, r, start)
}

/// `(1/(1+|a_0|) + r/(1-r)) sum_{n >= t+1} |a_n|^2 r^{2n}`.
pub fn refined_tail(f: &SchurFunction, r: f64, t: usize) -> ValueInterval {
    let weight = 1.0 / (1.0 + f.head_modulus()) + r / (1.0 - r);
    sums::square_sum(f, r, t + 1).scale(weight)
}

/// `head(|a_0|) + sum_{n>=1} |a_n| r^n + (1/(1+|a_0|) + r/(1-r)) sum_{n>=1} |a_n|^2 r^{2n}`.
pub fn refined_bohr(f: &SchurFunction, r: f64, head: Head) -> ValueInterval {
    ValueInterval::point(head.apply(f.head_modulus())) + bohr_sum(f, r, 1) + refined_tail(f, r, 0)
}

/// The `z`-independent part of the Rogosinski-type sum:
/// `sum_{n>=N} |a_n| r^n + sgn(t) sum_{n=1}^t |a_n|^2 r^N/(1-r) + refined_tail(t)`.
pub fn rogosinski_static(f: &SchurFunction, r: f64, n: usize) -> ValueInterval {
    let t = rogosinski_split(n);
    let middle = if t == 0 {
        ValueInterval::ZERO
    } else {
        sums::finite_square_sum(f, t).scale(sgn(t) * r.powi(n as i32) / (1.0 - r))
    };
    bohr_sum(f, r, n) + middle + refined_tail(f, r, t)
}

/// `|f(z)|^power` plus [`rogosinski_static`] at `r = |z|`.
pub fn rogosinski(f: &SchurFunction, z: Complex64, n: usize, power: u32) -> ValueInterval {
    let r = z.norm();
    PointEvaluator::new(f, false).value(z).powi(power) + rogosinski_static(f, r, n)
}

/// For `f = z^m g(z^p)` with base `g` (coefficients `b_n = a_{pn+m}`) and
/// `rho = r^p`: `r^m [ sum_n |b_n| rho^n + (1/(1+|b_0|) + rho/(1-rho)) sum_{n>=1} |b_n|^2 rho^{2n} ]`.
pub fn symmetric_refined(g: &SchurFunction, p: usize, m: usize, r: f64) -> ValueInterval {
    let rho = r.powi(p as i32);
    refined_bohr(g, rho, Head::Modulus).scale(r.powi(m as i32))
}

/// `|b_0|^2 + sum_{n>=1} |b_n| rho^n + (1/(1+|b_0|) + rho/(1-rho)) sum_{n>=1} |b_n|^2 rho^{2n}`,
/// the squared-head form for `m = 0`.
pub fn symmetric_refined_square(g: &SchurFunction, p: usize, r: f64) -> ValueInterval {
    refined_bohr(g, r.powi(p as i32), Head::Square)
}

/// Symmetric Bohr sum `sum_n |a_{pn+m}| r^{pn+m}` read from the base function.
pub fn symmetric_bohr(g: &SchurFunction, p: usize, m: usize, r: f64) -> ValueInterval {
    bohr_sum(g, r.powi(p as i32), 0).scale(r.powi(m as i32))
}

/// For `f = z^p g(z^p)` with `rho = r^p`:
/// `sum_{n>=1} |a_{pn}| r^{pn} + (1/(1+|a_p|) + rho/(1-rho)) sum_{n>=s} |a_{pn}|^2 r^{p(2n-1)}`,
/// `s = inner_start` (2 for the first form, 1 for the second).
pub fn cor2_functional(g: &SchurFunction, p: usize, r: f64, inner_start: usize) -> ValueInterval {
    let rho = r.powi(p as i32);
    let b0 = g.head_modulus();
    let weight = 1.0 / (1.0 + b0) + rho / (1.0 - rho);
    // a_{pn} = b_{n-1}, so the quadratic sum is rho^{-1} sum_{k >= s-1} |b_k|^2 rho^{2k+2}
    // = rho sum_{k >= s-1} |b_k|^2 rho^{2k}.
    let quad = sums::square_sum(g, rho, inner_start - 1).scale(rho);
    bohr_sum(g, rho, 0).scale(rho) + quad.scale(weight)
}

/// `S_r / pi = sum_{n>=1} n |a_n|^2 r^{2n}`.
pub fn area_sum(f: &SchurFunction, r: f64) -> ValueInterval {
    sums::area(f, r)
}

/// [`refined_bohr`] plus `lambda S_r/pi`.
pub fn area_refined(f: &SchurFunction, r: f64, lambda: f64, head: Head) -> ValueInterval {
    refined_bohr(f, r, head) + area_sum(f, r).scale(lambda)
}

/// Unrefined area form: `head(|a_0|) + sum_{n>=1} |a_n| r^n + lambda S_r/pi`.
pub fn area_classical(f: &SchurFunction, r: f64, lambda: f64, head: Head) -> ValueInterval {
    ValueInterval::point(head.apply(f.head_modulus())) + bohr_sum(f, r, 1) + area_sum(f, r).scale(lambda)
}

/// `base + |f(z) - a_0|^power`, where the base is the refined sum with head
/// `|a_0|` ([`Head::Modulus`]) or `|a_0|^2` ([`Head::Square`]).
pub fn distance_refined(f: &SchurFunction, z: Complex64, power: u32, head: Head) -> ValueInterval {
    refined_bohr(f, z.norm(), head) + PointEvaluator::new(f, false).distance(z).powi(power)
}

/// `|f(z)|^head_power + |f'(z)| r + sum_{n>=2} |a_n| r^n`, plus the refined
/// quadratic term when `include_quadratic`.
pub fn derivative_refined(
    f: &SchurFunction,
    z: Complex64,
    head_power: u32,
    include_quadratic: bool,
) -> ValueInterval {
    let r = z.norm();
    let pe = PointEvaluator::new(f, true);
    let mut v = pe.value(z).powi(head_power) + pe.slope(z).scale(r) + bohr_sum(f, r, 2);
    if include_quadratic {
        v = v + refined_tail(f, r, 0);
    }
    v
}

/// Point evaluations of `f` and `f'` with truncation tails for coefficient bound 1.
pub struct PointEvaluator<'a> {
    f: &'a SchurFunction,
    deriv: Option<TaylorSeries>,
}

impl<'a> PointEvaluator<'a> {
    pub fn new(f: &'a SchurFunction, with_derivative: bool) -> Self {
        Self {
            f,
            deriv: with_derivative.then(|| f.series().derivative()),
        }
    }

    /// `|f(z)|`.
    pub fn value(&self, z: Complex64) -> ValueInterval {
        let (lo, hi) = self.f.series().eval(z, 1.0).modulus_bounds();
        ValueInterval::new(lo, hi)
    }

    /// `|f(z) - a_0|`.
    pub fn distance(&self, z: Complex64) -> ValueInterval {
        let mut e = self.f.series().eval(z, 1.0);
        e.value -= self.f.a0();
        let (lo, hi) = e.modulus_bounds();
        ValueInterval::new(lo, hi)
    }

    /// `|f'(z)|`; the remainder is `sum_{n > K} n |z|^{n-1}`.
    pub fn slope(&self, z: Complex64) -> ValueInterval {
        let d = self
            .deriv
            .as_ref()
            .expect("evaluator built without the derivative");
        let m = d.eval(z, 0.0).value.norm();
        let tail = sums::derivative_tail(1.0, z.norm(), self.f.order());
        ValueInterval::new((m - tail).max(0.0), m + tail)
    }
}
