//! Coefficient and growth inequalities for the Schur class, stated as
//! checkable right-hand sides.
//!
//! Each `*_check` evaluates both sides on a concrete function, keeping the
//! truncation remainder on the side where it hurts, and reports the margin
//! `rhs.lower - lhs.upper`. The sums here are written out directly rather
//! than through [`crate::functionals`], so the two code paths can be compared.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::interval::ValueInterval;
use crate::schur::SchurFunction;
use crate::sums;

/// Tolerance below which a negative margin is still counted as holding.
pub const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lhs: ValueInterval,
    pub rhs: ValueInterval,
    pub margin: f64,
    pub holds: bool,
}

impl LemmaReport {
    pub fn new(lhs: ValueInterval, rhs: ValueInterval) -> Self {
        let margin = rhs.lower - lhs.upper;
        Self {
            lhs,
            rhs,
            margin,
            holds: margin >= -SLACK,
        }
    }
}

/// `sgn(t)` on nonnegative integers: 1 for `t >= 1`, 0 for `t = 0`.
pub fn sgn(t: usize) -> f64 {
    if t == 0 {
        0.0
    } else {
        1.0
    }
}

/// Split index `t = floor((N - 1) / 2)` used by the Rogosinski-type sums.
pub fn rogosinski_split(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(domain(format!("radius r = {r} must lie in [0, 1)")));
    }
    Ok(())
}

/// Upper bound for `sum_{n>=1} |a_n| r^n` given `|a_0| = a`.
pub fn lemma1_rhs(a: f64, r: f64) -> f64 {
    if a >= r {
        r * (1.0 - a * a) / (1.0 - r * a)
    } else {
        r * (1.0 - a * a).sqrt() / (1.0 - r * r).sqrt()
    }
}

pub fn lemma1_check(f: &SchurFunction, r: f64) -> Result<LemmaReport> {
    check_radius(r)?;
    let lhs = linear_sum(f, r, 1);
    Ok(LemmaReport::new(
        lhs,
        ValueInterval::point(lemma1_rhs(f.head_modulus(), r)),
    ))
}

/// Upper bound for `sum_{n>=1} n |a_n|^2 r^{2n}`, asserted for `r <= 1/sqrt(2)`.
pub fn lemma2_rhs(a: f64, r: f64) -> Result<f64> {
    if !(0.0..=FRAC_1_SQRT_2).contains(&r) {
        return Err(domain(format!("r = {r} outside [0, 1/sqrt(2)]")));
    }
    let b = 1.0 - a * a;
    let d = 1.0 - a * a * r * r;
    Ok(r * r * b * b / (d * d))
}

pub fn lemma2_check(f: &SchurFunction, r: f64) -> Result<LemmaReport> {
    let rhs = lemma2_rhs(f.head_modulus(), r)?;
    Ok(LemmaReport::new(sums::area(f, r), ValueInterval::point(rhs)))
}

/// Coefficient inequalities at index `n`:
/// `|a_{2n+1}| <= 1 - sum_{k<=n} |a_k|^2` and, for `n >= 1`,
/// `|a_{2n}| <= 1 - sum_{k<n} |a_k|^2 - |a_n|^2 / (1 + |a_0|)`.
pub fn lemma3_check(f: &SchurFunction, n: usize) -> Result<(LemmaReport, Option<LemmaReport>)> {
    if 2 * n + 1 > f.order() {
        return Err(domain(format!(
            "index 2n + 1 = {} exceeds the series order {}",
            2 * n + 1,
            f.order()
        )));
    }
    let sq = |k: usize| f.coeff_abs(k).powi(2);
    let head: f64 = (0..=n).map(sq).sum();
    let odd = LemmaReport::new(
        ValueInterval::point(f.coeff_abs(2 * n + 1)),
        ValueInterval::point(1.0 - head),
    );
    let even = (n >= 1).then(|| {
        let rhs = 1.0 - (head - sq(n)) - sq(n) / (1.0 + f.head_modulus());
        LemmaReport::new(
            ValueInterval::point(f.coeff_abs(2 * n)),
            ValueInterval::point(rhs),
        )
    });
    Ok((odd, even))
}

/// Right-hand side of the Rogosinski-type sum bound.
pub fn lemma4_rhs(a: f64, r: f64, n: usize) -> f64 {
    (1.0 - a * a) * r.powi(n as i32) / (1.0 - r)
}

/// `sum_{k>=N} |a_k| r^k + sgn(t) sum_{k=1}^t |a_k|^2 r^N/(1-r)
///  + (1/(1+|a_0|) + r/(1-r)) sum_{k>=t+1} |a_k|^2 r^{2k}`
/// against [`lemma4_rhs`].
pub fn lemma4_sides(f: &SchurFunction, r: f64, n: usize) -> Result<LemmaReport> {
    check_radius(r)?;
    if n == 0 {
        return Err(domain("N must be at least 1"));
    }
    let a0 = f.head_modulus();
    let order = f.order();
    let t = rogosinski_split(n);
    let b = 1.0 - a0 * a0;

    let mut first = 0.0;
    let mut middle = 0.0;
    let mut last = 0.0;
    for k in 1..=order {
        let c = f.coeff_abs(k);
        if k >= n {
            first += c * r.powi(k as i32);
        }
        if k <= t {
            middle += c * c;
        } else {
            last += c * c * r.powi(2 * k as i32);
        }
    }
    let middle_tail = t.saturating_sub(order) as f64 * b * b;
    let weight = 1.0 / (1.0 + a0) + r / (1.0 - r);
    let lhs = ValueInterval::with_tail(first, sums::linear_tail(a0, r, n.max(order + 1)))
        + ValueInterval::with_tail(middle, middle_tail).scale(sgn(t) * r.powi(n as i32) / (1.0 - r))
        + ValueInterval::with_tail(last, sums::quadratic_tail(a0, r, (t + 1).max(order + 1))).scale(weight);
    Ok(LemmaReport::new(lhs, ValueInterval::point(lemma4_rhs(a0, r, n))))
}

/// Schwarz-Pick bound `|f(z)| <= (r + |a_0|)/(1 + r |a_0|)` on `|z| = r`.
pub fn schwarz_pick_value(a: f64, r: f64) -> f64 {
    (r + a) / (1.0 + r * a)
}

/// Schwarz-Pick bound `|f'(z)| <= (1 - |f(z)|^2)/(1 - |z|^2)`.
pub fn schwarz_pick_derivative(w: f64, r: f64) -> f64 {
    (1.0 - w * w) / (1.0 - r * r)
}

/// Both Schwarz-Pick bounds on an equally spaced grid of `|z| = r`; the
/// report carries the worst of the two margins.
pub fn schwarz_pick_check(f: &SchurFunction, r: f64, points: usize) -> Result<LemmaReport> {
    check_radius(r)?;
    let a0 = f.head_modulus();
    let order = f.order();
    let deriv = f.series().derivative();
    let value_bound = schwarz_pick_value(a0, r);
    let mut worst: Option<LemmaReport> = None;
    for k in 0..points {
        let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / points as f64);
        let (lo, hi) = f.series().eval(z, 1.0).modulus_bounds();
        let value = LemmaReport::new(ValueInterval::new(lo, hi), ValueInterval::point(value_bound));
        let d = deriv.eval(z, 0.0).value.norm();
        let dtail = sums::derivative_tail(1.0, r, order);
        let rhs = schwarz_pick_derivative(hi.min(1.0), r);
        let slope = LemmaReport::new(ValueInterval::with_tail(d, dtail), ValueInterval::point(rhs));
        for rep in [value, slope] {
            if worst.is_none_or(|w| rep.margin < w.margin) {
                worst = Some(rep);
            }
        }
    }
    worst.ok_or_else(|| domain("empty angle grid"))
}

fn linear_sum(f: &SchurFunction, r: f64, start: usize) -> ValueInterval {
    let order = f.order();
    let total: f64 = (start..=order).map(|k| f.coeff_abs(k) * r.powi(k as i32)).sum();
    ValueInterval::with_tail(
        total,
        sums::linear_tail(f.head_modulus(), r, start.max(order + 1)),
    )
}
