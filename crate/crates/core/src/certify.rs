//! Sharpness witnesses: concrete extremal functions whose left-hand side
//! exceeds 1 just past the claimed radius (or constant).
//!
//! Witness values come from the closed forms in
//! [`crate::functionals::closed_form`] at real `z = r`; the truncated-series
//! pipeline is evaluated alongside as an independent cross-check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, BohrError, Result};
use crate::functionals::closed_form::{
    default_lambda, extremal_base, extremal_recipe, extremal_value, extremal_value_with_lambda, thm5_at_third,
};
use crate::functionals::{area_refined, evaluate_at, Head};
use crate::interval::ValueInterval;
use crate::radii::{extremal_a_for_thm_d, radius, RadiusQuery, Theorem, DISTANCE_WINDOW_END};
use crate::schur::SchurFunction;
use crate::series::DEFAULT_ORDER;

pub const DEFAULT_A_GRID: [f64; 3] = [0.9, 0.99, 0.999];
pub const DEFAULT_EPS_GRID: [f64; 2] = [1e-2, 1e-3];
/// Relative inflation of an area weight when certifying it.
pub const DEFAULT_INFLATION: f64 = 0.01;
/// A witness must exceed 1 by at least this much.
pub const WITNESS_MARGIN: f64 = 1e-12;
/// Rounding allowance put around a closed-form value.
const ROUNDING: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateKind {
    /// The radius cannot be enlarged.
    Radius,
    /// The area weight cannot be enlarged.
    Constant { nominal: f64, inflated: f64 },
}

/// One point of the `(a, eps)` scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub a: f64,
    /// Relative excess over the radius, or over the weight for constants.
    pub eps: f64,
    /// The claimed radius at `a`.
    pub radius: f64,
    pub r: f64,
    pub lambda: Option<f64>,
    /// Closed-form value with a rounding allowance.
    pub value: ValueInterval,
    /// The same functional from the truncated series at `z = r`.
    pub series_value: ValueInterval,
    pub recipe: String,
}

impl ScanPoint {
    pub fn is_witness(&self) -> bool {
        self.value.lower > 1.0 + WITNESS_MARGIN && self.r >= self.radius
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub a_grid: Vec<f64>,
    pub eps_grid: Vec<f64>,
    pub order: usize,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessCertificate {
    pub theorem: RadiusQuery,
    #[serde(flatten)]
    pub kind: CertificateKind,
    pub grid: ScanGrid,
    pub witnesses: Vec<ScanPoint>,
    pub scanned: Vec<ScanPoint>,
    pub valid: bool,
}

impl SharpnessCertificate {
    fn finish(theorem: RadiusQuery, kind: CertificateKind, grid: ScanGrid, scanned: Vec<ScanPoint>) -> Self {
        let witnesses: Vec<_> = scanned.iter().filter(|s| s.is_witness()).cloned().collect();
        let valid = !witnesses.is_empty();
        Self {
            theorem,
            kind,
            grid,
            witnesses,
            scanned,
            valid,
        }
    }

    /// `Ok(self)` when at least one witness exists.
    pub fn require(self) -> Result<Self> {
        if self.valid {
            return Ok(self);
        }
        let best = self
            .scanned
            .iter()
            .map(|s| s.value.lower - 1.0)
            .fold(f64::NEG_INFINITY, f64::max);
        let values: Vec<String> = self
            .scanned
            .iter()
            .map(|s| {
                format!(
                    "(a={}, eps={}, r={:.6}) -> {:.3e}",
                    s.a,
                    s.eps,
                    s.r,
                    s.value.lower - 1.0
                )
            })
            .collect();
        Err(BohrError::NoWitnessFound {
            theorem: self.theorem.label(),
            detail: format!("largest excess {best:.3e} over [{}]", values.join(", ")),
        })
    }
}

/// End of the range in which the functional of `t` is known to fail.
fn failure_window_end(t: Theorem) -> f64 {
    match t {
        Theorem::Thm6G | Theorem::Thm6H => DISTANCE_WINDOW_END,
        _ => 1.0,
    }
}

fn closed_interval(v: f64) -> ValueInterval {
    ValueInterval::new(v - ROUNDING, v + ROUNDING)
}

fn series_check(q: &RadiusQuery, a: f64, r: f64, order: usize) -> Result<ValueInterval> {
    let f: SchurFunction = extremal_base(q, a).build(order)?;
    Ok(evaluate_at(q, &f, Complex64::new(r, 0.0)))
}

/// Scans the extremal family of `q` at `r = (1 + eps) radius(a)` without
/// requiring a witness. The head modulus in `q` is ignored; each `a` of the
/// grid supplies its own.
pub fn scan_sharpness(q: &RadiusQuery, a_grid: &[f64], eps_grid: &[f64]) -> Result<SharpnessCertificate> {
    if a_grid.is_empty() || eps_grid.is_empty() {
        return Err(domain("sharpness grids must be nonempty"));
    }
    let template = RadiusQuery::template(q.theorem, crate::radii::Params { a: None, ..q.params })?;
    let mut a_values = a_grid.to_vec();
    if q.theorem == Theorem::ThmD {
        // The symmetric Bohr radius is attained at one specific a.
        if let Ok(a) = extremal_a_for_thm_d(template.p(), template.m()) {
            a_values.push(a);
        }
    }
    let end = failure_window_end(q.theorem);
    let mut scanned = Vec::new();
    for &a in &a_values {
        if !(0.0..1.0).contains(&a) {
            return Err(domain(format!("grid value a = {a} outside [0, 1)")));
        }
        let qa = template.with_a(a);
        let big_r = radius(&qa)?;
        for &eps in eps_grid {
            if eps <= 0.0 {
                return Err(domain(format!("eps = {eps} must be positive")));
            }
            let mut r = (1.0 + eps) * big_r;
            if r >= end {
                r = 0.5 * (big_r + end);
            }
            scanned.push(ScanPoint {
                a,
                eps,
                radius: big_r,
                r,
                lambda: default_lambda(q.theorem),
                value: closed_interval(extremal_value(&qa, a, r)),
                series_value: series_check(&qa, a, r, DEFAULT_ORDER)?,
                recipe: extremal_recipe(&qa, a).to_string(),
            });
        }
    }
    let grid = ScanGrid {
        a_grid: a_values,
        eps_grid: eps_grid.to_vec(),
        order: DEFAULT_ORDER,
        rule: format!("r = (1 + eps) radius(a), capped below {end}; z = r"),
    };
    Ok(SharpnessCertificate::finish(
        template,
        CertificateKind::Radius,
        grid,
        scanned,
    ))
}

/// Certificate that the radius of `q` cannot be improved.
pub fn certify_sharpness(q: &RadiusQuery, a_grid: &[f64], eps_grid: &[f64]) -> Result<SharpnessCertificate> {
    scan_sharpness(q, a_grid, eps_grid)?.require()
}

/// Scans the area-weight variants with `lambda = (1 + eps) lambda_0` at the
/// claimed radius.
pub fn scan_constant(theorem: Theorem, a_grid: &[f64], eps_grid: &[f64]) -> Result<SharpnessCertificate> {
    let nominal =
        default_lambda(theorem).ok_or_else(|| domain(format!("{theorem} has no area weight to certify")))?;
    if a_grid.is_empty() || eps_grid.is_empty() {
        return Err(domain("sharpness grids must be nonempty"));
    }
    let template = RadiusQuery::simple(theorem);
    let mut scanned = Vec::new();
    for &a in a_grid {
        if !(0.0..1.0).contains(&a) {
            return Err(domain(format!("grid value a = {a} outside [0, 1)")));
        }
        let qa = template.with_a(a);
        let r = radius(&qa)?;
        for &eps in eps_grid {
            let lambda = nominal * (1.0 + eps);
            let f = extremal_base(&qa, a).build(DEFAULT_ORDER)?;
            let head = if matches!(theorem, Theorem::ThmEFirst | Theorem::Thm4First) {
                Head::Modulus
            } else {
                Head::Square
            };
            let series_value = match theorem {
                Theorem::Thm4First | Theorem::Thm4Second => area_refined(&f, r, lambda, head),
                _ => crate::functionals::area_classical(&f, r, lambda, head),
            };
            scanned.push(ScanPoint {
                a,
                eps,
                radius: r,
                r,
                lambda: Some(lambda),
                value: closed_interval(extremal_value_with_lambda(&qa, a, r, lambda)),
                series_value,
                recipe: extremal_recipe(&qa, a).to_string(),
            });
        }
    }
    let inflated = nominal * (1.0 + eps_grid[0]);
    let grid = ScanGrid {
        a_grid: a_grid.to_vec(),
        eps_grid: eps_grid.to_vec(),
        order: DEFAULT_ORDER,
        rule: format!("lambda = (1 + eps) {nominal}, r = radius(a); z = r"),
    };
    Ok(SharpnessCertificate::finish(
        template,
        CertificateKind::Constant { nominal, inflated },
        grid,
        scanned,
    ))
}

/// Certificate that the area weight of `theorem` cannot be enlarged.
pub fn certify_constant(theorem: Theorem, a_grid: &[f64], eps_grid: &[f64]) -> Result<SharpnessCertificate> {
    scan_constant(theorem, a_grid, eps_grid)?.require()
}

/// Smallest head modulus `a_r` beyond which the distance functional of
/// `theorem` exceeds 1 at radius `r` on `phi_a`.
pub fn threshold_a(theorem: Theorem, r: f64) -> Result<f64> {
    let (lo, a) = match theorem {
        Theorem::Thm6G => (
            0.2,
            (3.0 * (1.0 - r) - (5.0 * r * r - 6.0 * r + 5.0).sqrt()) / (2.0 * r),
        ),
        Theorem::Thm6H => (1.0 / 3.0, (r * r - 3.0 * r + 1.0) / (r - 2.0 * r * r)),
        other => return Err(domain(format!("{other} has no head threshold"))),
    };
    if !(r > lo && r < DISTANCE_WINDOW_END) {
        return Err(domain(format!("r = {r} outside ({lo}, {DISTANCE_WINDOW_END})")));
    }
    if !(0.0..1.0).contains(&a) {
        return Err(domain(format!("threshold a = {a} outside (0, 1)")));
    }
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemarkReport {
    pub c: f64,
    pub r: f64,
    /// Refined area functional with weight `c` at `f(z) = z`.
    pub value: ValueInterval,
    /// `1 + c/4`.
    pub expected: f64,
    pub exceeds_one: bool,
}

/// The identity map at `r = 1/2` violates the squared-head refined area
/// inequality for every positive weight `c`.
pub fn remark_thm4_counterexample(c: f64) -> Result<RemarkReport> {
    if c.is_nan() || c <= 0.0 {
        return Err(domain(format!("c = {c} must be positive")));
    }
    let r = 0.5;
    let value = area_refined(&SchurFunction::identity(DEFAULT_ORDER), r, c, Head::Square);
    Ok(RemarkReport {
        c,
        r,
        value,
        expected: 1.0 + c / 4.0,
        exceeds_one: value.lower > 1.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPoint {
    pub a: f64,
    pub value: f64,
    pub exceeds_one: bool,
}

/// The squared-distance functional on `phi_a` at `r = 1/3` along `a_grid`.
pub fn thm5_threshold_scan(a_grid: &[f64]) -> Vec<ThresholdPoint> {
    a_grid
        .iter()
        .map(|&a| {
            let value = thm5_at_third(a);
            ThresholdPoint {
                a,
                value,
                exceeds_one: value > 1.0,
            }
        })
        .collect()
}
