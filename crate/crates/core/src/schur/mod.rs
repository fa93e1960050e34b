//! Members of the Schur class: analytic self-maps of the unit disk.
//!
//! Every [`SchurFunction`] is produced from a [`Recipe`] whose construction
//! guarantees membership (disk automorphisms, finite Blaschke products, the
//! Schur recursion and convex combinations of those). Nothing here checks
//! membership after the fact; the boundary-grid helper exists for tests.

mod recipe;
mod sample;

pub use recipe::{Recipe, Sign};
pub use sample::{sample, Profile, Sampler};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::series::TaylorSeries;

/// Largest Blaschke degree accepted by [`blaschke`].
pub const MAX_BLASCHKE_DEGREE: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct SchurFunction {
    series: TaylorSeries,
    recipe: Recipe,
    a0: Complex64,
}

impl SchurFunction {
    fn from_parts(series: TaylorSeries, recipe: Recipe) -> Result<Self> {
        let a0 = series.coeff(0);
        if a0.norm() >= 1.0 {
            return Err(domain("unimodular constants are excluded from the class"));
        }
        Ok(Self { series, recipe, a0 })
    }

    pub fn series(&self) -> &TaylorSeries {
        &self.series
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    pub fn a0(&self) -> Complex64 {
        self.a0
    }

    /// `|a_0|`, the quantity every radius formula depends on.
    pub fn head_modulus(&self) -> f64 {
        self.a0.norm()
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn coeff_abs(&self, n: usize) -> f64 {
        self.series.coeff(n).norm()
    }

    /// The identity map `f(z) = z`.
    pub fn identity(order: usize) -> Self {
        moebius(0.0, Sign::Plus, order).expect("a = 0 is in range")
    }

    /// Largest `|f(rho e^{i theta})|` over an equally spaced angle grid,
    /// together with the truncation tail for coefficient bound 1.
    pub fn boundary_max(&self, rho: f64, points: usize) -> (f64, f64) {
        let mut max = 0.0f64;
        let mut tail = 0.0;
        for k in 0..points {
            let z = Complex64::from_polar(rho, 2.0 * PI * k as f64 / points as f64);
            let e = self.series.eval(z, 1.0);
            max = max.max(e.value.norm());
            tail = e.tail;
        }
        (max, tail)
    }
}

fn check_unit_real(a: f64) -> Result<()> {
    if !(0.0..1.0).contains(&a) {
        return Err(domain(format!("parameter a = {a} must lie in [0, 1)")));
    }
    Ok(())
}

/// `psi_a = (a + z)/(1 + a z)` for [`Sign::Plus`], `phi_a = (a - z)/(1 - a z)`
/// for [`Sign::Minus`]. Coefficients come from the closed forms
/// `a, (1 - a^2)(-a)^{n-1}` and `a, -(1 - a^2) a^{n-1}`.
pub fn moebius(a: f64, sign: Sign, order: usize) -> Result<SchurFunction> {
    check_unit_real(a)?;
    let series = moebius_coeffs(a, sign, order);
    SchurFunction::from_parts(series, Recipe::Moebius { a, sign })
}

fn moebius_coeffs(a: f64, sign: Sign, order: usize) -> TaylorSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(a);
    let ratio = match sign {
        Sign::Plus => -a,
        Sign::Minus => a,
    };
    let lead = match sign {
        Sign::Plus => 1.0 - a * a,
        Sign::Minus => -(1.0 - a * a),
    };
    let mut pw = 1.0;
    for _ in 1..=order {
        coeffs.push(lead * pw);
        pw *= ratio;
    }
    TaylorSeries::from_real(&coeffs)
}

/// The symmetrized extremal `z^m (a - z^p)/(1 - a z^p)` for [`Sign::Minus`]
/// and its negative `z^m (z^p - a)/(1 - a z^p)` for [`Sign::Plus`].
pub fn symmetric_extremal(a: f64, p: usize, m: usize, sign: Sign, order: usize) -> Result<SchurFunction> {
    check_unit_real(a)?;
    if p == 0 || m > p {
        return Err(domain(format!("need p >= 1 and 0 <= m <= p, got p={p}, m={m}")));
    }
    let base = moebius_coeffs(a, Sign::Minus, order);
    let mut series = base.symmetrize(p, m)?;
    if sign == Sign::Plus {
        series = series.scale(Complex64::new(-1.0, 0.0));
    }
    SchurFunction::from_parts(series, Recipe::SymmetricExtremal { a, p, m, sign })
}

/// Finite Blaschke product `e^{i phase} prod (alpha_k - z)/(1 - conj(alpha_k) z)`.
pub fn blaschke(zeros: &[Complex64], phase: f64, order: usize) -> Result<SchurFunction> {
    if zeros.is_empty() {
        return Err(domain(
            "a Blaschke product without zeros is a unimodular constant",
        ));
    }
    if zeros.len() > MAX_BLASCHKE_DEGREE {
        return Err(domain(format!(
            "Blaschke degree {} exceeds {MAX_BLASCHKE_DEGREE}",
            zeros.len()
        )));
    }
    if let Some(bad) = zeros.iter().find(|z| z.norm() >= 1.0) {
        return Err(domain(format!("Blaschke zero {bad} is not inside the unit disk")));
    }
    let mut acc = TaylorSeries::constant(Complex64::from_polar(1.0, phase), order);
    for &alpha in zeros {
        let num = linear(alpha, Complex64::new(-1.0, 0.0), order);
        let den = linear(Complex64::new(1.0, 0.0), -alpha.conj(), order);
        acc = num.mul(&acc).div(&den)?;
    }
    SchurFunction::from_parts(
        acc,
        Recipe::Blaschke {
            zeros: zeros.to_vec(),
            phase,
        },
    )
}

fn linear(c0: Complex64, c1: Complex64, order: usize) -> TaylorSeries {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
    coeffs[0] = c0;
    if order >= 1 {
        coeffs[1] = c1;
    }
    TaylorSeries::new(coeffs)
}

/// Inverts the Schur algorithm: `f_d = gamma_d` and
/// `f_j = (gamma_j + z f_{j+1}) / (1 + conj(gamma_j) z f_{j+1})`.
pub fn from_schur_params(params: &[Complex64], order: usize) -> Result<SchurFunction> {
    let (last, rest) = params
        .split_last()
        .ok_or_else(|| domain("at least one Schur parameter is required"))?;
    if let Some(bad) = params.iter().find(|g| g.norm() >= 1.0) {
        return Err(domain(format!(
            "Schur parameter {bad} is not inside the unit disk"
        )));
    }
    let mut f = TaylorSeries::constant(*last, order);
    for &gamma in rest.iter().rev() {
        let w = f.shift();
        let num = w.add(&TaylorSeries::constant(gamma, order));
        let den = w
            .scale(gamma.conj())
            .add(&TaylorSeries::constant(Complex64::new(1.0, 0.0), order));
        f = num.div(&den)?;
    }
    SchurFunction::from_parts(
        f,
        Recipe::SchurParams {
            params: params.to_vec(),
        },
    )
}

/// Convex combination `sum lambda_i f_i`; weights must be nonnegative and sum to 1.
pub fn convex_combo(weights: &[f64], parts: &[Recipe], order: usize) -> Result<SchurFunction> {
    if weights.is_empty() || weights.len() != parts.len() {
        return Err(domain("convex combination needs one weight per part"));
    }
    if weights.iter().any(|&w| w.is_nan() || w < 0.0) {
        return Err(domain("convex weights must be nonnegative"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(domain(format!("convex weights sum to {total}, not 1")));
    }
    let mut acc = TaylorSeries::zero(order);
    for (&w, part) in weights.iter().zip(parts) {
        let f = part.build(order)?;
        acc = acc.add(&f.series.scale(Complex64::new(w, 0.0)));
    }
    SchurFunction::from_parts(
        acc,
        Recipe::ConvexCombo {
            weights: weights.to_vec(),
            parts: parts.to_vec(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const K: usize = 64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn moebius_coefficients() {
        let f = moebius(0.0, Sign::Minus, K).unwrap();
        assert_eq!(f.series().coeff(0), c(0.0, 0.0));
        assert_eq!(f.series().coeff(1), c(-1.0, 0.0));
        assert!((2..=K).all(|n| f.series().coeff(n) == c(0.0, 0.0)));

        let f = moebius(0.5, Sign::Minus, K).unwrap();
        assert_eq!(f.series().coeff(0), c(0.5, 0.0));
        assert_eq!(f.series().coeff(1), c(-0.75, 0.0));
        assert_eq!(f.series().coeff(2), c(-0.375, 0.0));

        for a in [0.0, 0.3, 0.9] {
            let f = moebius(a, Sign::Plus, K).unwrap();
            assert!((f.coeff_abs(1) - (1.0 - a * a)).abs() < 1e-15);
        }

        assert!(moebius(1.0, Sign::Plus, K).is_err());
        assert!(moebius(-0.1, Sign::Plus, K).is_err());
    }

    #[test]
    fn symmetric_extremal_support() {
        let a = 0.5;
        let s = symmetric_extremal(a, 1, 0, Sign::Minus, K).unwrap();
        let m = moebius(a, Sign::Minus, K).unwrap();
        assert_eq!(s.series(), m.series());

        let s = symmetric_extremal(0.5, 2, 1, Sign::Minus, K).unwrap();
        assert_eq!(s.series().coeff(1), c(0.5, 0.0));
        assert_eq!(s.series().coeff(3), c(-0.75, 0.0));
        assert_eq!(s.series().coeff(5), c(-0.375, 0.0));

        let (p, m) = (3, 2);
        let s = symmetric_extremal(0.7, p, m, Sign::Minus, K).unwrap();
        for idx in 0..=K {
            let on_progression = idx >= m && (idx - m) % p == 0;
            if !on_progression {
                assert_eq!(s.series().coeff(idx), c(0.0, 0.0));
            } else if idx > m {
                let n = ((idx - m) / p) as i32;
                let expected = -(1.0 - 0.49) * 0.7f64.powi(n - 1);
                assert!((s.series().coeff(idx).re - expected).abs() < 1e-15);
            }
        }
        assert!(symmetric_extremal(0.5, 2, 3, Sign::Plus, K).is_err());
        assert!(symmetric_extremal(0.5, 0, 0, Sign::Plus, K).is_err());
    }

    #[test]
    fn blaschke_single_factors() {
        assert!(blaschke(&[], 0.0, K).is_err());
        let f = blaschke(&[c(0.0, 0.0)], 0.0, K).unwrap();
        assert_eq!(f.series().coeff(1), c(-1.0, 0.0));
        let f = blaschke(&[c(0.5, 0.0)], 0.0, K).unwrap();
        let m = moebius(0.5, Sign::Minus, K).unwrap();
        assert!(f.series().max_abs_diff(m.series()) < 1e-13);
        assert!(blaschke(&[c(0.6, 0.8)], 0.0, K).is_err());
        let too_many = vec![c(0.1, 0.0); MAX_BLASCHKE_DEGREE + 1];
        assert!(blaschke(&too_many, 0.0, K).is_err());
    }

    #[test]
    fn blaschke_is_unimodular_near_boundary() {
        let zeros = [c(0.3, -0.4), c(-0.8, 0.1), c(0.0, 0.9)];
        let f = blaschke(&zeros, 1.3, 256).unwrap();
        let (max, tail) = f.boundary_max(0.99, 128);
        assert!(max <= 1.0 + tail + 1e-12);
        // Product of zero moduli gives |a0|.
        let prod: f64 = zeros.iter().map(|z| z.norm()).product();
        assert!((f.head_modulus() - prod).abs() < 1e-15);
    }

    #[test]
    fn schur_params_small_depths() {
        let g0 = c(0.3, 0.2);
        let f = from_schur_params(&[g0], K).unwrap();
        assert_eq!(f.a0(), g0);
        assert!((1..=K).all(|n| f.series().coeff(n) == c(0.0, 0.0)));

        let g1 = c(-0.4, 0.5);
        let f = from_schur_params(&[c(0.0, 0.0), g1], K).unwrap();
        assert_eq!(f.series().coeff(0), c(0.0, 0.0));
        assert!((f.series().coeff(1) - g1).norm() < 1e-16);
        assert!((2..=K).all(|n| f.series().coeff(n).norm() < 1e-16));

        let f = from_schur_params(&[c(0.5, 0.0), c(-0.999999, 0.0)], 256).unwrap();
        let (max, tail) = f.boundary_max(0.99, 128);
        assert!(max <= 1.0 + tail + 1e-12);

        assert!(from_schur_params(&[], K).is_err());
        assert!(from_schur_params(&[c(0.1, 0.0), c(1.0, 0.0)], K).is_err());
    }

    #[test]
    fn schur_params_one_step_is_moebius() {
        // Parameters (a, 1-) approach phi-type automorphism; with gamma_1 = -t
        // the function is (a - t z)/(1 - a t z).
        let (a, t) = (0.4, 0.7);
        let f = from_schur_params(&[c(a, 0.0), c(-t, 0.0)], K).unwrap();
        for n in 1..=K {
            let expected = -(1.0 - a * a) * t * (a * t).powi(n as i32 - 1);
            assert!((f.series().coeff(n).re - expected).abs() < 1e-15, "n={n}");
        }
    }

    #[test]
    fn convex_combo_mixes_heads() {
        let parts = [
            Recipe::Moebius {
                a: 0.5,
                sign: Sign::Plus,
            },
            Recipe::SchurParams {
                params: vec![c(0.0, 0.5)],
            },
        ];
        let f = convex_combo(&[0.25, 0.75], &parts, K).unwrap();
        assert!((f.a0() - c(0.125, 0.375)).norm() < 1e-16);
        assert!(convex_combo(&[0.5, 0.6], &parts, K).is_err());
        assert!(convex_combo(&[1.0], &parts, K).is_err());
    }

    #[test]
    fn identity_map() {
        let f = SchurFunction::identity(8);
        assert_eq!(f.series().coeff(1), c(1.0, 0.0));
        assert_eq!(f.head_modulus(), 0.0);
    }
}
