//! Exact values of each functional on its extremal family at real `z = r`.
//!
//! Disk automorphisms `psi_a = (a+z)/(1+az)` and `phi_a = (a-z)/(1-az)` have
//! coefficient moduli `a, (1-a^2) a^{n-1}`, so every coefficient sum has a
//! geometric closed form. Where a simplified bracket form exists it is used
//! instead of summing the pieces, because the sign of `value - 1` is what
//! sharpness certification needs.

use crate::bounds::{rogosinski_split, sgn};
use crate::radii::{RadiusQuery, Theorem};
use crate::schur::{Recipe, Sign};

/// Area weight `lambda` attached to the area variants.
pub fn default_lambda(t: Theorem) -> Option<f64> {
    match t {
        Theorem::ThmEFirst => Some(16.0 / 9.0),
        Theorem::ThmESecond | Theorem::Thm4Second => Some(9.0 / 8.0),
        Theorem::Thm4First => Some(8.0 / 9.0),
        _ => None,
    }
}

/// The extremal function for `q` with parameter `a`, as a replayable recipe.
pub fn extremal_recipe(q: &RadiusQuery, a: f64) -> Recipe {
    let (p, m) = (q.p(), q.m());
    match q.theorem {
        Theorem::ThmBModulus
        | Theorem::ThmCR
        | Theorem::ThmCRsq
        | Theorem::Thm1R
        | Theorem::Thm1Rsq
        | Theorem::Thm2
        | Theorem::Thm2Sq
        | Theorem::ThmF
        | Theorem::Thm7I
        | Theorem::Thm7J => Recipe::Moebius { a, sign: Sign::Plus },
        Theorem::ThmA
        | Theorem::ThmBSquare
        | Theorem::ThmEFirst
        | Theorem::ThmESecond
        | Theorem::Thm4First
        | Theorem::Thm4Second
        | Theorem::Thm5
        | Theorem::Thm6G
        | Theorem::Thm6H => Recipe::Moebius { a, sign: Sign::Minus },
        Theorem::ThmD => Recipe::SymmetricExtremal {
            a,
            p,
            m,
            sign: Sign::Plus,
        },
        Theorem::Thm3 | Theorem::Cor1a | Theorem::Cor1b | Theorem::Cor2A | Theorem::Cor2B => {
            Recipe::SymmetricExtremal {
                a,
                p,
                m,
                sign: Sign::Minus,
            }
        }
    }
}

/// Base function `g` of the extremal for the symmetric variants
/// (`f = z^m g(z^p)`, up to a unimodular factor), or the extremal itself otherwise.
pub fn extremal_base(q: &RadiusQuery, a: f64) -> Recipe {
    match extremal_recipe(q, a) {
        Recipe::SymmetricExtremal { a, .. } => Recipe::Moebius { a, sign: Sign::Minus },
        other => other,
    }
}

/// `A_1(a, r) = (1 - a - a^2) r^2 - (3 + a) r + 1`.
pub fn a1(a: f64, r: f64) -> f64 {
    (1.0 - a - a * a) * r * r - (3.0 + a) * r + 1.0
}

/// `A_2(a, r) = (1 - a^2) r^3 - (1 + 2a) r^2 - 2r + 1`.
pub fn a2(a: f64, r: f64) -> f64 {
    (1.0 - a * a) * r.powi(3) - (1.0 + 2.0 * a) * r * r - 2.0 * r + 1.0
}

/// `A_6(a, lambda)`, the bracket of the squared-head area form at `r = 1/(3 - a)`.
pub fn a6(a: f64, lambda: f64) -> f64 {
    let b = 1.0 - a;
    (8.0 * lambda - 9.0) + 12.0 * (lambda - 3.0) * b + 2.0 * (lambda - 18.0) * b * b
        - 3.0 * lambda * b.powi(3)
        - lambda * b.powi(4)
}

/// `A_11(a, r) = r^2 a^2 + (3r^2 - 3r) a + (r^2 - 3r + 1)`.
pub fn a11(a: f64, r: f64) -> f64 {
    r * r * a * a + (3.0 * r * r - 3.0 * r) * a + (r * r - 3.0 * r + 1.0)
}

/// `A_14(a, r) = (1 - 3r + r^2) + (2r^2 - r) a`.
pub fn a14(a: f64, r: f64) -> f64 {
    (1.0 - 3.0 * r + r * r) + (2.0 * r * r - r) * a
}

/// `A_15(a, r) = -1 + 2r + r^2 - r^3 + 2r^3 a + r^4 a^2`.
pub fn a15(a: f64, r: f64) -> f64 {
    -1.0 + 2.0 * r + r * r - r.powi(3) + 2.0 * r.powi(3) * a + r.powi(4) * a * a
}

/// Theorem-5 form at `r = 1/3`: `1 + (1-a)^2 (a^2 + 10a - 7) / (2 (3-a)^2)`.
pub fn thm5_at_third(a: f64) -> f64 {
    1.0 + (1.0 - a).powi(2) * (a * a + 10.0 * a - 7.0) / (2.0 * (3.0 - a).powi(2))
}

/// Refined area form with `|a_0|` head at `r = 1/3` as a bracket in `1 - a`.
pub fn area_first_at_third(a: f64, lambda: f64) -> f64 {
    let b = 1.0 - a;
    let bracket = 8.0 * (9.0 * lambda - 8.0) - 8.0 * (9.0 * lambda + 4.0) * b
        + 6.0 * (3.0 * lambda + 2.0) * b * b
        + 4.0 * b.powi(3)
        - b.powi(4);
    1.0 + b * b / (2.0 * (9.0 - a * a).powi(2)) * bracket
}

/// Refined area form with `|a_0|^2` head at `r = 1/(3 - a)`.
pub fn area_second_at_edge(a: f64, lambda: f64) -> f64 {
    let b = 1.0 - a;
    1.0 + b * b * (1.0 + a) / (9.0 * (3.0 - 2.0 * a).powi(2) * (2.0 - a)) * a6(a, lambda)
}

/// Coefficient sums of a disk automorphism with `|a_0| = a` at radius `r`.
#[derive(Debug, Clone, Copy)]
struct Moebius {
    a: f64,
    r: f64,
}

impl Moebius {
    fn b(&self) -> f64 {
        1.0 - self.a * self.a
    }

    /// `sum_{n >= k} |a_n| r^n`, `k >= 1`.
    fn linear_from(&self, k: usize) -> f64 {
        self.b() * self.a.powi(k as i32 - 1) * self.r.powi(k as i32) / (1.0 - self.a * self.r)
    }

    /// `sum_{n >= k} |a_n|^2 r^{2n}`, `k >= 1`.
    fn square_from(&self, k: usize) -> f64 {
        let (a, r) = (self.a, self.r);
        self.b().powi(2) * a.powi(2 * (k as i32 - 1)) * r.powi(2 * k as i32) / (1.0 - a * a * r * r)
    }

    /// `sum_{n=1}^t |a_n|^2`.
    fn finite_square(&self, t: usize) -> f64 {
        self.b() * (1.0 - self.a.powi(2 * t as i32))
    }

    fn area(&self) -> f64 {
        let (a, r) = (self.a, self.r);
        self.b().powi(2) * r * r / (1.0 - a * a * r * r).powi(2)
    }

    fn weight(&self) -> f64 {
        1.0 / (1.0 + self.a) + self.r / (1.0 - self.r)
    }

    /// `|psi_a(r)|`.
    fn psi(&self) -> f64 {
        (self.r + self.a) / (1.0 + self.a * self.r)
    }

    /// `|psi_a'(r)|`.
    fn psi_slope(&self) -> f64 {
        self.b() / (1.0 + self.a * self.r).powi(2)
    }

    /// `|phi_a(r) - a|`.
    fn phi_distance(&self) -> f64 {
        self.b() * self.r / (1.0 - self.a * self.r)
    }
}

/// Value of the functional of `q` on its extremal with parameter `a`, at `z = r`.
pub fn extremal_value(q: &RadiusQuery, a: f64, r: f64) -> f64 {
    let lambda = default_lambda(q.theorem).unwrap_or(0.0);
    extremal_value_with_lambda(q, a, r, lambda)
}

/// As [`extremal_value`], with the area weight replaced by `lambda`
/// (ignored by variants without an area term).
pub fn extremal_value_with_lambda(q: &RadiusQuery, a: f64, r: f64, lambda: f64) -> f64 {
    let mo = Moebius { a, r };
    let rho = r.powi(q.p() as i32);
    let b = 1.0 - a * a;
    match q.theorem {
        Theorem::ThmA => a + mo.linear_from(1),
        Theorem::ThmBModulus => a + mo.linear_from(1) + mo.weight() * mo.square_from(1),
        Theorem::ThmBSquare => a * a + mo.linear_from(1) + mo.weight() * mo.square_from(1),
        Theorem::ThmCR => mo.psi() + mo.linear_from(q.n()),
        Theorem::ThmCRsq => mo.psi().powi(2) + mo.linear_from(q.n()),
        Theorem::Thm1R | Theorem::Thm1Rsq => {
            let n = q.n();
            let t = rogosinski_split(n);
            let head = if q.theorem == Theorem::Thm1R {
                mo.psi()
            } else {
                mo.psi().powi(2)
            };
            head + mo.linear_from(n)
                + sgn(t) * mo.finite_square(t) * r.powi(n as i32) / (1.0 - r)
                + mo.weight() * mo.square_from(t + 1)
        }
        Theorem::Thm2 => 1.0 - (1.0 - a) * a1(a, r) / ((1.0 + a * r) * (1.0 - r)),
        Theorem::Thm2Sq => 1.0 - b * a2(a, r) / ((1.0 + a * r).powi(2) * (1.0 - r)),
        Theorem::ThmD => r.powi(q.m() as i32) * (a + b * rho / (1.0 - a * rho)),
        Theorem::Thm3 | Theorem::Cor1a => r.powi(q.m() as i32) * (a + b * rho / (1.0 - rho)),
        Theorem::Cor1b => a * a + b * rho / (1.0 - rho),
        Theorem::Cor2A => rho * (a + b * rho / (1.0 - rho)),
        Theorem::Cor2B => a * rho + rho * rho / (1.0 - rho) + a * a * rho / (1.0 + a),
        Theorem::ThmEFirst => a + mo.linear_from(1) + lambda * mo.area(),
        Theorem::ThmESecond => a * a + mo.linear_from(1) + lambda * mo.area(),
        Theorem::Thm4First => a + mo.linear_from(1) + mo.weight() * mo.square_from(1) + lambda * mo.area(),
        Theorem::Thm4Second => {
            a * a + mo.linear_from(1) + mo.weight() * mo.square_from(1) + lambda * mo.area()
        }
        Theorem::Thm5 => a + b * r / (1.0 - r) + mo.phi_distance().powi(2),
        Theorem::Thm6G => 1.0 - (1.0 - a) * a11(a, r) / ((1.0 - r) * (1.0 - a * r)),
        Theorem::Thm6H => 1.0 - b * a14(a, r) / ((1.0 - r) * (1.0 - a * r)),
        Theorem::ThmF => mo.psi() + r * mo.psi_slope() + mo.linear_from(2),
        Theorem::Thm7I => mo.psi() + r * mo.psi_slope() + mo.linear_from(2) + mo.weight() * mo.square_from(1),
        Theorem::Thm7J => 1.0 + b * a15(a, r) / ((1.0 + a * r).powi(2) * (1.0 - r)),
    }
}

/// The same functional assembled from unsimplified pieces, for the variants
/// whose [`extremal_value`] uses a bracket form.
pub fn extremal_value_from_pieces(q: &RadiusQuery, a: f64, r: f64) -> f64 {
    let mo = Moebius { a, r };
    let refined = mo.linear_from(1) + mo.weight() * mo.square_from(1);
    match q.theorem {
        Theorem::Thm2 => mo.psi() + refined,
        Theorem::Thm2Sq => mo.psi().powi(2) + refined,
        Theorem::Thm6G => a + refined + mo.phi_distance(),
        Theorem::Thm6H => a * a + refined + mo.phi_distance(),
        Theorem::Thm7J => {
            mo.psi().powi(2) + r * mo.psi_slope() + mo.linear_from(2) + mo.weight() * mo.square_from(1)
        }
        Theorem::Thm5 => a + refined + mo.phi_distance().powi(2),
        _ => extremal_value(q, a, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bracket_forms_match_pieces() {
        for t in [
            Theorem::Thm2,
            Theorem::Thm2Sq,
            Theorem::Thm5,
            Theorem::Thm6G,
            Theorem::Thm6H,
            Theorem::Thm7J,
        ] {
            let q = RadiusQuery::simple(t);
            for a in [0.0, 0.3, 0.7, 0.95] {
                for r in [0.1, 0.25, 0.4] {
                    let x = extremal_value(&q, a, r);
                    let y = extremal_value_from_pieces(&q, a, r);
                    assert_abs_diff_eq!(x, y, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn rogosinski_n1_is_thm2() {
        let q1 = RadiusQuery::simple(Theorem::Thm1R).with_n(1);
        let q2 = RadiusQuery::simple(Theorem::Thm2);
        for a in [0.1, 0.6] {
            for r in [0.2, 0.35] {
                assert_abs_diff_eq!(
                    extremal_value(&q1, a, r),
                    extremal_value(&q2, a, r),
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn area_brackets() {
        let q1 = RadiusQuery::simple(Theorem::Thm4First);
        let q2 = RadiusQuery::simple(Theorem::Thm4Second);
        for a in [0.2, 0.8, 0.99] {
            for lambda in [0.5, 8.0 / 9.0, 1.2] {
                let v = extremal_value_with_lambda(&q1, a, 1.0 / 3.0, lambda);
                assert_abs_diff_eq!(v, area_first_at_third(a, lambda), epsilon = 1e-13);
                let v = extremal_value_with_lambda(&q2, a, 1.0 / (3.0 - a), lambda);
                assert_abs_diff_eq!(v, area_second_at_edge(a, lambda), epsilon = 1e-13);
            }
        }
        let q5 = RadiusQuery::simple(Theorem::Thm5);
        assert_abs_diff_eq!(
            extremal_value(&q5, 0.4, 1.0 / 3.0),
            thm5_at_third(0.4),
            epsilon = 1e-14
        );
    }
}
