//! Radius constants: closed forms and certified roots of radius equations.

mod poly;

pub use poly::{bisect, double_root, scan, Bracket, Polynomial, DOUBLE_ROOT_TOL, SCAN_STEP};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, BohrError, Result};

/// `4 sqrt(2) - 5`, the largest `|a_0|` for which the `|f - a_0|^2` variant holds at `r = 1/3`.
pub const THM5_HEAD_THRESHOLD: f64 = 4.0 * std::f64::consts::SQRT_2 - 5.0;

/// `(3 - sqrt(5))/2`, right end of the window in which the `|f - a_0|` variants fail beyond their radii.
pub const DISTANCE_WINDOW_END: f64 = 0.381_966_011_250_105_2;

/// Every inequality variant with a radius. The ids are the CLI spellings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Theorem {
    ThmA,
    ThmBModulus,
    ThmBSquare,
    ThmCR,
    ThmCRsq,
    Thm1R,
    Thm1Rsq,
    Thm2,
    Thm2Sq,
    ThmD,
    Thm3,
    Cor1a,
    Cor1b,
    Cor2A,
    Cor2B,
    ThmEFirst,
    ThmESecond,
    Thm4First,
    Thm4Second,
    Thm5,
    Thm6G,
    Thm6H,
    ThmF,
    Thm7I,
    Thm7J,
}

impl Theorem {
    pub const ALL: [Theorem; 25] = [
        Theorem::ThmA,
        Theorem::ThmBModulus,
        Theorem::ThmBSquare,
        Theorem::ThmCR,
        Theorem::ThmCRsq,
        Theorem::Thm1R,
        Theorem::Thm1Rsq,
        Theorem::Thm2,
        Theorem::Thm2Sq,
        Theorem::ThmD,
        Theorem::Thm3,
        Theorem::Cor1a,
        Theorem::Cor1b,
        Theorem::Cor2A,
        Theorem::Cor2B,
        Theorem::ThmEFirst,
        Theorem::ThmESecond,
        Theorem::Thm4First,
        Theorem::Thm4Second,
        Theorem::Thm5,
        Theorem::Thm6G,
        Theorem::Thm6H,
        Theorem::ThmF,
        Theorem::Thm7I,
        Theorem::Thm7J,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::ThmA => "thma",
            Theorem::ThmBModulus => "thmb-modulus",
            Theorem::ThmBSquare => "thmb-square",
            Theorem::ThmCR => "thmc-r",
            Theorem::ThmCRsq => "thmc-rsq",
            Theorem::Thm1R => "thm1-r",
            Theorem::Thm1Rsq => "thm1-rsq",
            Theorem::Thm2 => "thm2",
            Theorem::Thm2Sq => "thm2-sq",
            Theorem::ThmD => "thmd",
            Theorem::Thm3 => "thm3",
            Theorem::Cor1a => "cor1a",
            Theorem::Cor1b => "cor1b",
            Theorem::Cor2A => "cor2a",
            Theorem::Cor2B => "cor2b",
            Theorem::ThmEFirst => "thme-first",
            Theorem::ThmESecond => "thme-second",
            Theorem::Thm4First => "thm4-first",
            Theorem::Thm4Second => "thm4-second",
            Theorem::Thm5 => "thm5",
            Theorem::Thm6G => "thm6-g",
            Theorem::Thm6H => "thm6-h",
            Theorem::ThmF => "thmf",
            Theorem::Thm7I => "thm7-i",
            Theorem::Thm7J => "thm7-j",
        }
    }

    pub fn needs_n(self) -> bool {
        matches!(
            self,
            Theorem::ThmCR | Theorem::ThmCRsq | Theorem::Thm1R | Theorem::Thm1Rsq
        )
    }

    pub fn needs_p(self) -> bool {
        matches!(
            self,
            Theorem::ThmD | Theorem::Thm3 | Theorem::Cor1a | Theorem::Cor1b | Theorem::Cor2A | Theorem::Cor2B
        )
    }

    pub fn needs_m(self) -> bool {
        matches!(self, Theorem::ThmD | Theorem::Thm3)
    }

    /// Whether the radius depends on a head coefficient modulus (`|a_0|`, or
    /// `|a_m|` for the symmetric variants).
    pub fn needs_a(self) -> bool {
        matches!(
            self,
            Theorem::ThmBModulus
                | Theorem::Thm2
                | Theorem::Thm2Sq
                | Theorem::Thm3
                | Theorem::Cor1a
                | Theorem::Cor2A
                | Theorem::Thm4Second
        )
    }

    /// Variants evaluated on the base function `g` of `f = z^m g(z^p)`.
    pub fn is_symmetric(self) -> bool {
        self.needs_p()
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl From<Theorem> for String {
    fn from(t: Theorem) -> Self {
        t.id().to_owned()
    }
}

impl TryFrom<String> for Theorem {
    type Error = BohrError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for Theorem {
    type Err = BohrError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or(BohrError::UnknownTheorem(s))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusQuery {
    pub theorem: Theorem,
    pub params: Params,
}

impl RadiusQuery {
    /// Validated query: exactly the parameters the variant uses must be set.
    pub fn new(theorem: Theorem, params: Params) -> Result<Self> {
        let q = Self { theorem, params };
        q.check_indices()?;
        q.check_flag("a", theorem.needs_a(), params.a.is_some())?;
        if let Some(a) = params.a {
            if !(0.0..1.0).contains(&a) {
                return Err(domain(format!("|a| = {a} must lie in [0, 1)")));
            }
        }
        Ok(q)
    }

    /// Query whose head modulus is left open, to be filled in per sample.
    pub fn template(theorem: Theorem, params: Params) -> Result<Self> {
        let q = Self { theorem, params };
        q.check_indices()?;
        q.check_flag("a", false, params.a.is_some())?;
        Ok(q)
    }

    pub fn simple(theorem: Theorem) -> Self {
        Self {
            theorem,
            params: Params::default(),
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.params.n = Some(n);
        self
    }

    pub fn with_p(mut self, p: usize) -> Self {
        self.params.p = Some(p);
        self
    }

    pub fn with_pm(mut self, p: usize, m: usize) -> Self {
        self.params.p = Some(p);
        self.params.m = Some(m);
        self
    }

    /// Sets the head modulus when the variant uses one; otherwise unchanged.
    pub fn with_a(mut self, a: f64) -> Self {
        if self.theorem.needs_a() {
            self.params.a = Some(a);
        }
        self
    }

    fn check_flag(&self, param: &'static str, needed: bool, present: bool) -> Result<()> {
        let theorem = self.theorem.id().to_owned();
        match (needed, present) {
            (true, false) => Err(BohrError::MissingParameter { theorem, param }),
            (false, true) => Err(BohrError::UnexpectedParameter { theorem, param }),
            _ => Ok(()),
        }
    }

    fn check_indices(&self) -> Result<()> {
        let t = self.theorem;
        let p = self.params;
        self.check_flag("n", t.needs_n(), p.n.is_some())?;
        self.check_flag("p", t.needs_p(), p.p.is_some())?;
        self.check_flag("m", t.needs_m(), p.m.is_some())?;
        if p.n == Some(0) {
            return Err(domain("N must be at least 1"));
        }
        if p.p == Some(0) {
            return Err(domain("p must be at least 1"));
        }
        if let (Some(pp), Some(m)) = (p.p, p.m) {
            if m > pp {
                return Err(domain(format!("m = {m} must not exceed p = {pp}")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.params.n.unwrap_or(1)
    }

    pub fn p(&self) -> usize {
        self.params.p.unwrap_or(1)
    }

    /// `m`; the corollaries fix it (`0` for the first, `p` for the second).
    pub fn m(&self) -> usize {
        match self.theorem {
            Theorem::Cor2A | Theorem::Cor2B => self.p(),
            _ => self.params.m.unwrap_or(0),
        }
    }

    pub fn a(&self) -> f64 {
        self.params.a.unwrap_or(0.0)
    }

    /// Human-readable label, e.g. `thm3(p=2,m=1,a=0.5)`.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if let Some(n) = self.params.n {
            parts.push(format!("N={n}"));
        }
        if let Some(p) = self.params.p {
            parts.push(format!("p={p}"));
        }
        if let Some(m) = self.params.m {
            parts.push(format!("m={m}"));
        }
        if let Some(a) = self.params.a {
            parts.push(format!("a={a}"));
        }
        if parts.is_empty() {
            self.theorem.id().to_owned()
        } else {
            format!("{}({})", self.theorem.id(), parts.join(","))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Bisection,
    DoubleRoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusSolution {
    pub radius: f64,
    /// `|equation(radius)|`; zero for closed forms without a defining polynomial.
    pub residual: f64,
    pub bracket_width: f64,
    /// Sign changes found by the scan (or 1 for closed forms and touching roots).
    pub root_count: usize,
    pub method: Method,
}

/// The radius equation of a polynomial variant, with a printable name.
pub fn equation(q: &RadiusQuery) -> Option<(Polynomial, String)> {
    let a = q.a();
    let eq = match q.theorem {
        Theorem::ThmCR | Theorem::Thm1R | Theorem::ThmCRsq | Theorem::Thm1Rsq => {
            let n = q.n() as u32;
            let c = if matches!(q.theorem, Theorem::ThmCR | Theorem::Thm1R) {
                2.0
            } else {
                1.0
            };
            let name = if c == 2.0 {
                "2(1+r)r^N-(1-r)^2"
            } else {
                "(1+r)r^N-(1-r)^2"
            };
            let p = Polynomial::from_terms([(c, n), (c, n + 1), (-1.0, 0), (2.0, 1), (-1.0, 2)]);
            (p, format!("{name} with N={n}"))
        }
        Theorem::Thm2Sq => (
            Polynomial::from_terms([(1.0 - a * a, 3), (-(1.0 + 2.0 * a), 2), (-2.0, 1), (1.0, 0)]),
            format!("(1-a^2)r^3-(1+2a)r^2-2r+1 with a={a}"),
        ),
        Theorem::ThmD => {
            let (p, m) = (q.p() as u32, q.m() as u32);
            (
                Polynomial::from_terms([(-6.0, p - m), (1.0, 2 * (p - m)), (8.0, 2 * p), (1.0, 0)]),
                format!("-6r^(p-m)+r^(2(p-m))+8r^(2p)+1 with p={p}, m={m}"),
            )
        }
        Theorem::Thm3 => {
            let (p, m) = (q.p() as u32, q.m() as u32);
            (
                Polynomial::from_terms([(1.0 - a - a * a, p + m), (1.0, p), (a, m), (-1.0, 0)]),
                format!("(1-a-a^2)r^(p+m)+r^p+ar^m-1 with p={p}, m={m}, a={a}"),
            )
        }
        Theorem::Thm7J => (
            Polynomial::from_terms([(1.0, 0), (-2.0, 1), (-1.0, 2), (-1.0, 3), (-1.0, 4)]),
            "1-2r-r^2-r^3-r^4".to_owned(),
        ),
        Theorem::Thm2 => (
            Polynomial::from_terms([(1.0 - a - a * a, 2), (-(3.0 + a), 1), (1.0, 0)]),
            format!("(1-a-a^2)r^2-(3+a)r+1 with a={a}"),
        ),
        Theorem::ThmF | Theorem::Thm7I => (
            Polynomial::from_terms([(2.0, 2), (3.0, 1), (-1.0, 0)]),
            "2r^2+3r-1".to_owned(),
        ),
        _ => return None,
    };
    Some(eq)
}

/// `alpha(a) = 1 + a + sqrt((1 - a)(5 + 3a))`.
pub fn cor2_alpha(a: f64) -> f64 {
    1.0 + a + ((1.0 - a) * (5.0 + 3.0 * a)).sqrt()
}

fn closed_form(q: &RadiusQuery) -> Option<f64> {
    let a = q.a();
    let inv_p = 1.0 / q.p() as f64;
    let r = match q.theorem {
        Theorem::ThmA | Theorem::ThmEFirst | Theorem::Thm4First | Theorem::Thm5 => 1.0 / 3.0,
        Theorem::Thm6H => 1.0 / 3.0,
        Theorem::ThmBModulus => 1.0 / (2.0 + a),
        Theorem::ThmBSquare | Theorem::ThmESecond => 0.5,
        Theorem::Thm2 => 2.0 / (3.0 + a + 5f64.sqrt() * (1.0 + a)),
        Theorem::Cor1a => (1.0 / (2.0 + a)).powf(inv_p),
        Theorem::Cor1b => 0.5f64.powf(inv_p),
        Theorem::Cor2A => (2.0 / cor2_alpha(a)).powf(inv_p),
        Theorem::Cor2B => ((5.0 - 17f64.sqrt()) / 2.0).powf(inv_p),
        Theorem::Thm4Second => 1.0 / (3.0 - a),
        Theorem::Thm6G => 0.2,
        Theorem::ThmF | Theorem::Thm7I => (17f64.sqrt() - 3.0) / 4.0,
        _ => return None,
    };
    Some(r)
}

/// Variants whose equation must have exactly one root in `(0, 1)`.
fn claims_unique_root(t: Theorem) -> bool {
    !matches!(t, Theorem::ThmD)
}

/// The radius of `q`.
pub fn solve(q: &RadiusQuery) -> Result<RadiusSolution> {
    let q = RadiusQuery::new(q.theorem, q.params)?;
    if let Some(radius) = closed_form(&q) {
        let residual = equation(&q).map_or(0.0, |(p, _)| p.eval(radius).abs());
        return Ok(RadiusSolution {
            radius,
            residual,
            bracket_width: 0.0,
            root_count: 1,
            method: Method::ClosedForm,
        });
    }
    let (poly, name) = equation(&q).expect("every variant without a closed form has an equation");
    let f = |x: f64| poly.eval(x);
    let brackets = scan(f);
    if brackets.is_empty() {
        return match double_root(&poly) {
            Some((radius, width)) => Ok(RadiusSolution {
                radius,
                residual: poly.eval(radius).abs(),
                bracket_width: width,
                root_count: 1,
                method: Method::DoubleRoot,
            }),
            None => Err(BohrError::NoRootInUnitInterval { equation: name }),
        };
    }
    if claims_unique_root(q.theorem) && brackets.len() != 1 {
        return Err(BohrError::MultipleRoots {
            equation: name,
            count: brackets.len(),
        });
    }
    let (radius, width) = poly::refine(f, *brackets.last().expect("nonempty"));
    Ok(RadiusSolution {
        radius,
        residual: poly.eval(radius).abs(),
        bracket_width: width,
        root_count: brackets.len(),
        method: Method::Bisection,
    })
}

/// Shorthand for `solve(q)?.radius`.
pub fn radius(q: &RadiusQuery) -> Result<f64> {
    solve(q).map(|s| s.radius)
}

/// The coefficient `a` of the extremal `z^m (z^p - a)/(1 - a z^p)` at the
/// symmetric Bohr radius `r_{p,m}`.
pub fn extremal_a_for_thm_d(p: usize, m: usize) -> Result<f64> {
    let r = radius(&RadiusQuery::simple(Theorem::ThmD).with_pm(p, m))?;
    let rp = r.powi(p as i32);
    let a = (1.0 - (1.0 - rp * rp).sqrt() / std::f64::consts::SQRT_2) / rp;
    if !(0.0..1.0).contains(&a) {
        return Err(domain(format!(
            "extremal a = {a} for p={p}, m={m} is outside [0, 1)"
        )));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(t: Theorem) -> RadiusQuery {
        RadiusQuery::simple(t)
    }

    #[test]
    fn rogosinski_radii_small_n() {
        let r1 = radius(&q(Theorem::Thm1R).with_n(1)).unwrap();
        assert!((r1 - (5f64.sqrt() - 2.0)).abs() < 1e-12);
        let r1s = radius(&q(Theorem::Thm1Rsq).with_n(1)).unwrap();
        assert!((r1s - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn residuals_and_widths() {
        for n in 1..=10 {
            for t in [Theorem::Thm1R, Theorem::Thm1Rsq] {
                let s = solve(&q(t).with_n(n)).unwrap();
                assert!(s.residual < 1e-13, "{t} N={n}: {s:?}");
                assert!(s.bracket_width < 1e-14);
            }
        }
        let s = solve(&q(Theorem::Thm7J)).unwrap();
        assert!((s.radius - 0.385795).abs() < 1e-6);
        assert_eq!(s.root_count, 1);
    }

    #[test]
    fn double_root_for_symmetric_bohr() {
        let s = solve(&q(Theorem::ThmD).with_pm(1, 0)).unwrap();
        assert_eq!(s.method, Method::DoubleRoot);
        assert!((s.radius - 1.0 / 3.0).abs() < 1e-10);
        let s = solve(&q(Theorem::ThmD).with_pm(2, 0)).unwrap();
        assert!((s.radius - 3f64.powf(-0.5)).abs() < 1e-10);
    }

    #[test]
    fn thm3_reduces_to_cor1a() {
        for p in 1..=3 {
            for a in [0.0, 0.3, 0.7] {
                let r = radius(&q(Theorem::Thm3).with_pm(p, 0).with_a(a)).unwrap();
                assert!((r - (2.0 + a).powf(-1.0 / p as f64)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn thm3_at_m_equal_p_matches_alpha() {
        for a in [0.0, 0.2, 0.6, 0.95] {
            for p in 1..=3 {
                let r = radius(&q(Theorem::Thm3).with_pm(p, p).with_a(a)).unwrap();
                let c = radius(&q(Theorem::Cor2A).with_p(p).with_a(a)).unwrap();
                assert!((r - c).abs() < 1e-12, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn closed_form_thm2_solves_its_quadratic() {
        for a in [0.0, 0.4, 0.9] {
            let s = solve(&q(Theorem::Thm2).with_a(a)).unwrap();
            assert!(s.residual < 1e-14);
        }
        assert!((radius(&q(Theorem::Thm2).with_a(0.0)).unwrap() - 0.381_966_0).abs() < 1e-7);
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            solve(&q(Theorem::Thm2)),
            Err(BohrError::MissingParameter { param: "a", .. })
        ));
        assert!(matches!(
            solve(&q(Theorem::ThmA).with_n(2)),
            Err(BohrError::UnexpectedParameter { param: "n", .. })
        ));
        assert!(solve(&q(Theorem::ThmD).with_pm(2, 3)).is_err());
        assert!(solve(&q(Theorem::Thm1R).with_n(0)).is_err());
        assert!(solve(&q(Theorem::Thm2).with_a(1.0)).is_err());
        assert_eq!("THM7-J".parse::<Theorem>().unwrap(), Theorem::Thm7J);
        assert!("thm9".parse::<Theorem>().is_err());
    }

    #[test]
    fn thm_d_extremal_a() {
        for (p, m) in [(2, 1), (2, 2), (3, 1), (3, 3)] {
            let a = extremal_a_for_thm_d(p, m).unwrap();
            assert!((0.0..1.0).contains(&a), "p={p} m={m} a={a}");
        }
    }
}
