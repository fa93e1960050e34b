//! Sparse real polynomials and bracketed root finding on `(0, 1)`.

use std::collections::BTreeMap;

/// Spacing of the sign-change scan.
pub const SCAN_STEP: f64 = 1e-3;

/// Largest `|p(r)|` accepted for a root found by the double-root fallback.
pub const DOUBLE_ROOT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    /// `(exponent, coefficient)` pairs, ascending and without duplicates.
    terms: Vec<(u32, f64)>,
}

impl Polynomial {
    /// Collects like powers; zero coefficients are dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (f64, u32)>) -> Self {
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for (c, k) in terms {
            *acc.entry(k).or_insert(0.0) += c;
        }
        Self {
            terms: acc.into_iter().filter(|&(_, c)| c != 0.0).collect(),
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.terms.iter().map(|&(k, c)| c * r.powi(k as i32)).sum()
    }

    pub fn derivative(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|&&(k, _)| k > 0)
                .map(|&(k, c)| (k - 1, c * k as f64))
                .collect(),
        }
    }
}

/// Where a root of `f` was found by the scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bracket {
    /// `f` changes sign strictly inside `(lo, hi)`.
    SignChange(f64, f64),
    /// `f` vanishes exactly at a scan node.
    Node(f64),
}

/// All sign changes of `f` on the grid `k * SCAN_STEP`, `k = 0..=1000`,
/// ordered left to right. Roots at the endpoints 0 and 1 are not counted.
pub fn scan(f: impl Fn(f64) -> f64) -> Vec<Bracket> {
    let steps = (1.0 / SCAN_STEP).round() as usize;
    let xs: Vec<f64> = (0..=steps).map(|k| k as f64 / steps as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < steps {
        let (v0, v1) = (vs[k], vs[k + 1]);
        if v1 == 0.0 && k + 1 < steps {
            out.push(Bracket::Node(xs[k + 1]));
            k += 2;
            continue;
        }
        if v0 != 0.0 && v1 != 0.0 && (v0 < 0.0) != (v1 < 0.0) {
            out.push(Bracket::SignChange(xs[k], xs[k + 1]));
        }
        k += 1;
    }
    out
}

/// Bisection to machine precision: stops once the midpoint coincides with an
/// endpoint. Returns the endpoint with smaller `|f|` and the final width.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let mut flo = f(lo);
    loop {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return (mid, 0.0);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let root = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    (root, hi - lo)
}

pub fn refine(f: impl Fn(f64) -> f64, bracket: Bracket) -> (f64, f64) {
    match bracket {
        Bracket::SignChange(lo, hi) => bisect(f, lo, hi),
        Bracket::Node(x) => (x, 0.0),
    }
}

/// Touching root of a polynomial that does not change sign: take the scan node
/// where `|p|` is smallest, bisect `p'` around it and accept the critical point
/// if `|p|` vanishes there to [`DOUBLE_ROOT_TOL`].
pub fn double_root(p: &Polynomial) -> Option<(f64, f64)> {
    let steps = (1.0 / SCAN_STEP).round() as usize;
    let (k, _) = (1..steps)
        .map(|k| (k, p.eval(k as f64 / steps as f64).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1))?;
    let dp = p.derivative();
    let lo = (k - 1) as f64 / steps as f64;
    let hi = (k + 1) as f64 / steps as f64;
    let (dlo, dhi) = (dp.eval(lo), dp.eval(hi));
    let (root, width) = if dlo == 0.0 {
        (lo, 0.0)
    } else if dhi == 0.0 {
        (hi, 0.0)
    } else if (dlo < 0.0) != (dhi < 0.0) {
        bisect(|x| dp.eval(x), lo, hi)
    } else {
        return None;
    };
    (p.eval(root).abs() < DOUBLE_ROOT_TOL).then_some((root, width))
}
