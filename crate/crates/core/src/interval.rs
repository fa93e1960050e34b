use std::ops::Add;

use serde::{Deserialize, Serialize};

/// Enclosure `[lower, upper]` of a nonnegative real quantity. `lower` is the
/// truncated value and `upper` adds the analytic remainder bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValueInterval {
    pub lower: f64,
    pub upper: f64,
}

impl ValueInterval {
    pub const ZERO: Self = Self {
        lower: 0.0,
        upper: 0.0,
    };

    pub fn new(lower: f64, upper: f64) -> Self {
        debug_assert!(lower <= upper, "inverted interval [{lower}, {upper}]");
        Self { lower, upper }
    }

    pub fn point(x: f64) -> Self {
        Self { lower: x, upper: x }
    }

    /// Truncated value plus a nonnegative tail.
    pub fn with_tail(value: f64, tail: f64) -> Self {
        Self {
            lower: value,
            upper: value + tail,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Multiplication by a nonnegative scalar.
    pub fn scale(self, c: f64) -> Self {
        debug_assert!(c >= 0.0);
        Self {
            lower: self.lower * c,
            upper: self.upper * c,
        }
    }

    /// Square of an interval of nonnegative numbers.
    pub fn square(self) -> Self {
        Self {
            lower: self.lower * self.lower,
            upper: self.upper * self.upper,
        }
    }

    pub fn powi(self, k: u32) -> Self {
        match k {
            1 => self,
            2 => self.square(),
            _ => Self {
                lower: self.lower.powi(k as i32),
                upper: self.upper.powi(k as i32),
            },
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

impl Add for ValueInterval {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            lower: self.lower + rhs.lower,
            upper: self.upper + rhs.upper,
        }
    }
}

impl std::iter::Sum for ValueInterval {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}
