//! Rigorous evaluation of refined Bohr-type inequalities on the Schur class.
//!
//! * [`series`]: truncated complex power series.
//! * [`schur`]: constructors and seeded samplers for self-maps of the disk.
//! * [`bounds`]: coefficient and growth inequalities as checkable oracles.
//! * [`functionals`]: Bohr-type left-hand sides as [`ValueInterval`] enclosures.
//! * [`radii`]: closed-form radii and certified roots of radius equations.
//! * [`certify`]: sharpness witnesses on the extremal families.
//! * [`verify`]: seeded Monte Carlo campaigns.

pub mod bounds;
pub mod certify;
pub mod error;
pub mod functionals;
pub mod interval;
pub mod radii;
pub mod schur;
pub mod series;
pub mod sums;
pub mod verify;

pub use error::{BohrError, Result};
pub use interval::ValueInterval;
pub use radii::{Params, RadiusQuery, RadiusSolution, Theorem};
pub use schur::{Profile, Recipe, SchurFunction, Sign};
pub use series::{TaylorSeries, DEFAULT_ORDER};
