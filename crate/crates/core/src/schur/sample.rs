//! Seeded random members of the Schur class.
//!
//! Each draw is keyed by `(seed, index)`: the seed selects a ChaCha20 key and
//! the index selects the stream, so draws are independent of evaluation order.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::{Recipe, SchurFunction};
use crate::error::{BohrError, Result};

/// Zeros and Schur parameters are drawn from the disk of this radius.
pub const SAMPLE_RADIUS: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Profile {
    Blaschke,
    SchurParams,
    ConvexCombo,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::Blaschke, Profile::SchurParams, Profile::ConvexCombo];

    /// Profile rotation used by the verification driver.
    pub fn for_trial(index: u64) -> Self {
        Self::ALL[(index % 3) as usize]
    }

    pub fn id(self) -> &'static str {
        match self {
            Profile::Blaschke => "blaschke",
            Profile::SchurParams => "schur-params",
            Profile::ConvexCombo => "convex",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Profile {
    type Err = BohrError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blaschke" => Ok(Profile::Blaschke),
            "schur-params" | "schur" => Ok(Profile::SchurParams),
            "convex" | "convex-combo" => Ok(Profile::ConvexCombo),
            other => Err(BohrError::Domain(format!("unknown sampler profile `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Sampler {
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn rng(&self, index: u64) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    /// The recipe for draw `index`.
    pub fn recipe(&self, index: u64, profile: Profile) -> Recipe {
        let mut rng = self.rng(index);
        draw(&mut rng, profile)
    }

    pub fn sample(&self, index: u64, profile: Profile, order: usize) -> SchurFunction {
        self.recipe(index, profile)
            .build(order)
            .expect("sampler parameters stay strictly inside the disk")
    }
}

/// Draw number 0 for `seed`.
pub fn sample(seed: u64, profile: Profile, order: usize) -> SchurFunction {
    Sampler::new(seed).sample(0, profile, order)
}

fn in_disk<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    let rho = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(rho, 2.0 * PI * rng.random::<f64>())
}

fn draw<R: Rng>(rng: &mut R, profile: Profile) -> Recipe {
    match profile {
        Profile::Blaschke => {
            let degree = rng.random_range(1..=8);
            let zeros = (0..degree).map(|_| in_disk(rng, SAMPLE_RADIUS)).collect();
            Recipe::Blaschke {
                zeros,
                phase: 2.0 * PI * rng.random::<f64>(),
            }
        }
        Profile::SchurParams => {
            let depth = rng.random_range(1..=10);
            let params = (0..=depth).map(|_| in_disk(rng, SAMPLE_RADIUS)).collect();
            Recipe::SchurParams { params }
        }
        Profile::ConvexCombo => {
            let count = rng.random_range(2..=4);
            // Flat Dirichlet weights from normalized exponentials.
            let mut weights: Vec<f64> = (0..count).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            let parts = (0..count)
                .map(|_| {
                    let inner = if rng.random::<bool>() {
                        Profile::Blaschke
                    } else {
                        Profile::SchurParams
                    };
                    draw(rng, inner)
                })
                .collect();
            Recipe::ConvexCombo { weights, parts }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_function() {
        for profile in Profile::ALL {
            let a = sample(17, profile, 64);
            let b = sample(17, profile, 64);
            assert_eq!(a.series(), b.series());
            assert_eq!(a.recipe(), b.recipe());
        }
    }

    #[test]
    fn streams_differ() {
        let s = Sampler::new(5);
        assert_ne!(
            s.recipe(0, Profile::SchurParams),
            s.recipe(1, Profile::SchurParams)
        );
    }

    #[test]
    fn recipe_text_replays_sample() {
        let s = Sampler::new(99);
        for i in 0..6 {
            let f = s.sample(i, Profile::for_trial(i), 32);
            let replay: Recipe = f.recipe().to_string().parse().unwrap();
            assert_eq!(replay.build(32).unwrap().series(), f.series());
        }
    }

    #[test]
    fn profile_shapes() {
        let s = Sampler::new(3);
        for i in 0..50 {
            match s.recipe(i, Profile::Blaschke) {
                Recipe::Blaschke { zeros, .. } => {
                    assert!((1..=8).contains(&zeros.len()));
                    assert!(zeros.iter().all(|z| z.norm() <= SAMPLE_RADIUS));
                }
                other => panic!("unexpected {other:?}"),
            }
            match s.recipe(i, Profile::SchurParams) {
                Recipe::SchurParams { params } => assert!((2..=11).contains(&params.len())),
                other => panic!("unexpected {other:?}"),
            }
            match s.recipe(i, Profile::ConvexCombo) {
                Recipe::ConvexCombo { weights, parts } => {
                    assert!((2..=4).contains(&parts.len()));
                    assert!((weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn samples_respect_first_coefficient_bound() {
        let s = Sampler::new(2024);
        for i in 0..60 {
            let f = s.sample(i, Profile::for_trial(i), 64);
            let a0 = f.head_modulus();
            assert!(f.coeff_abs(1) <= 1.0 - a0 * a0 + 1e-12);
        }
    }
}
