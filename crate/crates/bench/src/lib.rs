//! Seeded fixtures shared by the benchmarks.

use cocyclelab::group::{FiniteSupportMeasure, Group};
use cocyclelab::rep::{certify_isometric, Representation};
use cocyclelab::sample::{random_float_rep, random_measure, random_rational_rep};
use cocyclelab::scalar::Rational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// First certified rational representation of dimension ≤ `dim` drawn from `seed`.
pub fn rational_instance(g: &Group, dim: usize, seed: u64) -> (Representation<Rational>, FiniteSupportMeasure) {
    let mut rng = rng(seed);
    loop {
        let rho = random_rational_rep(&mut rng, g, dim).expect("sampler");
        if certify_isometric(&rho).is_ok() {
            return (rho, random_measure(&mut rng, g, 4).expect("sampler"));
        }
    }
}

pub fn float_instance(g: &Group, dim: usize, seed: u64) -> (Representation<f64>, FiniteSupportMeasure) {
    let mut rng = rng(seed);
    loop {
        let rho = random_float_rep(&mut rng, g, dim).expect("sampler");
        if certify_isometric(&rho).is_ok() {
            return (rho, random_measure(&mut rng, g, 4).expect("sampler"));
        }
    }
}
