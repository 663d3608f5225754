//! Fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symtensor_core::{ModelSpec, PrimeField, ProjPoint, VarietyModel};

pub fn model(name: &str, p: u64) -> VarietyModel<PrimeField> {
    VarietyModel::from_spec(&ModelSpec::builtin(name).expect("builtin"), &PrimeField::new(p).expect("prime")).expect("valid model")
}

pub fn smooth_points(model: &VarietyModel<PrimeField>, count: usize, seed: u64) -> Vec<ProjPoint<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| model.sample_smooth_point(&mut rng, 1000).expect("smooth point")).collect()
}

/// A dense `rows × cols` matrix with pseudo-random entries below `p`.
pub fn dense_rows(rows: usize, cols: usize, p: u64, seed: u64) -> Vec<Vec<u64>> {
    let mut state = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    state % p
                })
                .collect()
        })
        .collect()
}
