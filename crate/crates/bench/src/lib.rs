//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seifertlab::fpgroup::IntMatrix;
use seifertlab::GroupPresentation;

pub fn triangle_235() -> GroupPresentation {
    GroupPresentation::from_strs(&["x", "y"], &["x^2", "y^3", "(x y)^5"]).expect("fixture parses")
}

/// Deterministic square matrices with entries in `-9..=9`.
pub fn random_matrices(n: usize, count: usize, seed: u64) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            IntMatrix::from_rows(&rows)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_stable() {
        assert_eq!(random_matrices(8, 3, 1), random_matrices(8, 3, 1));
        assert_eq!(triangle_235().relators().len(), 3);
    }
}
