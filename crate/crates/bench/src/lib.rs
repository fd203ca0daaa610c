//! Fixtures shared by the benchmarks.

use robinson::testkit::gen_toeplitz;
use robinson::{parse_matrix, DissimilaritySpace};

const EXAMPLE19: &str = include_str!("../../core/tests/data/example19.txt");

/// Sizes swept by the scaling benchmarks.
pub const SIZES: [usize; 3] = [250, 500, 1000];

/// A shuffled Toeplitz instance with values in `{0,1,2}`.
pub fn toeplitz(n: usize, seed: u64) -> DissimilaritySpace {
    gen_toeplitz(n, 2, seed, true).space
}

/// The 19-point example shipped with the core tests.
pub fn example19() -> DissimilaritySpace {
    parse_matrix(EXAMPLE19).expect("fixture parses")
}

pub fn example19_text() -> &'static str {
    EXAMPLE19
}
