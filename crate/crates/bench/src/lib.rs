//! Fixtures shared by the pipeline benchmarks.

use multipole_core::rng::stream;
use multipole_core::{sample_coefficients, CoefficientVector};

/// Realization `index` of a fixed benchmark seed.
pub fn fixture(ell: usize, index: u64) -> CoefficientVector {
    sample_coefficients(ell, &mut stream(0xBE7C, index)).expect("supported degree")
}
