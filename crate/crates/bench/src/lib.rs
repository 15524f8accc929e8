//! Shared fixtures for the criterion benchmarks.

use torusq_core::{validate_knot, TorusKnot};

/// Knots exercised by every benchmark group.
pub fn bench_knots() -> Vec<TorusKnot> {
    [(2, 3), (3, 4), (2, 7)]
        .into_iter()
        .map(|(m, p)| validate_knot(m, p).expect("coprime fixture"))
        .collect()
}
