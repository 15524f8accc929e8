//! Quantum invariants of torus knots.
//!
//! * [`knot`]: torus knot data, Alexander polynomial, the torsion function
//!   `τ(z) = 2 sinh(mz) sinh(pz)/sinh(mpz)` and its poles.
//! * [`exact`]: the Gaussian sum for the colored Jones ratio and the Kashaev
//!   invariant at `h = 2πi/k`, with exact integer phase reduction.
//! * [`series`]: exact rational power series for `x·τ(x)`.
//! * [`asymptotics`]: the large-`k` expansion of the Kashaev invariant and
//!   the `log|⟨L⟩_k|/k → 0` scan.
//! * [`quadrature`]: contour integrals that check the integral
//!   representations numerically.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod exact;
pub mod knot;
pub mod phase;
pub mod precision;
pub mod quadrature;
pub mod series;
pub mod sum;

/// Complex numbers in double precision.
pub type ComplexValue = num_complex::Complex64;

pub use asymptotics::{
    expansion, prefactor, residue_term, tail_term, volume_scan, ExpansionReport, VolumeRow,
    VolumeScan,
};
pub use error::{Error, Result};
pub use exact::{gauss_sum, jones_ratio, kashaev_exact, kashaev_limit_oracle, Color, Extrapolated};
pub use knot::{alexander, poles, torsion, validate_knot, PoleDatum, TorusKnot};
pub use phase::ExactPhase;
pub use precision::Precision;
pub use series::{even_derivative, x_tau_series, RationalSeries};
