//! Unit-modulus phases `exp(iπE/(2N))` carried as an integer residue
//! `E mod 4N`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rug::float::Constant;
use rug::{Complex, Float};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactPhase {
    residue: u64,
    n: u64,
}

impl ExactPhase {
    /// Phase `exp(iπ·exponent/(2n))`; the exponent is reduced mod `4n`.
    pub fn new(exponent: i128, n: u64) -> Self {
        assert!(n > 0, "phase denominator must be positive");
        let modulus = 4 * n as i128;
        Self {
            residue: exponent.rem_euclid(modulus) as u64,
            n,
        }
    }

    /// Residue `E` in `0..4n`.
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn denominator(&self) -> u64 {
        self.n
    }

    /// `i^q · exp(iπr/(2n))` with `E = qn + r`, so the float angle never
    /// exceeds `π/2`.
    pub fn value(&self) -> Complex64 {
        let q = self.residue / self.n;
        let r = self.residue % self.n;
        let (s, c) = (FRAC_PI_2 * (r as f64 / self.n as f64)).sin_cos();
        match q {
            0 => Complex64::new(c, s),
            1 => Complex64::new(-s, c),
            2 => Complex64::new(-c, -s),
            _ => Complex64::new(s, -c),
        }
    }

    /// Same as [`ExactPhase::value`] at `prec` bits.
    pub fn value_mp(&self, prec: u32) -> Complex {
        let q = self.residue / self.n;
        let r = self.residue % self.n;
        let mut angle = Float::with_val(prec, Constant::Pi) * r;
        angle /= 2 * self.n;
        let (s, c) = angle.sin_cos(Float::new(prec));
        match q {
            0 => Complex::with_val(prec, (c, s)),
            1 => Complex::with_val(prec, (-s, c)),
            2 => Complex::with_val(prec, (-c, -s)),
            _ => Complex::with_val(prec, (s, -c)),
        }
    }

    pub fn mul(&self, other: &ExactPhase) -> ExactPhase {
        assert_eq!(self.n, other.n, "phases with different denominators");
        ExactPhase::new(self.residue as i128 + other.residue as i128, self.n)
    }
}
