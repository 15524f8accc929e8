//! Torus knot identity, Alexander polynomial and the torsion function
//! `τ(z) = 2 sinh(mz) sinh(pz) / sinh(mpz)` together with its poles.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ComplexValue;

/// The `(m, p)` torus knot. `m` and `p` are coprime and positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusKnot {
    m: u32,
    p: u32,
}

impl TorusKnot {
    pub fn new(m: i64, p: i64) -> Result<Self> {
        if m < 1 || p < 1 {
            return Err(Error::NonPositive { m, p });
        }
        if m > u32::MAX as i64 || p > u32::MAX as i64 {
            return Err(Error::InvalidArgument(format!("m={m}, p={p} too large")));
        }
        if m.gcd(&p) != 1 {
            return Err(Error::NotCoprime { m, p });
        }
        Ok(Self {
            m: m as u32,
            p: p as u32,
        })
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// The product `mp`.
    #[inline]
    pub fn mp(&self) -> u64 {
        self.m as u64 * self.p as u64
    }

    /// `(1, p)` and `(m, 1)` are unknots.
    pub fn is_unknot(&self) -> bool {
        self.m == 1 || self.p == 1
    }

    pub fn swapped(&self) -> Self {
        Self {
            m: self.p,
            p: self.m,
        }
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.m, self.p)
    }
}

pub fn validate_knot(m: i64, p: i64) -> Result<TorusKnot> {
    TorusKnot::new(m, p)
}

pub(crate) fn ensure_finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Overflow(format!("{what} is not representable")))
    }
}

/// Integer coefficients (ascending) of
/// `(t^{mp} - 1)(t - 1) / ((t^m - 1)(t^p - 1))`, a polynomial of degree
/// `(m-1)(p-1)`.
pub fn alexander_coefficients(knot: TorusKnot) -> Vec<i64> {
    let (m, p, mp) = (knot.m as usize, knot.p as usize, knot.mp() as usize);
    // numerator (t^{mp} - 1)(t - 1) = t^{mp+1} - t^{mp} - t + 1
    let mut num = vec![0i64; mp + 2];
    num[mp + 1] += 1;
    num[mp] -= 1;
    num[1] -= 1;
    num[0] += 1;
    // exact division by t^a - 1: q_i = q_{i-a} - n_i, from the low end
    let divide = |n: &[i64], a: usize| -> Vec<i64> {
        let deg = n.len() - 1 - a;
        let mut q = vec![0i64; deg + 1];
        for i in 0..=deg {
            let prev = if i >= a { q[i - a] } else { 0 };
            q[i] = prev - n[i];
        }
        q
    };
    let q = divide(&num, m);
    divide(&q, p)
}

/// Alexander polynomial `Δ(t)` in the symmetric normalization
/// `Δ(t) = Δ(1/t)`, `Δ(1) = 1`.
///
/// Evaluated as `t^{-(m-1)(p-1)/2}` times an integer polynomial, so the
/// removable singularities of the quotient form at roots of unity are
/// handled; only `t = 0` is rejected.
pub fn alexander(knot: TorusKnot, t: ComplexValue) -> Result<ComplexValue> {
    if t.norm() == 0.0 || !t.re.is_finite() || !t.im.is_finite() {
        return Err(Error::DomainError(format!("t = {t} is not a valid argument")));
    }
    let coeffs = alexander_coefficients(knot);
    let half_degree = i32::try_from((coeffs.len() - 1) / 2)
        .map_err(|_| Error::Overflow("Alexander polynomial degree too large".into()))?;
    let poly = coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c as f64);
    ensure_finite(poly * t.powi(-half_degree), "Alexander polynomial")
}

/// Quotient form of the Alexander polynomial given a square root `s` of
/// `t`. The value does not depend on which of the two roots is passed.
/// Fails where a denominator factor vanishes.
pub fn alexander_from_root(knot: TorusKnot, s: ComplexValue) -> Result<ComplexValue> {
    let si = s.inv();
    let half = |a: u64| -> Result<(Complex64, f64)> {
        let a = i32::try_from(a)
            .map_err(|_| Error::Overflow(format!("exponent {a}/2 too large")))?;
        let (u, v) = (s.powi(a), si.powi(a));
        Ok((u - v, u.norm() + v.norm()))
    };
    let (num_mp, _) = half(knot.mp())?;
    let (num_1, _) = half(1)?;
    let (den_m, scale_m) = half(knot.m as u64)?;
    let (den_p, scale_p) = half(knot.p as u64)?;
    if den_m.norm() <= 1e-12 * scale_m || den_p.norm() <= 1e-12 * scale_p {
        return Err(Error::DomainError(format!(
            "denominator of the Alexander polynomial vanishes at t = {}",
            s * s
        )));
    }
    ensure_finite(num_mp * num_1 / (den_m * den_p), "Alexander polynomial")
}

/// `|mp z|` below which the torsion function is evaluated from its Taylor
/// series.
pub const SERIES_RADIUS: f64 = 0.25;

/// Relative threshold for pole proximity in [`torsion`].
pub const POLE_TOLERANCE: f64 = 1e-10;

const SERIES_TERMS: usize = 14;

/// Floating coefficients `c_1, c_3, ...` of `τ(z) = Σ c_{2n-1} z^{2n-1}`.
fn torsion_taylor(knot: TorusKnot) -> [f64; SERIES_TERMS] {
    // Power series in w = z^2 for sinh(a z)/z = Σ a^{2n+1} w^n / (2n+1)!
    let sinh_over_z = |a: f64| -> [f64; SERIES_TERMS + 1] {
        let mut out = [0.0; SERIES_TERMS + 1];
        let mut term = a;
        for (n, c) in out.iter_mut().enumerate() {
            *c = term;
            term *= a * a / ((2 * n + 2) as f64 * (2 * n + 3) as f64);
        }
        out
    };
    let (m, p) = (knot.m as f64, knot.p as f64);
    let sm = sinh_over_z(m);
    let sp = sinh_over_z(p);
    let sd = sinh_over_z(m * p);
    // numerator / z^2 = sinh(mz)/z * sinh(pz)/z
    let mut num = [0.0; SERIES_TERMS + 1];
    for i in 0..=SERIES_TERMS {
        for j in 0..=SERIES_TERMS - i {
            num[i + j] += sm[i] * sp[j];
        }
    }
    // τ(z)/z = 2 num / (sinh(mpz)/z), long division in w
    let mut quo = [0.0; SERIES_TERMS];
    for n in 0..SERIES_TERMS {
        let mut acc = 2.0 * num[n];
        for i in 0..n {
            acc -= quo[i] * sd[n - i];
        }
        quo[n] = acc / sd[0];
    }
    quo
}

fn torsion_series(knot: TorusKnot, z: Complex64) -> Complex64 {
    let coeffs = torsion_taylor(knot);
    let w = z * z;
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * w + c;
    }
    acc * z
}

/// `τ(z) = 2 sinh(mz) sinh(pz) / sinh(mpz)` for complex `z`.
///
/// Near zero the Taylor series is used (`τ(0) = 0`); for `|Re z| > 1/2` a
/// factored exponential form avoids overflow. Removable singularities at
/// `iπj/(mp)` with `m | j` or `p | j` are evaluated through the derivative
/// quotient; genuine poles raise [`Error::PoleError`].
pub fn torsion(knot: TorusKnot, z: ComplexValue) -> Result<ComplexValue> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::DomainError(format!("z = {z} is not finite")));
    }
    let (m, p, mp) = (knot.m as f64, knot.p as f64, knot.mp() as f64);
    if mp * z.norm() < SERIES_RADIUS {
        return Ok(torsion_series(knot, z));
    }
    if z.re.abs() > 0.5 {
        let (sign, w) = if z.re > 0.0 { (1.0, z) } else { (-1.0, -z) };
        let em = (-2.0 * m * w).exp();
        let ep = (-2.0 * p * w).exp();
        let emp = (-2.0 * mp * w).exp();
        let lead = ((m + p - mp) * w).exp();
        let val = lead * (1.0 - em) * (1.0 - ep) / (1.0 - emp) * sign;
        return ensure_finite(val, "torsion");
    }
    let den = (mp * z).sinh();
    let sm = (m * z).sinh();
    let sp = (p * z).sinh();
    let num = sm * sp;
    if den.norm() < POLE_TOLERANCE * num.norm().max(1.0) {
        let j = (z.im * mp / PI).round() as i64;
        if j.rem_euclid(knot.m as i64) == 0 || j.rem_euclid(knot.p as i64) == 0 {
            let dnum = m * (m * z).cosh() * sp + p * sm * (p * z).cosh();
            let dden = mp * (mp * z).cosh();
            return ensure_finite(2.0 * dnum / dden, "torsion");
        }
        return Err(Error::PoleError { re: z.re, im: z.im });
    }
    ensure_finite(2.0 * num / den, "torsion")
}

/// A pole of `τ(πz)` at `z_j = i j/(mp)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleDatum {
    pub j: u64,
    pub location: ComplexValue,
    pub residue: ComplexValue,
}

/// `sin(π j / n)`, exactly zero when `n | j`.
pub(crate) fn sin_pi_ratio(j: i64, n: i64) -> f64 {
    let r = j.rem_euclid(2 * n);
    if r % n == 0 {
        0.0
    } else {
        (PI * r as f64 / n as f64).sin()
    }
}

/// Analytic residue of `τ(πz)` at `z_j`:
/// `(-1)^{j+1} 2 sin(πj/m) sin(πj/p) / (mpπ)`.
pub fn pole_residue(knot: TorusKnot, j: u64) -> f64 {
    let (m, p) = (knot.m as i64, knot.p as i64);
    let j = j as i64;
    let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
    sign * 2.0 * sin_pi_ratio(j, m) * sin_pi_ratio(j, p) / (knot.mp() as f64 * PI)
}

/// Poles of `τ(πz)` strictly between `0` and `i`; `mp - 1` entries.
pub fn poles(knot: TorusKnot) -> Vec<PoleDatum> {
    let mp = knot.mp();
    (1..mp)
        .map(|j| PoleDatum {
            j,
            location: Complex64::new(0.0, j as f64 / mp as f64),
            residue: Complex64::new(pole_residue(knot, j), 0.0),
        })
        .collect()
}
