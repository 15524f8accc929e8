//! Gaussian sum for torus knots, the colored Jones ratio `J_{L,k}/J_{O,k}`,
//! and the Kashaev invariant as its limit at `h = 2πi/k`.
//!
//! The summation index `r` runs over half-integers when `k` is even, so the
//! code works with `s = 2r ∈ {-(k-1), -(k-3), ..., k-1}` and the integer
//! exponent `E = mp s² + 2s(m + εp) + 2ε`, each term being `ε·exp(hE/4)`.
//! At the root of unity the phase `exp(iπE/(2k))` is reduced mod `4k`
//! before any floating point is involved.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::knot::{ensure_finite, TorusKnot};
use crate::phase::ExactPhase;
use crate::precision::Precision;
use crate::sum::pairwise_sum;
use crate::ComplexValue;

/// The color `k ≥ 1`: dimension of the quantum group module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(u64);

impl Color {
    pub fn new(k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidColor(k));
        }
        Ok(Self(k as u64))
    }

    #[inline]
    pub fn get(&self) -> u64 {
        self.0
    }

    /// `2πi/k`.
    pub fn root_of_unity(&self) -> Complex64 {
        Complex64::new(0.0, 2.0 * PI / self.0 as f64)
    }
}

/// Work below this many terms is not worth splitting across threads.
const PAR_THRESHOLD: u64 = 4096;

/// One `(ε, s)` pair of the Gaussian sum and its integer exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumTerm {
    pub eps: i8,
    pub s: i64,
    pub exponent: i128,
}

/// Terms in the fixed order `ε = +1` then `ε = -1`, `s` ascending.
pub fn sum_terms(knot: TorusKnot, k: Color) -> impl Iterator<Item = SumTerm> + Clone {
    let (m, p, mp) = (knot.m() as i128, knot.p() as i128, knot.mp() as i128);
    let k = k.get() as i64;
    [1i8, -1].into_iter().flat_map(move |eps| {
        (0..k).map(move |i| {
            let s = 2 * i - (k - 1);
            let (e, s128) = (eps as i128, s as i128);
            SumTerm {
                eps,
                s,
                exponent: mp * s128 * s128 + 2 * s128 * (m + e * p) + 2 * e,
            }
        })
    })
}

fn max_abs_exponent(knot: TorusKnot, k: Color) -> f64 {
    let km1 = (k.get() - 1) as f64;
    knot.mp() as f64 * km1 * km1 + 2.0 * km1 * (knot.m() + knot.p()) as f64 + 2.0
}

fn collect_terms<F>(knot: TorusKnot, k: Color, f: F) -> Vec<Complex64>
where
    F: Fn(SumTerm) -> Complex64 + Sync + Send,
{
    if 2 * k.get() >= PAR_THRESHOLD {
        let terms: Vec<SumTerm> = sum_terms(knot, k).collect();
        terms.into_par_iter().map(f).collect()
    } else {
        sum_terms(knot, k).map(f).collect()
    }
}

/// `Σ_{ε=±1} Σ_r ε exp(h(mp r² + r(m+εp) + ε/2))`, which equals
/// `2 sinh(kh/2) J_{L,k}(h)/J_{O,k}(h)`.
pub fn gauss_sum(knot: TorusKnot, k: Color, h: ComplexValue) -> Result<ComplexValue> {
    let reach = h.re.abs() * max_abs_exponent(knot, k) / 4.0;
    if !(reach < 700.0) {
        return Err(Error::Overflow(format!(
            "|Re h|·max|E|/4 = {reach:.1} exceeds the double exponent range"
        )));
    }
    let quarter = h / 4.0;
    let terms = collect_terms(knot, k, |t| {
        let v = (quarter * t.exponent as f64).exp();
        if t.eps > 0 {
            v
        } else {
            -v
        }
    });
    ensure_finite(pairwise_sum(&terms), "Gaussian sum")
}

/// [`gauss_sum`] evaluated in `prec`-bit arithmetic.
pub fn gauss_sum_mp(knot: TorusKnot, k: Color, h: &Complex, prec: u32) -> Complex {
    let quarter = Complex::with_val(prec, h / 4u32);
    let mut acc = Complex::new(prec);
    for t in sum_terms(knot, k) {
        let e = Float::with_val(prec, t.exponent);
        let v = Complex::with_val(prec, &quarter * &e).exp();
        if t.eps > 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    acc
}

/// Threshold on `|2 sinh(kh/2)|` below which [`jones_ratio`] refuses to divide.
pub const DIVISION_TOLERANCE: f64 = 1e-12;

/// `J_{L,k}(h) / J_{O,k}(h) = gauss_sum / (2 sinh(kh/2))`.
pub fn jones_ratio(knot: TorusKnot, k: Color, h: ComplexValue) -> Result<ComplexValue> {
    let den = 2.0 * (h * (k.get() as f64 / 2.0)).sinh();
    if den.norm() < DIVISION_TOLERANCE {
        return Err(Error::DivisionNearZero(den.norm()));
    }
    let num = gauss_sum(knot, k, h)?;
    ensure_finite(num / den, "Jones ratio")
}

/// Kashaev invariant `⟨L⟩_k = lim_{h→2πi/k} J_{L,k}(h)/J_{O,k}(h)`.
///
/// Both the Gaussian sum and `2 sinh(kh/2)` vanish at the root of unity, so
/// the limit is the ratio of derivatives:
/// `⟨L⟩_k = -(1/k) Σ ε (E/4) exp(iπE/(2k))`.
pub fn kashaev_exact(knot: TorusKnot, k: Color) -> ComplexValue {
    let kk = k.get();
    let terms = collect_terms(knot, k, |t| {
        let w = ExactPhase::new(t.exponent, kk).value();
        w * (t.eps as f64 * t.exponent as f64 / 4.0)
    });
    -pairwise_sum(&terms) / kk as f64
}

/// [`kashaev_exact`] in `prec`-bit arithmetic.
pub fn kashaev_exact_mp(knot: TorusKnot, k: Color, prec: u32) -> Complex {
    let kk = k.get();
    let mut acc = Complex::new(prec);
    for t in sum_terms(knot, k) {
        let w = ExactPhase::new(t.exponent, kk).value_mp(prec);
        let c = Float::with_val(prec, t.eps as i128 * t.exponent) / 4u32;
        acc += w * c;
    }
    -acc / kk
}

/// Kashaev invariant at the requested working precision, rounded to double.
pub fn kashaev_with_precision(knot: TorusKnot, k: Color, prec: Precision) -> ComplexValue {
    match prec {
        Precision::Double => kashaev_exact(knot, k),
        Precision::Bits(b) => {
            let v = kashaev_exact_mp(knot, k, b);
            Complex64::new(v.real().to_f64(), v.imag().to_f64())
        }
    }
}

/// An extrapolated limit with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: ComplexValue,
    pub error: f64,
    /// Limits along the real and the imaginary approach directions.
    pub directional: [ComplexValue; 2],
}

/// Geometric ladder `δ_i = 2^{-i}/(mp k²)`, `i = 0..10`.
///
/// Along the real direction the summands grow like `exp(δ·mp k²/4)`, so the
/// first step keeps them `O(1)`; it also sits far inside the analyticity
/// radius `2π/k` of the ratio around the root of unity.
pub fn default_steps(knot: TorusKnot, k: Color) -> Vec<f64> {
    let kf = k.get() as f64;
    let d0 = 1.0 / (knot.mp() as f64 * kf * kf);
    (0..10).map(|i| d0 * 0.5f64.powi(i)).collect()
}

/// Neville–Richardson extrapolation of samples `f(δ_i)` to `δ = 0`,
/// assuming `f` is analytic in `δ`. Returns the diagonal entry whose change
/// from the previous diagonal entry is smallest, with that change as the
/// error estimate.
pub fn richardson(steps: &[f64], samples: &[Complex64]) -> (Complex64, f64) {
    assert_eq!(steps.len(), samples.len());
    assert!(!steps.is_empty());
    let n = steps.len();
    let mut table: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut best = (samples[0], f64::INFINITY);
    for i in 0..n {
        let mut row = Vec::with_capacity(i + 1);
        row.push(samples[i]);
        for j in 1..=i {
            let a = row[j - 1];
            let b = table[i - 1][j - 1];
            row.push(a + (a - b) * (steps[i] / (steps[i - j] - steps[i])));
        }
        if i > 0 {
            let err = (row[i] - table[i - 1][i - 1]).norm();
            if err < best.1 {
                best = (row[i], err);
            }
        }
        table.push(row);
    }
    best
}

/// Independent evaluation of the Kashaev invariant: samples
/// [`jones_ratio`] at `2πi/k + δ` and `2πi/k + iδ` and extrapolates both
/// ladders to `δ → 0`.
pub fn kashaev_limit_oracle(knot: TorusKnot, k: Color, steps: &[f64]) -> Result<Extrapolated> {
    if steps.is_empty() {
        return Err(Error::InvalidArgument("empty step ladder".into()));
    }
    if steps.iter().any(|d| !(*d > 0.0) || !d.is_finite())
        || steps.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::InvalidArgument(
            "steps must be positive and strictly decreasing".into(),
        ));
    }
    let h0 = k.root_of_unity();
    let sample = |dir: Complex64| -> Result<Vec<Complex64>> {
        steps
            .iter()
            .map(|d| jones_ratio(knot, k, h0 + dir * *d))
            .collect()
    };
    let real = sample(Complex64::new(1.0, 0.0))?;
    let imag = sample(Complex64::new(0.0, 1.0))?;

    if steps.len() == 1 {
        let value = (real[0] + imag[0]) / 2.0;
        let error = (real[0] - imag[0]).norm() + steps[0] * value.norm();
        return Ok(Extrapolated {
            value,
            error,
            directional: [real[0], imag[0]],
        });
    }

    let (lr, er) = richardson(steps, &real);
    let (li, ei) = richardson(steps, &imag);
    let value = (lr + li) / 2.0;
    let floor = 1e-13 * value.norm();
    let est = er.max(ei).max(floor);
    let gap = (lr - li).norm();
    if gap > 10.0 * est {
        return Err(Error::NoConvergence(format!(
            "directional limits differ by {gap:e}, estimate {est:e}"
        )));
    }
    Ok(Extrapolated {
        value,
        error: est.max(gap),
        directional: [lr, li],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::validate_knot;

    fn knot(m: i64, p: i64) -> TorusKnot {
        validate_knot(m, p).unwrap()
    }

    fn col(k: i64) -> Color {
        Color::new(k).unwrap()
    }

    /// Term-by-term enumeration over half-integer `r`, independent of the
    /// integer encoding.
    fn brute_gauss(knot: TorusKnot, k: u64, h: Complex64) -> Complex64 {
        let (m, p) = (knot.m() as f64, knot.p() as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for eps in [1.0, -1.0] {
            let mut r = -((k - 1) as f64) / 2.0;
            while r <= (k - 1) as f64 / 2.0 + 1e-9 {
                acc += eps * (h * (m * p * r * r + r * (m + eps * p) + eps / 2.0)).exp();
                r += 1.0;
            }
        }
        acc
    }

    #[test]
    fn color_validation() {
        assert!(Color::new(0).is_err());
        assert_eq!(col(5).get(), 5);
    }

    #[test]
    fn term_count_and_parity() {
        let ts: Vec<_> = sum_terms(knot(2, 3), col(4)).collect();
        assert_eq!(ts.len(), 8);
        assert_eq!(ts[0].s, -3);
        assert_eq!(ts[3].s, 3);
        assert!(ts.iter().all(|t| t.s % 2 != 0));
    }

    #[test]
    fn k_one_is_two_sinh() {
        let h = Complex64::new(0.37, -0.2);
        let v = gauss_sum(knot(2, 3), col(1), h).unwrap();
        assert!((v - 2.0 * (h / 2.0).sinh()).norm() < 1e-15);
        let r = jones_ratio(knot(2, 3), col(1), Complex64::new(0.1, 0.0)).unwrap();
        assert!((r - 1.0).norm() < 1e-14);
    }

    #[test]
    fn vanishes_at_zero() {
        for (m, p) in [(2, 3), (3, 7), (1, 4)] {
            for k in [1, 2, 5, 12] {
                let v = gauss_sum(knot(m, p), col(k), Complex64::new(0.0, 0.0)).unwrap();
                assert_eq!(v, Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        let h = Complex64::new(0.1, 0.0);
        let v = gauss_sum(knot(2, 3), col(3), h).unwrap();
        let b = brute_gauss(knot(2, 3), 3, h);
        assert!((v - b).norm() <= 1e-13 * b.norm());
        let h = Complex64::new(0.2, 0.0);
        let r = jones_ratio(knot(2, 3), col(4), h).unwrap();
        let rb = brute_gauss(knot(2, 3), 4, h) / (2.0 * (2.0 * h).sinh());
        assert!((r - rb).norm() <= 1e-13 * rb.norm());
    }

    #[test]
    fn frozen_values() {
        // mpmath, 40 digits, direct enumeration over half-integer r
        let v = gauss_sum(knot(2, 3), col(3), Complex64::new(0.1, 0.0)).unwrap();
        assert!((v.re - GAUSS_23_K3_H01).abs() < 1e-13 * GAUSS_23_K3_H01.abs());
        let r = jones_ratio(knot(2, 3), col(4), Complex64::new(0.2, 0.0)).unwrap();
        assert!((r.re - JONES_23_K4_H02).abs() < 1e-13 * JONES_23_K4_H02.abs());
        let kv = kashaev_exact(knot(2, 3), col(5));
        assert!((kv - KASHAEV_23_K5).norm() < 1e-12 * KASHAEV_23_K5.norm());
    }

    const GAUSS_23_K3_H01: f64 = 0.936_215_809_789_295_9;
    const JONES_23_K4_H02: f64 = 61.022_385_264_062_82;
    const KASHAEV_23_K5: Complex64 =
        Complex64::new(-4.163_118_960_624_632, 11.082_163_080_980_085);

    #[test]
    fn root_of_unity_division_refused() {
        let k = col(7);
        let r = jones_ratio(knot(2, 3), k, k.root_of_unity());
        assert!(matches!(r, Err(Error::DivisionNearZero(_))));
    }

    #[test]
    fn overflow_detected() {
        let r = gauss_sum(knot(2, 3), col(200), Complex64::new(1.0, 0.0));
        assert!(matches!(r, Err(Error::Overflow(_))));
    }

    #[test]
    fn kashaev_k_one() {
        // E = ±2 only: -(1/1)[(1/2)e^{iπ} + (1/2)e^{iπ·(-2 mod 4)/2}] = 1
        let v = kashaev_exact(knot(2, 3), col(1));
        assert!((v - 1.0).norm() < 1e-15, "{v}");
    }

    #[test]
    fn vanishing_at_root_of_unity() {
        for (m, p) in [(2, 3), (3, 4), (2, 5)] {
            let kn = knot(m, p);
            for k in [1, 2, 3, 10, 37, 100, 500] {
                let kk = col(k);
                let v = gauss_sum(kn, kk, kk.root_of_unity()).unwrap();
                let bound = 1e-10 * (k * k) as f64 * kn.mp() as f64;
                assert!(v.norm() <= bound, "{kn} k={k} |v|={}", v.norm());
            }
        }
    }

    #[test]
    fn kashaev_matches_oracle() {
        for (m, p, k) in [(2, 3, 3), (2, 3, 5), (1, 2, 4), (3, 5, 11)] {
            let kn = knot(m, p);
            let kk = col(k);
            let exact = kashaev_exact(kn, kk);
            let lim = kashaev_limit_oracle(kn, kk, &default_steps(kn, kk)).unwrap();
            let rel = (exact - lim.value).norm() / exact.norm();
            assert!(rel < 1e-8, "{kn} k={k} rel={rel:e}");
            assert!((exact - lim.value).norm() <= 10.0 * lim.error.max(1e-12 * exact.norm()));
        }
    }

    #[test]
    fn oracle_single_step() {
        let kk = col(4);
        let r = kashaev_limit_oracle(knot(2, 3), kk, &[1e-3]).unwrap();
        let exact = kashaev_exact(knot(2, 3), kk);
        assert!(r.error > 1e-6);
        assert!((r.value - exact).norm() < 10.0 * r.error);
    }

    #[test]
    fn oracle_rejects_bad_ladder() {
        let kk = col(4);
        assert!(kashaev_limit_oracle(knot(2, 3), kk, &[1e-3, 1e-2]).is_err());
        assert!(kashaev_limit_oracle(knot(2, 3), kk, &[]).is_err());
        assert!(kashaev_limit_oracle(knot(2, 3), kk, &[-1e-3]).is_err());
    }

    #[test]
    fn richardson_polynomial_is_exact() {
        let steps: Vec<f64> = (0..6).map(|i| 0.1 * 0.5f64.powi(i)).collect();
        let f = |d: f64| Complex64::new(3.0 - 2.0 * d + 5.0 * d * d, d * d * d);
        let samples: Vec<_> = steps.iter().map(|&d| f(d)).collect();
        let (v, _) = richardson(&steps, &samples);
        assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn mp_agrees_with_double() {
        let kn = knot(3, 4);
        let kk = col(333);
        let lo = kashaev_exact(kn, kk);
        let hi = kashaev_with_precision(kn, kk, Precision::Bits(128));
        assert!((lo - hi).norm() < 1e-12 * hi.norm());
        let h = Complex64::new(0.01, 0.3);
        let g = gauss_sum(kn, col(9), h).unwrap();
        let gm = gauss_sum_mp(kn, col(9), &Complex::with_val(128, (h.re, h.im)), 128);
        assert!((g.re - gm.real().to_f64()).abs() < 1e-12 * g.norm());
    }

    #[test]
    fn parallel_path_is_deterministic() {
        let kn = knot(2, 3);
        let kk = col(5000);
        let a = kashaev_exact(kn, kk);
        let b = kashaev_exact(kn, kk);
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = pool.install(|| kashaev_exact(kn, kk));
        assert_eq!(a, c);
    }
}
