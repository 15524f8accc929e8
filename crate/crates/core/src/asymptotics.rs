//! Large-color expansion of the Kashaev invariant of a torus knot.
//!
//! ```text
//! ⟨L⟩_k · exp(iπ(m/p + p/m)/(2k)) = Σ_{j=1}^{mp-1} R_j(k) + T(k)
//! R_j(k) = 2 (2mp/k)^{-3/2} e^{iπ/4} (-1)^{(k-1)j} e^{-iπkj²/(2mp)} j² sin(πj/m) sin(πj/p)
//! T(k)   ~ (1/4) e^{iπkmp/2} Σ_{n≥1} (1/n!) (iπ/(2kmp))^{n-1} ∂^{2n}(xτ(x))|_{x=0}
//! ```
//!
//! `R_j` are the pole contributions picked up when the rotated contour is
//! shifted past `z_j = ij/(mp)`; `T` is the asymptotic (divergent) series of
//! the shifted integral. The phase in front of `⟨L⟩_k` follows from
//! differentiating the Gaussian integral representation at `h = 2πi/k`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{kashaev_exact, kashaev_with_precision, Color};
use crate::knot::{sin_pi_ratio, TorusKnot};
use crate::phase::ExactPhase;
use crate::precision::Precision;
use crate::series::{even_derivative, x_tau_series, RationalSeries};
use crate::sum::pairwise_sum;
use crate::ComplexValue;

/// Largest tail order scanned for the optimal truncation point.
pub const OPTIMAL_SCAN_DEPTH: usize = 30;

/// `exp(iπ(m/p + p/m)/(2k)) = exp(iπ(m² + p²)/(2kmp))`.
pub fn prefactor(knot: TorusKnot, k: Color) -> ComplexValue {
    let (m, p) = (knot.m() as i128, knot.p() as i128);
    ExactPhase::new(m * m + p * p, k.get() * knot.mp()).value()
}

/// Contribution of the pole `z_j = ij/(mp)`.
pub fn residue_term(knot: TorusKnot, k: Color, j: i64) -> Result<ComplexValue> {
    let mp = knot.mp() as i64;
    if j < 1 || j > mp - 1 {
        return Err(Error::IndexOutOfRange {
            index: j,
            lo: 1,
            hi: mp - 1,
        });
    }
    let amp = sin_pi_ratio(j, knot.m() as i64) * sin_pi_ratio(j, knot.p() as i64);
    if amp == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let kk = k.get() as i128;
    let (mp128, j128) = (mp as i128, j as i128);
    // e^{iπ/4} (-1)^{(k-1)j} e^{-iπkj²/(2mp)} as one phase with denominator 2mp
    let flip = if ((kk - 1) * j128) % 2 != 0 { 4 * mp128 } else { 0 };
    let phase = ExactPhase::new(mp128 + flip - 2 * kk * j128 * j128, 2 * mp as u64).value();
    let scale = 2.0 * (k.get() as f64 / (2.0 * mp as f64)).powf(1.5) * (j * j) as f64 * amp;
    Ok(phase * scale)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn tail_term_from_series(
    knot: TorusKnot,
    k: Color,
    series: &RationalSeries,
    n: usize,
) -> Result<ComplexValue> {
    if n < 1 {
        return Err(Error::InvalidArgument("tail index starts at 1".into()));
    }
    let coef = even_derivative(series, n)? / BigRational::from_integer(factorial(n));
    let coef = coef.to_f64().unwrap_or(f64::INFINITY);
    let kmp = (k.get() * knot.mp()) as f64;
    let mag = 0.25 * coef * (PI / (2.0 * kmp)).powi(n as i32 - 1);
    // e^{iπkmp/2} · i^{n-1}
    let quarter = (k.get() as u128 * knot.mp() as u128 + n as u128 - 1) % 4;
    let v = match quarter {
        0 => Complex64::new(mag, 0.0),
        1 => Complex64::new(0.0, mag),
        2 => Complex64::new(-mag, 0.0),
        _ => Complex64::new(0.0, -mag),
    };
    crate::knot::ensure_finite(v, "tail term")
}

/// Term `n` of the power-series tail.
pub fn tail_term(knot: TorusKnot, k: Color, n: usize) -> Result<ComplexValue> {
    let series = x_tau_series(knot, (2 * n + 2).max(4))?;
    tail_term_from_series(knot, k, &series, n)
}

/// Tail terms `1..=n_max` sharing one series computation.
pub fn tail_terms(knot: TorusKnot, k: Color, n_max: usize) -> Result<Vec<ComplexValue>> {
    let series = x_tau_series(knot, 2 * n_max + 4)?;
    (1..=n_max)
        .map(|n| tail_term_from_series(knot, k, &series, n))
        .collect()
}

/// Index `n ≤ depth` of the smallest tail term: the usual optimal
/// truncation point of an asymptotic series.
pub fn optimal_truncation(knot: TorusKnot, k: Color, depth: usize) -> Result<usize> {
    let terms = tail_terms(knot, k, depth)?;
    Ok(terms
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, _)| i + 1)
        .unwrap_or(1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub knot: TorusKnot,
    pub k: Color,
    pub n_max: usize,
    pub exact: ComplexValue,
    pub prefactor: ComplexValue,
    pub residue_terms: Vec<(u64, ComplexValue)>,
    pub tail_terms: Vec<(usize, ComplexValue)>,
    pub reconstructed: ComplexValue,
    pub abs_error: f64,
    pub rel_error: f64,
    pub optimal_truncation: usize,
}

/// Compare `prefactor·⟨L⟩_k` with the residue sum plus `n_max` tail terms.
pub fn expansion(knot: TorusKnot, k: Color, n_max: usize) -> Result<ExpansionReport> {
    if k.get() < 2 {
        return Err(Error::InvalidArgument(format!("expansion needs k ≥ 2 (got {})", k.get())));
    }
    if !(1..=10).contains(&n_max) {
        return Err(Error::InvalidArgument(format!("n_max must be in 1..=10 (got {n_max})")));
    }
    let exact = kashaev_exact(knot, k);
    let pre = prefactor(knot, k);
    let residue_terms = (1..knot.mp())
        .map(|j| residue_term(knot, k, j as i64).map(|v| (j, v)))
        .collect::<Result<Vec<_>>>()?;
    let series = x_tau_series(knot, 2 * OPTIMAL_SCAN_DEPTH + 2)?;
    let all_tail = (1..=OPTIMAL_SCAN_DEPTH)
        .map(|n| tail_term_from_series(knot, k, &series, n))
        .collect::<Result<Vec<_>>>()?;
    let optimal_truncation = all_tail
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, _)| i + 1)
        .unwrap_or(1);
    let tail_terms: Vec<(usize, ComplexValue)> =
        all_tail.iter().take(n_max).enumerate().map(|(i, v)| (i + 1, *v)).collect();

    let ordered: Vec<Complex64> = residue_terms
        .iter()
        .map(|(_, v)| *v)
        .chain(tail_terms.iter().map(|(_, v)| *v))
        .collect();
    let reconstructed = pairwise_sum(&ordered);
    let abs_error = (exact * pre - reconstructed).norm();
    let rel_error = if exact.norm() > 0.0 {
        abs_error / exact.norm()
    } else {
        f64::INFINITY
    };
    Ok(ExpansionReport {
        knot,
        k,
        n_max,
        exact,
        prefactor: pre,
        residue_terms,
        tail_terms,
        reconstructed,
        abs_error,
        rel_error,
        optimal_truncation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeRow {
    pub k: u64,
    pub abs: f64,
    pub log_abs_over_k: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeScan {
    pub knot: TorusKnot,
    pub rows: Vec<VolumeRow>,
    /// Least-squares slope of `log|⟨L⟩_k|` against `log k` over the upper
    /// half of the scanned range; absent with fewer than two points.
    pub fitted_exponent: Option<f64>,
    /// `log|⟨L⟩_k|/k` at the largest `k`.
    pub fitted_limit: f64,
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// Growth exponent of `|⟨L⟩_k|` fitted over rows with `k` in `[lo, hi]`.
pub fn growth_exponent(rows: &[VolumeRow], lo: u64, hi: u64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.k >= lo && r.k <= hi)
        .map(|r| (r.k as f64, r.abs))
        .collect();
    log_log_slope(&pts)
}

/// `|⟨L⟩_k|` and `log|⟨L⟩_k|/k` along ascending `k_values`, evaluated in
/// parallel over `k` with rows kept in input order.
pub fn volume_scan(knot: TorusKnot, k_values: &[u64], prec: Precision) -> Result<VolumeScan> {
    if k_values.is_empty() {
        return Err(Error::InvalidArgument("no k values".into()));
    }
    if k_values[0] < 2 || k_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "k values must be at least 2 and strictly ascending".into(),
        ));
    }
    let rows = k_values
        .par_iter()
        .map(|&k| {
            let v = kashaev_with_precision(knot, Color::new(k as i64)?, prec);
            let abs = v.norm();
            if !(abs > 0.0) || !abs.is_finite() {
                return Err(Error::DomainError(format!("|⟨L⟩_{k}| = {abs} is not positive")));
            }
            Ok(VolumeRow {
                k,
                abs,
                log_abs_over_k: abs.ln() / k as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let start = (rows.len() / 2).min(rows.len().saturating_sub(2));
    let pts: Vec<(f64, f64)> = rows[start..].iter().map(|r| (r.k as f64, r.abs)).collect();
    let fitted_exponent = log_log_slope(&pts);
    let fitted_limit = rows.last().map(|r| r.log_abs_over_k).unwrap_or(f64::NAN);
    Ok(VolumeScan {
        knot,
        rows,
        fitted_exponent,
        fitted_limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::validate_knot;

    fn trefoil() -> TorusKnot {
        validate_knot(2, 3).unwrap()
    }

    fn col(k: i64) -> Color {
        Color::new(k).unwrap()
    }

    #[test]
    fn residue_zeros_and_range() {
        for k in [2, 5, 100] {
            for j in [2, 3, 4] {
                assert_eq!(residue_term(trefoil(), col(k), j).unwrap(), Complex64::new(0.0, 0.0));
            }
        }
        assert!(matches!(
            residue_term(trefoil(), col(5), 0),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(residue_term(trefoil(), col(5), 6).is_err());
    }

    #[test]
    fn residue_term_matches_direct_formula() {
        let kn = validate_knot(3, 4).unwrap();
        for k in [7, 8, 9, 10] {
            for j in 1..12 {
                let kf = k as f64;
                let jf = j as f64;
                let direct = 2.0
                    * (24.0 / kf).powf(-1.5)
                    * Complex64::from_polar(1.0, PI / 4.0)
                    * if ((k - 1) * j) % 2 == 0 { 1.0 } else { -1.0 }
                    * Complex64::from_polar(1.0, -PI * kf * jf * jf / 24.0)
                    * (jf * jf)
                    * (PI * jf / 3.0).sin()
                    * (PI * jf / 4.0).sin();
                let v = residue_term(kn, col(k), j).unwrap();
                assert!((v - direct).norm() < 1e-12 * direct.norm().max(1.0), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn tail_first_terms() {
        // k ≡ 0 mod 4 → phase 1, n = 1 term = (1/4)·4
        let t = tail_term(trefoil(), col(8), 1).unwrap();
        assert!((t - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        // n = 1 depends on k only through e^{iπkmp/2}
        for k in [3, 5, 7, 101] {
            assert!((tail_term(trefoil(), col(k), 1).unwrap().norm() - 1.0).abs() < 1e-15);
        }
        let k = 101;
        let expected = 0.25
            * Complex64::from_polar(1.0, PI * 606.0 / 2.0)
            * 0.5
            * Complex64::new(0.0, PI / 1212.0)
            * -184.0;
        let t2 = tail_term(trefoil(), col(k), 2).unwrap();
        assert!((t2 - expected).norm() < 1e-14, "{t2} vs {expected}");
        assert!(tail_term(trefoil(), col(k), 0).is_err());
    }

    #[test]
    fn prefactor_unit_and_tends_to_one() {
        for k in [2, 10, 1000, 100_000] {
            let v = prefactor(trefoil(), col(k));
            assert!((v.norm() - 1.0).abs() <= 2.0 * f64::EPSILON);
        }
        assert!((prefactor(trefoil(), col(1_000_000)) - 1.0).norm() < 1e-5);
    }

    #[test]
    fn expansion_report_shape() {
        let r = expansion(trefoil(), col(201), 2).unwrap();
        assert_eq!(r.residue_terms.len(), 5);
        assert_eq!(r.tail_terms.len(), 2);
        for (j, v) in &r.residue_terms {
            if [2, 3, 4].contains(j) {
                assert_eq!(v.norm(), 0.0);
            } else {
                assert!(v.norm() > 0.0);
            }
        }
        let all: Vec<_> = r
            .residue_terms
            .iter()
            .map(|x| x.1)
            .chain(r.tail_terms.iter().map(|x| x.1))
            .collect();
        assert_eq!(r.reconstructed, pairwise_sum(&all));
        assert!(r.rel_error <= 1e-3, "{}", r.rel_error);
        assert!(expansion(trefoil(), col(1), 2).is_err());
        assert!(expansion(trefoil(), col(10), 0).is_err());
        assert!(expansion(trefoil(), col(10), 11).is_err());
    }

    #[test]
    fn expansion_all_k_residues_mod_4() {
        for kn in [trefoil(), validate_knot(3, 4).unwrap(), validate_knot(2, 5).unwrap()] {
            for k in 400..404 {
                let r = expansion(kn, col(k), 3).unwrap();
                assert!(r.rel_error < 1e-6, "{kn} k={k}: {}", r.rel_error);
            }
        }
    }

    #[test]
    fn reconstructed_over_k_three_halves_stabilizes() {
        let ratio = |k: i64| expansion(trefoil(), col(k), 2).unwrap().reconstructed.norm()
            / (k as f64).powf(1.5);
        let (a, b, c) = (ratio(101), ratio(401), ratio(1601));
        assert!((b - c).abs() < (a - b).abs() + 1e-12);
        assert!((c - 1.0).abs() < 1e-3, "{c}");
    }

    #[test]
    fn optimal_truncation_grows_with_k() {
        let a = optimal_truncation(trefoil(), col(5), 20).unwrap();
        let b = optimal_truncation(trefoil(), col(50), 20).unwrap();
        assert!(a < b, "{a} {b}");
    }

    #[test]
    fn scan_small() {
        let s = volume_scan(trefoil(), &[10], Precision::Double).unwrap();
        assert_eq!(s.fitted_exponent, None);
        let s = volume_scan(trefoil(), &[100, 200, 400, 800], Precision::Double).unwrap();
        let e = s.fitted_exponent.unwrap();
        assert!((e - 1.5).abs() < 0.05);
        assert!(volume_scan(trefoil(), &[5, 4], Precision::Double).is_err());
        assert!(volume_scan(trefoil(), &[1, 4], Precision::Double).is_err());
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (1..10).map(|x| (x as f64, 3.0 * (x as f64).powf(2.5))).collect();
        assert!((log_log_slope(&pts).unwrap() - 2.5).abs() < 1e-12);
    }
}
