use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use torusq_core::knot::alexander_from_root;
use torusq_core::series::{ser_inv, ser_mul, RationalSeries};
use torusq_core::*;

fn coprime_pair() -> impl Strategy<Value = TorusKnot> {
    (1i64..9, 1i64..9)
        .prop_filter("coprime", |(m, p)| num_integer::gcd(*m, *p) == 1)
        .prop_map(|(m, p)| validate_knot(m, p).unwrap())
}

fn nontrivial_pair() -> impl Strategy<Value = TorusKnot> {
    coprime_pair().prop_filter("nontrivial", |k| !k.is_unknot())
}

fn point() -> impl Strategy<Value = Complex64> {
    (-1.2f64..1.2, -1.2f64..1.2).prop_map(|(a, b)| Complex64::new(a, b))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kashaev_symmetric_under_swap(kn in coprime_pair(), k in 1u64..120) {
        let k = Color::new(k as i64).unwrap();
        let a = kashaev_exact(kn, k);
        let b = kashaev_exact(kn.swapped(), k);
        prop_assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn jones_symmetric_under_swap(kn in coprime_pair(), k in 1u64..40, re in 0.01f64..0.3, im in -1.0f64..1.0) {
        let k = Color::new(k as i64).unwrap();
        let h = Complex64::new(re, im);
        let (a, b) = match (jones_ratio(kn, k, h), jones_ratio(kn.swapped(), k, h)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(Error::Overflow(_)), Err(Error::Overflow(_))) => return Err(TestCaseError::reject("overflow")),
            (a, b) => return Err(TestCaseError::fail(format!("{a:?} vs {b:?}"))),
        };
        prop_assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn torsion_alexander_identity(kn in nontrivial_pair(), z in point()) {
        prop_assume!((kn.mp() as f64 * z).sinh().norm() > 1e-3 && z.norm() > 1e-3);
        let lhs = torsion(kn, z).unwrap() * alexander(kn, (2.0 * z).exp()).unwrap();
        let rhs = 2.0 * z.sinh();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn alexander_palindromic(kn in coprime_pair(), z in point()) {
        prop_assume!(z.norm() > 0.1);
        let a = alexander(kn, z).unwrap();
        let b = alexander(kn, z.inv()).unwrap();
        prop_assert!(rel(a, b) < 1e-11);
    }

    #[test]
    fn alexander_branch_independent(kn in nontrivial_pair(), z in point()) {
        // both square roots of t give the same value
        let s = z.exp();
        let t = s * s;
        prop_assume!((s.powu(kn.m()) - s.powu(kn.m()).inv()).norm() > 1e-6);
        prop_assume!((s.powu(kn.p()) - s.powu(kn.p()).inv()).norm() > 1e-6);
        let a = alexander_from_root(kn, s).unwrap();
        let b = alexander_from_root(kn, -s).unwrap();
        let c = alexander(kn, t).unwrap();
        prop_assert!(rel(a, b) < 1e-10 && rel(a, c) < 1e-10);
    }

    #[test]
    fn gauss_sum_conjugation(kn in coprime_pair(), k in 1u64..30, re in -0.3f64..0.3, im in -2.0f64..2.0) {
        let k = Color::new(k as i64).unwrap();
        let h = Complex64::new(re, im);
        let (a, b) = match (gauss_sum(kn, k, h.conj()), gauss_sum(kn, k, h)) {
            (Ok(a), Ok(b)) => (a, b.conj()),
            (Err(Error::Overflow(_)), Err(Error::Overflow(_))) => return Err(TestCaseError::reject("overflow")),
            (a, b) => return Err(TestCaseError::fail(format!("{a:?} vs {b:?}"))),
        };
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn unknot_torsion_collapses(p in 1i64..12, z in point()) {
        let kn = validate_knot(1, p).unwrap();
        prop_assume!((p as f64 * z).sinh().norm() > 1e-3);
        let v = torsion(kn, z).unwrap();
        let w = 2.0 * z.sinh();
        prop_assert!((v - w).norm() <= 1e-13 * w.norm().max(1.0), "{} vs {}", v, w);
    }

    #[test]
    fn series_inverse_roundtrip(c0 in 1i64..9, rest in prop::collection::vec(-9i64..9, 1..10)) {
        let mut coeffs = vec![c0];
        coeffs.extend(rest);
        let s = RationalSeries::from_integers(&coeffs);
        let prod = ser_mul(&ser_inv(&s).unwrap(), &s);
        prop_assert!(prod.coeff(0).unwrap().is_one());
        for i in 1..prod.order() {
            prop_assert!(prod.coeff(i).unwrap().is_zero());
        }
    }

    #[test]
    fn x_tau_series_swap_and_parity(kn in coprime_pair()) {
        let a = x_tau_series(kn, 12).unwrap();
        let b = x_tau_series(kn.swapped(), 12).unwrap();
        prop_assert_eq!(&a, &b);
        for i in (1..a.order()).step_by(2) {
            prop_assert!(a.coeff(i).unwrap().is_zero());
        }
        prop_assert_eq!(a.coeff(2).unwrap(), &BigRational::from_integer(2.into()));
    }
}

#[test]
fn truncated_series_approximates_torsion() {
    // x·τ(x) at x = 0.01; the first omitted term bounds the remainder.
    let kn = validate_knot(2, 3).unwrap();
    let s = x_tau_series(kn, 10).unwrap();
    let x = 0.01;
    let direct = x * torsion(kn, Complex64::new(x, 0.0)).unwrap().re;
    let bound = 2.0 * {
        let full = x_tau_series(kn, 12).unwrap();
        let c: f64 = num_traits::ToPrimitive::to_f64(full.coeff(10).unwrap()).unwrap();
        c.abs() * x.powi(10)
    };
    assert!((s.eval_f64(x) - direct).abs() <= bound + 1e-18);
}

#[test]
fn coefficient_ratio_tends_to_pole_radius() {
    // nearest singularity of x·τ(x) is at ±iπ/(mp), so |c_{2n+2}/c_{2n}| → (mp/π)²
    let kn = validate_knot(2, 3).unwrap();
    let s = x_tau_series(kn, 42).unwrap();
    let ratios = series::coefficient_ratios(&s);
    let limit = (6.0 / std::f64::consts::PI).powi(2);
    let last = ratios.last().unwrap().abs();
    assert!((last - limit).abs() < 0.1 * limit, "{last} vs {limit}");
}

#[test]
fn scan_stable_across_precision() {
    let kn = validate_knot(2, 3).unwrap();
    let ks: Vec<u64> = (100..=400).step_by(10).collect();
    let lo = volume_scan(kn, &ks, Precision::Double).unwrap();
    let hi = volume_scan(kn, &ks, Precision::from_bits(106)).unwrap();
    let (a, b) = (lo.fitted_exponent.unwrap(), hi.fitted_exponent.unwrap());
    assert!((a - b).abs() < 1e-6, "{a} vs {b}");
}
