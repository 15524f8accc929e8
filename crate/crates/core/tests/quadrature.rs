use std::f64::consts::PI;

use num_complex::Complex64;

use torusq_core::asymptotics::{log_log_slope, tail_terms};
use torusq_core::quadrature::*;
use torusq_core::*;

fn knot(m: i64, p: i64) -> TorusKnot {
    validate_knot(m, p).unwrap()
}

fn color(k: i64) -> Color {
    Color::new(k).unwrap()
}

#[test]
fn lemma1_independent_of_angle() {
    let (kn, k) = (knot(3, 5), color(4));
    let h = Complex64::new(0.05, 0.2);
    // condition Re(h e^{-2iφ}) > 0 holds for φ in (arg h/2 - π/4, arg h/2 + π/4)
    let centre = h.arg() / 2.0;
    let values: Vec<Complex64> = [-0.6, -0.3, 0.0, 0.3, 0.6]
        .iter()
        .map(|d| {
            let c = ContourSpec::for_lemma1(kn, k, h, Some(centre + d), 1e-12).unwrap();
            let r = verify_lemma1(kn, k, h, &c).unwrap();
            assert!(r.rel_diff < 1e-9, "φ = {}: {:e}", c.phi, r.rel_diff);
            r.rhs
        })
        .collect();
    for v in &values[1..] {
        assert!((v - values[0]).norm() < 1e-10 * values[0].norm());
    }
}

#[test]
fn lemma1_rejects_bad_angle() {
    let (kn, k) = (knot(2, 3), color(3));
    let h = Complex64::new(0.05, 0.2);
    let phi = h.arg() / 2.0 + PI / 2.0;
    assert!(matches!(
        ContourSpec::for_lemma1(kn, k, h, Some(phi), 1e-10),
        Err(Error::ContourConditionViolated(_))
    ));
}

#[test]
fn lemma2_independent_of_angle() {
    let (kn, k) = (knot(2, 5), color(9));
    let rhs: Vec<Complex64> = [0.2, 0.5, 0.8, 1.1, 1.4]
        .iter()
        .map(|&phi| {
            let c = ContourSpec::for_lemma2(kn, k, phi, 1e-10).unwrap();
            verify_lemma2(kn, k, &c).unwrap().rhs
        })
        .collect();
    for v in &rhs[1..] {
        assert!((v - rhs[0]).norm() < 1e-9 * rhs[0].norm());
    }
}

#[test]
fn lemma2_unknot_cable() {
    let (kn, k) = (knot(1, 2), color(3));
    let c = ContourSpec::for_lemma2(kn, k, PI / 4.0, 1e-10).unwrap();
    assert!(verify_lemma2(kn, k, &c).unwrap().rel_diff <= 1e-8);
}

#[test]
fn doubling_truncation_is_harmless() {
    let (kn, k) = (knot(2, 3), color(21));
    let c = ContourSpec::for_lemma2(kn, k, PI / 3.0, 1e-10).unwrap();
    let wide = ContourSpec { truncation: 2.0 * c.truncation, ..c };
    let a = verify_lemma2(kn, k, &c).unwrap();
    let b = verify_lemma2(kn, k, &wide).unwrap();
    assert!((a.rhs - b.rhs).norm() <= a.quad_error.max(1e-12) * a.rhs.norm());

    let s = ContourSpec::for_shift(kn, k, PI / 3.0, 1e-12).unwrap();
    let s2 = ContourSpec { truncation: 2.0 * s.truncation, ..s };
    let x = shifted_integral(kn, k, &s).unwrap();
    let y = shifted_integral(kn, k, &s2).unwrap();
    assert!((x.value - y.value).norm() <= x.error.max(1e-13 * x.value.norm()));
}

#[test]
fn contour_shift_closes() {
    let (kn, k) = (knot(2, 3), color(51));
    let s = contour_shift_check(kn, k, PI / 4.0, 1e-10).unwrap();
    assert!(s.rel_diff <= 1e-7, "{s:?}");
    assert!((s.residue_sum - s.analytic_residue_sum).norm() <= 1e-10 * s.residue_sum.norm());
}

#[test]
fn shifted_integrand_parity() {
    // z·τ(πz) is even, so one more factor of z integrates to zero
    let (kn, k) = (knot(2, 3), color(11));
    let c = ContourSpec::for_shift(kn, k, PI / 4.0, 1e-12).unwrap();
    let coef = PI * (kn.mp() * k.get()) as f64 / 2.0;
    let f = |z: Complex64| {
        (Complex64::new(0.0, coef) * z * z).exp() * z * z * torsion(kn, PI * z).unwrap()
    };
    assert!(line_integrate(f, &c).unwrap().value.norm() <= 1e-12);
}

#[test]
fn residue_terms_match_contour_residues() {
    let kn = knot(2, 3);
    for k in [7, 50, 100, 151, 200] {
        for j in 1..kn.mp() {
            let a = residue_term(kn, color(k), j as i64).unwrap();
            let n = residue_contribution(kn, color(k), j).unwrap();
            assert!(
                (a - n).norm() <= 1e-8 * a.norm().max(1e-300) || a.norm() == 0.0 && n.norm() < 1e-8,
                "k={k} j={j}: {a} vs {n}"
            );
        }
    }
}

#[test]
fn tail_series_tracks_shifted_integral() {
    // the truncated tail misses the first omitted term, of order k^{-n_max}
    let kn = knot(2, 3);
    let n_max = 2;
    let pts: Vec<(f64, f64)> = [101, 201, 401, 801]
        .iter()
        .map(|&k| {
            let k = color(k);
            let c = ContourSpec::for_shift(kn, k, PI / 4.0, 1e-13).unwrap();
            let direct = tail_integral(kn, k, &c).unwrap();
            let series: Complex64 = tail_terms(kn, k, n_max).unwrap().iter().sum();
            (k.get() as f64, (direct - series).norm())
        })
        .collect();
    let slope = log_log_slope(&pts).unwrap();
    assert!((slope + n_max as f64).abs() <= 0.4, "{slope} {pts:?}");
}

#[test]
fn tail_term_closed_form() {
    let (kn, k) = (knot(2, 3), color(101));
    let t = tail_term(kn, k, 2).unwrap();
    // (1/4)·e^{iπ·606/2}·(1/2)·(iπ/1212)·(-184)
    let phase = Complex64::new(-1.0, 0.0); // e^{303iπ}
    let expect = 0.25 * phase * 0.5 * Complex64::new(0.0, PI / 1212.0) * -184.0;
    assert!((t - expect).norm() < 1e-14 * expect.norm(), "{t} vs {expect}");
}

#[test]
fn circle_matches_torsion_residues() {
    let kn = knot(3, 4);
    let f = move |z: Complex64| torsion(kn, PI * z).unwrap();
    for pole in poles(kn) {
        let r = residue_circle(f, pole.location, 1.0 / (4.0 * kn.mp() as f64), 1e-14).unwrap();
        assert!((r - pole.residue).norm() < 1e-10, "j={}", pole.j);
    }
}
