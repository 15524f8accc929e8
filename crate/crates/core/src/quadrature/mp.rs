//! Multiple-precision trapezoid rule for analytic integrands with Gaussian
//! decay.
//!
//! On an interval outside of which the integrand is negligible the
//! trapezoid rule converges geometrically in the node count, and halving
//! the step reuses every previous node. The integrals checked here have
//! integrands many orders of magnitude larger than their value along the
//! contour, so they are summed with MPFR floats whose width is chosen from
//! that cancellation.

use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::knot::TorusKnot;

/// Result of [`trapezoid`].
#[derive(Debug, Clone)]
pub struct MpIntegral {
    pub value: Complex,
    /// `|T_h - T_{2h}|` at the final level.
    pub error: f64,
    pub nodes: usize,
}

fn to_f64_abs(c: &Complex, prec: u32) -> f64 {
    Float::with_val(prec, c.abs_ref()).to_f64()
}

/// `∫_lo^hi f(x) dx` by step-halving trapezoid sums, starting from
/// `initial` intervals, until two successive sums agree to `rel_tol`.
/// Midpoints of each level are evaluated in parallel and accumulated in
/// index order.
pub fn trapezoid<F>(
    f: F,
    lo: f64,
    hi: f64,
    initial: usize,
    max_nodes: usize,
    rel_tol: f64,
    prec: u32,
) -> Result<MpIntegral>
where
    F: Fn(&Float) -> Complex + Sync,
{
    let lo_f = Float::with_val(prec, lo);
    let len = Float::with_val(prec, hi - lo);
    let mut n = initial.max(2);
    let node = |i: usize, n: usize| -> Float {
        let mut x = Float::with_val(prec, &len * i as u64);
        x /= n as u64;
        x += &lo_f;
        x
    };
    let eval_many = |idx: Vec<usize>, n: usize| -> Complex {
        let vals: Vec<Complex> = idx.into_par_iter().map(|i| f(&node(i, n))).collect();
        let mut acc = Complex::new(prec);
        for v in vals {
            acc += v;
        }
        acc
    };

    let mut sum = eval_many((1..n).collect(), n);
    let ends = Complex::with_val(prec, f(&node(0, n)) + f(&node(n, n))) / 2u32;
    sum += ends;
    let mut step = Float::with_val(prec, &len / n as u64);
    let mut estimate = Complex::with_val(prec, &sum * &step);
    let mut levels = 0;
    loop {
        if n * 2 > max_nodes {
            return Err(Error::ToleranceNotMet {
                target: rel_tol,
                achieved: f64::INFINITY,
            });
        }
        let fine = 2 * n;
        sum += eval_many((1..fine).step_by(2).collect(), fine);
        n = fine;
        step /= 2u32;
        let next = Complex::with_val(prec, &sum * &step);
        let diff = to_f64_abs(&Complex::with_val(prec, &next - &estimate), prec);
        let size = to_f64_abs(&next, prec);
        estimate = next;
        levels += 1;
        if !diff.is_finite() || !size.is_finite() {
            return Err(Error::NonFiniteSample(f64::NAN));
        }
        if levels >= 2 && diff <= rel_tol * size {
            return Ok(MpIntegral {
                value: estimate,
                error: diff,
                nodes: n + 1,
            });
        }
    }
}

/// `τ(u) = 2 sinh(mu) sinh(pu)/sinh(mpu)` in `prec`-bit arithmetic; `τ(0) = 0`.
pub fn torsion_mp(knot: TorusKnot, u: &Complex, prec: u32) -> Complex {
    if u.real().is_zero() && u.imag().is_zero() {
        return Complex::new(prec);
    }
    let w = Complex::with_val(prec, u.exp_ref());
    let wi = Complex::with_val(prec, w.recip_ref());
    let sinh = |a: u32| -> Complex {
        let up = Complex::with_val(prec, (&w).pow(a));
        let down = Complex::with_val(prec, (&wi).pow(a));
        Complex::with_val(prec, up - down)
    };
    // (2 sinh)(2 sinh)/(2 sinh) = τ
    let num = sinh(knot.m()) * sinh(knot.p());
    let mp = u32::try_from(knot.mp()).expect("mp fits in u32 for quadrature");
    num / sinh(mp)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn to_c64(c: &Complex) -> num_complex::Complex64 {
    num_complex::Complex64::new(c.real().to_f64(), c.imag().to_f64())
}
