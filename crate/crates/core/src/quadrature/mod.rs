//! Contour integrals along the rotated line `C_φ = {x e^{iφ} : x ∈ ℝ}` and
//! around poles, used to check the integral representations of the
//! colored Jones ratio and of the Kashaev invariant numerically.
//!
//! Integral representations verified here:
//!
//! ```text
//! gauss_sum(h) = √(mp/(πh)) e^{-(h/4)(m/p+p/m)} ∫_{C_φ} e^{mp(kz - z²/h)} τ(z) dz,   Re(h e^{-2iφ}) > 0
//! 2⟨L⟩_k       = (mpk/2)^{3/2} e^{-(iπ/2k)(m/p+p/m+k/2)} ∫_{C_φ} e^{πmpk(z + iz²/2)} z² τ(πz) dz,   0 < φ < π/2
//! ∫_{i+C_φ} (same integrand) = -2i e^{iπmpk/2} ∫_{C_φ} e^{iπmpk z²/2} z τ(πz) dz
//! ```
//!
//! The second integrand reaches `exp(πmpk·cot φ/4)` on `C_φ` while the
//! integral is `O(1)`, so both of the first two checks run in MPFR
//! arithmetic sized from that cancellation (see [`mp`]).

pub mod gk;
pub mod mp;

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::exact::{gauss_sum_mp, kashaev_exact, sum_terms, Color};
use crate::knot::{pole_residue, torsion, TorusKnot};
use crate::phase::ExactPhase;
use crate::ComplexValue;

pub use gk::Integral;
pub use mp::MpIntegral;

/// Default node budget for the multiple-precision trapezoid rule.
pub const DEFAULT_NODE_BUDGET: usize = 1 << 20;
/// Default panel budget for adaptive Gauss–Kronrod.
pub const DEFAULT_PANEL_BUDGET: usize = 4000;

/// Parameters of the truncated rotated line `x e^{iφ}`, `|x| ≤ truncation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub phi: f64,
    pub truncation: f64,
    /// Panel budget (Gauss–Kronrod) or node budget (trapezoid).
    pub panels: usize,
    pub tol: f64,
}

impl ContourSpec {
    pub fn new(phi: f64, truncation: f64, panels: usize, tol: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidArgument(format!("phi = {phi}")));
        }
        if !(truncation > 0.0) || !truncation.is_finite() {
            return Err(Error::InvalidArgument(format!("truncation = {truncation}")));
        }
        if panels == 0 {
            return Err(Error::InvalidArgument("panel budget must be positive".into()));
        }
        if !(tol > 0.0) || tol >= 1.0 {
            return Err(Error::InvalidArgument(format!("tol = {tol}")));
        }
        Ok(Self {
            phi,
            truncation,
            panels,
            tol,
        })
    }

    /// `e^{iφ}`.
    pub fn direction(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phi)
    }

    /// Contour for the Gaussian-sum representation. `phi = None` picks the
    /// angle maximizing `Re(h e^{-2iφ})`, i.e. `arg(h)/2`.
    pub fn for_lemma1(
        knot: TorusKnot,
        k: Color,
        h: ComplexValue,
        phi: Option<f64>,
        tol: f64,
    ) -> Result<Self> {
        let phi = phi.unwrap_or(h.arg() / 2.0);
        check_lemma1_condition(h, phi)?;
        let plan = Lemma1Plan::new(knot, k, h, phi, tol)?;
        let x = plan.window.0.abs().max(plan.window.1.abs());
        Self::new(phi, x, DEFAULT_NODE_BUDGET, tol)
    }

    /// Contour for the Kashaev-invariant representation; the truncation is
    /// `√(2 ln(1/tol_abs)/(πmpk sin 2φ)) + 2`, widened if needed to cover
    /// the off-center Gaussian peak at `x = 1/(2 sin φ)`.
    pub fn for_lemma2(knot: TorusKnot, k: Color, phi: f64, tol: f64) -> Result<Self> {
        check_lemma2_condition(phi)?;
        let plan = Lemma2Plan::new(knot, k, phi, tol);
        let rule = gaussian_truncation(knot, k, phi, tol);
        let x = rule.max(plan.window.0.abs()).max(plan.window.1.abs());
        Self::new(phi, x, DEFAULT_NODE_BUDGET, tol)
    }

    /// Contour for the shifted integral, which is centered at 0.
    pub fn for_shift(knot: TorusKnot, k: Color, phi: f64, tol: f64) -> Result<Self> {
        check_lemma2_condition(phi)?;
        let x = gaussian_truncation(knot, k, phi, tol);
        Self::new(phi, x, DEFAULT_PANEL_BUDGET, tol)
    }
}

/// `√(2 ln(1/tol_abs)/(πmpk sin 2φ)) + 2` with `tol_abs = 1e-6·tol`.
pub fn gaussian_truncation(knot: TorusKnot, k: Color, phi: f64, tol: f64) -> f64 {
    let rate = PI * (knot.mp() * k.get()) as f64 * (2.0 * phi).sin();
    let log_inv = (1.0 / (tol * 1e-6)).ln();
    (2.0 * log_inv / rate).sqrt() + 2.0
}

fn check_lemma1_condition(h: ComplexValue, phi: f64) -> Result<()> {
    let c = (h * Complex64::from_polar(1.0, -2.0 * phi)).re;
    if !(c > 0.0) {
        return Err(Error::ContourConditionViolated(format!(
            "Re(h e^(-2iφ)) = {c:e} must be positive (h = {h}, φ = {phi})"
        )));
    }
    Ok(())
}

fn check_lemma2_condition(phi: f64) -> Result<()> {
    if !(phi > 0.0 && phi < FRAC_PI_2) {
        return Err(Error::ContourConditionViolated(format!(
            "φ = {phi} must lie strictly between 0 and π/2"
        )));
    }
    Ok(())
}

/// Interval where `A x - B x²` stays above `floor`. Falls back to a unit
/// neighbourhood of the peak if the floor is above it.
fn gaussian_window(b: f64, a_lo: f64, a_hi: f64, floor: f64) -> (f64, f64) {
    let peak = a_hi.max(a_lo).powi(2) / (4.0 * b);
    let floor = floor.min(peak - 40.0);
    let root = |a: f64, sign: f64| (a + sign * (a * a - 4.0 * b * floor).sqrt()) / (2.0 * b);
    (root(a_lo, -1.0), root(a_hi, 1.0))
}

fn bits_for(cancel_nats: f64, tol: f64) -> u32 {
    let nats = cancel_nats.max(0.0) + (1.0 / tol).ln() + 40.0;
    (nats / LN_2).ceil() as u32 + 64
}

/// Initial trapezoid interval count: roughly one node per oscillation.
fn initial_intervals(len: f64, omega: f64) -> usize {
    let n = (len * omega / (2.0 * PI)).ceil().max(64.0) as usize;
    n.next_power_of_two()
}

/// Outcome of a numerical identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub rel_diff: f64,
    pub phi: f64,
    pub truncation: f64,
    /// Sub-interval of `[-X, X]` actually integrated.
    pub window: (f64, f64),
    pub nodes: usize,
    pub precision_bits: u32,
    /// Relative quadrature error estimate.
    pub quad_error: f64,
}

fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(f64::MIN_POSITIVE)
}

fn mpc(prec: u32, z: Complex64) -> Complex {
    Complex::with_val(prec, (z.re, z.im))
}

struct Lemma1Plan {
    lhs: Complex,
    window: (f64, f64),
    bits: u32,
    omega: f64,
}

impl Lemma1Plan {
    fn new(knot: TorusKnot, k: Color, h: Complex64, phi: f64, tol: f64) -> Result<Self> {
        if h.im == 0.0 && h.re <= 0.0 {
            return Err(Error::DomainError(
                "h on the non-positive real axis: √h has no continuation from h > 0".into(),
            ));
        }
        let (m, p, mp) = (knot.m() as f64, knot.p() as f64, knot.mp() as f64);
        let kf = k.get() as f64;
        let max_e = sum_terms(knot, k)
            .map(|t| t.exponent.unsigned_abs() as f64)
            .fold(0.0, f64::max);
        let term_nats = h.re.abs() * max_e / 4.0;
        let bits0 = bits_for(term_nats, tol);
        let lhs = gauss_sum_mp(knot, k, &mpc(bits0, h), bits0);
        let lhs64 = mp::to_c64(&lhs);
        if lhs64.norm() == 0.0 || !lhs64.norm().is_finite() {
            return Err(Error::DomainError(format!(
                "Gaussian sum vanishes at h = {h}; relative comparison undefined"
            )));
        }
        // ∫ = lhs · e^{(h/4)(m/p+p/m)} / √(mp/(πh))
        let log_target = lhs64.norm().ln()
            + (h.re / 4.0) * (m / p + p / m)
            - 0.5 * (mp / (PI * h.norm())).ln();
        let dir = Complex64::from_polar(1.0, phi);
        let b = mp * (dir * dir / h).re;
        let a = mp * kf * phi.cos();
        let slack = (m + p) * phi.cos().abs();
        let floor = log_target - (1.0 / tol).ln() - 30.0;
        let window = gaussian_window(b, a - slack, a + slack, floor);
        let peak = (a + slack).powi(2) / (4.0 * b);
        let bits = bits0.max(bits_for(peak - log_target, tol));
        let reach = window.0.abs().max(window.1.abs());
        let omega = mp * (kf + 2.0 * reach / h.norm());
        Ok(Self {
            lhs,
            window,
            bits,
            omega,
        })
    }
}

/// Gaussian sum against its integral representation along `C_φ`.
pub fn verify_lemma1(
    knot: TorusKnot,
    k: Color,
    h: ComplexValue,
    c: &ContourSpec,
) -> Result<IdentityCheck> {
    check_lemma1_condition(h, c.phi)?;
    let plan = Lemma1Plan::new(knot, k, h, c.phi, c.tol)?;
    let prec = plan.bits;
    let (lo, hi) = (plan.window.0.max(-c.truncation), plan.window.1.min(c.truncation));
    let (m, p, mp) = (knot.m(), knot.p(), knot.mp());
    let dir = mpc(prec, c.direction());
    let hm = mpc(prec, h);
    let inv_h = Complex::with_val(prec, hm.recip_ref());
    let kk = k.get();
    let integrand = |x: &Float| -> Complex {
        let z = Complex::with_val(prec, &dir * x);
        // mp(kz - z²/h)
        let z2 = Complex::with_val(prec, z.square_ref());
        let mut g = Complex::with_val(prec, &z * kk);
        g -= z2 * &inv_h;
        g *= mp;
        let e = g.exp();
        e * mp::torsion_mp(knot, &z, prec) * &dir
    };
    let init = initial_intervals(hi - lo, plan.omega);
    let integral = mp::trapezoid(integrand, lo, hi, init, c.panels, c.tol * 1e-2, prec)?;

    // √(mp/(πh)) e^{-(h/4)(m/p + p/m)}
    let pi = mp::pi(prec);
    let mut ratio = Complex::with_val(prec, &hm * &pi);
    ratio = ratio.recip() * mp;
    let root = ratio.sqrt();
    let mut shift = Complex::with_val(prec, &hm * (m * m + p * p));
    shift /= 4 * mp;
    let rhs = root * (-shift).exp() * &integral.value;

    // compared before rounding, since both sides usually agree past f64
    let diff = Complex::with_val(prec, &plan.lhs - &rhs);
    let rel = Float::with_val(prec, diff.abs_ref()) / Float::with_val(prec, plan.lhs.abs_ref());
    let size = Float::with_val(prec, integral.value.abs_ref()).to_f64();
    Ok(IdentityCheck {
        lhs: mp::to_c64(&plan.lhs),
        rhs: mp::to_c64(&rhs),
        rel_diff: rel.to_f64(),
        phi: c.phi,
        truncation: c.truncation,
        window: (lo, hi),
        nodes: integral.nodes,
        precision_bits: prec,
        quad_error: integral.error / size,
    })
}

struct Lemma2Plan {
    window: (f64, f64),
    bits: u32,
    omega: f64,
}

impl Lemma2Plan {
    fn new(knot: TorusKnot, k: Color, phi: f64, tol: f64) -> Self {
        let mpk = (knot.mp() * k.get()) as f64;
        let scale = (mpk / 2.0).powf(1.5);
        let target = 2.0 * kashaev_exact(knot, k).norm() / scale;
        let log_target = target.max(f64::MIN_POSITIVE).ln();
        let a = PI * mpk * phi.cos();
        let b = PI * mpk * phi.sin() * phi.cos();
        let floor = log_target - (1.0 / tol).ln() - 30.0;
        let window = gaussian_window(b, a, a, floor);
        let peak = a * a / (4.0 * b);
        let reach = window.0.abs().max(window.1.abs());
        Self {
            window,
            bits: bits_for(peak - log_target, tol),
            omega: PI * mpk * (phi.sin() + reach * (2.0 * phi).cos().abs()),
        }
    }
}

/// `∫_{C_φ} e^{πmpk(z + iz²/2)} z² τ(πz) dz` in multiple precision.
pub fn lemma2_integral(knot: TorusKnot, k: Color, c: &ContourSpec) -> Result<(MpIntegral, u32, (f64, f64))> {
    check_lemma2_condition(c.phi)?;
    let plan = Lemma2Plan::new(knot, k, c.phi, c.tol);
    let prec = plan.bits;
    let (lo, hi) = (plan.window.0.max(-c.truncation), plan.window.1.min(c.truncation));
    let dir = mpc(prec, c.direction());
    let pi = mp::pi(prec);
    let coef = Float::with_val(prec, &pi * (knot.mp() * k.get()));
    let half_i = Complex::with_val(prec, (0, 0.5));
    let integrand = |x: &Float| -> Complex {
        let z = Complex::with_val(prec, &dir * x);
        let z2 = Complex::with_val(prec, z.square_ref());
        let mut g = Complex::with_val(prec, &z2 * &half_i);
        g += &z;
        g *= &coef;
        let u = Complex::with_val(prec, &z * &pi);
        g.exp() * &z2 * mp::torsion_mp(knot, &u, prec) * &dir
    };
    let init = initial_intervals(hi - lo, plan.omega);
    let integral = mp::trapezoid(integrand, lo, hi, init, c.panels, c.tol * 1e-2, prec)?;
    Ok((integral, prec, (lo, hi)))
}

/// `e^{-(iπ/2k)(m/p + p/m + k/2)}`.
pub fn lemma2_phase(knot: TorusKnot, k: Color) -> Complex64 {
    let (m, p) = (knot.m() as i128, knot.p() as i128);
    let kmp = k.get() * knot.mp();
    // exponent over 2·kmp: -(m² + p²) - kmp/2 → scale by 2 to stay integral
    ExactPhase::new(-2 * (m * m + p * p) - kmp as i128, 2 * kmp).value()
}

/// Twice the Kashaev invariant against its integral representation.
pub fn verify_lemma2(knot: TorusKnot, k: Color, c: &ContourSpec) -> Result<IdentityCheck> {
    let (integral, prec, window) = lemma2_integral(knot, k, c)?;
    let mpk = (knot.mp() * k.get()) as f64;
    let j = mp::to_c64(&integral.value);
    let rhs = (mpk / 2.0).powf(1.5) * lemma2_phase(knot, k) * j;
    let lhs = 2.0 * kashaev_exact(knot, k);
    Ok(IdentityCheck {
        lhs,
        rhs,
        rel_diff: rel_diff(lhs, rhs),
        phi: c.phi,
        truncation: c.truncation,
        window,
        nodes: integral.nodes,
        precision_bits: prec,
        quad_error: integral.error / j.norm().max(f64::MIN_POSITIVE),
    })
}

/// Integrand `e^{πmpk(z + iz²/2)} z² τ(πz)` in double precision, for pole
/// neighbourhoods where it stays moderate.
pub fn lemma2_integrand(knot: TorusKnot, k: Color) -> impl Fn(Complex64) -> Complex64 {
    let coef = PI * (knot.mp() * k.get()) as f64;
    move |z: Complex64| {
        let g = coef * (z + Complex64::new(0.0, 0.5) * z * z);
        let t = torsion(knot, PI * z).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        g.exp() * z * z * t
    }
}

/// `-2i e^{iπmpk/2} ∫_{C_φ} e^{iπmpk z²/2} z τ(πz) dz`: the Kashaev
/// integrand integrated along `i + C_φ`.
pub fn shifted_integral(knot: TorusKnot, k: Color, c: &ContourSpec) -> Result<Integral> {
    check_lemma2_condition(c.phi)?;
    let coef = PI * (knot.mp() * k.get()) as f64 / 2.0;
    let dir = c.direction();
    let f = move |x: f64| {
        let z = dir * x;
        let t = torsion(knot, PI * z).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        (Complex64::new(0.0, coef) * z * z).exp() * z * t * dir
    };
    let r = gk::integrate(f, -c.truncation, c.truncation, 32, c.panels, c.tol * 1e-2, 1e-300)?;
    let quarter = ((k.get() as u128 * knot.mp() as u128) % 4) as i128;
    // -2i · i^{kmp}
    let front = Complex64::new(0.0, -2.0) * ExactPhase::new(quarter, 1).value();
    Ok(Integral {
        value: front * r.value,
        error: 2.0 * r.error,
        ..r
    })
}

/// `(1/2πi) ∮ f` over the circle `|z - center| = radius` by the trapezoid
/// rule, doubling the node count until successive values agree to `tol`
/// relative to `max(|result|, mean |f|·radius)`.
pub fn residue_circle<F>(f: F, center: Complex64, radius: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius = {radius}")));
    }
    let eval = |n: usize| -> Result<(Complex64, f64)> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for i in 0..n {
            let w = Complex64::from_polar(radius, 2.0 * PI * i as f64 / n as f64);
            let v = f(center + w) * w;
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteSample(i as f64));
            }
            scale += v.norm();
            acc += v;
        }
        Ok((acc / n as f64, scale / n as f64))
    };
    let mut n = 16;
    let (mut prev, _) = eval(n)?;
    while n < 1 << 16 {
        n *= 2;
        let (next, scale) = eval(n)?;
        if (next - prev).norm() <= tol * next.norm().max(scale) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence(format!(
        "circle trapezoid did not settle with {n} nodes"
    )))
}

/// Circle radius used around `z_j`: inside a quarter of the pole spacing
/// and small enough that `|e^{πmpk(z + iz²/2)}|` varies by at most `e^2`.
pub fn residue_radius(knot: TorusKnot, k: Color) -> f64 {
    let mp = knot.mp() as f64;
    (0.25 / mp).min(2.0 / (PI * mp * k.get() as f64))
}

/// Residue of the Kashaev integrand at `z_j`, computed on a small circle.
pub fn integrand_residue(knot: TorusKnot, k: Color, j: u64) -> Result<Complex64> {
    let mp = knot.mp();
    if j < 1 || j >= mp {
        return Err(Error::IndexOutOfRange {
            index: j as i64,
            lo: 1,
            hi: mp as i64 - 1,
        });
    }
    let center = Complex64::new(0.0, j as f64 / mp as f64);
    residue_circle(lemma2_integrand(knot, k), center, residue_radius(knot, k), 1e-14)
}

/// Closed-form residue of the Kashaev integrand at `z_j`:
/// `e^{iπkj} e^{-iπkj²/(2mp)} (-j²/(mp)²) Res τ(πz)|_{z_j}`.
pub fn integrand_residue_analytic(knot: TorusKnot, k: Color, j: u64) -> Complex64 {
    let mp = knot.mp();
    let kk = k.get() as i128;
    let jj = j as i128;
    let phase = ExactPhase::new(4 * kk * jj * mp as i128 - 2 * kk * jj * jj, 2 * mp).value();
    let jm = j as f64 / mp as f64;
    phase * (-jm * jm * pole_residue(knot, j))
}

/// `(1/2)(mpk/2)^{3/2} e^{-iπ/4}`: converts an integral of the Kashaev
/// integrand into a contribution to `prefactor·⟨L⟩_k`.
pub fn expansion_scale(knot: TorusKnot, k: Color) -> Complex64 {
    let mpk = (knot.mp() * k.get()) as f64;
    0.5 * (mpk / 2.0).powf(1.5) * Complex64::from_polar(1.0, -PI / 4.0)
}

/// Numerical counterpart of the residue term at `z_j`:
/// `expansion_scale · 2πi · Res_{z_j}`.
pub fn residue_contribution(knot: TorusKnot, k: Color, j: u64) -> Result<Complex64> {
    let res = integrand_residue(knot, k, j)?;
    Ok(expansion_scale(knot, k) * Complex64::new(0.0, 2.0 * PI) * res)
}

/// Numerical counterpart of the tail series: `expansion_scale` times the
/// shifted integral.
pub fn tail_integral(knot: TorusKnot, k: Color, c: &ContourSpec) -> Result<Complex64> {
    Ok(expansion_scale(knot, k) * shifted_integral(knot, k, c)?.value)
}

/// The contour shift `C_φ → i + C_φ` past the poles `z_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftCheck {
    /// `∫_{C_φ}` of the Kashaev integrand.
    pub direct: ComplexValue,
    /// `∫_{i+C_φ}` via the shifted representation.
    pub shifted: ComplexValue,
    /// `2πi Σ_j Res_{z_j}` from circle quadrature.
    pub residue_sum: ComplexValue,
    /// Same sum from the closed-form residues.
    pub analytic_residue_sum: ComplexValue,
    pub rel_diff: f64,
    pub phi: f64,
    pub nodes: usize,
    pub precision_bits: u32,
}

/// Checks `∫_{C_φ} = ∫_{i+C_φ} + 2πi Σ_j Res_{z_j}` with every piece
/// computed numerically.
pub fn contour_shift_check(knot: TorusKnot, k: Color, phi: f64, tol: f64) -> Result<ShiftCheck> {
    let c2 = ContourSpec::for_lemma2(knot, k, phi, tol)?;
    let (direct, prec, _) = lemma2_integral(knot, k, &c2)?;
    let direct_c = mp::to_c64(&direct.value);
    let cs = ContourSpec::for_shift(knot, k, phi, tol)?;
    let shifted = shifted_integral(knot, k, &cs)?.value;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut numeric = Complex64::new(0.0, 0.0);
    let mut analytic = Complex64::new(0.0, 0.0);
    for j in 1..knot.mp() {
        numeric += integrand_residue(knot, k, j)?;
        analytic += integrand_residue_analytic(knot, k, j);
    }
    let residue_sum = two_pi_i * numeric;
    Ok(ShiftCheck {
        direct: direct_c,
        shifted,
        residue_sum,
        analytic_residue_sum: two_pi_i * analytic,
        rel_diff: rel_diff(direct_c, shifted + residue_sum),
        phi,
        nodes: direct.nodes,
        precision_bits: prec,
    })
}

/// `∫ f(z) dz` along the truncated `C_φ` by adaptive Gauss–Kronrod,
/// parameterized as `∫_{-X}^{X} f(x e^{iφ}) e^{iφ} dx`. Results smaller than
/// `tol·1e-3` in modulus are accepted on an absolute basis.
pub fn line_integrate<F>(f: F, c: &ContourSpec) -> Result<Integral>
where
    F: Fn(Complex64) -> Complex64,
{
    let dir = c.direction();
    gk::integrate(
        move |x| f(dir * x) * dir,
        -c.truncation,
        c.truncation,
        16,
        c.panels,
        c.tol,
        c.tol * 1e-3,
    )
}

/// `(√(πh) e^{hw²}, ∫_{C_φ} e^{-z²/h + 2wz} dz)` with the principal root.
pub fn verify_gaussian(h: Complex64, w: Complex64, c: &ContourSpec) -> Result<(Complex64, Complex64)> {
    check_lemma1_condition(h, c.phi)?;
    let inv_h = h.inv();
    let r = line_integrate(move |z| (-z * z * inv_h + 2.0 * w * z).exp(), c)?;
    let closed = (PI * h).sqrt() * (h * w * w).exp();
    Ok((closed, r.value))
}
