//! The scalar Levy kernel K_{alpha,n}(x, tau), the inverse Fourier transform
//! of exp(-tau |xi|^alpha) with Re(tau) >= 0, by three mutually validating
//! methods:
//!
//! - `kernel_wright` (production): the Wright series form
//!   K = 2^{1-n}/(alpha pi^{n/2} tau^{n/alpha}) 1Psi1[(n/alpha,2/alpha);(n/2,1); lambda],
//!   lambda = -r^2 tau^{-2/alpha}/4, convergent for alpha > 1;
//! - `kernel_quadrature` (oracle): the radial reduction
//!   K = (2 pi)^{-n/2} r^{-n} int_0^inf exp(-tau (rho/r)^alpha) rho^{n/2} J_{n/2-1}(rho) drho,
//!   integrated between Bessel zeros, requires Re(tau) > 0;
//! - `kernel_mellin_barnes` (validation): the contour form
//!   K = 1/(alpha pi^{n/2} r^n) (2 pi i)^{-1} int Gamma(n/2+s/2)Gamma(-s/alpha)/Gamma(-s/2)
//!   (r tau^{-1/alpha}/2)^{-s} ds on a vertical line inside -n < Re(s) < (1-n)/2.
//!
//! All fractional powers of tau take the principal branch; arg(tau) lies in
//! [-pi/2, pi/2] because Re(tau) >= 0.
//!
//! The Wright series loses digits to cancellation as |lambda| grows, so its
//! error is estimated from the peak term magnitude and the evaluation
//! delegates when the estimate misses the requested tolerance: to the damped
//! quadrature when Re(tau) > 0, and to a rotated-contour Fourier integral
//! (xi -> e^{-i arg(tau)/alpha} xi makes the exponential real) on the
//! oscillatory boundary Re(tau) = 0, where the plain quadrature refuses and
//! the contour integrand stops decaying. The rotated path is implemented for
//! n = 1 and n = 3 where the radial kernel is elementary.

use crate::error::{Error, Result};
use crate::quad;
use crate::special::{self, WrightOptions, WrightParams};
use num_complex::Complex64;
use std::f64::consts::PI;

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Point query for the kernel: K_{alpha,n}(|x| = r, tau).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelQuery {
    pub alpha: f64,
    pub n: u32,
    pub r: f64,
    pub tau: Complex64,
}

impl KernelQuery {
    pub fn new(alpha: f64, n: u32, r: f64, tau: Complex64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidParam(format!("alpha = {alpha} must be positive")));
        }
        if n == 0 {
            return Err(Error::InvalidParam("dimension n must be >= 1".into()));
        }
        if !(r >= 0.0) {
            return Err(Error::InvalidParam(format!("r = {r} must be nonnegative")));
        }
        if tau == C_ZERO || tau.re < 0.0 || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::InvalidParam(format!(
                "tau = {tau} must be nonzero with Re(tau) >= 0"
            )));
        }
        Ok(KernelQuery { alpha, n, r, tau })
    }

    fn require_series_regime(&self) -> Result<()> {
        if self.alpha <= 1.0 {
            return Err(Error::InvalidParam(format!(
                "alpha = {} must exceed 1 for the series/contour paths",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Wright argument lambda = -r^2 tau^{-2/alpha} / 4.
    pub fn lambda(&self) -> Complex64 {
        if self.r == 0.0 {
            return C_ZERO;
        }
        -(self.r * self.r / 4.0) * self.tau.powc(Complex64::new(-2.0 / self.alpha, 0.0))
    }

    /// Prefactor 2^{1-n} / (alpha pi^{n/2} tau^{n/alpha}).
    fn prefactor(&self) -> Complex64 {
        let nf = self.n as f64;
        let scale = 2f64.powf(1.0 - nf) / (self.alpha * PI.powf(nf / 2.0));
        scale * self.tau.powc(Complex64::new(-nf / self.alpha, 0.0))
    }
}

/// Kernel value with an absolute-error estimate.
#[derive(Debug, Clone, Copy)]
pub struct KernelEval {
    pub value: Complex64,
    pub abs_err: f64,
}

/// The evaluator that actually produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMethod {
    Wright,
    Quadrature,
    MellinBarnes,
    RotatedContour,
}

impl KernelMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelMethod::Wright => "wright",
            KernelMethod::Quadrature => "quadrature",
            KernelMethod::MellinBarnes => "mellin",
            KernelMethod::RotatedContour => "contour",
        }
    }
}

/// Largest |lambda| fed to the Wright series before delegating outright.
pub const LAMBDA_GUARD: f64 = 700.0;

/// Wright-series kernel evaluation (production path).
///
/// Delegates past the cancellation guard: to `kernel_quadrature` when
/// Re(tau) > 0, else to the rotated-contour integral (n = 1, 3). The returned
/// method tag names the evaluator that produced the value.
pub fn kernel_wright(q: &KernelQuery, tol: f64) -> Result<(KernelEval, KernelMethod)> {
    q.require_series_regime()?;
    let nf = q.n as f64;
    let lambda = q.lambda();
    let pref = q.prefactor();

    // alpha = 2: the Gamma ratio is identically 1 and the series is exp(lambda)
    if q.alpha == 2.0 {
        let value = pref * lambda.exp();
        return Ok((
            KernelEval { value, abs_err: 4.0 * f64::EPSILON * value.norm() },
            KernelMethod::Wright,
        ));
    }

    if lambda.norm() <= LAMBDA_GUARD {
        let params = WrightParams::new(
            Complex64::new(nf / q.alpha, 0.0),
            2.0 / q.alpha,
            Complex64::new(nf / 2.0, 0.0),
            1.0,
        )?;
        let series = special::wright_1psi1_opts(
            &params,
            lambda,
            WrightOptions { eps_rel: 1e-16, max_terms: 10_000 },
        )?;
        let abs_err = pref.norm() * series.tail_bound;
        let value = pref * series.value;
        if abs_err <= tol * value.norm().max(f64::MIN_POSITIVE) || abs_err <= 1e-18 {
            return Ok((KernelEval { value, abs_err }, KernelMethod::Wright));
        }
        // cancellation guard tripped: fall through to a better-conditioned path
        if let Some(better) = delegate(q, tol)? {
            return Ok(better);
        }
        return Ok((KernelEval { value, abs_err }, KernelMethod::Wright));
    }
    match delegate(q, tol)? {
        Some(better) => Ok(better),
        None => Err(Error::ToleranceUnreachable { tol, est: f64::INFINITY }),
    }
}

fn delegate(q: &KernelQuery, tol: f64) -> Result<Option<(KernelEval, KernelMethod)>> {
    if q.tau.re > 1e-12 * q.tau.norm() {
        return Ok(Some((kernel_quadrature(q, tol)?, KernelMethod::Quadrature)));
    }
    if q.n == 1 || q.n == 3 {
        return Ok(Some((kernel_rotated_contour(q)?, KernelMethod::RotatedContour)));
    }
    Ok(None)
}

/// Fourier integral on the rotated ray xi = e^{-i arg(tau)/alpha} u, which
/// turns exp(-tau xi^alpha) into real damping exp(-|tau| u^alpha). Absolutely
/// convergent for any arg(tau) in [-pi/2, pi/2]; used on the oscillatory
/// boundary where the radial quadrature has no damping. n = 1 and n = 3 only
/// (elementary radial kernels).
pub fn kernel_rotated_contour(q: &KernelQuery) -> Result<KernelEval> {
    q.require_series_regime()?;
    if q.n != 1 && q.n != 3 {
        return Err(Error::InvalidParam(format!(
            "rotated-contour path supports n = 1 or 3, got {}",
            q.n
        )));
    }
    let phi = q.tau.arg() / q.alpha;
    let rot = Complex64::from_polar(1.0, -phi);
    let a = q.tau.norm();
    let r = q.r;
    // upper limit: |tau| U^alpha - r sin|phi| U >= 46
    let mut upper = (46.0 / a).powf(1.0 / q.alpha) + 1.0;
    for _ in 0..40 {
        upper = ((46.0 + r * phi.sin().abs() * upper) / a).powf(1.0 / q.alpha);
    }
    upper += 2.0;
    let freq = r * phi.cos() + q.alpha;
    let panels = ((upper * freq / 3.0).ceil() as usize).clamp(16, 40_000);
    let mut mag = 0.0f64;
    let i_unit = Complex64::i();
    let mut f = |u: f64| {
        let xi = rot * u;
        let damp = (-a * u.powf(q.alpha)).exp();
        let plus = (i_unit * r * xi).exp();
        let minus = (-i_unit * r * xi).exp();
        let val = match q.n {
            1 => damp * (plus + minus),
            _ => damp * u * (plus - minus),
        };
        mag = mag.max(val.norm());
        val
    };
    let integral = quad::integrate_composite(&mut f, 0.0, upper, panels, 32);
    let (value, scale) = match q.n {
        1 => (rot * integral / (2.0 * PI), 1.0 / (2.0 * PI)),
        _ => {
            // K = 1/(2 pi^2 r) int e^{-tau xi^alpha} xi sin(r xi) d xi;
            // sin carried as (e^{i..} - e^{-i..})/(2i), xi du picks rot^2
            let c = rot * rot / (i_unit * 4.0 * PI * PI * r);
            (c * integral, 1.0 / (4.0 * PI * PI * r))
        }
    };
    let abs_err = (mag * upper * scale) * 1e-14 + 1e-300;
    Ok(KernelEval { value, abs_err })
}

/// Radial Bessel quadrature of the kernel (oracle path): panels between
/// consecutive zeros of J_{n/2-1}, damped by exp(-Re(tau) (rho/r)^alpha).
/// Requires Re(tau) > 0 strictly; r = 0 falls back to the exact k = 0 Wright
/// term.
pub fn kernel_quadrature(q: &KernelQuery, tol: f64) -> Result<KernelEval> {
    if q.tau.re <= 1e-12 * q.tau.norm() {
        return Err(Error::OscillatoryRefused);
    }
    let nf = q.n as f64;
    if q.r == 0.0 {
        // K(0, tau) = Gamma(n/alpha) 2^{1-n} / (alpha pi^{n/2} Gamma(n/2)) tau^{-n/alpha}
        let ratio = special::gamma(Complex64::new(nf / q.alpha, 0.0))?
            * special::recip_gamma(Complex64::new(nf / 2.0, 0.0));
        let value = q.prefactor() * ratio;
        return Ok(KernelEval { value, abs_err: 8.0 * f64::EPSILON * value.norm() });
    }
    let nu = nf / 2.0 - 1.0;
    let r = q.r;
    let mut f = |rho: f64| {
        let damp = (-q.tau * (rho / r).powf(q.alpha)).exp();
        damp * rho.powf(nf / 2.0) * special::bessel_j(nu, rho)
    };
    let mut acc = C_ZERO;
    let mut abs_sum = 0.0f64;
    let mut lo = 0.0f64;
    let mut small_streak = 0usize;
    let mut last_mag = f64::INFINITY;
    let mut ratio = 0.5f64;
    let mut tail = f64::INFINITY;
    const MAX_PANELS: usize = 20_000;
    for k in 1..=MAX_PANELS {
        let hi = special::bessel_zero(nu, k);
        let panel = quad::integrate_panel(&mut f, lo, hi, 32);
        acc += panel;
        abs_sum += panel.norm();
        lo = hi;
        let mag = panel.norm();
        if last_mag > 0.0 && last_mag.is_finite() {
            ratio = (mag / last_mag).min(0.95);
        }
        if k >= 4 && mag <= 0.5 * tol * acc.norm().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 2 {
                tail = mag * ratio / (1.0 - ratio);
                break;
            }
        } else {
            small_streak = 0;
        }
        last_mag = mag;
        if k == MAX_PANELS {
            return Err(Error::ToleranceUnreachable {
                tol,
                est: mag / acc.norm().max(1e-300),
            });
        }
    }
    let scale = 1.0 / ((2.0 * PI).powf(nf / 2.0) * r.powf(nf));
    let value = acc * scale;
    let abs_err = (tail + abs_sum * 1e-15) * scale;
    Ok(KernelEval { value, abs_err })
}

/// Vertical-line truncation parameters for the Mellin-Barnes contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    /// Abscissa Re(s) = c, strictly inside (-n, (1-n)/2).
    pub c: f64,
    /// Truncation of Im(s) to [-T, T].
    pub half_length: f64,
    /// Number of trapezoid sample points (>= 4).
    pub nodes: usize,
}

impl ContourSpec {
    pub fn validate(&self, n: u32) -> Result<()> {
        let lo = -(n as f64);
        let hi = (1.0 - n as f64) / 2.0;
        if !(self.c > lo && self.c < hi) {
            return Err(Error::ContourStrip { c: self.c, lo, hi });
        }
        if !(self.half_length > 0.0) {
            return Err(Error::ContourSpec("half_length must be positive".into()));
        }
        if self.nodes < 4 {
            return Err(Error::ContourSpec(format!("need >= 4 nodes, got {}", self.nodes)));
        }
        Ok(())
    }

    /// Spec sized from the decay rate exp(-((pi/2 - |arg tau|)/alpha)|Im s|)
    /// of the Gamma-ratio integrand.
    pub fn auto(q: &KernelQuery, tol: f64) -> Self {
        let n = q.n as f64;
        let c = (1.0 - 3.0 * n) / 4.0;
        let delta = ((PI / 2.0 - q.tau.arg().abs()) / q.alpha).max(0.01);
        let t = ((-(tol.max(1e-16)).ln() + 10.0 + n) / delta).clamp(40.0, 4000.0);
        let d = (c + n).min((1.0 - n) / 2.0 - c);
        let h = (2.0 * PI * d / 45.0).min(0.02);
        let nodes = ((2.0 * t / h).ceil() as usize + 1).min(600_000);
        ContourSpec { c, half_length: t, nodes }
    }
}

/// Mellin-Barnes contour quadrature of the kernel (validation path):
/// trapezoid rule on s = c + iy, y in [-T, T], integrand in log-Gamma space.
pub fn kernel_mellin_barnes(q: &KernelQuery, spec: &ContourSpec) -> Result<KernelEval> {
    q.require_series_regime()?;
    spec.validate(q.n)?;
    if q.r <= 0.0 {
        return Err(Error::InvalidParam("Mellin-Barnes path needs r > 0".into()));
    }
    let nf = q.n as f64;
    let log_z =
        (Complex64::new(q.r / 2.0, 0.0) * q.tau.powc(Complex64::new(-1.0 / q.alpha, 0.0))).ln();
    let integrand = |y: f64| -> Result<Complex64> {
        let s = Complex64::new(spec.c, y);
        let lg = special::log_gamma((nf + s) / 2.0)? + special::log_gamma(-s / q.alpha)?
            - special::log_gamma(-s / 2.0)?
            - s * log_z;
        Ok(lg.exp())
    };
    let t = spec.half_length;
    let m = spec.nodes;
    let h = 2.0 * t / (m as f64 - 1.0);
    let mut acc = C_ZERO;
    let mut abs_sum = 0.0f64;
    for i in 0..m {
        let y = -t + h * i as f64;
        let w = if i == 0 || i == m - 1 { 0.5 } else { 1.0 };
        let v = integrand(y)?;
        acc += v * w;
        abs_sum += v.norm() * w;
    }
    let scale = 1.0 / (2.0 * PI * q.alpha * PI.powf(nf / 2.0) * q.r.powf(nf));
    let value = acc * h * scale;
    // truncation estimate from the endpoint magnitudes and decay rate
    let delta = ((PI / 2.0 - q.tau.arg().abs()) / q.alpha).max(1e-3);
    let edge = integrand(t)?.norm().max(integrand(-t)?.norm());
    let abs_err = (2.0 * edge / delta + abs_sum * h * 1e-15) * scale;
    Ok(KernelEval { value, abs_err })
}

/// Closed-form Gaussian heat kernel (4 pi t)^{-n/2} exp(-r^2/(4t)), the
/// alpha = 2 specialization.
pub fn heat_kernel(n: u32, r: f64, t: f64) -> f64 {
    assert!(t > 0.0, "t must be positive");
    (4.0 * PI * t).powf(-(n as f64) / 2.0) * (-r * r / (4.0 * t)).exp()
}

/// Individual residue terms of the contour integral at the poles s = -n-2k:
///   term_k = (-1)^k/k! * 2 Gamma((n+2k)/alpha)/Gamma(n/2+k)
///            * (r^2 tau^{-2/alpha}/4)^{n/2+k} / (alpha pi^{n/2} r^n).
/// Their partial sums converge to `kernel_wright`.
pub fn kernel_residue_series_terms(q: &KernelQuery, k_max: usize) -> Result<Vec<Complex64>> {
    q.require_series_regime()?;
    let nf = q.n as f64;
    // (r^2 tau^{-2/alpha}/4)^{n/2+k} / r^n = r^{2k} (tau^{-2/alpha}/4)^{n/2+k}
    let log_base = -Complex64::new(4f64.ln(), 0.0) - (2.0 / q.alpha) * q.tau.ln();
    let log_r2 = if q.r > 0.0 { 2.0 * q.r.ln() } else { f64::NEG_INFINITY };
    let scale = 2.0 / (q.alpha * PI.powf(nf / 2.0));
    let mut out = Vec::with_capacity(k_max);
    let mut lgfact = 0.0f64;
    for k in 0..k_max {
        let kf = k as f64;
        if k > 0 {
            lgfact += kf.ln();
        }
        if q.r == 0.0 && k > 0 {
            out.push(C_ZERO);
            continue;
        }
        let num = special::log_gamma(Complex64::new((nf + 2.0 * kf) / q.alpha, 0.0))?;
        let den = special::log_gamma(Complex64::new(nf / 2.0 + kf, 0.0))?;
        let r_pow = if k == 0 { 0.0 } else { kf * log_r2 };
        let log_term = num - den - lgfact + (nf / 2.0 + kf) * log_base + r_pow;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out.push(scale * sign * log_term.exp());
    }
    Ok(out)
}

/// Routing used by the CLI's `--method auto`: Wright inside the guard, else
/// Mellin-Barnes when the strip is usable, else quadrature.
pub fn kernel_auto(q: &KernelQuery, tol: f64) -> Result<(KernelEval, KernelMethod)> {
    if q.alpha > 1.0 && q.lambda().norm() <= LAMBDA_GUARD {
        return kernel_wright(q, tol);
    }
    if q.alpha > 1.0 && q.r > 0.0 {
        let spec = ContourSpec::auto(q, tol);
        let eval = kernel_mellin_barnes(q, &spec)?;
        if eval.abs_err <= tol * eval.value.norm().max(f64::MIN_POSITIVE) {
            return Ok((eval, KernelMethod::MellinBarnes));
        }
    }
    Ok((kernel_quadrature(q, tol)?, KernelMethod::Quadrature))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q(alpha: f64, n: u32, r: f64, tau: Complex64) -> KernelQuery {
        KernelQuery::new(alpha, n, r, tau).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn wright_heat_collapse_at_origin() {
        let (eval, m) = kernel_wright(&q(2.0, 1, 0.0, c(1.0, 0.0)), 1e-12).unwrap();
        assert!(rel(eval.value, c(0.282_094_791_773_878_14, 0.0)) < 1e-13);
        assert_eq!(m, KernelMethod::Wright);
    }

    #[test]
    fn wright_origin_gamma_ratio() {
        // K(0) = Gamma(n/alpha) 2^{1-n}/(alpha pi^{n/2} Gamma(n/2)): alpha=4, n=2
        let (eval, _) = kernel_wright(&q(4.0, 2, 0.0, c(1.0, 0.0)), 1e-12).unwrap();
        assert!(rel(eval.value, c(0.070_523_697_943_469_536, 0.0)) < 1e-13);
    }

    #[test]
    fn wright_alpha3_frozen_and_quadrature_oracle() {
        let query = q(3.0, 1, 2.0, c(1.0, 0.0));
        let (eval, m) = kernel_wright(&query, 1e-11).unwrap();
        assert_eq!(m, KernelMethod::Wright);
        assert!(rel(eval.value, c(0.125_899_541_825_518_117, 0.0)) < 1e-12);
        let quad_eval = kernel_quadrature(&query, 1e-9).unwrap();
        assert!(rel(eval.value, quad_eval.value) < 1e-8);
    }

    #[test]
    fn wright_conjugate_symmetry() {
        let tau = Complex64::from_polar(1.0, PI / 5.0);
        let (a, _) = kernel_wright(&q(2.5, 2, 1.0, tau), 1e-11).unwrap();
        let (b, _) = kernel_wright(&q(2.5, 2, 1.0, tau.conj()), 1e-11).unwrap();
        assert!(rel(b.value, a.value.conj()) < 1e-12);
    }

    #[test]
    fn wright_requires_alpha_above_one() {
        assert!(kernel_wright(&q(0.8, 1, 1.0, c(1.0, 0.0)), 1e-8).is_err());
    }

    #[test]
    fn quadrature_heat_closed_form() {
        let eval = kernel_quadrature(&q(2.0, 3, 1.0, c(1.0, 0.0)), 1e-10).unwrap();
        assert!(rel(eval.value, c(0.017_482_823_917_577_467, 0.0)) < 1e-9);
    }

    #[test]
    fn quadrature_cosine_transform_oracle() {
        // independent 1-D oracle: (1/pi) int_0^inf e^{-xi^4} cos(r xi) d xi
        let mut f = |xi: f64| Complex64::new((-xi.powi(4)).exp() * (0.5 * xi).cos(), 0.0);
        let oracle = quad::integrate_composite(&mut f, 0.0, 4.0, 32, 24) / PI;
        let eval = kernel_quadrature(&q(4.0, 1, 0.5, c(1.0, 0.0)), 1e-10).unwrap();
        assert!(rel(eval.value, oracle) < 1e-10);
        assert!(rel(eval.value, c(0.276_513_681_998_399_796, 0.0)) < 1e-10);
    }

    #[test]
    fn quadrature_matches_wright_midrange() {
        for r in [0.5, 1.0, 2.0] {
            let query = q(2.5, 2, r, c(1.0, 0.0));
            let (w, _) = kernel_wright(&query, 1e-11).unwrap();
            let qd = kernel_quadrature(&query, 1e-9).unwrap();
            assert!(rel(w.value, qd.value) < 1e-6, "r = {r}");
        }
    }

    #[test]
    fn quadrature_refuses_oscillatory() {
        assert!(matches!(
            kernel_quadrature(&q(3.0, 1, 1.0, c(0.0, 1.0)), 1e-8),
            Err(Error::OscillatoryRefused)
        ));
    }

    #[test]
    fn mellin_barnes_agrees_with_wright() {
        let query = q(3.0, 1, 1.0, c(1.0, 0.0));
        let spec = ContourSpec { c: -0.5, half_length: 40.0, nodes: 4001 };
        let mb = kernel_mellin_barnes(&query, &spec).unwrap();
        let (w, _) = kernel_wright(&query, 1e-12).unwrap();
        assert!(rel(mb.value, w.value) < 1e-8);
    }

    #[test]
    fn mellin_barnes_heat_case() {
        let query = q(2.0, 3, 1.0, c(1.0, 0.0));
        let spec = ContourSpec::auto(&query, 1e-9);
        let mb = kernel_mellin_barnes(&query, &spec).unwrap();
        let expect = heat_kernel(3, 1.0, 1.0);
        assert!(rel(mb.value, c(expect, 0.0)) < 1e-8);
    }

    #[test]
    fn mellin_barnes_strip_validation() {
        let query = q(3.0, 1, 1.0, c(1.0, 0.0));
        for bad_c in [-1.0, 0.0, 0.5, -2.0] {
            let spec = ContourSpec { c: bad_c, half_length: 40.0, nodes: 4001 };
            assert!(matches!(kernel_mellin_barnes(&query, &spec), Err(Error::ContourStrip { .. })));
        }
    }

    #[test]
    fn heat_kernel_values() {
        assert!((heat_kernel(1, 0.0, 1.0) - 0.282_094_791_773_878_14).abs() < 1e-15);
        // monotone decay in r
        let mut prev = heat_kernel(2, 0.0, 0.7);
        for i in 1..60 {
            let v = heat_kernel(2, i as f64 * 0.25, 0.7);
            assert!(v < prev);
            prev = v;
        }
        // Riemann-sum mass over a wide 1-D grid
        let (n_pts, half_width) = (4000, 25.0);
        let dx = 2.0 * half_width / n_pts as f64;
        let mass: f64 = (0..n_pts)
            .map(|i| heat_kernel(1, (-half_width + i as f64 * dx).abs(), 1.0) * dx)
            .sum();
        assert!((mass - 1.0).abs() < 1e-10);
    }

    #[test]
    fn residue_terms_sum_to_wright() {
        let query = q(3.0, 2, 1.0, c(1.0, 0.0));
        let terms = kernel_residue_series_terms(&query, 120).unwrap();
        let sum: Complex64 = terms.iter().sum();
        let (w, _) = kernel_wright(&query, 1e-12).unwrap();
        assert!(rel(sum, w.value) < 1e-13);
        // sign alternation of the Gamma-ratio terms for real positive lambda argument
        for (k, term) in terms.iter().take(12).enumerate() {
            let expect_sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!(term.re * expect_sign > 0.0, "k = {k}");
        }
    }

    #[test]
    fn residue_k0_at_origin_is_kernel_value() {
        let query = q(2.5, 2, 0.0, c(1.0, 0.0));
        let terms = kernel_residue_series_terms(&query, 3).unwrap();
        let (w, _) = kernel_wright(&query, 1e-12).unwrap();
        assert!(rel(terms[0], w.value) < 1e-13);
        assert!(terms[1].norm() == 0.0 && terms[2].norm() == 0.0);
    }

    #[test]
    fn scaling_law_across_methods() {
        // K(r, tau) = tau^{-n/alpha} K(r tau^{-1/alpha}, 1) for real tau > 0
        let (alpha, n, r, tau) = (2.5, 2u32, 1.5, 2.0);
        let lhs = kernel_wright(&q(alpha, n, r, c(tau, 0.0)), 1e-11).unwrap().0.value;
        let scaled_r = r * tau.powf(-1.0 / alpha);
        let rhs = tau.powf(-(n as f64) / alpha)
            * kernel_wright(&q(alpha, n, scaled_r, c(1.0, 0.0)), 1e-11).unwrap().0.value;
        assert!(rel(lhs, rhs) < 1e-12);
        let lhs_q = kernel_quadrature(&q(alpha, n, r, c(tau, 0.0)), 1e-9).unwrap().value;
        assert!(rel(lhs_q, rhs) < 1e-7);
    }

    #[test]
    fn rotated_contour_matches_series_where_both_work() {
        // moderate r on the oscillatory boundary: series still well-conditioned
        let query = q(3.0, 1, 5.0, c(0.0, 1.0));
        let (w, m) = kernel_wright(&query, 1e-10).unwrap();
        assert_eq!(m, KernelMethod::Wright);
        let rc = kernel_rotated_contour(&query).unwrap();
        assert!(rel(rc.value, w.value) < 1e-10);
    }

    #[test]
    fn rotated_contour_frozen_boundary_values() {
        let cases = [
            (3.0, 8.0, c(-0.007_882_292_650_058_270_4, 0.126_663_656_344_902_589)),
            (3.0, 16.0, c(0.029_971_454_185_165_143, -0.102_919_487_696_895_183)),
            (3.0, 20.0, c(-0.061_530_544_744_613_552, 0.080_528_724_008_312_274)),
            (5.0, 16.0, c(-0.047_144_463_340_459_894, -0.033_176_536_360_520_500)),
        ];
        for (alpha, r, expect) in cases {
            let eval = kernel_rotated_contour(&q(alpha, 1, r, c(0.0, 1.0))).unwrap();
            assert!(rel(eval.value, expect) < 1e-9, "alpha={alpha} r={r}");
        }
    }

    #[test]
    fn wright_delegates_on_boundary_large_r() {
        // |lambda| = 100 at theta = 1: cancellation guard must reroute
        let query = q(3.0, 1, 20.0, c(0.0, 1.0));
        let (eval, m) = kernel_wright(&query, 1e-9).unwrap();
        assert_eq!(m, KernelMethod::RotatedContour);
        assert!(rel(eval.value, c(-0.061_530_544_744_613_552, 0.080_528_724_008_312_274)) < 1e-9);
    }

    #[test]
    fn wright_delegates_to_quadrature_interior() {
        let query = q(2.5, 1, 20.0, Complex64::from_polar(1.0, PI / 4.0));
        let (eval, m) = kernel_wright(&query, 1e-9).unwrap();
        assert_eq!(m, KernelMethod::Quadrature);
        assert!(
            rel(eval.value, c(-1.478_073_947_559_883_8e-5, -1.508_565_505_228_591_8e-5)) < 1e-11
        );
    }

    #[test]
    fn auto_routing() {
        let (_, m) = kernel_auto(&q(3.0, 1, 1.0, c(1.0, 0.0)), 1e-9).unwrap();
        assert_eq!(m, KernelMethod::Wright);
    }
}
