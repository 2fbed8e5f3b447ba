//! Complex log-Gamma, Bessel J, and the Wright series 1Psi1.
//!
//! The Wright series
//!   1Psi1[(a1,alpha1);(b1,beta1); lambda] = sum_k Gamma(a1+alpha1 k)/Gamma(b1+beta1 k) lambda^k/k!
//! is summed in log-Gamma space so the Gamma ratios never overflow; terms are
//! convergent for mu = 1 + beta1 - alpha1 > 0. The Mellin fixtures
//! `mellin_f`/`mellin_g` are the two transform factors entering the kernel's
//! contour representation; they are exercised as test oracles, not used on
//! the production path.

use crate::error::{Error, Result};
use crate::quad;
use num_complex::Complex64;
use std::f64::consts::PI;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_74; // ln(2*pi)/2

/// Stirling coefficients B_{2m}/(2m(2m-1)), m = 1..9.
const STIRLING: [f64; 9] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
];

/// Principal branch of log Gamma(z) for complex z off the pole set.
///
/// Recurrence shifts the argument to Re(z) >= 10 where the Stirling series
/// with nine Bernoulli terms is accurate to ~1e-15; the shifted principal
/// logs reproduce the principal branch on C minus the cut (-inf, 0].
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::GammaPole(z.re));
    }
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 10.0 {
        shift += z.ln();
        z += 1.0;
    }
    let zi = 1.0 / z;
    let zi2 = zi * zi;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = zi;
    for c in STIRLING {
        series += p * c;
        p *= zi2;
    }
    Ok((z - 0.5) * z.ln() - z + LN_2PI_HALF + series - shift)
}

/// Gamma(z) through the log, safe against overflow only for |log| < 709.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// 1/Gamma(z), zero at the poles.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

// ---------------------------------------------------------------------------
// Bessel J
// ---------------------------------------------------------------------------

/// Bessel function J_nu(x) for nu >= -1/2, x >= 0.
///
/// Ascending series for small x, Hankel asymptotics for large x, and the
/// Bessel integral representation in the bridge region where neither keeps
/// 1e-12 absolute accuracy.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    assert!(nu >= -0.5, "order {nu} below -1/2");
    assert!(x >= 0.0, "negative argument {x}");
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let half_integer = (2.0 * nu).fract() == 0.0 && (2.0 * nu as f64).rem_euclid(2.0) == 1.0;
    if half_integer {
        if nu == -0.5 {
            return (2.0 / (PI * x)).sqrt() * x.cos();
        }
        if nu == 0.5 {
            return (2.0 / (PI * x)).sqrt() * x.sin();
        }
        if x >= nu {
            // upward recurrence from the closed forms, stable for x >= nu
            let mut jm = (2.0 / (PI * x)).sqrt() * x.cos(); // J_{-1/2}
            let mut j = (2.0 / (PI * x)).sqrt() * x.sin(); // J_{1/2}
            let mut order = 0.5;
            while order < nu - 0.25 {
                let jn = (2.0 * order / x) * j - jm;
                jm = j;
                j = jn;
                order += 1.0;
            }
            return j;
        }
        return bessel_series(nu, x);
    }
    if x <= 12.0 || x <= 1.5 * nu {
        return bessel_series(nu, x);
    }
    if x >= 20.0 + 0.5 * nu * nu {
        if let Some(v) = bessel_hankel(nu, x) {
            return v;
        }
    }
    bessel_integral(nu, x)
}

/// Ascending series sum_k (-1)^k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)).
fn bessel_series(nu: f64, x: f64) -> f64 {
    let lg = log_gamma(Complex64::new(nu + 1.0, 0.0)).expect("nu >= -1/2 keeps nu+1 > 0");
    let mut term = (nu * (x / 2.0).ln() - lg.re).exp();
    let q = x * x / 4.0;
    let mut sum = term;
    for k in 0..200 {
        term *= -q / ((k as f64 + 1.0) * (nu + k as f64 + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-30) {
            break;
        }
    }
    sum
}

/// Hankel large-argument expansion, summed to its smallest term; `None` when
/// the smallest term is too large for 1e-13 absolute accuracy.
fn bessel_hankel(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let chi = x - (0.5 * nu + 0.25) * PI;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut t = 1.0;
    let mut k = 1usize;
    loop {
        let tn = t * (mu - (2.0 * k as f64 - 1.0).powi(2)) / (8.0 * x * k as f64);
        if tn.abs() >= t.abs() && k > 2 {
            if t.abs() > 1e-13 {
                return None;
            }
            break;
        }
        match k % 4 {
            1 => q += tn,
            2 => p -= tn,
            3 => q -= tn,
            _ => p += tn,
        }
        t = tn;
        if t.abs() < 1e-17 || k > 60 {
            break;
        }
        k += 1;
    }
    Some((2.0 / (PI * x)).sqrt() * (chi.cos() * p - chi.sin() * q))
}

/// Bessel integral representation
///   J_nu(x) = (1/pi) int_0^pi cos(x sin p - nu p) dp
///             - sin(nu pi)/pi int_0^inf exp(-nu t - x sinh t) dt.
fn bessel_integral(nu: f64, x: f64) -> f64 {
    let panels = ((x + nu.abs()) / 3.0).ceil() as usize + 4;
    let mut f = |p: f64| Complex64::new((x * p.sin() - nu * p).cos(), 0.0);
    let osc = quad::integrate_composite(&mut f, 0.0, PI, panels, 16).re / PI;
    let s = (nu * PI).sin();
    if s.abs() < 1e-300 {
        return osc;
    }
    let t_max = (50.0 / x + 1.0).asinh().max(1e-3);
    let mut g = |t: f64| Complex64::new((-nu * t - x * t.sinh()).exp(), 0.0);
    let exp_part = quad::integrate_composite(&mut g, 0.0, t_max, 8, 16).re;
    osc - s / PI * exp_part
}

/// k-th positive zero of J_nu (k >= 1): McMahon expansion refined by Newton.
pub fn bessel_zero(nu: f64, k: usize) -> f64 {
    assert!(k >= 1);
    let mu = 4.0 * nu * nu;
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let mut x = beta - (mu - 1.0) / (8.0 * beta)
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * beta).powi(3));
    if x <= 0.0 {
        x = beta.max(1.0);
    }
    for _ in 0..50 {
        let j = bessel_j(nu, x);
        // J_nu'(x) = (nu/x) J_nu - J_{nu+1}, orders stay >= -1/2
        let jp = (nu / x) * j - bessel_j(nu + 1.0, x);
        if jp.abs() < 1e-300 {
            break;
        }
        let dx = (j / jp).clamp(-0.4 * x, 0.4 * x);
        x -= dx;
        if dx.abs() < 1e-13 * x {
            break;
        }
    }
    x
}

// ---------------------------------------------------------------------------
// Wright series
// ---------------------------------------------------------------------------

/// Parameter quadruple of the 1Psi1 series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightParams {
    pub a1: Complex64,
    pub alpha1: f64,
    pub b1: Complex64,
    pub beta1: f64,
}

impl WrightParams {
    pub fn new(a1: Complex64, alpha1: f64, b1: Complex64, beta1: f64) -> Result<Self> {
        if alpha1 == 0.0 || beta1 == 0.0 {
            return Err(Error::InvalidParam("alpha1 and beta1 must be nonzero".into()));
        }
        Ok(WrightParams { a1, alpha1, b1, beta1 })
    }

    /// Convergence exponent mu = 1 + beta1 - alpha1; terms decay like
    /// exp(-mu k log k) when mu > 0.
    pub fn mu(&self) -> f64 {
        1.0 + self.beta1 - self.alpha1
    }
}

/// Truncated series value with truncation and conditioning diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: usize,
    /// Upper estimate of the committed error: geometric truncation tail plus
    /// accumulated summation roundoff.
    pub tail_bound: f64,
    /// Largest term magnitude encountered; peak * eps bounds the summation
    /// roundoff and measures cancellation when it exceeds |value|.
    pub peak_term: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct WrightOptions {
    pub eps_rel: f64,
    pub max_terms: usize,
}

impl Default for WrightOptions {
    fn default() -> Self {
        WrightOptions { eps_rel: 1e-15, max_terms: 10_000 }
    }
}

pub fn wright_1psi1(p: &WrightParams, lambda: Complex64) -> Result<SeriesResult> {
    wright_1psi1_opts(p, lambda, WrightOptions::default())
}

/// Sum the 1Psi1 series term by term in log-Gamma space.
///
/// Stops once two consecutive terms fall below eps_rel * |partial sum| and
/// records a geometric tail bound from the last observed term ratio.
pub fn wright_1psi1_opts(
    p: &WrightParams,
    lambda: Complex64,
    opts: WrightOptions,
) -> Result<SeriesResult> {
    let zero = Complex64::new(0.0, 0.0);
    let k0 = gamma(p.a1).map_err(|_| Error::GammaPoleAtTerm { k: 0 })? * recip_gamma(p.b1);
    if lambda == zero {
        return Ok(SeriesResult { value: k0, terms_used: 1, tail_bound: 0.0, peak_term: k0.norm() });
    }
    let log_lambda = lambda.ln();
    let mut sum = k0;
    let mut peak = k0.norm();
    let mut lgfact = 0.0f64; // ln k!
    let mut prev_mag = k0.norm();
    let mut small_streak = 0usize;
    let mut growth_streak = 0usize;
    let mut last_ratio = 0.0f64;
    for k in 1..opts.max_terms {
        let kf = k as f64;
        lgfact += kf.ln();
        let num = p.a1 + p.alpha1 * kf;
        let lg_num = log_gamma(num).map_err(|_| Error::GammaPoleAtTerm { k })?;
        // a pole in the denominator Gamma just zeroes the term
        let term = match log_gamma(p.b1 + p.beta1 * kf) {
            Ok(lg_den) => (lg_num - lg_den - lgfact + log_lambda * kf).exp(),
            Err(_) => zero,
        };
        sum += term;
        let mag = term.norm();
        peak = peak.max(mag);
        if mag > prev_mag {
            growth_streak += 1;
            if growth_streak > 16 && p.mu() <= 0.0 {
                return Err(Error::NonConvergence { terms: k + 1, k });
            }
            if !mag.is_finite() {
                return Err(Error::NonConvergence { terms: k + 1, k });
            }
        } else {
            growth_streak = 0;
        }
        if prev_mag > 0.0 {
            last_ratio = mag / prev_mag;
        }
        if mag <= opts.eps_rel * sum.norm().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 2 {
                let q = last_ratio.min(0.5);
                let truncation = mag * q / (1.0 - q) + mag * 1e-2;
                let roundoff = peak * (k as f64 + 1.0) * f64::EPSILON;
                return Ok(SeriesResult {
                    value: sum,
                    terms_used: k + 1,
                    tail_bound: truncation + roundoff,
                    peak_term: peak,
                });
            }
        } else {
            small_streak = 0;
        }
        prev_mag = mag;
    }
    Err(Error::NonConvergence { terms: opts.max_terms, k: opts.max_terms - 1 })
}

// ---------------------------------------------------------------------------
// Mellin-transform reference formulas (test fixtures)
// ---------------------------------------------------------------------------

/// Mellin transform of exp(-rho^{-alpha}): (1/alpha) Gamma(-s/alpha),
/// valid for Re(s) < 0.
pub fn mellin_f(s: Complex64, alpha: f64) -> Result<Complex64> {
    if alpha <= 1.0 {
        return Err(Error::InvalidParam(format!("alpha = {alpha} must exceed 1")));
    }
    if s.re >= 0.0 {
        return Err(Error::InvalidParam(format!("Re(s) = {} must be negative", s.re)));
    }
    Ok(gamma(-s / alpha)? / alpha)
}

/// Mellin transform of rho^{n/2+1} J_{n/2-1}(rho) at s, reduced by the Weber
/// integral to 2^{n/2+s} Gamma((n+s)/2) / Gamma(-s/2) on the strip
/// -n < Re(s) < (1-n)/2.
pub fn mellin_g(s: Complex64, n: u32) -> Result<Complex64> {
    let nf = n as f64;
    let lo = -nf;
    let hi = (1.0 - nf) / 2.0;
    if s.re <= lo || s.re >= hi {
        return Err(Error::ContourStrip { c: s.re, lo, hi });
    }
    let lg = log_gamma((s + nf) / 2.0)?;
    let pow = ((nf / 2.0 + s) * std::f64::consts::LN_2).exp();
    Ok(pow * lg.exp() * recip_gamma(-s / 2.0))
}
