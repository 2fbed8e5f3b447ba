//! Executable checks that the assembled solution actually solves the
//! evolution problem: finite-difference PDE residual in physical space,
//! analytic mode-wise residual in Fourier space, delta initial condition,
//! spectral semigroup property, and the three-way kernel agreement table.
//!
//! Everything is deterministic: identical inputs produce bit-identical
//! reports.

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::kernel::{
    kernel_mellin_barnes, kernel_quadrature, kernel_wright, ContourSpec, KernelQuery,
};
use crate::solution::{solution_field_spectral, solution_spectral_data, SkewSetup};
use crate::spectral::{
    apply_frac_hilbert, apply_frac_laplacian, multiplier_chi, GridSpec, MultivectorField,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Flat grid description for reports.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridInfo {
    pub n: u32,
    pub points_per_axis: usize,
    pub half_width: f64,
}

impl From<&GridSpec> for GridInfo {
    fn from(g: &GridSpec) -> Self {
        GridInfo {
            n: g.dimension(),
            points_per_axis: g.points_per_axis(),
            half_width: g.half_width(),
        }
    }
}

/// Norms of a residual field against a reference scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualReport {
    pub setup: SkewSetup,
    pub grid: GridInfo,
    pub t: f64,
    /// Central-difference step; 0 marks the analytic (spectral) residual.
    pub dt: f64,
    pub residual_linf: f64,
    pub residual_l2: f64,
    pub reference_norm: f64,
    /// Mode residual scaled by 1/max(1, |xi|^alpha); meaningful for the
    /// spectral residual where the raw linf carries an |xi|^alpha * eps
    /// floating-point floor on non-decaying data.
    pub residual_linf_scaled: f64,
}

impl ResidualReport {
    /// residual_l2 / reference_norm.
    pub fn relative(&self) -> f64 {
        self.residual_l2 / self.reference_norm.max(f64::MIN_POSITIVE)
    }
}

/// Central-difference residual of d/dt Phi = -(-Laplace)^{alpha/2}
/// exp(i pi theta/2 H) Phi, measured in physical space through the full
/// transform pipeline.
pub fn pde_residual(s: &SkewSetup, grid: &GridSpec, t: f64, dt: f64) -> Result<ResidualReport> {
    if !(dt > 0.0 && dt < t) {
        return Err(Error::InvalidParam(format!("need 0 < dt < t, got dt = {dt}, t = {t}")));
    }
    let plus = solution_field_spectral(s, grid, t + dt)?;
    let minus = solution_field_spectral(s, grid, t - dt)?;
    let ddt = plus.sub(&minus)?.scale(Complex64::new(1.0 / (2.0 * dt), 0.0));
    let phi = solution_field_spectral(s, grid, t)?;
    let rhs = apply_frac_laplacian(&apply_frac_hilbert(&phi, s.theta)?, s.alpha)?
        .scale(Complex64::new(-1.0, 0.0));
    let resid = ddt.sub(&rhs)?;
    Ok(ResidualReport {
        setup: *s,
        grid: grid.into(),
        t,
        dt,
        residual_linf: resid.norm_linf(),
        residual_l2: resid.norm_l2(),
        reference_norm: rhs.norm_l2(),
        residual_linf_scaled: resid.norm_linf(),
    })
}

/// Analytic mode-wise residual of the Fourier-space evolution
/// d/dt F(Phi)(xi) = -|xi|^alpha (e^{i pi theta/2} chi_- + e^{-i pi theta/2}
/// chi_+) F(Phi)(xi), using the exact t-derivative of the exponential data.
/// Pure roundoff: zero up to floating-point evaluation noise.
pub fn spectral_ode_residual(s: &SkewSetup, grid: &GridSpec, t: f64) -> Result<ResidualReport> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParam(format!("t = {t} must be nonnegative")));
    }
    let n = grid.dimension() as usize;
    let phase_p = Complex64::from_polar(1.0, PI * s.theta / 2.0);
    let phase_m = phase_p.conj();
    let mut linf = 0.0f64;
    let mut linf_scaled = 0.0f64;
    let mut l2_sq = 0.0f64;
    let mut ref_sq = 0.0f64;
    for i in 0..grid.len() {
        let xi = grid.frequency(i);
        let pow = xi[..n].iter().map(|v| v * v).sum::<f64>().sqrt().powf(s.alpha);
        let chi_m = multiplier_chi(&xi[..n], false);
        let chi_p = multiplier_chi(&xi[..n], true);
        let e_p = (-t * pow * phase_p).exp();
        let e_m = (-t * pow * phase_m).exp();
        // analytic derivative of data = chi_- e_p + chi_+ e_m
        let lhs = &chi_m.scale(-pow * phase_p * e_p) + &chi_p.scale(-pow * phase_m * e_m);
        // multiplier form of the right-hand side
        let data = &chi_m.scale(e_p) + &chi_p.scale(e_m);
        let mult = (&chi_m.scale(phase_p) + &chi_p.scale(phase_m)).scale_re(-pow);
        let rhs = mult.mul_checked(&data)?;
        let resid = (&lhs - &rhs).norm();
        linf = linf.max(resid);
        linf_scaled = linf_scaled.max(resid / pow.max(1.0));
        l2_sq += resid * resid;
        ref_sq += rhs.norm_sq();
    }
    Ok(ResidualReport {
        setup: *s,
        grid: grid.into(),
        t,
        dt: 0.0,
        residual_linf: linf,
        residual_l2: l2_sq.sqrt(),
        reference_norm: ref_sq.sqrt(),
        residual_linf_scaled: linf_scaled,
    })
}

/// Delta initial condition: the spectral data at t = 0 must be exactly 1 on
/// every mode.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaReport {
    pub setup: SkewSetup,
    pub grid: GridInfo,
    pub max_abs_dev: f64,
}

pub fn delta_ic_check(s: &SkewSetup, grid: &GridSpec) -> Result<DeltaReport> {
    let data = solution_spectral_data(s, grid, 0.0)?;
    let one = Multivector::one(grid.dimension());
    let max_abs_dev =
        data.values().iter().map(|v| (v - &one).norm()).fold(0.0, f64::max);
    Ok(DeltaReport { setup: *s, grid: grid.into(), max_abs_dev })
}

/// Spectral semigroup property: data(t1) * data(t2) = data(t1 + t2)
/// mode-wise in the Clifford product (the multipliers commute, being
/// functions of the single unit vector h(xi)).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemigroupReport {
    pub setup: SkewSetup,
    pub grid: GridInfo,
    pub t1: f64,
    pub t2: f64,
    pub max_abs_dev: f64,
}

pub fn semigroup_check(s: &SkewSetup, grid: &GridSpec, t1: f64, t2: f64) -> Result<SemigroupReport> {
    let a = solution_spectral_data(s, grid, t1)?;
    let b = solution_spectral_data(s, grid, t2)?;
    let ab = solution_spectral_data(s, grid, t1 + t2)?;
    let mut max_abs_dev = 0.0f64;
    for i in 0..grid.len() {
        let prod = a.value(i).mul_checked(b.value(i))?;
        max_abs_dev = max_abs_dev.max((&prod - ab.value(i)).norm());
    }
    Ok(SemigroupReport { setup: *s, grid: grid.into(), t1, t2, max_abs_dev })
}

/// Parameter grid for the three-way kernel comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckSpec {
    pub alphas: Vec<f64>,
    pub dims: Vec<u32>,
    pub radii: Vec<f64>,
    pub tau_re: f64,
    pub tau_im: f64,
    pub tol: f64,
}

impl Default for CrosscheckSpec {
    fn default() -> Self {
        CrosscheckSpec {
            alphas: vec![2.0, 2.5, 3.0, 4.0, 5.0],
            dims: vec![1, 2, 3],
            radii: vec![0.25, 1.0, 2.0, 4.0],
            tau_re: 1.0,
            tau_im: 0.0,
            tol: 1e-9,
        }
    }
}

/// One row of the agreement table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckRow {
    pub alpha: f64,
    pub n: u32,
    pub r: f64,
    pub wright_re: f64,
    pub wright_im: f64,
    pub quadrature_re: f64,
    pub quadrature_im: f64,
    pub mellin_re: f64,
    pub mellin_im: f64,
    /// |wright - quadrature| / |wright|
    pub rel_wq: f64,
    /// |wright - mellin| / |wright|
    pub rel_wm: f64,
}

/// Evaluate the kernel by all three methods over the parameter grid.
pub fn crosscheck_methods(spec: &CrosscheckSpec) -> Result<Vec<CrosscheckRow>> {
    let mut queries = Vec::new();
    for &alpha in &spec.alphas {
        for &n in &spec.dims {
            for &r in &spec.radii {
                queries.push((alpha, n, r));
            }
        }
    }
    let tau = Complex64::new(spec.tau_re, spec.tau_im);
    queries
        .into_par_iter()
        .map(|(alpha, n, r)| {
            let q = KernelQuery::new(alpha, n, r, tau)?;
            let (w, _) = kernel_wright(&q, spec.tol)?;
            let qd = kernel_quadrature(&q, spec.tol)?;
            let mb = kernel_mellin_barnes(&q, &ContourSpec::auto(&q, spec.tol))?;
            let scale = w.value.norm().max(f64::MIN_POSITIVE);
            Ok(CrosscheckRow {
                alpha,
                n,
                r,
                wright_re: w.value.re,
                wright_im: w.value.im,
                quadrature_re: qd.value.re,
                quadrature_im: qd.value.im,
                mellin_re: mb.value.re,
                mellin_im: mb.value.im,
                rel_wq: (w.value - qd.value).norm() / scale,
                rel_wm: (w.value - mb.value).norm() / scale,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::validate_params;

    #[test]
    fn pde_residual_heat_case() {
        let s = validate_params(2.0, 0.0).unwrap();
        let grid = GridSpec::new(1, 48, 20.0).unwrap();
        let report = pde_residual(&s, &grid, 1.0, 1e-4).unwrap();
        assert!(report.relative() < 1e-6, "rel = {:.2e}", report.relative());
    }

    #[test]
    fn pde_residual_odd_order_skewed_case() {
        let s = validate_params(3.0, 1.0).unwrap();
        let grid = GridSpec::new(1, 48, 20.0).unwrap();
        let report = pde_residual(&s, &grid, 1.0, 1e-4).unwrap();
        assert!(report.relative() < 1e-5, "rel = {:.2e}", report.relative());
    }

    #[test]
    fn pde_residual_second_order_in_dt() {
        let s = validate_params(2.5, 0.5).unwrap();
        let grid = GridSpec::new(1, 48, 20.0).unwrap();
        let coarse = pde_residual(&s, &grid, 1.0, 2e-4).unwrap();
        let fine = pde_residual(&s, &grid, 1.0, 1e-4).unwrap();
        let ratio = coarse.residual_l2 / fine.residual_l2;
        assert!((3.5..4.5).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn spectral_residual_is_roundoff() {
        for (alpha, theta) in [(2.0, 0.0), (2.5, 0.5), (3.0, 1.0), (5.0, 1.0)] {
            let s = validate_params(alpha, theta).unwrap();
            let grid = GridSpec::new(1, 128, 16.0).unwrap();
            let report = spectral_ode_residual(&s, &grid, 1.0).unwrap();
            assert!(report.relative() < 1e-12, "alpha={alpha}: rel = {:.2e}", report.relative());
            assert!(
                report.residual_linf_scaled < 1e-12,
                "alpha={alpha}: scaled linf = {:.2e}",
                report.residual_linf_scaled
            );
        }
        // absolute linf attainable when the data decays (theta = 0)
        let s = validate_params(2.0, 0.0).unwrap();
        let grid = GridSpec::new(1, 128, 16.0).unwrap();
        let report = spectral_ode_residual(&s, &grid, 1.0).unwrap();
        assert!(report.residual_linf < 1e-12);
    }

    #[test]
    fn spectral_residual_at_t_zero() {
        let s = validate_params(3.0, 1.0).unwrap();
        let grid = GridSpec::new(1, 64, 10.0).unwrap();
        let report = spectral_ode_residual(&s, &grid, 0.0).unwrap();
        assert!(report.residual_linf_scaled < 1e-12);
    }

    #[test]
    fn projector_exponent_identity() {
        // (e^{i pi theta/2} chi_- + e^{-i pi theta/2} chi_+)^k
        //   = e^{i pi theta k/2} chi_- + e^{-i pi theta k/2} chi_+
        let theta = 0.7f64;
        let phase = Complex64::from_polar(1.0, PI * theta / 2.0);
        for xi in [[0.5, -1.2], [3.0, 0.0]] {
            let chi_m = multiplier_chi(&xi, false);
            let chi_p = multiplier_chi(&xi, true);
            let base = &chi_m.scale(phase) + &chi_p.scale(phase.conj());
            let mut power = Multivector::one(2);
            for k in 1..=6u32 {
                power = power.mul_checked(&base).unwrap();
                let pk = Complex64::from_polar(1.0, PI * theta * k as f64 / 2.0);
                let expect = &chi_m.scale(pk) + &chi_p.scale(pk.conj());
                assert!((&power - &expect).is_zero(1e-13), "k = {k}");
            }
        }
    }

    #[test]
    fn delta_condition_is_exact() {
        let s = validate_params(3.0, 1.0).unwrap();
        let grid = GridSpec::new(2, 16, 6.0).unwrap();
        let report = delta_ic_check(&s, &grid).unwrap();
        assert_eq!(report.max_abs_dev, 0.0);
    }

    #[test]
    fn semigroup_split_times() {
        let s = validate_params(2.5, 0.5).unwrap();
        let grid = GridSpec::new(1, 128, 12.0).unwrap();
        let report = semigroup_check(&s, &grid, 0.5, 0.5).unwrap();
        assert!(report.max_abs_dev < 1e-12, "dev = {:.2e}", report.max_abs_dev);
        let s = validate_params(3.0, 1.0).unwrap();
        let report = semigroup_check(&s, &grid, 0.3, 1.1).unwrap();
        assert!(report.max_abs_dev < 1e-12, "dev = {:.2e}", report.max_abs_dev);
    }

    #[test]
    fn crosscheck_single_row() {
        let spec = CrosscheckSpec {
            alphas: vec![4.0],
            dims: vec![2],
            radii: vec![1.0],
            ..Default::default()
        };
        let rows = crosscheck_methods(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].rel_wq < 1e-6 && rows[0].rel_wm < 1e-6);
    }

    #[test]
    fn reports_serialize_to_json() {
        let s = validate_params(2.0, 0.0).unwrap();
        let grid = GridSpec::new(1, 32, 8.0).unwrap();
        let report = spectral_ode_residual(&s, &grid, 0.5).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("residual_l2") && json.contains("\"alpha\":2.0"));
    }
}
