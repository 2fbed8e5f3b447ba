//! Periodic-grid Fourier calculus for Clifford-valued fields.
//!
//! Fields live on the uniform lattice of [-L, L)^n (N points per axis, N
//! even) with frequency lattice xi_k = pi k / L, k in [-N/2, N/2). The
//! forward transform approximates F f(xi) = int f(x) e^{-i<x,xi>} dx by its
//! Riemann sum (trapezoid on the torus); the inverse carries the (2 pi)^{-n}
//! factor. Round trips are exact to FFT roundoff.
//!
//! Operators are Fourier multipliers applied mode-wise by left Clifford
//! multiplication:
//!
//! - `multiplier_h`: h(xi) = -i xi/|xi|, the Riesz-Hilbert symbol, a unitary
//!   Clifford vector (h^2 = 1) away from xi = 0, set to 0 at xi = 0
//!   (principal-value convention; the symbol has no distinguished value
//!   there);
//! - `project_pm`: chi_± = (1 ± i xi/|xi|)/2 = (1 ∓ h)/2, with chi_±(0) = 1/2
//!   so that chi_+ + chi_- = 1 holds on every mode;
//! - `apply_frac_hilbert`: exp(i pi theta/2 H) = cos(pi theta/2) I
//!   + i sin(pi theta/2) H;
//! - `apply_frac_laplacian`: |xi|^alpha;
//! - `apply_hilbert_singular`: the real-space principal-value convolution
//!   with the Riesz kernels c_n y_j/|y|^{n+1}, kept as an independent
//!   cross-check of the spectral route.

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which representation a field currently holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Physical,
    Spectral,
}

impl Space {
    fn name(self) -> &'static str {
        match self {
            Space::Physical => "physical",
            Space::Spectral => "spectral",
        }
    }
}

/// Uniform periodic grid on [-L, L)^n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: u32,
    points_per_axis: usize,
    half_width: f64,
}

impl GridSpec {
    pub fn new(n: u32, points_per_axis: usize, half_width: f64) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::GridSpec(format!("field dimension n = {n} must be 1..=3")));
        }
        if points_per_axis < 2 || points_per_axis % 2 != 0 {
            return Err(Error::GridSpec(format!(
                "points_per_axis = {points_per_axis} must be even and >= 2"
            )));
        }
        if !(half_width > 0.0) {
            return Err(Error::GridSpec(format!("half_width = {half_width} must be positive")));
        }
        Ok(GridSpec { n, points_per_axis, half_width })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Lattice spacing 2L/N.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points_per_axis as f64
    }

    /// Volume element (2L/N)^n.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.n as i32)
    }

    /// Total number of lattice points N^n.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.n)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Per-axis raw indices of the flat index (row-major).
    pub fn axes(&self, mut idx: usize) -> [usize; 3] {
        let mut out = [0usize; 3];
        for a in (0..self.n as usize).rev() {
            out[a] = idx % self.points_per_axis;
            idx /= self.points_per_axis;
        }
        out
    }

    /// Physical coordinates of a lattice point.
    pub fn point(&self, idx: usize) -> [f64; 3] {
        let ax = self.axes(idx);
        let mut out = [0.0; 3];
        for a in 0..self.n as usize {
            out[a] = -self.half_width + ax[a] as f64 * self.spacing();
        }
        out
    }

    /// Frequency lattice coordinates xi = pi k / L, k in [-N/2, N/2).
    pub fn frequency(&self, idx: usize) -> [f64; 3] {
        let ax = self.axes(idx);
        let mut out = [0.0; 3];
        for a in 0..self.n as usize {
            let signed = if ax[a] < self.points_per_axis / 2 {
                ax[a] as i64
            } else {
                ax[a] as i64 - self.points_per_axis as i64
            };
            out[a] = PI * signed as f64 / self.half_width;
        }
        out
    }

    /// Parity (-1)^{k_1 + ... + k_n} of the mode, the phase that converts the
    /// raw DFT on [0, 2L) indexing to the [-L, L) domain.
    fn mode_sign(&self, idx: usize) -> f64 {
        let ax = self.axes(idx);
        let s: usize = ax[..self.n as usize].iter().sum();
        if s % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Cl(0,n)-valued lattice field with a physical/spectral tag.
#[derive(Debug, Clone)]
pub struct MultivectorField {
    grid: GridSpec,
    values: Vec<Multivector>,
    space: Space,
}

impl MultivectorField {
    pub fn new(grid: GridSpec, values: Vec<Multivector>, space: Space) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridSpec(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        for v in &values {
            if v.dimension() != grid.n {
                return Err(Error::DimensionMismatch(v.dimension(), grid.n));
            }
        }
        Ok(MultivectorField { grid, values, space })
    }

    pub fn zero(grid: GridSpec, space: Space) -> Self {
        let values = vec![Multivector::zero(grid.n); grid.len()];
        MultivectorField { grid, values, space }
    }

    /// Physical field from a pointwise multivector function.
    pub fn from_physical_fn(grid: GridSpec, f: impl Fn(&[f64]) -> Multivector) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.point(i)[..grid.n as usize])).collect();
        MultivectorField { grid, values, space: Space::Physical }
    }

    /// Physical scalar field (complex values in the scalar blade).
    pub fn from_scalar_fn(grid: GridSpec, f: impl Fn(&[f64]) -> Complex64) -> Self {
        Self::from_physical_fn(grid, |x| Multivector::scalar(grid.n, f(x)))
    }

    /// Spectral field from a mode-wise multivector function of xi.
    pub fn from_spectral_fn(grid: GridSpec, f: impl Fn(&[f64]) -> Multivector) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.frequency(i)[..grid.n as usize])).collect();
        MultivectorField { grid, values, space: Space::Spectral }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn values(&self) -> &[Multivector] {
        &self.values
    }

    pub fn value(&self, idx: usize) -> &Multivector {
        &self.values[idx]
    }

    pub fn value_mut(&mut self, idx: usize) -> &mut Multivector {
        &mut self.values[idx]
    }

    pub fn require_space(&self, expected: Space) -> Result<()> {
        if self.space != expected {
            return Err(Error::SpaceMismatch {
                expected: expected.name(),
                found: self.space.name(),
            });
        }
        Ok(())
    }

    /// Grid l2 norm, weighted by the cell volume.
    pub fn norm_l2(&self) -> f64 {
        let w = self.grid.cell_volume();
        (self.values.iter().map(|v| v.norm_sq()).sum::<f64>() * w).sqrt()
    }

    /// Largest pointwise multivector norm.
    pub fn norm_linf(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(MultivectorField { grid: self.grid, values, space: self.space })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(MultivectorField { grid: self.grid, values, space: self.space })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let values = self.values.iter().map(|v| v.scale(s)).collect();
        MultivectorField { grid: self.grid, values, space: self.space }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridSpec("grid mismatch".into()));
        }
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                expected: self.space.name(),
                found: other.space.name(),
            });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// FFT
// ---------------------------------------------------------------------------

/// In-place complex FFT over every axis of a row-major n-dim array.
fn fft_axes(data: &mut [Complex64], n_axes: usize, len_axis: usize, forward: bool) {
    let mut planner = FftPlanner::new();
    let fft = if forward {
        planner.plan_fft_forward(len_axis)
    } else {
        planner.plan_fft_inverse(len_axis)
    };
    let total = data.len();
    let mut line = vec![C_ZERO; len_axis];
    for axis in 0..n_axes {
        // stride between consecutive elements along `axis`
        let stride = len_axis.pow((n_axes - 1 - axis) as u32);
        let block = stride * len_axis;
        for base in (0..total).step_by(block) {
            for off in 0..stride {
                let start = base + off;
                for (j, slot) in line.iter_mut().enumerate() {
                    *slot = data[start + j * stride];
                }
                fft.process(&mut line);
                for (j, v) in line.iter().enumerate() {
                    data[start + j * stride] = *v;
                }
            }
        }
    }
}

/// Forward transform: physical -> spectral, Riemann-sum approximation of the
/// integral transform (no 2 pi factors).
pub fn fft_forward(field: &MultivectorField) -> Result<MultivectorField> {
    field.require_space(Space::Physical)?;
    transform(field, true)
}

/// Inverse transform: spectral -> physical, carrying the (2 pi)^{-n} factor.
pub fn fft_inverse(field: &MultivectorField) -> Result<MultivectorField> {
    field.require_space(Space::Spectral)?;
    transform(field, false)
}

fn transform(field: &MultivectorField, forward: bool) -> Result<MultivectorField> {
    let grid = field.grid;
    let n_blades = 1usize << grid.n;
    let total = grid.len();
    let scale = if forward {
        grid.cell_volume()
    } else {
        (2.0 * grid.half_width).powi(-(grid.n as i32))
    };
    let mut out = vec![Multivector::zero(grid.n); total];
    let mut buf = vec![C_ZERO; total];
    for blade in 0..n_blades {
        let blade_ref = crate::clifford::Blade::from_mask(blade as u32);
        if forward {
            for (i, slot) in buf.iter_mut().enumerate() {
                *slot = field.values[i].coeff(blade_ref);
            }
        } else {
            // pre-phase on the spectral side
            for (i, slot) in buf.iter_mut().enumerate() {
                *slot = field.values[i].coeff(blade_ref) * grid.mode_sign(i);
            }
        }
        fft_axes(&mut buf, grid.n as usize, grid.points_per_axis, forward);
        if forward {
            for (i, v) in buf.iter().enumerate() {
                out[i].set_coeff(blade_ref, v * grid.mode_sign(i) * scale);
            }
        } else {
            for (i, v) in buf.iter().enumerate() {
                out[i].set_coeff(blade_ref, v * scale);
            }
        }
    }
    Ok(MultivectorField {
        grid,
        values: out,
        space: if forward { Space::Spectral } else { Space::Physical },
    })
}

// ---------------------------------------------------------------------------
// Fourier multipliers
// ---------------------------------------------------------------------------

/// Riesz-Hilbert symbol h(xi) = -i xi / |xi| as a grade-1 multivector;
/// zero multivector at xi = 0.
pub fn multiplier_h(xi: &[f64]) -> Multivector {
    let n = xi.len() as u32;
    let norm = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Multivector::zero(n);
    }
    let coords: Vec<Complex64> = xi.iter().map(|&v| Complex64::new(0.0, -v / norm)).collect();
    Multivector::complex_vector(&coords)
}

/// Projection symbols chi_± = (1 ± i xi/|xi|)/2 = (1 ∓ h)/2; both equal 1/2
/// at xi = 0 so the resolution of identity is exact on every mode.
pub fn multiplier_chi(xi: &[f64], plus: bool) -> Multivector {
    let n = xi.len() as u32;
    let h = multiplier_h(xi);
    let half = Multivector::scalar(n, Complex64::new(0.5, 0.0));
    let h_half = h.scale_re(0.5);
    if plus {
        &half - &h_half
    } else {
        &half + &h_half
    }
}

/// Apply a mode-wise multiplier by left Clifford multiplication:
/// F^{-1}[ m(xi) . F f ].
pub fn apply_multiplier(
    field: &MultivectorField,
    m: impl Fn(&[f64]) -> Multivector,
) -> Result<MultivectorField> {
    let mut hat = fft_forward(field)?;
    let n = hat.grid.n as usize;
    for i in 0..hat.grid.len() {
        let xi = hat.grid.frequency(i);
        let mult = m(&xi[..n]);
        hat.values[i] = mult.mul_checked(&hat.values[i])?;
    }
    fft_inverse(&hat)
}

/// Riesz-Hilbert transform H = F^{-1} h(xi) F.
pub fn apply_hilbert(field: &MultivectorField) -> Result<MultivectorField> {
    apply_multiplier(field, multiplier_h)
}

/// Fractional Riesz-Hilbert transform in polar form:
/// exp(i pi theta/2 H) f = cos(pi theta/2) f + i sin(pi theta/2) H f.
pub fn apply_frac_hilbert(field: &MultivectorField, theta: f64) -> Result<MultivectorField> {
    field.require_space(Space::Physical)?;
    let angle = PI * theta / 2.0;
    let hf = apply_hilbert(field)?;
    let cos_part = field.scale(Complex64::new(angle.cos(), 0.0));
    let sin_part = hf.scale(Complex64::new(0.0, angle.sin()));
    cos_part.add(&sin_part)
}

/// Spectral projection onto the chi_+ or chi_- component.
pub fn project_pm(field: &MultivectorField, plus: bool) -> Result<MultivectorField> {
    apply_multiplier(field, |xi| multiplier_chi(xi, plus))
}

/// Fractional Laplacian (-Laplace)^{alpha/2} = F^{-1} |xi|^alpha F.
pub fn apply_frac_laplacian(field: &MultivectorField, alpha: f64) -> Result<MultivectorField> {
    apply_multiplier(field, move |xi| {
        let n = xi.len() as u32;
        let norm_sq: f64 = xi.iter().map(|v| v * v).sum();
        Multivector::scalar(n, Complex64::new(norm_sq.powf(alpha / 2.0), 0.0))
    })
}

/// Dirac symbol -i xi (grade-1); two applications give |xi|^2 = -Laplace.
pub fn apply_dirac(field: &MultivectorField) -> Result<MultivectorField> {
    apply_multiplier(field, |xi| {
        let coords: Vec<Complex64> = xi.iter().map(|&v| Complex64::new(0.0, -v)).collect();
        Multivector::complex_vector(&coords)
    })
}

// ---------------------------------------------------------------------------
// Principal-value singular-integral form of H
// ---------------------------------------------------------------------------

/// Riesz kernel normalization Gamma((n+1)/2) / pi^{(n+1)/2}.
pub fn riesz_constant(n: u32) -> f64 {
    let lg = crate::special::log_gamma(Complex64::new((n as f64 + 1.0) / 2.0, 0.0))
        .expect("positive argument");
    (lg.re).exp() / PI.powf((n as f64 + 1.0) / 2.0)
}

/// Scalar convolution weights for the 1-D principal-value Hilbert kernel:
/// midpoint cells of width 2 dx at odd offsets, kernel periodized over all
/// images in closed form, sum_p 1/(pi (y + 2Lp)) = cot(pi y/(2L)) / (2L).
/// Entry d (0-based lattice offset) is zero for even d.
pub fn pv_weights_1d(grid: &GridSpec) -> Vec<f64> {
    let n_pts = grid.points_per_axis;
    let mut w = vec![0.0; n_pts];
    for (d, slot) in w.iter_mut().enumerate().skip(1) {
        if d % 2 == 1 {
            *slot = (2.0 / n_pts as f64) / (PI * d as f64 / n_pts as f64).tan();
        }
    }
    w
}

/// 2-D principal-value weights for the component kernel y_j/|y|^3: exact
/// cell integrals (product integration) with image folding, one weight per
/// nonzero lattice offset; the origin cell is handled by the gradient
/// correction in `apply_hilbert_singular`.
fn pv_weights_2d(grid: &GridSpec, j: usize, images: i64) -> Vec<f64> {
    let n_pts = grid.points_per_axis;
    let dx = grid.spacing();
    let l = grid.half_width;
    // int over [a1,b1]x[a2,b2] of y1/|y|^3 via the antiderivative -ln(y2+|y|)
    let cell = |c1: f64, c2: f64| -> f64 {
        let (a1, b1) = (c1 - dx / 2.0, c1 + dx / 2.0);
        let (a2, b2) = (c2 - dx / 2.0, c2 + dx / 2.0);
        let d = |y1: f64| -> f64 {
            let ra = (y1 * y1 + a2 * a2).sqrt();
            let rb = (y1 * y1 + b2 * b2).sqrt();
            // ln((a2+ra)/(b2+rb)), stable when both y2 < 0 via
            // y2 + r = y1^2/(r - y2)
            if a2 + b2 < 0.0 {
                ((rb - b2) / (ra - a2)).ln()
            } else {
                ((a2 + ra) / (b2 + rb)).ln()
            }
        };
        d(b1) - d(a1)
    };
    let mut w = vec![0.0; n_pts * n_pts];
    for d1 in 0..n_pts {
        for d2 in 0..n_pts {
            if d1 == 0 && d2 == 0 {
                continue;
            }
            let y1 = if d1 * 2 < n_pts { d1 as f64 * dx } else { d1 as f64 * dx - 2.0 * l };
            let y2 = if d2 * 2 < n_pts { d2 as f64 * dx } else { d2 as f64 * dx - 2.0 * l };
            let mut acc = 0.0;
            for p in -images..=images {
                for q in -images..=images {
                    let (c1, c2) = (y1 + 2.0 * l * p as f64, y2 + 2.0 * l * q as f64);
                    acc += if j == 0 { cell(c1, c2) } else { cell(c2, c1) };
                }
            }
            w[d1 * n_pts + d2] = acc;
        }
    }
    w
}

/// Principal-value singular-integral realization of H, computed by real-space
/// convolution with exactly periodized cell weights and symmetric exclusion
/// of the singular cell (1-D: closed-form cotangent weights at odd offsets;
/// 2-D: product-integrated cells plus a gradient correction for the origin
/// cell). Independent of the FFT route; agreement with `apply_hilbert` within
/// `quad_tol` is the cross-check.
pub fn apply_hilbert_singular(
    field: &MultivectorField,
    quad_tol: f64,
) -> Result<MultivectorField> {
    field.require_space(Space::Physical)?;
    let grid = field.grid;
    match grid.n {
        1 => {
            // intrinsic error is FFT-roundoff level; only guard absurd requests
            if quad_tol < 1e-12 {
                return Err(Error::ToleranceUnreachable { tol: quad_tol, est: 1e-12 });
            }
            let w = pv_weights_1d(&grid);
            let n_pts = grid.points_per_axis;
            let e1 = Multivector::generator(1, 1);
            let mut out = vec![Multivector::zero(1); n_pts];
            for (i, slot) in out.iter_mut().enumerate() {
                let mut acc = Multivector::zero(1);
                for (d, &wd) in w.iter().enumerate() {
                    if wd == 0.0 {
                        continue;
                    }
                    let src = (i + n_pts - d) % n_pts;
                    acc = &acc + &field.values[src].scale_re(wd);
                }
                *slot = &e1 * &acc;
            }
            MultivectorField::new(grid, out, Space::Physical)
        }
        2 => {
            let est = estimate_pv_error_2d(field);
            if est > quad_tol {
                return Err(Error::ToleranceUnreachable { tol: quad_tol, est });
            }
            let n_pts = grid.points_per_axis;
            let dx = grid.spacing();
            let c2 = riesz_constant(2);
            let w1 = pv_weights_2d(&grid, 0, 2);
            let w2 = pv_weights_2d(&grid, 1, 2);
            // origin-cell gradient correction: PV over [-dx/2, dx/2]^2 of
            // y_j/|y|^3 f(x-y) ~ -d_j f(x) * (dx/2) * 4 asinh(1)
            let near = 4.0 * (1.0f64 + 2.0f64.sqrt()).ln() * (dx / 2.0);
            let e = [Multivector::generator(2, 1), Multivector::generator(2, 2)];
            let idx = |i1: usize, i2: usize| i1 * n_pts + i2;
            let mut out = vec![Multivector::zero(2); grid.len()];
            for i1 in 0..n_pts {
                for i2 in 0..n_pts {
                    let mut acc = [Multivector::zero(2), Multivector::zero(2)];
                    for d1 in 0..n_pts {
                        let s1 = (i1 + n_pts - d1) % n_pts;
                        for d2 in 0..n_pts {
                            let k = d1 * n_pts + d2;
                            let (a, b) = (w1[k], w2[k]);
                            if a == 0.0 && b == 0.0 {
                                continue;
                            }
                            let src = idx(s1, (i2 + n_pts - d2) % n_pts);
                            let v = &field.values[src];
                            if a != 0.0 {
                                acc[0] = &acc[0] + &v.scale_re(a);
                            }
                            if b != 0.0 {
                                acc[1] = &acc[1] + &v.scale_re(b);
                            }
                        }
                    }
                    // central-difference gradient for the origin cell
                    let up1 = &field.values[idx((i1 + 1) % n_pts, i2)];
                    let dn1 = &field.values[idx((i1 + n_pts - 1) % n_pts, i2)];
                    let up2 = &field.values[idx(i1, (i2 + 1) % n_pts)];
                    let dn2 = &field.values[idx(i1, (i2 + n_pts - 1) % n_pts)];
                    let g1 = (up1 - dn1).scale_re(1.0 / (2.0 * dx));
                    let g2 = (up2 - dn2).scale_re(1.0 / (2.0 * dx));
                    acc[0] = &acc[0] - &g1.scale_re(near);
                    acc[1] = &acc[1] - &g2.scale_re(near);
                    let total = &(&e[0] * &acc[0]) + &(&e[1] * &acc[1]);
                    out[idx(i1, i2)] = total.scale_re(c2);
                }
            }
            MultivectorField::new(grid, out, Space::Physical)
        }
        n => Err(Error::InvalidParam(format!("singular-integral path limited to n <= 2, got {n}"))),
    }
}

/// Crude a-priori error estimate for the 2-D product-integration rule:
/// O((k dx)^2) from midpoint sampling at the field's dominant frequency.
fn estimate_pv_error_2d(field: &MultivectorField) -> f64 {
    let grid = field.grid;
    let hat = match fft_forward(field) {
        Ok(h) => h,
        Err(_) => return f64::INFINITY,
    };
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..grid.len() {
        let xi = grid.frequency(i);
        let k2 = xi[0] * xi[0] + xi[1] * xi[1];
        let m = hat.values[i].norm();
        num += k2 * m;
        den += m;
    }
    if den == 0.0 {
        return 0.0;
    }
    let k_eff_sq = num / den;
    0.35 * k_eff_sq * grid.spacing() * grid.spacing()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Blade;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid1(n_pts: usize, l: f64) -> GridSpec {
        GridSpec::new(1, n_pts, l).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0, 64, 10.0).is_err());
        assert!(GridSpec::new(4, 64, 10.0).is_err());
        assert!(GridSpec::new(1, 63, 10.0).is_err());
        assert!(GridSpec::new(1, 64, -1.0).is_err());
    }

    #[test]
    fn roundtrip_identity() {
        let g = grid1(128, 10.0);
        let f = MultivectorField::from_scalar_fn(g, |x| c((-x[0] * x[0] / 3.0).exp(), 0.3 * x[0]));
        let back = fft_inverse(&fft_forward(&f).unwrap()).unwrap();
        let diff = back.sub(&f).unwrap();
        assert!(diff.norm_linf() < 1e-12);
    }

    #[test]
    fn constant_field_transforms_to_dc_mass() {
        let g = grid1(64, 5.0);
        let f = MultivectorField::from_scalar_fn(g, |_| c(1.0, 0.0));
        let hat = fft_forward(&f).unwrap();
        for i in 0..g.len() {
            let v = hat.value(i).scalar_part();
            if g.frequency(i)[0] == 0.0 {
                assert!((v - c(2.0 * g.half_width(), 0.0)).norm() < 1e-10);
            } else {
                assert!(v.norm() < 1e-10);
            }
        }
    }

    #[test]
    fn gaussian_matches_continuum_transform_at_zero() {
        let g = grid1(512, 16.0);
        let f = MultivectorField::from_scalar_fn(g, |x| c((-x[0] * x[0] / 2.0).exp(), 0.0));
        let hat = fft_forward(&f).unwrap();
        let at_zero = hat.value(0).scalar_part();
        assert!((at_zero.re - (2.0 * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn space_tags_enforced() {
        let g = grid1(32, 4.0);
        let f = MultivectorField::from_scalar_fn(g, |_| c(1.0, 0.0));
        assert!(fft_inverse(&f).is_err());
        let hat = fft_forward(&f).unwrap();
        assert!(fft_forward(&hat).is_err());
    }

    #[test]
    fn h_symbol_is_unit_clifford_vector() {
        for xi in [[1.0, 0.0, 0.0], [0.3, -2.0, 0.7], [0.0, 0.0, 5.0]] {
            let h = multiplier_h(&xi);
            let sq = &h * &h;
            assert!((sq.scalar_part() - c(1.0, 0.0)).norm() < 1e-14);
            assert!(sq.grade_part(1).is_zero(1e-14) && sq.grade_part(2).is_zero(1e-14));
        }
        // axis-aligned case: h = -i e1
        let h = multiplier_h(&[2.5]);
        assert!((h.coeff(Blade::generator(1)) - c(0.0, -1.0)).norm() < 1e-15);
        // zero convention
        assert!(multiplier_h(&[0.0, 0.0]).is_zero(0.0));
    }

    #[test]
    fn chi_identities_modewise() {
        for xi in [[0.4, -1.1], [2.0, 0.0], [0.0, 0.0]] {
            let plus = multiplier_chi(&xi, true);
            let minus = multiplier_chi(&xi, false);
            let one = Multivector::one(2);
            assert!((&(&plus + &minus) - &one).is_zero(1e-15));
            if xi != [0.0, 0.0] {
                assert!((&(&plus * &plus) - &plus).is_zero(1e-15));
                assert!((&(&minus * &minus) - &minus).is_zero(1e-15));
                assert!((&plus * &minus).is_zero(1e-15));
                assert!((&minus * &plus).is_zero(1e-15));
            }
        }
    }

    #[test]
    fn hilbert_squares_to_identity_on_zero_mean() {
        let g = grid1(128, 8.0);
        let k = PI * 5.0 / g.half_width();
        let f = MultivectorField::from_scalar_fn(g, |x| c((k * x[0]).cos(), 0.0));
        let hh = apply_hilbert(&apply_hilbert(&f).unwrap()).unwrap();
        let diff = hh.sub(&f).unwrap();
        assert!(diff.norm_linf() < 1e-10);
    }

    #[test]
    fn hilbert_of_single_mode() {
        // H sin(kx) = -cos(kx) e1 under the -i xi/|xi| symbol
        let g = grid1(256, 10.0);
        let k = PI * 8.0 / g.half_width();
        let f = MultivectorField::from_scalar_fn(g, |x| c((k * x[0]).sin(), 0.0));
        let hf = apply_hilbert(&f).unwrap();
        for i in 0..g.len() {
            let x = g.point(i)[0];
            let expect = -(k * x).cos();
            let got = hf.value(i).coeff(Blade::generator(1));
            assert!((got - c(expect, 0.0)).norm() < 1e-10, "x = {x}");
            assert!(hf.value(i).scalar_part().norm() < 1e-10);
        }
    }

    #[test]
    fn hilbert_of_zero_is_zero() {
        let g = grid1(64, 4.0);
        let f = MultivectorField::zero(g, Space::Physical);
        assert!(apply_hilbert(&f).unwrap().norm_linf() == 0.0);
    }

    #[test]
    fn frac_hilbert_theta_zero_is_identity() {
        let g = grid1(128, 6.0);
        let f = MultivectorField::from_scalar_fn(g, |x| c((x[0] * 0.9).sin(), (x[0]).cos()));
        let out = apply_frac_hilbert(&f, 0.0).unwrap();
        assert!(out.sub(&f).unwrap().norm_linf() < 1e-14);
    }

    #[test]
    fn frac_hilbert_theta_one_is_i_hilbert() {
        let g = grid1(128, 6.0);
        let k = PI * 4.0 / g.half_width();
        let f = MultivectorField::from_scalar_fn(g, |x| c((k * x[0]).sin(), 0.0));
        let lhs = apply_frac_hilbert(&f, 1.0).unwrap();
        let rhs = apply_hilbert(&f).unwrap().scale(Complex64::i());
        assert!(lhs.sub(&rhs).unwrap().norm_linf() < 1e-12);
    }

    #[test]
    fn frac_hilbert_angle_addition() {
        let g = grid1(128, 6.0);
        let k = PI * 6.0 / g.half_width();
        let f = MultivectorField::from_scalar_fn(g, |x| c((k * x[0]).cos(), 0.0));
        let (t1, t2) = (0.35, -0.6);
        let seq = apply_frac_hilbert(&apply_frac_hilbert(&f, t1).unwrap(), t2).unwrap();
        let direct = apply_frac_hilbert(&f, t1 + t2).unwrap();
        assert!(seq.sub(&direct).unwrap().norm_linf() < 1e-10);
    }

    #[test]
    fn frac_hilbert_preserves_l2_on_zero_mean() {
        // lattice frequencies keep the field exactly zero-mean on the grid
        let g = grid1(256, 8.0);
        let (k1, k2) = (PI * 3.0 / 8.0, PI * 7.0 / 8.0);
        let f = MultivectorField::from_physical_fn(g, |x| {
            let mut v = Multivector::scalar(1, c((k1 * x[0]).sin(), 0.0));
            v.set_coeff(Blade::generator(1), c(0.0, (k2 * x[0]).sin()));
            v
        });
        let out = apply_frac_hilbert(&f, 0.77).unwrap();
        assert!((out.norm_l2() - f.norm_l2()).abs() < 1e-10 * f.norm_l2());
    }

    #[test]
    fn projections_resolve_identity_on_fields() {
        let g = GridSpec::new(2, 16, 4.0).unwrap();
        let f = MultivectorField::from_physical_fn(g, |x| {
            let mut v = Multivector::scalar(2, c(x[0].sin(), x[1].cos()));
            v.set_coeff(Blade::generator(1), c(x[1].sin(), 0.0));
            v
        });
        let sum = project_pm(&f, true).unwrap().add(&project_pm(&f, false).unwrap()).unwrap();
        assert!(sum.sub(&f).unwrap().norm_linf() < 1e-12);
    }

    #[test]
    fn projections_idempotent_and_annihilating() {
        let g = grid1(128, 8.0);
        let k = PI * 3.0 / g.half_width();
        let f = MultivectorField::from_scalar_fn(g, |x| c((k * x[0]).sin(), 0.0));
        let p = project_pm(&f, true).unwrap();
        let pp = project_pm(&p, true).unwrap();
        assert!(pp.sub(&p).unwrap().norm_linf() < 1e-10);
        let pm = project_pm(&p, false).unwrap();
        assert!(pm.norm_linf() < 1e-10);
    }

    #[test]
    fn frac_laplacian_eigenvalues() {
        let g = grid1(128, 8.0);
        let k = PI * 7.0 / g.half_width();
        let f = MultivectorField::from_scalar_fn(g, |x| c((k * x[0]).cos(), 0.0));
        // alpha = 2 reproduces -Laplace with eigenvalue k^2
        let lap = apply_frac_laplacian(&f, 2.0).unwrap();
        let expect = f.scale(c(k * k, 0.0));
        assert!(lap.sub(&expect).unwrap().norm_linf() < 1e-9 * k * k);
        // composition law
        let a = apply_frac_laplacian(&apply_frac_laplacian(&f, 1.3).unwrap(), 0.9).unwrap();
        let b = apply_frac_laplacian(&f, 2.2).unwrap();
        assert!(a.sub(&b).unwrap().norm_linf() < 1e-10 * b.norm_linf());
    }

    #[test]
    fn dirac_squares_to_laplacian() {
        let g = GridSpec::new(2, 16, 4.0).unwrap();
        let f = MultivectorField::from_scalar_fn(g, |x| c((x[0] - 0.3 * x[1]).sin(), 0.0));
        let dd = apply_dirac(&apply_dirac(&f).unwrap()).unwrap();
        let lap = apply_frac_laplacian(&f, 2.0).unwrap();
        assert!(dd.sub(&lap).unwrap().norm_linf() < 1e-10);
    }

    #[test]
    fn dirac_power_pattern_matches_laplacian_powers() {
        // 2m applications of -i xi equal |xi|^{2m}
        let g = grid1(64, 6.0);
        let f = MultivectorField::from_scalar_fn(g, |x| c((1.2 * x[0]).sin(), 0.0));
        let mut d = f.clone();
        for _ in 0..4 {
            d = apply_dirac(&d).unwrap();
        }
        let lap2 = apply_frac_laplacian(&f, 4.0).unwrap();
        assert!(d.sub(&lap2).unwrap().norm_linf() < 1e-9 * lap2.norm_linf().max(1.0));
    }

    #[test]
    fn singular_hilbert_constant_field_vanishes() {
        let g = grid1(64, 5.0);
        let f = MultivectorField::from_scalar_fn(g, |_| c(3.0, -1.0));
        let out = apply_hilbert_singular(&f, 1e-3).unwrap();
        assert!(out.norm_linf() < 1e-13);
    }

    #[test]
    fn singular_hilbert_matches_spectral_single_mode() {
        let g = grid1(1024, 20.0);
        let k = PI * 256.0 / g.half_width();
        let f = MultivectorField::from_scalar_fn(g, |x| c((k * x[0]).sin(), 0.0));
        let pv = apply_hilbert_singular(&f, 1e-3).unwrap();
        let sp = apply_hilbert(&f).unwrap();
        let rel = pv.sub(&sp).unwrap().norm_l2() / sp.norm_l2();
        assert!(rel < 1e-3, "rel = {rel:.2e}");
    }

    #[test]
    fn singular_hilbert_matches_spectral_wave_packet() {
        let g = grid1(1024, 20.0);
        let f = MultivectorField::from_scalar_fn(g, |x| {
            c((-x[0] * x[0] / 8.0).exp() * (4.0 * x[0]).sin(), 0.0)
        });
        let pv = apply_hilbert_singular(&f, 1e-3).unwrap();
        let sp = apply_hilbert(&f).unwrap();
        let rel = pv.sub(&sp).unwrap().norm_l2() / sp.norm_l2();
        assert!(rel < 1e-10, "rel = {rel:.2e}");
    }

    #[test]
    fn singular_hilbert_2d_low_mode() {
        let g = GridSpec::new(2, 64, 10.0).unwrap();
        let (k1, k2) = (PI * 2.0 / 10.0, PI * 1.0 / 10.0);
        let f = MultivectorField::from_scalar_fn(g, |x| {
            c((k1 * x[0]).sin() * (k2 * x[1]).cos(), 0.0)
        });
        let pv = apply_hilbert_singular(&f, 0.2).unwrap();
        let sp = apply_hilbert(&f).unwrap();
        let rel = pv.sub(&sp).unwrap().norm_l2() / sp.norm_l2();
        assert!(rel < 2e-2, "rel = {rel:.2e}");
    }

    #[test]
    fn singular_hilbert_rejects_unreachable_tolerance() {
        let g = GridSpec::new(2, 16, 4.0).unwrap();
        let f = MultivectorField::from_scalar_fn(g, |x| c((2.0 * x[0]).sin(), 0.0));
        assert!(matches!(
            apply_hilbert_singular(&f, 1e-9),
            Err(Error::ToleranceUnreachable { .. })
        ));
    }

    #[test]
    fn riesz_kernel_symbol_matches_h_multiplier() {
        // FT of the discrete 1-D Riesz kernel equals -i sgn(xi) mid-band
        let g = grid1(1024, 20.0);
        let w = pv_weights_1d(&g);
        let dx = g.spacing();
        let mut kernel = MultivectorField::zero(g, Space::Physical);
        let n_pts = g.points_per_axis();
        for (d, &wd) in w.iter().enumerate() {
            if wd != 0.0 {
                // offset d means displacement y = d dx wrapped to [-L, L);
                // grid index of that position is d + N/2 mod N. Weights carry
                // the cell measure; divide out to get kernel samples.
                let idx = (d + n_pts / 2) % n_pts;
                *kernel.value_mut(idx) = Multivector::scalar(1, c(wd / dx, 0.0));
            }
        }
        let hat = fft_forward(&kernel).unwrap();
        let mut worst: f64 = 0.0;
        for i in 1..g.len() {
            let xi = g.frequency(i)[0];
            if xi == 0.0 || xi.abs() >= PI * 511.0 / 20.0 {
                continue;
            }
            let target = c(0.0, -xi.signum());
            worst = worst.max((hat.value(i).scalar_part() - target).norm());
        }
        assert!(worst < 1e-2, "worst = {worst:.2e}");
    }

    #[test]
    fn hilbert_is_combination_of_component_riesz_transforms() {
        // H = sum_j e_j R_j with R_j the scalar multiplier -i xi_j/|xi|
        let g = GridSpec::new(2, 16, 4.0).unwrap();
        let f = MultivectorField::from_scalar_fn(g, |x| c((x[0] + 0.5 * x[1]).sin(), 0.0));
        let h = apply_hilbert(&f).unwrap();
        let mut combo = MultivectorField::zero(g, Space::Physical);
        for j in 0..2usize {
            let rj = apply_multiplier(&f, |xi| {
                let norm = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
                let v = if norm == 0.0 { 0.0 } else { -xi[j] / norm };
                Multivector::scalar(2, c(0.0, v))
            })
            .unwrap();
            let ej = Multivector::generator(2, (j + 1) as u32);
            let lifted: Vec<Multivector> = rj.values().iter().map(|v| &ej * v).collect();
            let lifted = MultivectorField::new(g, lifted, Space::Physical).unwrap();
            combo = combo.add(&lifted).unwrap();
        }
        assert!(combo.sub(&h).unwrap().norm_linf() < 1e-12);
    }
}
