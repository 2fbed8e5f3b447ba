//! Numerical engine for fundamental solutions of space-fractional Dirac
//! equations of Levy-Feller type.
//!
//! The solution Phi_alpha(x, t; theta) of
//!
//! ```text
//! d/dt Phi = -(-Laplace)^{alpha/2} exp(i pi theta/2 H) Phi,   Phi(x, 0) = delta(x)
//! ```
//!
//! is assembled from the radial Levy kernel K_{alpha,n}(x, tau) (the inverse
//! Fourier transform of exp(-tau |xi|^alpha)) evaluated at the rotated times
//! tau = t exp(+-i pi theta/2), combined through the Riesz-Hilbert transform
//! H and its spectral projections chi_± = (1 ± i xi/|xi|)/2.
//!
//! The crate provides:
//! - [`clifford`]: the complexified Clifford algebra Cl(0,n) the fields live in;
//! - [`special`]: complex log-Gamma, Bessel J, and the Wright series 1Psi1;
//! - [`kernel`]: K_{alpha,n} by Wright series, Mellin-Barnes contour, and
//!   damped Bessel quadrature, cross-validating one another;
//! - [`spectral`]: periodic-grid Fourier calculus (H, exp(i pi theta/2 H),
//!   chi_±, fractional Laplacian, and the principal-value singular form of H);
//! - [`solution`]: the solution assembler (spectral and kernel-projection
//!   paths) with the Theorem-style parameter validation;
//! - [`verify`]: executable residual/identity checks with JSON reports;
//! - [`cli`]: the `fracdirac` command-line surface.
//!
//! See `examples/` for a runnable tour of each capability.

pub mod cli;
pub mod clifford;
pub mod error;
pub mod kernel;
pub mod output;
pub mod quad;
pub mod solution;
pub mod special;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Build the global rayon pool honoring the `FRACDIRAC_THREADS` cap.
/// Harmless to call more than once; later calls are ignored.
pub fn init_thread_pool() {
    if let Ok(v) = std::env::var("FRACDIRAC_THREADS") {
        if let Ok(threads) = v.trim().parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
        }
    }
}
