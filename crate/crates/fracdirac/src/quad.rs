//! Gauss-Legendre quadrature utilities shared by the kernel and
//! special-function evaluators.

use num_complex::Complex64;
use std::sync::{Mutex, OnceLock};

/// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre recurrence and cached.
pub fn gauss_legendre(m: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<Mutex<std::collections::HashMap<usize, &'static (Vec<f64>, Vec<f64>)>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(&r) = guard.get(&m) {
        return r;
    }
    let rule = Box::leak(Box::new(compute_gauss_legendre(m)));
    guard.insert(m, rule);
    rule
}

fn compute_gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let half = m.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess for the i-th root (descending order)
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(m, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
        let (_, dp) = legendre_and_derivative(m, 0.0);
        weights[m / 2] = 2.0 / (dp * dp);
    }
    (nodes, weights)
}

fn legendre_and_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = if (1.0 - x * x).abs() > 1e-300 {
        m as f64 * (x * p1 - p0) / (x * x - 1.0)
    } else {
        0.0
    };
    if m == 1 {
        (x, 1.0)
    } else {
        (p1, dp)
    }
}

/// Integral of a complex-valued integrand over [a, b] with an m-point rule.
pub fn integrate_panel(f: &mut impl FnMut(f64) -> Complex64, a: f64, b: f64, m: usize) -> Complex64 {
    let (nodes, weights) = gauss_legendre(m);
    let mid = 0.5 * (a + b);
    let hal = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(weights) {
        acc += f(mid + hal * x) * w;
    }
    acc * hal
}

/// Composite rule: [a, b] split into `panels` equal panels of `m` points.
pub fn integrate_composite(
    f: &mut impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    panels: usize,
    m: usize,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let h = (b - a) / panels as f64;
    for i in 0..panels {
        acc += integrate_panel(f, a + i as f64 * h, a + (i + 1) as f64 * h, m);
    }
    acc
}
