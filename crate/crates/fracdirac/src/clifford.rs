//! Complexified Clifford algebra Cl(0,n).
//!
//! Basis blades e_J = e_{j1}...e_{jr} (j1 < ... < jr) are encoded as bit
//! masks over {1..n}; a multivector is a dense array of 2^n complex
//! coefficients indexed by mask. The generators anti-commute and square to
//! -1: e_j e_k + e_k e_j = -2 delta_jk.
//!
//! The dagger conjugation reverses blade order, negates each generator and
//! conjugates coefficients, so e_J picks the sign (-1)^{r(r+1)/2} for grade
//! r and the norm identity ||A||^2 = scalar part of A^dagger A reduces to
//! sum_J |c_J|^2 over the orthonormal blade basis.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Maximum supported dimension (2^12 = 4096 coefficients).
pub const MAX_DIM: u32 = 12;

/// A basis blade of Cl(0,n), identified by its index bit-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade {
    mask: u32,
}

impl Blade {
    /// The scalar unit blade e_empty = 1.
    pub const SCALAR: Blade = Blade { mask: 0 };

    pub fn new(mask: u32, n: u32) -> Result<Self> {
        if n > MAX_DIM || mask >= (1u32 << n) {
            return Err(Error::BladeOutOfRange { mask, n });
        }
        Ok(Blade { mask })
    }

    /// Blade from a raw mask without range checking against a dimension.
    pub fn from_mask(mask: u32) -> Self {
        Blade { mask }
    }

    /// Generator e_j, 1-based index.
    pub fn generator(j: u32) -> Self {
        Blade { mask: 1 << (j - 1) }
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    /// Grade r = number of generators in the blade.
    pub fn grade(self) -> u32 {
        self.mask.count_ones()
    }

    /// Geometric product of two basis blades: sign and resulting blade.
    ///
    /// The output mask is the symmetric difference; the sign counts the
    /// transpositions needed to interleave the two sorted index lists plus
    /// one factor -1 per common index (e_j^2 = -1).
    pub fn product(self, other: Blade) -> (i32, Blade) {
        let sign = blade_product_sign(self.mask, other.mask);
        (sign, Blade { mask: self.mask ^ other.mask })
    }

    /// Sign of the dagger conjugation on this blade: (-1)^{r(r+1)/2}.
    pub fn dagger_sign(self) -> i32 {
        match self.grade() % 4 {
            0 | 3 => 1,
            _ => -1,
        }
    }
}

/// Transposition-count sign for the product e_A e_B (popcount-prefix method),
/// including the (-1)^{|A & B|} from squared generators.
fn blade_product_sign(a: u32, b: u32) -> i32 {
    // Count pairs (i in a, j in b) with i > j: each needs one transposition
    // to bring the concatenated index list into sorted order.
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    swaps += (a & b).count_ones(); // e_j e_j = -1
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Validated blade product in dimension n.
pub fn blade_product(a: Blade, b: Blade, n: u32) -> Result<(i32, Blade)> {
    if n > MAX_DIM || a.mask >= (1 << n) {
        return Err(Error::BladeOutOfRange { mask: a.mask, n });
    }
    if b.mask >= (1 << n) {
        return Err(Error::BladeOutOfRange { mask: b.mask, n });
    }
    Ok(a.product(b))
}

/// Element of the complexified Clifford algebra Cl(0,n).
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    n: u32,
    coeffs: Vec<Complex64>,
}

impl Multivector {
    pub fn zero(n: u32) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        Multivector { n, coeffs: vec![Complex64::new(0.0, 0.0); 1 << n] }
    }

    pub fn scalar(n: u32, value: Complex64) -> Self {
        let mut mv = Self::zero(n);
        mv.coeffs[0] = value;
        mv
    }

    pub fn one(n: u32) -> Self {
        Self::scalar(n, Complex64::new(1.0, 0.0))
    }

    /// Generator e_j (1-based).
    pub fn generator(n: u32, j: u32) -> Self {
        assert!(j >= 1 && j <= n, "generator index {j} out of 1..={n}");
        let mut mv = Self::zero(n);
        mv.coeffs[1 << (j - 1)] = Complex64::new(1.0, 0.0);
        mv
    }

    /// Grade-1 element from real coordinates: sum_j x_j e_j.
    pub fn vector(coords: &[f64]) -> Self {
        let n = coords.len() as u32;
        let mut mv = Self::zero(n);
        for (j, &c) in coords.iter().enumerate() {
            mv.coeffs[1 << j] = Complex64::new(c, 0.0);
        }
        mv
    }

    /// Grade-1 element from complex coordinates.
    pub fn complex_vector(coords: &[Complex64]) -> Self {
        let n = coords.len() as u32;
        let mut mv = Self::zero(n);
        for (j, &c) in coords.iter().enumerate() {
            mv.coeffs[1 << j] = c;
        }
        mv
    }

    pub fn from_coeffs(n: u32, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 1usize << n {
            return Err(Error::InvalidParam(format!(
                "expected {} coefficients for n = {n}, got {}",
                1usize << n,
                coeffs.len()
            )));
        }
        Ok(Multivector { n, coeffs })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: Blade) -> Complex64 {
        self.coeffs[blade.mask() as usize]
    }

    pub fn set_coeff(&mut self, blade: Blade, value: Complex64) {
        self.coeffs[blade.mask() as usize] = value;
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Projection onto grade r.
    pub fn grade_part(&self, r: u32) -> Self {
        let mut out = Self::zero(self.n);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if (mask as u32).count_ones() == r {
                out.coeffs[mask] = c;
            }
        }
        out
    }

    pub fn is_zero(&self, eps: f64) -> bool {
        self.coeffs.iter().all(|c| c.norm() <= eps)
    }

    /// Geometric product, bilinear extension of the blade product.
    pub fn mul_checked(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let dim = 1usize << self.n;
        let mut out = Self::zero(self.n);
        for a in 0..dim {
            let ca = self.coeffs[a];
            if ca == Complex64::new(0.0, 0.0) {
                continue;
            }
            for b in 0..dim {
                let cb = other.coeffs[b];
                if cb == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let sign = blade_product_sign(a as u32, b as u32);
                let prod = ca * cb;
                let target = a ^ b;
                if sign > 0 {
                    out.coeffs[target] += prod;
                } else {
                    out.coeffs[target] -= prod;
                }
            }
        }
        Ok(out)
    }

    /// Dagger conjugation: reversal, generator negation and complex
    /// conjugation of coefficients.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            let sign = Blade::from_mask(mask as u32).dagger_sign();
            out.coeffs[mask] = if sign > 0 { c.conj() } else { -c.conj() };
        }
        out
    }

    /// Norm induced by the scalar part of A^dagger A, equal to the
    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * s).collect();
        Multivector { n: self.n, coeffs }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.n, rhs.n, "dimension mismatch in +");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Multivector { n: self.n, coeffs }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.n, rhs.n, "dimension mismatch in -");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Multivector { n: self.n, coeffs }
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        Multivector { n: self.n, coeffs }
    }
}

/// Geometric product; panics on dimension mismatch (use `mul_checked` to
/// surface the error).
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.mul_checked(rhs).expect("dimension mismatch in geometric product")
    }
}
