use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Finite Laurent polynomial `sum_k coeffs[k - lo] z^k` for `lo <= k <= hi`.
///
/// The zero polynomial is stored as a single zero coefficient at power 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Complex64>,
}

impl LaurentPoly {
    /// Builds from coefficients of `z^lo, z^(lo+1), ...`.
    pub fn new(lo: i64, coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            return Self::zero();
        }
        Self { lo, coeffs }
    }

    /// Ordinary polynomial with coefficients of `1, z, z^2, ...`.
    pub fn from_poly(coeffs: &[Complex64]) -> Self {
        Self::new(0, coeffs.to_vec())
    }

    pub fn zero() -> Self {
        Self { lo: 0, coeffs: vec![ZERO] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { lo: 0, coeffs: vec![c] }
    }

    pub fn monomial(k: i64, c: Complex64) -> Self {
        Self { lo: k, coeffs: vec![c] }
    }

    /// `cos(k theta) = (z^k + z^-k)/2` on the circle.
    pub fn cos_mode(k: u32) -> Self {
        if k == 0 {
            return Self::constant(Complex64::new(1.0, 0.0));
        }
        let k = k as i64;
        let mut p = Self::from_range(-k, k);
        p.set(k, Complex64::new(0.5, 0.0));
        p.set(-k, Complex64::new(0.5, 0.0));
        p
    }

    /// `sin(k theta) = (z^k - z^-k)/(2i)` on the circle.
    pub fn sin_mode(k: u32) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let k = k as i64;
        let mut p = Self::from_range(-k, k);
        p.set(k, Complex64::new(0.0, -0.5));
        p.set(-k, Complex64::new(0.0, 0.5));
        p
    }

    fn from_range(lo: i64, hi: i64) -> Self {
        Self { lo, coeffs: vec![ZERO; (hi - lo + 1) as usize] }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero outside the stored range.
    pub fn coeff(&self, k: i64) -> Complex64 {
        if k < self.lo || k > self.hi() {
            ZERO
        } else {
            self.coeffs[(k - self.lo) as usize]
        }
    }

    fn set(&mut self, k: i64, c: Complex64) {
        let i = (k - self.lo) as usize;
        self.coeffs[i] = c;
    }

    /// Iterator over `(power, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, &c)| (self.lo + i as i64, c))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { lo: self.lo, coeffs: self.coeffs.iter().map(|&c| c * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let mut out = Self::from_range(lo, hi);
        for (k, c) in self.terms().chain(other.terms()) {
            let i = (k - lo) as usize;
            out.coeffs[i] += c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_re(-1.0))
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: Complex64, other: &Self) -> Self {
        self.add(&other.scale(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        let mut out = Self::from_range(lo, hi);
        for (j, a) in self.terms() {
            for (k, b) in other.terms() {
                out.coeffs[(j + k - lo) as usize] += a * b;
            }
        }
        out
    }

    /// Evaluates at `z`; negative powers require `z != 0`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let hi = self.hi();
        // Nonnegative part by Horner in z.
        let mut pos = ZERO;
        if hi >= 0 {
            for k in (self.lo.max(0)..=hi).rev() {
                pos = pos * z + self.coeff(k);
            }
            if self.lo > 0 {
                pos *= z.powi(self.lo as i32);
            }
        }
        // Negative part by Horner in 1/z.
        let mut neg = ZERO;
        if self.lo < 0 {
            let w = z.inv();
            let top = hi.min(-1);
            for k in self.lo..=top {
                neg = neg * w + self.coeff(k);
            }
            neg *= w.powi((-top) as i32);
        }
        pos + neg
    }

    /// `conj(p(1/conj(z)))`: coefficient of `z^k` becomes `conj(coeff(-k))`.
    pub fn reflect(&self) -> Self {
        let coeffs = self.coeffs.iter().rev().map(|c| c.conj()).collect();
        Self { lo: -self.hi(), coeffs }
    }

    /// Largest violation of `coeff(-k) = conj(coeff(k))`.
    pub fn real_on_circle_defect(&self) -> f64 {
        let r = self.reflect();
        self.max_abs_diff(&r)
    }

    /// Replaces the coefficients by their conjugate-symmetric part.
    pub fn symmetrized(&self) -> Self {
        self.add(&self.reflect()).scale_re(0.5)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        (lo..=hi).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Coefficients of `z^0..=z^degree`, failing if any power outside that
    /// range carries more than `tol` in modulus.
    pub fn to_poly(&self, degree: usize, tol: f64) -> Option<Vec<Complex64>> {
        for (k, c) in self.terms() {
            if (k < 0 || k > degree as i64) && c.norm() > tol {
                return None;
            }
        }
        Some((0..=degree as i64).map(|k| self.coeff(k)).collect())
    }
}
