//! Polynomial roots as eigenvalues of the companion matrix.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Horner evaluation of `sum_k coeffs[k] z^k`.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn householder(d: usize, seed: f64) -> DMatrix<Complex64> {
    let v: Vec<Complex64> = (0..d)
        .map(|j| Complex64::new((1.3 * seed * (j + 1) as f64).cos(), (0.7 * seed * (j + 2) as f64).sin()))
        .collect();
    let vv: f64 = v.iter().map(|x| x.norm_sqr()).sum();
    DMatrix::from_fn(d, d, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        Complex64::new(delta, 0.0) - v[i] * v[j].conj() * (2.0 / vv)
    })
}

/// Roots of `sum_k coeffs[k] z^k`, where the last coefficient is the
/// leading one and must be nonzero.
///
/// Eigenvalues come from the complex Schur form of the companion matrix and
/// are refined by Newton steps that are kept only when they reduce `|p|`.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[d];
    if lead.norm() == 0.0 {
        return Err(Error::Domain("leading coefficient is zero".into()));
    }
    let mut comp = DMatrix::<Complex64>::zeros(d, d);
    for j in 0..d {
        comp[(0, j)] = -coeffs[d - 1 - j] / lead;
    }
    for i in 1..d {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    // Shifted QR stalls on companion matrices that are nearly cyclic
    // permutations (equispaced roots on the circle), so retry after a fixed
    // Householder similarity.
    let mut schur = Schur::try_new(comp.clone(), f64::EPSILON, 100 * d.max(10));
    for seed in 1..=3 {
        if schur.is_some() {
            break;
        }
        let h = householder(d, seed as f64);
        schur = Schur::try_new(&h * &comp * &h, f64::EPSILON, 100 * d.max(10));
    }
    let (_, t) = schur
        .ok_or_else(|| Error::Conditioning("companion Schur iteration did not converge".into()))?
        .unpack();
    let mut roots: Vec<Complex64> = (0..d).map(|i| t[(i, i)]).collect();
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner_with_derivative(coeffs, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let cand = *r - p / dp;
            if horner(coeffs, cand).norm() < p.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }
    Ok(roots)
}
