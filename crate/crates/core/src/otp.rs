//! Orthonormal trigonometric polynomials by ordered Gram–Schmidt.
//!
//! The first system orthogonalizes `1, sin t, cos t, sin 2t, cos 2t, ...`
//! and the second `1, cos t, sin t, cos 2t, sin 2t, ...`. Level `k` of the
//! first system is the pair `(sigma_k, pi_k)` (cosine-led, sine-led); of the
//! second, `(rho_k, varrho_k)` (sine-led, cosine-led).

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances;
use crate::weights::{inner_real, LaurentPoly, MomentTable};

/// Which ordered trigonometric basis is orthogonalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemTag {
    First,
    Second,
}

/// Named members of a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OtpComponent {
    /// First system, even index `2k`.
    Sigma,
    /// First system, odd index `2k - 1`.
    Pi,
    /// Second system, even index `2k`.
    Rho,
    /// Second system, odd index `2k - 1`.
    Varrho,
}

impl OtpComponent {
    fn tag(self) -> SystemTag {
        match self {
            OtpComponent::Sigma | OtpComponent::Pi => SystemTag::First,
            OtpComponent::Rho | OtpComponent::Varrho => SystemTag::Second,
        }
    }

    fn is_even(self) -> bool {
        matches!(self, OtpComponent::Sigma | OtpComponent::Rho)
    }
}

/// Unorthogonalized basis element of index `n`.
pub fn basis_element(tag: SystemTag, n: usize) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::constant(Complex64::new(1.0, 0.0));
    }
    let k = n.div_ceil(2) as u32;
    let odd = n % 2 == 1;
    match (tag, odd) {
        (SystemTag::First, true) | (SystemTag::Second, false) => LaurentPoly::sin_mode(k),
        (SystemTag::First, false) | (SystemTag::Second, true) => LaurentPoly::cos_mode(k),
    }
}

/// Orthonormal system through level `n_max` with its level scalars.
///
/// For the second system `a`, `b`, `beta` hold `c`, `d`, `gamma`. Index 0
/// carries the conventions `a_0 = b_0 = 1`, `beta_0 = 0`, which are never
/// used in formulas.
#[derive(Clone, Debug, Serialize)]
pub struct OtpSystem {
    tag: SystemTag,
    n_max: usize,
    polys: Vec<LaurentPoly>,
    a: Vec<f64>,
    b: Vec<f64>,
    beta: Vec<f64>,
}

/// Ordered modified Gram–Schmidt with one reorthogonalization pass.
pub fn gram_schmidt(m: &MomentTable, tag: SystemTag, n_max: usize) -> Result<OtpSystem> {
    need_moments(m, n_max)?;
    let dim = 2 * n_max + 1;
    let mut polys: Vec<LaurentPoly> = Vec::with_capacity(dim);
    let mut norms = Vec::with_capacity(dim);
    for n in 0..dim {
        let mut v = basis_element(tag, n);
        for _pass in 0..2 {
            for q in &polys {
                let r = inner_real(q, &v, m)?;
                v = v.axpy(Complex64::new(-r, 0.0), q);
            }
        }
        let norm2 = inner_real(&v, &v, m)?;
        let norm = norm2.max(0.0).sqrt();
        if !(norm >= tolerances::GS_NORM_FLOOR) {
            return Err(Error::DegenerateMeasure(format!(
                "Gram–Schmidt norm {norm:e} at index {n}"
            )));
        }
        let p = v.scale_re(1.0 / norm);
        let defect = p.real_on_circle_defect();
        if defect > tolerances::REAL_ON_CIRCLE {
            return Err(Error::InternalConsistency(format!(
                "index {n} lost conjugate symmetry ({defect:e})"
            )));
        }
        norms.push(norm);
        polys.push(p);
    }
    let mut a = vec![1.0];
    let mut b = vec![1.0];
    let mut beta = vec![0.0];
    for k in 1..=n_max {
        b.push(norms[2 * k - 1]);
        a.push(norms[2 * k]);
        let proj = inner_real(&basis_element(tag, 2 * k), &polys[2 * k - 1], m)?;
        beta.push(proj / norms[2 * k - 1]);
    }
    Ok(OtpSystem { tag, n_max, polys, a, b, beta })
}

/// Same system through the Cholesky factor of the ordered Gram matrix.
///
/// With `G = L L^T`, row `n` of `L^{-1}` expresses the `n`-th orthonormal
/// element in the basis, `L_{nn}` is the residual norm and `L_{2k,2k-1}`
/// is the projection of the `2k`-th basis element on the `2k-1`-th
/// orthonormal element.
pub fn gram_schmidt_cholesky(m: &MomentTable, tag: SystemTag, n_max: usize) -> Result<OtpSystem> {
    need_moments(m, n_max)?;
    let dim = 2 * n_max + 1;
    let basis: Vec<LaurentPoly> = (0..dim).map(|n| basis_element(tag, n)).collect();
    let mut g = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..=i {
            let v = inner_real(&basis[i], &basis[j], m)?;
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    let chol = nalgebra::Cholesky::new(g)
        .ok_or_else(|| Error::DegenerateMeasure("Gram matrix is not positive definite".into()))?;
    let l = chol.l();
    let l_inv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::DegenerateMeasure("singular Cholesky factor".into()))?;
    let mut polys = Vec::with_capacity(dim);
    for n in 0..dim {
        let mut p = LaurentPoly::zero();
        for j in 0..=n {
            p = p.axpy(Complex64::new(l_inv[(n, j)], 0.0), &basis[j]);
        }
        polys.push(p);
    }
    let mut a = vec![1.0];
    let mut b = vec![1.0];
    let mut beta = vec![0.0];
    for k in 1..=n_max {
        b.push(l[(2 * k - 1, 2 * k - 1)]);
        a.push(l[(2 * k, 2 * k)]);
        beta.push(l[(2 * k, 2 * k - 1)] / l[(2 * k - 1, 2 * k - 1)]);
    }
    Ok(OtpSystem { tag, n_max, polys, a, b, beta })
}

fn need_moments(m: &MomentTable, n_max: usize) -> Result<()> {
    if 2 * n_max > m.n_max() {
        return Err(Error::MomentRange { needed: 2 * n_max as i64, available: m.n_max() });
    }
    Ok(())
}

impl OtpSystem {
    pub fn tag(&self) -> SystemTag {
        self.tag
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// All orthonormal elements `mu_0..=mu_{2 n_max}` in basis order.
    pub fn polys(&self) -> &[LaurentPoly] {
        &self.polys
    }

    fn level(&self, k: usize) -> Result<()> {
        if k > self.n_max {
            Err(Error::IndexOutOfRange { index: k, available: self.n_max })
        } else {
            Ok(())
        }
    }

    /// Even member of level `k` (`sigma_k` or `rho_k`); `1` at `k = 0`.
    pub fn even(&self, k: usize) -> Result<&LaurentPoly> {
        self.level(k)?;
        Ok(&self.polys[2 * k])
    }

    /// Odd member of level `k` (`pi_k` or `varrho_k`); the zero polynomial at `k = 0`.
    pub fn odd(&self, k: usize) -> Result<LaurentPoly> {
        self.level(k)?;
        Ok(if k == 0 { LaurentPoly::zero() } else { self.polys[2 * k - 1].clone() })
    }

    /// `a_k` (`c_k` for the second system).
    pub fn a(&self, k: usize) -> Result<f64> {
        self.level(k)?;
        Ok(self.a[k])
    }

    /// `b_k` (`d_k` for the second system).
    pub fn b(&self, k: usize) -> Result<f64> {
        self.level(k)?;
        Ok(self.b[k])
    }

    /// `beta_k` (`gamma_k` for the second system).
    pub fn beta(&self, k: usize) -> Result<f64> {
        self.level(k)?;
        Ok(self.beta[k])
    }

    /// Scalar sequences `(a, b, beta)` for levels `1..=n_max`.
    pub fn scalars(&self) -> (&[f64], &[f64], &[f64]) {
        (&self.a[1..], &self.b[1..], &self.beta[1..])
    }

    /// `(a_k, b_k, beta_k)`.
    pub fn level_scalars(&self, k: usize) -> Result<(f64, f64, f64)> {
        Ok((self.a(k)?, self.b(k)?, self.beta(k)?))
    }

    /// Largest `|G - I|` entry of the real Gram matrix of the stored elements.
    pub fn gram_residual(&self, m: &MomentTable) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (i, p) in self.polys.iter().enumerate() {
            for (j, q) in self.polys.iter().enumerate().skip(i) {
                let g = inner_real(p, q, m)?;
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - want).abs());
            }
        }
        Ok(worst)
    }
}

/// Evaluates a named member of level `k` at `z != 0`.
pub fn eval_otp(sys: &OtpSystem, which: OtpComponent, k: usize, z: Complex64) -> Result<Complex64> {
    if which.tag() != sys.tag {
        return Err(Error::Domain(format!("{which:?} does not belong to the {:?} system", sys.tag)));
    }
    if z.norm() == 0.0 {
        return Err(Error::Domain("trigonometric polynomials need z != 0".into()));
    }
    let v = if which.is_even() { sys.even(k)?.eval(z) } else { sys.odd(k)?.eval(z) };
    if (z.norm() - 1.0).abs() <= 1e-12 && v.im.abs() > tolerances::EVAL_REAL_ON_CIRCLE * v.norm().max(1.0) {
        return Err(Error::InternalConsistency(format!(
            "value on the circle has imaginary part {:e}",
            v.im
        )));
    }
    Ok(v)
}

/// Size of the `z^{+-k}` coefficients of `a_k sigma_k - mu_{2k}^0 + beta_k b_k pi_k`.
pub fn structure_residual(sys: &OtpSystem, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("structure residual is defined for k >= 1".into()));
    }
    let (a, b, beta) = sys.level_scalars(k)?;
    let t = sys
        .even(k)?
        .scale_re(a)
        .sub(&basis_element(sys.tag, 2 * k))
        .axpy(Complex64::new(beta * b, 0.0), &sys.odd(k)?);
    let k = k as i64;
    Ok(t.coeff(k).norm().max(t.coeff(-k).norm()))
}

/// Largest coefficient gap between `sigma_k`/`rho_k` and `pi_k`/`varrho_k`
/// after swapping the roles of sine and cosine. Small for even weights.
pub fn reordering_defect(first: &OtpSystem, second: &OtpSystem) -> Result<f64> {
    let n = first.n_max.min(second.n_max);
    let mut worst: f64 = 0.0;
    for k in 1..=n {
        worst = worst.max(first.even(k)?.max_abs_diff(&second.odd(k)?));
        worst = worst.max(first.odd(k)?.max_abs_diff(second.even(k)?));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{trig_moments, WeightKind, WeightSpec};
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn moments(kind: WeightKind, n: usize) -> MomentTable {
        trig_moments(&WeightSpec::new(kind).unwrap(), n, 1e-15).unwrap()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(basis_element(SystemTag::First, 0), LaurentPoly::constant(c(1.0, 0.0)));
        assert_eq!(basis_element(SystemTag::First, 3), LaurentPoly::sin_mode(2));
        assert_eq!(basis_element(SystemTag::Second, 3), LaurentPoly::cos_mode(2));
        assert_eq!(basis_element(SystemTag::First, 4), LaurentPoly::cos_mode(2));
        assert_eq!(basis_element(SystemTag::Second, 4), LaurentPoly::sin_mode(2));
    }

    #[test]
    fn lebesgue_system() {
        let s = gram_schmidt(&moments(WeightKind::Lebesgue, 12), SystemTag::First, 6).unwrap();
        for k in 1..=6 {
            assert!((s.a(k).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
            assert!((s.b(k).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
            assert!(s.beta(k).unwrap().abs() < 1e-15);
            let sig = LaurentPoly::cos_mode(k as u32).scale_re(SQRT_2);
            let pi = LaurentPoly::sin_mode(k as u32).scale_re(SQRT_2);
            assert!(s.even(k).unwrap().max_abs_diff(&sig) < 1e-15);
            assert!(s.odd(k).unwrap().max_abs_diff(&pi) < 1e-15);
            let t = Complex64::from_polar(1.0, 0.3);
            let v = eval_otp(&s, OtpComponent::Sigma, k, t).unwrap();
            assert!((v.re - SQRT_2 * (k as f64 * 0.3).cos()).abs() < 1e-14);
            assert!(structure_residual(&s, k).unwrap() < 1e-15);
        }
        assert_eq!(eval_otp(&s, OtpComponent::Pi, 0, c(0.3, 0.2)).unwrap(), c(0.0, 0.0));
        assert!(eval_otp(&s, OtpComponent::Rho, 1, c(1.0, 0.0)).is_err());
        assert!(eval_otp(&s, OtpComponent::Sigma, 1, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn even_weight_has_zero_beta() {
        let s = gram_schmidt(&moments(WeightKind::ExpTrig { p: 1.0, q: 0.0 }, 12), SystemTag::First, 6)
            .unwrap();
        for k in 1..=6 {
            assert!(s.beta(k).unwrap().abs() < 1e-11);
        }
    }

    #[test]
    fn asymmetric_weight_routes_agree() {
        let m = moments(WeightKind::CosinePoly { constant: 1.0, cos: vec![0.5], sin: vec![0.25] }, 8);
        let s = gram_schmidt(&m, SystemTag::First, 4).unwrap();
        let o = gram_schmidt_cholesky(&m, SystemTag::First, 4).unwrap();
        assert!(s.gram_residual(&m).unwrap() < 1e-10);
        assert!((1..=4).any(|k| s.beta(k).unwrap().abs() > 1e-3));
        for k in 1..=4 {
            assert!((s.a(k).unwrap() - o.a(k).unwrap()).abs() < 1e-12);
            assert!((s.b(k).unwrap() - o.b(k).unwrap()).abs() < 1e-12);
            assert!((s.beta(k).unwrap() - o.beta(k).unwrap()).abs() < 1e-12);
        }
        for (p, q) in s.polys().iter().zip(o.polys()) {
            assert!(p.max_abs_diff(q) < 1e-12);
        }
    }

    #[test]
    fn structure_residual_second_system() {
        let m = moments(WeightKind::ExpTrig { p: 1.0, q: 0.4 }, 8);
        let s = gram_schmidt(&m, SystemTag::Second, 4).unwrap();
        assert!(structure_residual(&s, 2).unwrap() < 1e-11);
        let f = gram_schmidt(&m, SystemTag::First, 4).unwrap();
        assert!(structure_residual(&f, 3).unwrap() < 1e-11);
    }

    #[test]
    fn systems_coincide_for_even_weight() {
        let m = moments(WeightKind::ExpTrig { p: 1.0, q: 0.0 }, 10);
        let f = gram_schmidt(&m, SystemTag::First, 5).unwrap();
        let s = gram_schmidt(&m, SystemTag::Second, 5).unwrap();
        assert!(reordering_defect(&f, &s).unwrap() < 1e-12);
    }
}
