//! Orthogonal polynomials on the unit circle from the Szegő recurrence.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::horner;
use crate::tolerances;
use crate::weights::{inner_complex, LaurentPoly, MomentTable};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Verblunsky coefficients, leading coefficients and monic polynomials
/// `Phi_0..=Phi_{n_max}`.
#[derive(Clone, Debug, Serialize)]
pub struct OpucSystem {
    n_max: usize,
    alpha: Vec<Complex64>,
    kappa: Vec<f64>,
    phi: Vec<Vec<Complex64>>,
}

/// Coefficients of `z^n conj(q(1/conj(z)))` for `q` of declared degree `n`.
pub fn reversed(coeffs: &[Complex64], degree: usize) -> Vec<Complex64> {
    (0..=degree)
        .map(|j| coeffs.get(degree - j).copied().unwrap_or_default().conj())
        .collect()
}

/// Runs the Szegő recurrence `Phi_{n+1} = z Phi_n - conj(alpha_n) Phi_n^*`.
pub fn build_opuc(m: &MomentTable, n_max: usize) -> Result<OpucSystem> {
    if n_max > m.n_max() {
        return Err(Error::MomentRange { needed: n_max as i64, available: m.n_max() });
    }
    let one = LaurentPoly::constant(ONE);
    let mut phi = vec![vec![ONE]];
    let mut kappa = vec![1.0];
    let mut alpha = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let cur = &phi[n];
        let star = reversed(cur, n);
        let z_phi = LaurentPoly::new(1, cur.clone());
        let num = inner_complex(&one, &z_phi, m)?;
        let den = inner_complex(&one, &LaurentPoly::from_poly(&star), m)?;
        let alpha_bar = num / den;
        let a = alpha_bar.conj();
        if a.norm() >= 1.0 - tolerances::VERBLUNSKY_MARGIN || !a.norm().is_finite() {
            return Err(Error::DegenerateMeasure(format!("|alpha_{n}| = {} is not below 1", a.norm())));
        }
        let mut next = vec![Complex64::new(0.0, 0.0); n + 2];
        for (j, &c) in cur.iter().enumerate() {
            next[j + 1] += c;
        }
        for (j, &c) in star.iter().enumerate() {
            next[j] -= alpha_bar * c;
        }
        next[n + 1] = ONE;
        let p = LaurentPoly::from_poly(&next);
        let norm2 = inner_complex(&p, &p, m)?;
        if !(norm2.re > 0.0) || norm2.im.abs() > tolerances::REAL_INNER_RESIDUE {
            return Err(Error::DegenerateMeasure(format!(
                "norm of Phi_{} is {norm2}",
                n + 1
            )));
        }
        alpha.push(a);
        kappa.push(norm2.re.sqrt().recip());
        phi.push(next);
    }
    Ok(OpucSystem { n_max, alpha, kappa, phi })
}

impl OpucSystem {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `alpha_0..alpha_{n_max-1}`.
    pub fn alphas(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn alpha(&self, n: usize) -> Result<Complex64> {
        self.alpha
            .get(n)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: n, available: self.n_max.saturating_sub(1) })
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappa
    }

    pub fn kappa(&self, n: usize) -> Result<f64> {
        self.check(n)?;
        Ok(self.kappa[n])
    }

    /// Monic coefficients of `Phi_n`, constant term first.
    pub fn monic(&self, n: usize) -> Result<&[Complex64]> {
        self.check(n)?;
        Ok(&self.phi[n])
    }

    /// Coefficients of `Phi_n^*`.
    pub fn monic_star(&self, n: usize) -> Result<Vec<Complex64>> {
        Ok(reversed(self.monic(n)?, n))
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            Err(Error::IndexOutOfRange { index: n, available: self.n_max })
        } else {
            Ok(())
        }
    }

    pub fn monic_at(&self, n: usize, z: Complex64) -> Result<Complex64> {
        Ok(horner(self.monic(n)?, z))
    }

    pub fn monic_star_at(&self, n: usize, z: Complex64) -> Result<Complex64> {
        Ok(horner(&self.monic_star(n)?, z))
    }

    /// `phi_n(z) = kappa_n Phi_n(z)`.
    pub fn phi(&self, n: usize, z: Complex64) -> Result<Complex64> {
        Ok(self.monic_at(n, z)? * self.kappa[n])
    }

    /// `phi_n^*(z) = kappa_n Phi_n^*(z)`.
    pub fn phi_star(&self, n: usize, z: Complex64) -> Result<Complex64> {
        Ok(self.monic_star_at(n, z)? * self.kappa[n])
    }

    /// `phi_n` as a Laurent polynomial.
    pub fn phi_laurent(&self, n: usize) -> Result<LaurentPoly> {
        Ok(LaurentPoly::from_poly(self.monic(n)?).scale_re(self.kappa[n]))
    }

    pub fn phi_star_laurent(&self, n: usize) -> Result<LaurentPoly> {
        Ok(LaurentPoly::from_poly(&self.monic_star(n)?).scale_re(self.kappa[n]))
    }

    /// Largest `|<phi_i, phi_j> - delta_ij|` for `i, j <= n_max`.
    pub fn gram_residual(&self, m: &MomentTable) -> Result<f64> {
        let phis: Vec<LaurentPoly> = (0..=self.n_max).map(|n| self.phi_laurent(n)).collect::<Result<_>>()?;
        let mut worst: f64 = 0.0;
        for (i, p) in phis.iter().enumerate() {
            for (j, q) in phis.iter().enumerate().skip(i) {
                let g = inner_complex(p, q, m)?;
                let want = if i == j { ONE } else { Complex64::new(0.0, 0.0) };
                worst = worst.max((g - want).norm());
            }
        }
        Ok(worst)
    }

    /// Largest of `|alpha_n + conj(Phi_{n+1}(0))|` and the relative defect of
    /// `kappa_n^2 / kappa_{n+1}^2 = 1 - |alpha_n|^2`.
    pub fn verblunsky_consistency(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (n, a) in self.alpha.iter().enumerate() {
            worst = worst.max((a + self.phi[n + 1][0].conj()).norm());
            let ratio = (self.kappa[n] / self.kappa[n + 1]).powi(2) / (1.0 - a.norm_sqr());
            worst = worst.max((ratio - 1.0).abs());
        }
        worst
    }
}

/// `(chi_n(z), x_n(z))` of the CMV and alternate CMV bases.
pub fn cmv_basis(sys: &OpucSystem, n: usize, z: Complex64) -> Result<(Complex64, Complex64)> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("CMV basis needs z != 0".into()));
    }
    let (chi, x) = cmv_laurent(sys, n)?;
    Ok((chi.eval(z), x.eval(z)))
}

/// CMV basis elements `(chi_n, x_n)` as Laurent polynomials.
pub fn cmv_laurent(sys: &OpucSystem, n: usize) -> Result<(LaurentPoly, LaurentPoly)> {
    let half = n.div_ceil(2) as i64;
    if n % 2 == 1 {
        // n = 2h - 1
        let chi = sys.phi_laurent(n)?.shift(1 - half);
        let x = sys.phi_star_laurent(n)?.shift(-half);
        Ok((chi, x))
    } else {
        let chi = sys.phi_star_laurent(n)?.shift(-half);
        let x = sys.phi_laurent(n)?.shift(-half);
        Ok((chi, x))
    }
}

/// The three evaluations of the OPUC Christoffel–Darboux kernel.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CdKernelForms {
    /// `sum_{j<=n} conj(phi_j(zeta)) phi_j(z)`.
    pub direct: Complex64,
    /// Closed form through index `n + 1`.
    pub closed_next: Complex64,
    /// Closed form through index `n`.
    pub closed_same: Complex64,
}

fn kernel_denominator(zeta: Complex64, z: Complex64) -> Result<Complex64> {
    let d = ONE - zeta.conj() * z;
    if d.norm() < tolerances::KERNEL_SINGULARITY {
        return Err(Error::SingularKernel(d.norm()));
    }
    Ok(d)
}

/// `sum_{j=0}^n conj(phi_j(zeta)) phi_j(z)` by the closed form through index `n + 1`.
pub fn cd_kernel_opuc(sys: &OpucSystem, n: usize, zeta: Complex64, z: Complex64) -> Result<Complex64> {
    let d = kernel_denominator(zeta, z)?;
    let m = n + 1;
    let num = sys.phi_star(m, zeta)?.conj() * sys.phi_star(m, z)? - sys.phi(m, zeta)?.conj() * sys.phi(m, z)?;
    Ok(num / d)
}

/// Direct sum and both closed forms of the kernel.
pub fn cd_kernel_forms(sys: &OpucSystem, n: usize, zeta: Complex64, z: Complex64) -> Result<CdKernelForms> {
    let d = kernel_denominator(zeta, z)?;
    let mut direct = Complex64::new(0.0, 0.0);
    for j in 0..=n {
        direct += sys.phi(j, zeta)?.conj() * sys.phi(j, z)?;
    }
    let closed_next = cd_kernel_opuc(sys, n, zeta, z)?;
    let num = sys.phi_star(n, zeta)?.conj() * sys.phi_star(n, z)?
        - zeta.conj() * z * sys.phi(n, zeta)?.conj() * sys.phi(n, z)?;
    Ok(CdKernelForms { direct, closed_next, closed_same: num / d })
}
