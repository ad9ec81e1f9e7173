//! Zeros of trigonometric polynomials and the identities that hold at the
//! zeros of `sigma_n` and `pi_n`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::opuc::OpucSystem;
use crate::otp::{OtpSystem, SystemTag};
use crate::roots::poly_roots;
use crate::tolerances;
use crate::weights::LaurentPoly;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Sorted zeros in `[0, 2 pi)` of one trigonometric polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroSet {
    pub n: usize,
    pub angles: Vec<f64>,
    /// `|p(e^{i theta})|` at each reported angle.
    pub residuals: Vec<f64>,
    /// `|1 - |root||` of the algebraic root behind each angle.
    pub modulus_defects: Vec<f64>,
}

impl ZeroSet {
    /// Smallest cyclic gap between consecutive angles.
    pub fn min_gap(&self) -> f64 {
        let a = &self.angles;
        if a.len() < 2 {
            return TAU;
        }
        let mut gap = a[0] + TAU - a[a.len() - 1];
        for w in a.windows(2) {
            gap = gap.min(w[1] - w[0]);
        }
        gap
    }

    pub fn max_modulus_defect(&self) -> f64 {
        self.modulus_defects.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Largest distance from `theta + pi` to the nearest zero, over all zeros.
    pub fn pairing_defect(&self) -> f64 {
        self.angles
            .iter()
            .map(|&t| self.angles.iter().map(|&s| angle_distance(t + PI, s)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }

    /// Rows `(j, angle, residual)` with `j` starting at 1.
    pub fn rows(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        self.angles.iter().zip(&self.residuals).enumerate().map(|(j, (&a, &r))| (j + 1, a, r))
    }
}

fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Zeros of a real-on-circle Laurent polynomial of order `n` from the roots
/// of `z^n p(z)`, each polished by one Newton step in the angle.
pub fn trig_zeros(p: &LaurentPoly) -> Result<ZeroSet> {
    let n = p.hi().max(-p.lo());
    if n < 1 {
        return Err(Error::Domain("trigonometric zeros need order n >= 1".into()));
    }
    let lead = p.coeff(n).norm().min(p.coeff(-n).norm());
    if lead <= tolerances::LEADING_COEFF_FLOOR {
        return Err(Error::Domain(format!("leading coefficient {lead:e} is too small")));
    }
    let q: Vec<Complex64> = (-n..=n).map(|k| p.coeff(k)).collect();
    let roots = poly_roots(&q)?;
    let mut found = Vec::with_capacity(roots.len());
    for r in roots {
        let defect = (1.0 - r.norm()).abs();
        if defect > tolerances::OFF_CIRCLE_ROOT {
            return Err(Error::StructureViolation(format!(
                "root {r} lies {defect:e} away from the unit circle"
            )));
        }
        let mut theta = r.arg().rem_euclid(TAU);
        let (f, df) = real_value_and_slope(p, theta);
        if df != 0.0 {
            let cand = (theta - f / df).rem_euclid(TAU);
            if p.eval(Complex64::from_polar(1.0, cand)).norm() <= f.abs().max(p.eval(Complex64::from_polar(1.0, theta)).norm()) {
                theta = cand;
            }
        }
        let residual = p.eval(Complex64::from_polar(1.0, theta)).norm();
        found.push((theta, residual, defect));
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(ZeroSet {
        n: n as usize,
        angles: found.iter().map(|f| f.0).collect(),
        residuals: found.iter().map(|f| f.1).collect(),
        modulus_defects: found.iter().map(|f| f.2).collect(),
    })
}

/// `Re p(e^{i theta})` and its derivative in `theta`.
fn real_value_and_slope(p: &LaurentPoly, theta: f64) -> (f64, f64) {
    let mut f = Complex64::new(0.0, 0.0);
    let mut df = Complex64::new(0.0, 0.0);
    for (k, c) in p.terms() {
        let e = Complex64::from_polar(1.0, k as f64 * theta);
        f += c * e;
        df += c * e * I * k as f64;
    }
    (f.re, df.re)
}

/// Zero sets of `sigma_n` and `pi_n` with the separation and pairing diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroDiagnostics {
    pub n: usize,
    pub sigma: ZeroSet,
    pub pi: ZeroSet,
    /// `min(min |pi_n| over zeros of sigma_n, min |sigma_n| over zeros of pi_n)`.
    pub separation: f64,
    pub sigma_pairing_defect: f64,
    pub pi_pairing_defect: f64,
}

pub fn zero_diagnostics(otp: &OtpSystem, n: usize) -> Result<ZeroDiagnostics> {
    if otp.tag() != SystemTag::First {
        return Err(Error::Domain("zero diagnostics use the first OTP system".into()));
    }
    if n == 0 {
        return Err(Error::Domain("zero diagnostics need n >= 1".into()));
    }
    let sigma_p = otp.even(n)?;
    let pi_p = otp.odd(n)?;
    let sigma = trig_zeros(sigma_p)?;
    let pi = trig_zeros(&pi_p)?;
    let at = |p: &LaurentPoly, t: f64| p.eval(Complex64::from_polar(1.0, t)).norm();
    let s1 = sigma.angles.iter().map(|&t| at(&pi_p, t)).fold(f64::INFINITY, f64::min);
    let s2 = pi.angles.iter().map(|&t| at(sigma_p, t)).fold(f64::INFINITY, f64::min);
    Ok(ZeroDiagnostics {
        n,
        sigma_pairing_defect: sigma.pairing_defect(),
        pi_pairing_defect: pi.pairing_defect(),
        separation: s1.min(s2),
        sigma,
        pi,
    })
}

/// Residuals of the ratio identities at the zeros of `sigma_n` and `pi_n`.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroIdentityReport {
    pub n: usize,
    /// `|t^{n-1} sigma(t) / Phi_{2n-1}(t) - 1/a|` at zeros of `pi_n`.
    pub odd_sigma: f64,
    /// `|t^{n-1} pi(t) / Phi_{2n-1}(t) - 1/((beta + i) b)|` at zeros of `sigma_n`.
    pub odd_pi: f64,
    /// `|t^n sigma(t) / Phi*_{2n}(t) - 2 kappa^2 a / (1 + beta i)|` at zeros of `pi_n`.
    pub even_sigma: f64,
    /// `|t^n pi(t) / Phi*_{2n}(t) - 2 kappa^2 b i|` at zeros of `sigma_n`.
    pub even_pi: f64,
    /// Largest spread of the first ratio across the zeros of `pi_n`.
    pub ratio_spread: f64,
    /// `|t^n pi(t) - 2 kappa^2 b i Phi*_{2n}(t)|` at zeros of `sigma_n`.
    pub equation_family: f64,
    /// `max |det + 2 a b i|` over all index combinations.
    pub determinant: f64,
    /// Number of determinant combinations evaluated.
    pub determinant_samples: usize,
    /// Residual of the antipodal versions, when the zero sets pair up.
    pub antipodal: Option<f64>,
    pub note: String,
}

impl ZeroIdentityReport {
    /// Largest of the first-equality residuals.
    pub fn first_equalities(&self) -> f64 {
        self.odd_sigma.max(self.odd_pi).max(self.even_sigma).max(self.even_pi)
    }
}

fn guarded_ratio(num: Complex64, den: Complex64) -> Result<Complex64> {
    if den.norm() < tolerances::RATIO_DENOMINATOR_FLOOR {
        return Err(Error::Conditioning(format!("denominator {:e} in a zero ratio", den.norm())));
    }
    Ok(num / den)
}

pub fn zero_identities(otp: &OtpSystem, opuc: &OpucSystem, n: usize) -> Result<ZeroIdentityReport> {
    let diag = zero_diagnostics(otp, n)?;
    let (a, b, beta) = otp.level_scalars(n)?;
    let k2 = opuc.kappa(2 * n)?.powi(2);
    let sigma_p = otp.even(n)?;
    let pi_p = otp.odd(n)?;
    let ni = n as i32;

    let want_odd_sigma = Complex64::new(1.0 / a, 0.0);
    let want_odd_pi = (Complex64::new(beta, 1.0) * b).inv();
    let want_even_sigma = Complex64::new(2.0 * k2 * a, 0.0) / Complex64::new(1.0, beta);
    let want_even_pi = I * (2.0 * k2 * b);

    // Ratios (t^{n-1} p / Phi_{2n-1}, t^n p / Phi*_{2n}) at t = e^{i theta}.
    let ratios = |p: &LaurentPoly, theta: f64| -> Result<(Complex64, Complex64)> {
        let t = Complex64::from_polar(1.0, theta);
        let v = p.eval(t);
        let r1 = guarded_ratio(t.powi(ni - 1) * v, opuc.monic_at(2 * n - 1, t)?)?;
        let r2 = guarded_ratio(t.powi(ni) * v, opuc.monic_star_at(2 * n, t)?)?;
        Ok((r1, r2))
    };

    let mut odd_sigma: f64 = 0.0;
    let mut even_sigma: f64 = 0.0;
    let mut sigma_ratios = Vec::new();
    for &th in &diag.pi.angles {
        let (r1, r2) = ratios(sigma_p, th)?;
        odd_sigma = odd_sigma.max((r1 - want_odd_sigma).norm());
        even_sigma = even_sigma.max((r2 - want_even_sigma).norm());
        sigma_ratios.push((r1, r2));
    }
    let mut odd_pi: f64 = 0.0;
    let mut even_pi: f64 = 0.0;
    let mut equation_family: f64 = 0.0;
    let mut pi_ratios = Vec::new();
    for &th in &diag.sigma.angles {
        let (r1, r2) = ratios(&pi_p, th)?;
        odd_pi = odd_pi.max((r1 - want_odd_pi).norm());
        even_pi = even_pi.max((r2 - want_even_pi).norm());
        let t = Complex64::from_polar(1.0, th);
        let fam = t.powi(ni) * pi_p.eval(t) - want_even_pi * opuc.monic_star_at(2 * n, t)?;
        equation_family = equation_family.max(fam.norm());
        pi_ratios.push((r1, r2));
    }
    let ratio_spread = sigma_ratios
        .iter()
        .map(|r| (r.0 - sigma_ratios[0].0).norm())
        .fold(0.0, f64::max);

    // Entries are reciprocals of the ratios.
    let target = -I * (2.0 * a * b);
    let mut determinant: f64 = 0.0;
    let mut samples = 0usize;
    for sk in &sigma_ratios {
        for pl in &pi_ratios {
            for ss in &sigma_ratios {
                for pt in &pi_ratios {
                    let det = sk.0.inv() * pt.1.inv() - pl.0.inv() * ss.1.inv();
                    determinant = determinant.max((det - target).norm());
                    samples += 1;
                }
            }
        }
    }

    let pairing = diag.sigma_pairing_defect.max(diag.pi_pairing_defect);
    let (antipodal, note) = if pairing < tolerances::ZERO_IDENTITY {
        let sign = |k: i32| if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let mut worst: f64 = 0.0;
        let mut check = |p: &LaurentPoly, theta: f64, w1: Complex64, w2: Complex64| -> Result<()> {
            let t = Complex64::from_polar(1.0, theta);
            let v = p.eval(-t);
            let r1 = guarded_ratio(t.powi(ni - 1) * v, opuc.monic_at(2 * n - 1, -t)?)? * sign(ni - 1);
            let r2 = guarded_ratio(t.powi(ni) * v, opuc.monic_star_at(2 * n, -t)?)? * sign(ni);
            worst = worst.max((r1 - w1).norm()).max((r2 - w2).norm());
            Ok(())
        };
        for &th in diag.pi.angles.iter().filter(|&&t| t < PI) {
            check(sigma_p, th, want_odd_sigma, want_even_sigma)?;
        }
        for &th in diag.sigma.angles.iter().filter(|&&t| t < PI) {
            check(&pi_p, th, want_odd_pi, want_even_pi)?;
        }
        (Some(worst), String::new())
    } else {
        (None, format!("antipodal identities skipped: pairing defect {pairing:e}"))
    };

    Ok(ZeroIdentityReport {
        n,
        odd_sigma,
        odd_pi,
        even_sigma,
        even_pi,
        ratio_spread,
        equation_family,
        determinant,
        determinant_samples: samples,
        antipodal,
        note,
    })
}
