use num_complex::Complex64;
use serde::Serialize;

use super::SzegoFunction;
use crate::bridge::{even_combination, odd_combination};
use crate::error::{Error, Result};
use crate::opuc::OpucSystem;
use crate::otp::OtpSystem;
use crate::tolerances;

/// Which large-`n` limit is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticRegion {
    /// `z^{-n} D(z) [a sigma_n + (beta + i) b pi_n](z) -> 1` for `|z| > 1`.
    Exterior,
    /// `z^n D(z) E_n(z) -> 1` for `0 < |z| < 1`.
    Interior,
    /// `t^{-n} D-(t) [a sigma_n + (beta + i) b pi_n](t) -> 1` on `|t| = 1`.
    Boundary,
}

/// Residual sequence and its decay summary.
#[derive(Clone, Debug, Serialize)]
pub struct RateReport {
    pub region: AsymptoticRegion,
    pub n_values: Vec<usize>,
    pub residuals: Vec<f64>,
    /// Least-squares slope of `ln(residual)` against `n`; `None` with fewer
    /// than two positive residuals.
    pub fitted_rate: Option<f64>,
    pub epsilon: f64,
    /// `ln(1 + 3 epsilon / 2)`.
    pub c2_reference: f64,
    /// Strictly decreasing while above [`tolerances::RATE_NOISE_FLOOR`].
    pub monotone: bool,
    pub noise_floor: f64,
}

impl RateReport {
    fn new(region: AsymptoticRegion, n_values: Vec<usize>, residuals: Vec<f64>, distance: f64) -> Self {
        let epsilon = 0.9 * (1.0f64 / 3.0).min(if distance > 0.0 { distance } else { 1.0 / 3.0 });
        let floor = tolerances::RATE_NOISE_FLOOR;
        let monotone = residuals.windows(2).all(|w| w[0] <= floor || w[1] < w[0]);
        let fitted_rate = fit_slope(&n_values, &residuals);
        Self {
            region,
            n_values,
            residuals,
            fitted_rate,
            epsilon,
            c2_reference: (1.0 + 1.5 * epsilon).ln(),
            monotone,
            noise_floor: floor,
        }
    }

    /// Strictly decreasing throughout, every successive ratio at most
    /// `ratio`, and the last residual below `final_bound`.
    pub fn strict_decay(&self, ratio: f64, final_bound: f64) -> bool {
        let steps = self.residuals.windows(2).all(|w| w[1] < w[0] && w[1] <= ratio * w[0]);
        steps && self.residuals.last().is_some_and(|&r| r < final_bound)
    }

    /// Largest successive ratio `r_{k+1} / r_k`.
    pub fn max_ratio(&self) -> f64 {
        self.residuals.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max)
    }

    /// Rows `(n, residual)`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.n_values.iter().copied().zip(self.residuals.iter().copied())
    }
}

fn fit_slope(n: &[usize], r: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = n
        .iter()
        .zip(r)
        .filter(|(_, &v)| v > 0.0 && v.is_finite())
        .map(|(&k, &v)| (k as f64, v.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

fn check_points(region: AsymptoticRegion, points: &[Complex64]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::Domain("no evaluation points".into()));
    }
    let mut dist = f64::INFINITY;
    for z in points {
        let gap = z.norm() - 1.0;
        let ok = match region {
            AsymptoticRegion::Exterior => gap > tolerances::ON_CIRCLE,
            AsymptoticRegion::Interior => gap < -tolerances::ON_CIRCLE && z.norm() > 0.0,
            AsymptoticRegion::Boundary => gap.abs() <= tolerances::ON_CIRCLE,
        };
        if !ok {
            return Err(Error::Domain(format!("|z| = {} is outside the {region:?} region", z.norm())));
        }
        dist = dist.min(gap.abs());
    }
    Ok(dist)
}

fn d_value(sf: &SzegoFunction, region: AsymptoticRegion, z: Complex64) -> Complex64 {
    match region {
        AsymptoticRegion::Exterior => sf.exterior(z),
        AsymptoticRegion::Interior => sf.interior(z),
        AsymptoticRegion::Boundary => sf.boundary_minus(z),
    }
}

fn sweep(
    region: AsymptoticRegion,
    points: &[Complex64],
    n_range: std::ops::RangeInclusive<usize>,
    mut residual: impl FnMut(usize, Complex64) -> Result<f64>,
) -> Result<RateReport> {
    let dist = check_points(region, points)?;
    let mut ns = Vec::new();
    let mut rs = Vec::new();
    for n in n_range {
        if n == 0 {
            return Err(Error::Domain("asymptotic sweeps start at n = 1".into()));
        }
        let mut worst: f64 = 0.0;
        for &z in points {
            worst = worst.max(residual(n, z)?);
        }
        ns.push(n);
        rs.push(worst);
    }
    Ok(RateReport::new(region, ns, rs, dist))
}

/// Normalized OTP-side residuals, maximized over `points`, for each `n`.
pub fn asymptotic_residuals(
    otp: &OtpSystem,
    sf: &SzegoFunction,
    region: AsymptoticRegion,
    points: &[Complex64],
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<RateReport> {
    let one = Complex64::new(1.0, 0.0);
    sweep(region, points, n_range, |n, z| {
        let d = d_value(sf, region, z);
        let v = match region {
            AsymptoticRegion::Exterior | AsymptoticRegion::Boundary => {
                z.powi(-(n as i32)) * d * odd_combination(otp, n)?.eval(z)
            }
            AsymptoticRegion::Interior => z.powi(n as i32) * d * even_combination(otp, n)?.eval(z),
        };
        Ok((v - one).norm())
    })
}

/// The same limits written with OPUC: `z^{1-2n} D Phi_{2n-1}` outside and
/// on the circle, `D kappa_{2n}^2 Phi*_{2n}` inside.
pub fn opuc_asymptotic_residuals(
    opuc: &OpucSystem,
    sf: &SzegoFunction,
    region: AsymptoticRegion,
    points: &[Complex64],
    n_range: std::ops::RangeInclusive<usize>,
) -> Result<RateReport> {
    let one = Complex64::new(1.0, 0.0);
    sweep(region, points, n_range, |n, z| {
        let d = d_value(sf, region, z);
        let v = match region {
            AsymptoticRegion::Exterior | AsymptoticRegion::Boundary => {
                z.powi(1 - 2 * n as i32) * d * opuc.monic_at(2 * n - 1, z)?
            }
            AsymptoticRegion::Interior => d * opuc.kappa(2 * n)?.powi(2) * opuc.monic_star_at(2 * n, z)?,
        };
        Ok((v - one).norm())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_geometric_sequence() {
        let n: Vec<usize> = (1..=5).collect();
        let r: Vec<f64> = n.iter().map(|&k| 0.5f64.powi(k as i32)).collect();
        let rep = RateReport::new(AsymptoticRegion::Exterior, n, r, 1.0);
        assert!((rep.fitted_rate.unwrap() - 0.5f64.ln()).abs() < 1e-14);
        assert!(rep.monotone && rep.strict_decay(0.9, 1.0));
        assert!((rep.epsilon - 0.3).abs() < 1e-15);
        assert!((rep.c2_reference - 1.45f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn plateau_below_floor_is_monotone_but_not_strict() {
        let rep = RateReport::new(AsymptoticRegion::Boundary, vec![1, 2, 3, 4], vec![1e-6, 1e-12, 2e-16, 3e-16], 0.0);
        assert!(rep.monotone);
        assert!(!rep.strict_decay(0.9, 1e-6));
        let bad = RateReport::new(AsymptoticRegion::Boundary, vec![1, 2], vec![1e-6, 2e-6], 0.0);
        assert!(!bad.monotone);
        let zeros = RateReport::new(AsymptoticRegion::Exterior, vec![1, 2], vec![0.0, 0.0], 1.0);
        assert!(zeros.fitted_rate.is_none());
    }
}
