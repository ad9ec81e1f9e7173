//! Scalar factorization `D+ D- = w`, Cauchy transforms by Fourier
//! splitting, the 2x2 Riemann–Hilbert characterization, and asymptotic
//! residual sweeps.

mod asymptotics;
mod cauchy;
mod rhp;

pub use asymptotics::{asymptotic_residuals, opuc_asymptotic_residuals, AsymptoticRegion, RateReport};
pub use cauchy::{
    cauchy_transform, plemelj_minus, plemelj_plus, principal_value, spectrum_series, weighted_density,
};
pub use rhp::{assemble_y, verify_y_jump, RhpMatrix, RhpSolution, RhpSystems, Side, YForm};

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerances;
use crate::weights::{LaurentPoly, WeightSpec};

/// Where a Szegő function value is requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Interior,
    Exterior,
    /// Boundary value `exp(-C-[log w])`, the exterior limit.
    Boundary,
}

/// `D = exp(C[log w])` inside and `exp(-C[log w])` outside, with `D(inf) = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct SzegoFunction {
    /// `l_{-K}..=l_K`, Fourier coefficients of `log w`.
    ell: LaurentPoly,
    order: usize,
    tail_bound: f64,
}

fn log_weight_coeffs(spec: &WeightSpec, k: usize) -> Vec<Complex64> {
    let m = (8 * k).max(64).next_power_of_two();
    let h = 2.0 * PI / m as f64;
    let mut buf: Vec<Complex64> = (0..m).map(|j| Complex64::new(spec.log_eval(j as f64 * h), 0.0)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    buf[..=k].iter().map(|v| v / m as f64).collect()
}

impl SzegoFunction {
    /// Doubles the truncation order until the upper half of the retained
    /// coefficients falls below the tail threshold.
    pub fn new(spec: &WeightSpec) -> Result<Self> {
        let mut k = 16usize;
        loop {
            let half = log_weight_coeffs(spec, k);
            let tail = half[k / 2 + 1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
            if tail < tolerances::LOG_WEIGHT_TAIL {
                let mut coeffs: Vec<Complex64> = half.iter().skip(1).rev().map(|c| c.conj()).collect();
                let mut c0 = half[0];
                c0.im = 0.0;
                coeffs.push(c0);
                coeffs.extend_from_slice(&half[1..]);
                let ell = LaurentPoly::new(-(k as i64), coeffs);
                return Ok(Self { ell, order: k, tail_bound: tail });
            }
            if k >= 1 << 16 {
                return Err(Error::QuadratureFailure { cap: 8 * k, diff: tail });
            }
            k *= 2;
        }
    }

    /// Fourier coefficients of `log w`.
    pub fn log_coeffs(&self) -> &LaurentPoly {
        &self.ell
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// `D(z)` for `|z| < 1`.
    pub fn interior(&self, z: Complex64) -> Complex64 {
        plemelj_plus(&self.ell, z).exp()
    }

    /// `D(z)` for `|z| > 1`.
    pub fn exterior(&self, z: Complex64) -> Complex64 {
        (-plemelj_minus(&self.ell, z)).exp()
    }

    /// `D+(t) = exp(C+[log w](t))`.
    pub fn boundary_plus(&self, t: Complex64) -> Complex64 {
        self.interior(t)
    }

    /// `D-(t) = exp(-C-[log w](t))`.
    pub fn boundary_minus(&self, t: Complex64) -> Complex64 {
        self.exterior(t)
    }

    /// `exp(log w(t) / 2 - PV[log w](t) / 2)`, the singular-integral form of `D-(t)`.
    pub fn boundary_from_principal_value(&self, t: Complex64, log_w: f64) -> Complex64 {
        (0.5 * log_w - 0.5 * principal_value(&self.ell, t)).exp()
    }

    /// Largest `|D+(t) D-(t) - w(t)|` over `samples` equispaced boundary points.
    pub fn factorization_residual(&self, spec: &WeightSpec, samples: usize) -> f64 {
        (0..samples)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / samples as f64;
                let t = Complex64::from_polar(1.0, theta);
                (self.boundary_plus(t) * self.boundary_minus(t) - spec.eval(theta)).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// `D` at `z` in the requested region, checking the region against `|z|`.
pub fn szego_d(sf: &SzegoFunction, z: Complex64, region: Region) -> Result<Complex64> {
    let gap = z.norm() - 1.0;
    let on = gap.abs() <= tolerances::ON_CIRCLE;
    match region {
        Region::Interior if gap < 0.0 && !on => Ok(sf.interior(z)),
        Region::Exterior if gap > 0.0 && !on => Ok(sf.exterior(z)),
        Region::Boundary if on => Ok(sf.boundary_minus(z)),
        _ => Err(Error::Domain(format!("|z| = {} is not in the {region:?} region", z.norm()))),
    }
}
