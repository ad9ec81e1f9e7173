//! Independent reference computations for the integration tests.
//!
//! Nothing here goes through the moment table: integrals are direct
//! trapezoid sums of the weight against point values.

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use otp_opuc::opuc::{build_opuc, OpucSystem};
use otp_opuc::otp::{gram_schmidt, OtpSystem, SystemTag};
use otp_opuc::weights::{trig_moments, MomentTable, WeightKind, WeightSpec};
use otp_opuc::LaurentPoly;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The four non-trivial test weights.
pub fn test_weights() -> Vec<(&'static str, WeightSpec)> {
    vec![
        ("1+cos/2", WeightKind::CosinePoly { constant: 1.0, cos: vec![0.5], sin: vec![] }),
        ("1+cos/2+sin/4", WeightKind::CosinePoly { constant: 1.0, cos: vec![0.5], sin: vec![0.25] }),
        ("exp(cos)", WeightKind::ExpTrig { p: 1.0, q: 0.0 }),
        ("bernstein-szego(1/2)", WeightKind::BernsteinSzego { alpha0: c(0.5, 0.0) }),
    ]
    .into_iter()
    .map(|(n, k)| (n, WeightSpec::new(k).unwrap()))
    .collect()
}

/// Moments, both OTP systems through level `n` and OPUC through index `2n + 2`.
pub struct Systems {
    pub moments: MomentTable,
    pub otp: OtpSystem,
    pub otp_second: OtpSystem,
    pub opuc: OpucSystem,
}

pub fn systems(w: &WeightSpec, n: usize) -> Systems {
    let moments = trig_moments(w, 2 * n + 4, 1e-15).unwrap();
    Systems {
        otp: gram_schmidt(&moments, SystemTag::First, n).unwrap(),
        otp_second: gram_schmidt(&moments, SystemTag::Second, n).unwrap(),
        opuc: build_opuc(&moments, 2 * n + 2).unwrap(),
        moments,
    }
}

fn node(j: usize, m: usize) -> (f64, Complex64) {
    let theta = TAU * j as f64 / m as f64;
    (theta, Complex64::from_polar(1.0, theta))
}

/// `max |G - I|` for `G_ik = (1/2pi) int w p_i p_k` by an `m`-point trapezoid rule.
pub fn quadrature_gram_real(w: &WeightSpec, polys: &[LaurentPoly], m: usize) -> f64 {
    let vals: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            let (_, t) = node(j, m);
            polys.iter().map(|p| p.eval(t).re).collect()
        })
        .collect();
    let weights: Vec<f64> = (0..m).map(|j| w.eval(node(j, m).0)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..polys.len() {
        for k in i..polys.len() {
            let g: f64 = (0..m).map(|j| weights[j] * vals[j][i] * vals[j][k]).sum::<f64>() / m as f64;
            worst = worst.max((g - if i == k { 1.0 } else { 0.0 }).abs());
        }
    }
    worst
}

/// `max |G - I|` for `G_ik = (1/2pi) int w conj(phi_i) phi_k`.
pub fn quadrature_gram_opuc(w: &WeightSpec, sys: &OpucSystem, n: usize, m: usize) -> f64 {
    let vals: Vec<Vec<Complex64>> = (0..m)
        .map(|j| {
            let (_, t) = node(j, m);
            (0..=n).map(|k| sys.phi(k, t).unwrap()).collect()
        })
        .collect();
    let weights: Vec<f64> = (0..m).map(|j| w.eval(node(j, m).0)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..=n {
        for k in i..=n {
            let g: Complex64 =
                (0..m).map(|j| vals[j][i].conj() * vals[j][k] * weights[j]).sum::<Complex64>() / m as f64;
            worst = worst.max((g - c(if i == k { 1.0 } else { 0.0 }, 0.0)).norm());
        }
    }
    worst
}

/// Modified Bessel function `I_k(x)` from its power series.
pub fn bessel_i(k: u32, x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = half.powi(k as i32) / (1..=k).map(f64::from).product::<f64>();
    let mut sum = term;
    for m in 1..60 {
        term *= half * half / (m as f64 * (m + k) as f64);
        sum += term;
        if term < 1e-20 * sum {
            break;
        }
    }
    sum
}

/// Cauchy integral `(1/2 pi i) int f(t) / (t - z) dt` by an `m`-point trapezoid rule.
pub fn cauchy_quadrature(f: impl Fn(f64, Complex64) -> Complex64, z: Complex64, m: usize) -> Complex64 {
    (0..m)
        .map(|j| {
            let (theta, t) = node(j, m);
            f(theta, t) * t / (t - z)
        })
        .sum::<Complex64>()
        / m as f64
}

/// Zeros of `theta -> Re p(e^{i theta})` by sign changes on a grid of
/// `grid` cells followed by bisection.
pub fn bisection_zeros(p: &LaurentPoly, grid: usize) -> Vec<f64> {
    let g = |theta: f64| p.eval(Complex64::from_polar(1.0, theta)).re;
    let h = TAU / grid as f64;
    let mut out = Vec::new();
    let mut a = 0.0;
    let mut ga = g(a);
    for j in 1..=grid {
        let b = j as f64 * h;
        let gb = g(b);
        if ga == 0.0 {
            out.push(a);
        } else if ga * gb < 0.0 {
            let (mut lo, mut hi, mut glo) = (a, b, ga);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let gm = g(mid);
                if glo * gm <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = gm;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        a = b;
        ga = gb;
    }
    out
}

/// Distance on the circle between two angles.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// `count` angles in `[0, 2 pi)` spread evenly with a fixed offset.
pub fn angles(count: usize, offset: f64) -> Vec<f64> {
    (0..count).map(|j| (offset + 2.0 * PI * j as f64 / count as f64).rem_euclid(TAU)).collect()
}
