use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::spec::WeightSpec;
use crate::error::{Error, Result};
use crate::io::{fmt_f64, write_csv};
use crate::tolerances;

/// Trigonometric moments `c_k = \int e^{-ik theta} d mu` for `|k| <= n_max`.
///
/// Only `k >= 0` is stored; negative indices are served as conjugates, so
/// the Hermitian symmetry holds by construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    n_max: usize,
    c: Vec<Complex64>,
}

impl MomentTable {
    /// Builds from `c_0..=c_{n_max}`; `c_0` must be one.
    pub fn from_nonnegative(c: Vec<Complex64>) -> Result<Self> {
        let Some(c0) = c.first() else {
            return Err(Error::InvalidWeight("empty moment table".into()));
        };
        if (c0 - Complex64::new(1.0, 0.0)).norm() > tolerances::C0_TOL {
            return Err(Error::InvalidWeight(format!("c_0 = {c0} is not 1")));
        }
        let mut c = c;
        c[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_max: c.len() - 1, c })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `c_k`, failing outside `|k| <= n_max`.
    pub fn get(&self, k: i64) -> Result<Complex64> {
        let a = k.unsigned_abs() as usize;
        if a > self.n_max {
            return Err(Error::MomentRange { needed: k, available: self.n_max });
        }
        Ok(if k >= 0 { self.c[a] } else { self.c[a].conj() })
    }

    /// `c_k` without range checking; zero beyond the table.
    pub fn get_or_zero(&self, k: i64) -> Complex64 {
        self.get(k).unwrap_or_default()
    }

    pub fn nonnegative(&self) -> &[Complex64] {
        &self.c
    }

    /// Truncates to a smaller order.
    pub fn truncated(&self, n_max: usize) -> Self {
        let n = n_max.min(self.n_max);
        Self { n_max: n, c: self.c[..=n].to_vec() }
    }

    /// Hermitian Toeplitz matrix `(c_{j-k})` for `0 <= j,k <= m`.
    pub fn toeplitz(&self, m: usize) -> Result<DMatrix<Complex64>> {
        if m > self.n_max {
            return Err(Error::MomentRange { needed: m as i64, available: self.n_max });
        }
        Ok(DMatrix::from_fn(m + 1, m + 1, |j, k| self.get_or_zero(j as i64 - k as i64)))
    }

    /// True when the Toeplitz matrix of order `m` admits a Cholesky factor.
    pub fn toeplitz_positive_definite(&self, m: usize) -> Result<bool> {
        Ok(nalgebra::Cholesky::new(self.toeplitz(m)?).is_some())
    }

    /// Rows `k, re_c, im_c` for `k = -n_max..=n_max`.
    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        let n = self.n_max as i64;
        (-n..=n)
            .map(|k| {
                let v = self.get_or_zero(k);
                vec![k.to_string(), fmt_f64(v.re), fmt_f64(v.im)]
            })
            .collect()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_csv(path, &["k", "re_c", "im_c"], &self.csv_rows())
    }

    /// Reads a table written by [`MomentTable::write_csv`]. Negative rows are
    /// checked against the conjugates of the positive ones.
    pub fn read_csv(path: &Path) -> Result<Self> {
        let mut r = csv::Reader::from_path(path)?;
        let mut rows: Vec<(i64, Complex64)> = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let parse = |i: usize| -> Result<f64> {
                rec.get(i)
                    .and_then(|s| s.trim().parse::<f64>().ok())
                    .ok_or_else(|| Error::InvalidWeight(format!("bad moment row {rec:?}")))
            };
            let k = rec
                .get(0)
                .and_then(|s| s.trim().parse::<i64>().ok())
                .ok_or_else(|| Error::InvalidWeight(format!("bad moment row {rec:?}")))?;
            rows.push((k, Complex64::new(parse(1)?, parse(2)?)));
        }
        let n_max = rows.iter().filter(|r| r.0 >= 0).map(|r| r.0).max().unwrap_or(-1);
        if n_max < 0 {
            return Err(Error::InvalidWeight("moment file has no nonnegative rows".into()));
        }
        let mut c = vec![None; n_max as usize + 1];
        for &(k, v) in rows.iter().filter(|r| r.0 >= 0) {
            c[k as usize] = Some(v);
        }
        let c: Option<Vec<Complex64>> = c.into_iter().collect();
        let c = c.ok_or_else(|| Error::InvalidWeight("moment file has gaps".into()))?;
        let table = Self::from_nonnegative(c)?;
        for &(k, v) in rows.iter().filter(|r| r.0 < 0) {
            if (table.get(k)? - v).norm() > 1e-13 {
                return Err(Error::InvalidWeight(format!("c_{k} is not the conjugate of c_{}", -k)));
            }
        }
        Ok(table)
    }
}

/// Trapezoid moments `c_0..=c_{n_max}` on `m` equispaced nodes via one FFT.
fn moments_on_grid(spec: &WeightSpec, n_max: usize, m: usize) -> Vec<Complex64> {
    let h = 2.0 * std::f64::consts::PI / m as f64;
    let mut buf: Vec<Complex64> =
        (0..m).map(|j| Complex64::new(spec.eval(j as f64 * h), 0.0)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    buf[..=n_max].iter().map(|v| v * scale).collect()
}

/// Node count the doubling starts from.
fn initial_nodes(n_max: usize) -> usize {
    (4 * (n_max + 1)).max(64).next_power_of_two()
}

/// Trapezoid moments with node doubling until successive tables differ by
/// less than `tol` in max norm.
pub fn trig_moments(spec: &WeightSpec, n_max: usize, tol: f64) -> Result<MomentTable> {
    trig_moments_capped(spec, n_max, tol, tolerances::QUAD_NODE_CAP)
}

/// [`trig_moments`] with an explicit node cap.
pub fn trig_moments_capped(
    spec: &WeightSpec,
    n_max: usize,
    tol: f64,
    cap: usize,
) -> Result<MomentTable> {
    if !(tol > 0.0) {
        return Err(Error::Config(format!("tolerance must be positive, got {tol}")));
    }
    let mut m = initial_nodes(n_max);
    if m > cap {
        return Err(Error::QuadratureFailure { cap, diff: f64::INFINITY });
    }
    let mut prev = moments_on_grid(spec, n_max, m);
    let mut diff = f64::INFINITY;
    while 2 * m <= cap {
        m *= 2;
        let next = moments_on_grid(spec, n_max, m);
        diff = prev.iter().zip(&next).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        if diff < tol {
            let mut c = next;
            c[0].im = 0.0;
            if (c[0].re - 1.0).abs() > tolerances::C0_TOL {
                return Err(Error::InternalConsistency(format!(
                    "normalized c_0 = {} differs from 1",
                    c[0].re
                )));
            }
            return MomentTable::from_nonnegative(c);
        }
        prev = next;
    }
    Err(Error::QuadratureFailure { cap, diff })
}

/// Weight Fourier coefficients long enough to represent `w` to roundoff in
/// Cauchy densities. The order doubles until the upper half of the table
/// falls below the tail threshold or stops shrinking (roundoff plateau).
pub fn weight_spectrum(spec: &WeightSpec) -> Result<MomentTable> {
    let mut k = 16usize;
    let mut prev_tail = f64::INFINITY;
    loop {
        let t = trig_moments(spec, k, 1e-15)?;
        let tail = t.nonnegative()[k / 2..].iter().map(|c| c.norm()).fold(0.0, f64::max);
        if tail < tolerances::SPECTRUM_TAIL || tail >= prev_tail || k >= 4096 {
            return Ok(t);
        }
        prev_tail = tail;
        k *= 2;
    }
}

/// `sum_{j,k} conj(f_j) g_k c_{j-k}`.
pub fn inner_complex(f: &LaurentPoly, g: &LaurentPoly, m: &MomentTable) -> Result<Complex64> {
    let span = (f.hi() - g.lo()).max(g.hi() - f.lo());
    if span > m.n_max() as i64 {
        return Err(Error::MomentRange { needed: span, available: m.n_max() });
    }
    let mut s = Complex64::new(0.0, 0.0);
    for (j, a) in f.terms() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut row = Complex64::new(0.0, 0.0);
        for (k, b) in g.terms() {
            row += b * m.get_or_zero(j - k);
        }
        s += a.conj() * row;
    }
    Ok(s)
}

/// Real inner product of two real-on-circle Laurent polynomials.
pub fn inner_real(f: &LaurentPoly, g: &LaurentPoly, m: &MomentTable) -> Result<f64> {
    let v = inner_complex(f, g, m)?;
    if v.im.abs() > tolerances::REAL_INNER_RESIDUE {
        return Err(Error::InternalConsistency(format!(
            "real inner product has imaginary residue {:e}",
            v.im
        )));
    }
    Ok(v.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::WeightKind;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn half_cos() -> WeightSpec {
        WeightSpec::new(WeightKind::CosinePoly { constant: 1.0, cos: vec![0.5], sin: vec![] }).unwrap()
    }

    #[test]
    fn lebesgue_moments() {
        let m = trig_moments(&WeightSpec::lebesgue(), 4, 1e-14).unwrap();
        assert_eq!(m.get(0).unwrap(), c(1.0, 0.0));
        for k in 1..=4 {
            assert!(m.get(k).unwrap().norm() < 1e-16);
        }
    }

    #[test]
    fn cosine_moments() {
        let m = trig_moments(&half_cos(), 2, 1e-14).unwrap();
        assert!((m.get(1).unwrap() - c(0.25, 0.0)).norm() < 1e-16);
        assert!((m.get(-1).unwrap() - c(0.25, 0.0)).norm() < 1e-16);
        assert!(m.get(2).unwrap().norm() < 1e-16);
        assert!(matches!(m.get(3), Err(Error::MomentRange { .. })));
    }

    #[test]
    fn inner_product_examples() {
        let one = LaurentPoly::constant(c(1.0, 0.0));
        let z = LaurentPoly::monomial(1, c(1.0, 0.0));
        let leb = trig_moments(&WeightSpec::lebesgue(), 4, 1e-14).unwrap();
        assert!(inner_complex(&one, &z, &leb).unwrap().norm() < 1e-16);
        assert!((inner_complex(&z, &z, &leb).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let w = trig_moments(&half_cos(), 4, 1e-14).unwrap();
        let f = one.add(&z);
        assert!((inner_complex(&f, &z, &w).unwrap() - c(1.25, 0.0)).norm() < 1e-15);

        let s = LaurentPoly::sin_mode(1);
        let co = LaurentPoly::cos_mode(1);
        assert!(inner_real(&s, &co, &leb).unwrap().abs() < 1e-16);
        assert!((inner_real(&s, &s, &leb).unwrap() - 0.5).abs() < 1e-15);
        assert!(inner_real(&LaurentPoly::cos_mode(2), &one, &w).unwrap().abs() < 1e-16);
    }

    #[test]
    fn range_error_when_table_too_short() {
        let m = trig_moments(&WeightSpec::lebesgue(), 2, 1e-14).unwrap();
        let z3 = LaurentPoly::monomial(3, c(1.0, 0.0));
        let one = LaurentPoly::constant(c(1.0, 0.0));
        assert!(matches!(inner_complex(&one, &z3, &m), Err(Error::MomentRange { .. })));
    }

    #[test]
    fn node_cap_is_enforced() {
        let w = WeightSpec::new(WeightKind::ExpTrig { p: 1.0, q: 0.0 }).unwrap();
        let r = trig_moments_capped(&w, 8, 1e-300, 4096);
        assert!(matches!(r, Err(Error::QuadratureFailure { cap: 4096, .. })));
    }

    #[test]
    fn toeplitz_positive_definite_for_valid_weight() {
        let w = WeightSpec::new(WeightKind::ExpTrig { p: 1.0, q: 0.0 }).unwrap();
        let m = trig_moments(&w, 12, 1e-14).unwrap();
        for k in 0..=12 {
            assert!(m.toeplitz_positive_definite(k).unwrap());
        }
    }

    #[test]
    fn csv_round_trip() {
        let w = WeightSpec::new(WeightKind::ExpTrig { p: 0.7, q: -0.3 }).unwrap();
        let m = trig_moments(&w, 6, 1e-14).unwrap();
        let dir = std::env::temp_dir().join(format!("otp-opuc-moments-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.csv");
        m.write_csv(&path).unwrap();
        let back = MomentTable::read_csv(&path).unwrap();
        assert_eq!(back, m);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
