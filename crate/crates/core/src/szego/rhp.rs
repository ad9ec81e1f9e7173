use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::cauchy::{cauchy_transform, plemelj_minus, plemelj_plus, weighted_density};
use crate::bridge::{even_combination, odd_combination};
use crate::error::{Error, Result};
use crate::opuc::OpucSystem;
use crate::otp::OtpSystem;
use crate::tolerances;
use crate::weights::{LaurentPoly, MomentTable, WeightSpec};

/// Inputs shared by both forms of the solution.
#[derive(Clone, Copy)]
pub struct RhpSystems<'a> {
    pub otp: &'a OtpSystem,
    pub opuc: &'a OpucSystem,
    /// Weight Fourier coefficients, see [`crate::weights::weight_spectrum`].
    pub spectrum: &'a MomentTable,
    pub weight: &'a WeightSpec,
}

/// Which polynomial data builds the first row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum YForm {
    /// `z^n [a sigma_n + (beta + i) b pi_n]` and `-z^n E_{n-1}`.
    Otp,
    /// `z Phi_{2n-1}` and `-kappa_{2n-2}^2 z Phi*_{2n-2}`.
    Opuc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Interior,
    Exterior,
    BoundaryPlus,
    BoundaryMinus,
}

/// `Y(z)` on one side of the circle.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RhpMatrix {
    pub n: usize,
    pub z: Complex64,
    pub side: Side,
    pub entries: [[Complex64; 2]; 2],
}

impl RhpMatrix {
    /// Sum of absolute entry differences.
    pub fn distance(&self, other: &RhpMatrix) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                s += (self.entries[i][j] - other.entries[i][j]).norm();
            }
        }
        s
    }
}

/// First-row polynomials and second-row Cauchy densities for one `n`.
#[derive(Clone, Debug)]
pub struct RhpSolution<'a> {
    n: usize,
    form: YForm,
    weight: &'a WeightSpec,
    first_row: [LaurentPoly; 2],
    densities: [LaurentPoly; 2],
}

impl<'a> RhpSolution<'a> {
    pub fn new(form: YForm, sys: RhpSystems<'a>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("the Riemann–Hilbert index must be at least 1".into()));
        }
        let first_row = match form {
            YForm::Otp => [
                odd_combination(sys.otp, n)?.shift(n as i64),
                even_combination(sys.otp, n - 1)?.shift(n as i64).scale_re(-1.0),
            ],
            YForm::Opuc => {
                let k2 = sys.opuc.kappa(2 * n - 2)?.powi(2);
                [
                    LaurentPoly::from_poly(sys.opuc.monic(2 * n - 1)?).shift(1),
                    LaurentPoly::from_poly(&sys.opuc.monic_star(2 * n - 2)?).shift(1).scale_re(-k2),
                ]
            }
        };
        let shift = -2 * n as i64;
        let densities = [
            weighted_density(&first_row[0].shift(shift), sys.spectrum),
            weighted_density(&first_row[1].shift(shift), sys.spectrum),
        ];
        Ok(Self { n, form, weight: sys.weight, first_row, densities })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> YForm {
        self.form
    }

    /// `(Y_11, Y_12)` as Laurent polynomials.
    pub fn first_row(&self) -> &[LaurentPoly; 2] {
        &self.first_row
    }

    /// Fourier coefficients of `tau^{-2n} w(tau) Y_1j(tau)`.
    pub fn densities(&self) -> &[LaurentPoly; 2] {
        &self.densities
    }

    /// `Y` at `z` on the given side; the side must match `|z|`.
    pub fn at(&self, z: Complex64, side: Side) -> Result<RhpMatrix> {
        let gap = z.norm() - 1.0;
        let on = gap.abs() <= 1e-12;
        let ok = match side {
            Side::Interior => gap < 0.0 && !on,
            Side::Exterior => gap > 0.0 && !on,
            Side::BoundaryPlus | Side::BoundaryMinus => on,
        };
        if !ok {
            return Err(Error::Domain(format!("|z| = {} does not lie on the {side:?} side", z.norm())));
        }
        let second = |f: &LaurentPoly| -> Result<Complex64> {
            Ok(match side {
                Side::Interior | Side::Exterior => cauchy_transform(f, z)?,
                Side::BoundaryPlus => plemelj_plus(f, z),
                Side::BoundaryMinus => plemelj_minus(f, z),
            })
        };
        let entries = [
            [self.first_row[0].eval(z), self.first_row[1].eval(z)],
            [second(&self.densities[0])?, second(&self.densities[1])?],
        ];
        Ok(RhpMatrix { n: self.n, z, side, entries })
    }

    /// `Y(z)` off the circle, picking the side from `|z|`.
    pub fn off_circle(&self, z: Complex64) -> Result<RhpMatrix> {
        let gap = z.norm() - 1.0;
        if gap.abs() < tolerances::ON_CIRCLE {
            return Err(Error::OnCircle(gap.abs()));
        }
        self.at(z, if gap < 0.0 { Side::Interior } else { Side::Exterior })
    }

    /// `sum |Y+ - G Y-|` at `t = e^{i theta}`, `G = [[1, 0], [t^{-2n} w(t), 1]]`.
    pub fn jump_residual(&self, theta: f64) -> Result<f64> {
        let t = Complex64::from_polar(1.0, theta);
        let plus = self.at(t, Side::BoundaryPlus)?;
        let minus = self.at(t, Side::BoundaryMinus)?;
        let g = t.powi(-2 * self.n as i32) * self.weight.eval(theta);
        let mut s = 0.0;
        for j in 0..2 {
            s += (plus.entries[0][j] - minus.entries[0][j]).norm();
            s += (plus.entries[1][j] - (g * minus.entries[0][j] + minus.entries[1][j])).norm();
        }
        Ok(s)
    }

    /// `|Y_11(0)| + |Y_12(0)|`.
    pub fn origin_defect(&self) -> f64 {
        let z = Complex64::new(0.0, 0.0);
        self.first_row[0].eval(z).norm() + self.first_row[1].eval(z).norm()
    }

    /// Largest entry of `|diag(z^{-2n}, z^{2n-1}) Y(z) - I|` at a large exterior point.
    pub fn normalization_defect_at(&self, z: Complex64) -> Result<f64> {
        let y = self.at(z, Side::Exterior)?;
        let up = z.powi(-2 * self.n as i32);
        let down = z.powi(2 * self.n as i32 - 1);
        let one = Complex64::new(1.0, 0.0);
        Ok([
            (up * y.entries[0][0] - one).norm(),
            (up * y.entries[0][1]).norm(),
            (down * y.entries[1][0]).norm(),
            (down * y.entries[1][1] - one).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max))
    }

    /// Largest deviation of the principal part at infinity of
    /// `diag(z^{-2n}, z^{2n-1}) Y` from the identity, read off the exact
    /// Laurent coefficients at infinity.
    pub fn principal_part_defect(&self) -> f64 {
        let n = self.n as i64;
        let one = Complex64::new(1.0, 0.0);
        let mut worst: f64 = 0.0;
        // Row 1: powers >= 2n of Y_1j.
        for (j, p) in self.first_row.iter().enumerate() {
            for k in (2 * n)..=p.hi().max(2 * n) {
                let want = if j == 0 && k == 2 * n { one } else { Complex64::new(0.0, 0.0) };
                worst = worst.max((p.coeff(k) - want).norm());
            }
        }
        // Row 2 outside: Y_2j = -sum_{m<0} f_m z^m, so powers m >= 1 - 2n of
        // z^{2n-1} Y_2j come from -f_m with -(2n - 1) <= m <= -1.
        for (j, f) in self.densities.iter().enumerate() {
            for m in (1 - 2 * n)..=-1 {
                let want = if j == 1 && m == 1 - 2 * n { one } else { Complex64::new(0.0, 0.0) };
                worst = worst.max((-f.coeff(m) - want).norm());
            }
        }
        worst
    }
}

/// `Y(z)` off the circle in the requested form.
pub fn assemble_y(form: YForm, sys: RhpSystems<'_>, n: usize, z: Complex64) -> Result<RhpMatrix> {
    RhpSolution::new(form, sys, n)?.off_circle(z)
}

/// Largest jump residual over `samples` equispaced boundary points.
pub fn verify_y_jump(form: YForm, sys: RhpSystems<'_>, n: usize, samples: usize) -> Result<f64> {
    let sol = RhpSolution::new(form, sys, n)?;
    let mut worst: f64 = 0.0;
    for j in 0..samples {
        worst = worst.max(sol.jump_residual(2.0 * PI * (j as f64 + 0.5) / samples as f64)?);
    }
    Ok(worst)
}
