use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances;
use crate::weights::{LaurentPoly, MomentTable};

/// Weight Fourier series `sum_k c_k tau^k` as a Laurent polynomial.
pub fn spectrum_series(spectrum: &MomentTable) -> LaurentPoly {
    let k = spectrum.n_max() as i64;
    LaurentPoly::new(-k, (-k..=k).map(|j| spectrum.get_or_zero(j)).collect())
}

/// Fourier coefficients of `p(tau) w(tau)` on the circle.
pub fn weighted_density(p: &LaurentPoly, spectrum: &MomentTable) -> LaurentPoly {
    p.mul(&spectrum_series(spectrum))
}

fn nonnegative_part(f: &LaurentPoly, z: Complex64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for k in (0.max(f.lo())..=f.hi()).rev() {
        s = s * z + f.coeff(k);
    }
    if f.lo() > 0 {
        s *= z.powi(f.lo() as i32);
    }
    s
}

fn negative_part(f: &LaurentPoly, z: Complex64) -> Complex64 {
    if f.lo() >= 0 {
        return Complex64::new(0.0, 0.0);
    }
    let w = z.inv();
    let top = f.hi().min(-1);
    let mut s = Complex64::new(0.0, 0.0);
    for k in f.lo()..=top {
        s = s * w + f.coeff(k);
    }
    s * w.powi((-top) as i32)
}

/// Cauchy integral of the density with Fourier coefficients `f` at `z` off
/// the circle: the nonnegative modes inside, minus the negative modes outside.
pub fn cauchy_transform(f: &LaurentPoly, z: Complex64) -> Result<Complex64> {
    let gap = z.norm() - 1.0;
    if gap.abs() < tolerances::ON_CIRCLE {
        return Err(Error::OnCircle(gap.abs()));
    }
    Ok(if gap < 0.0 { nonnegative_part(f, z) } else { -negative_part(f, z) })
}

/// Boundary value from inside at `t` on the circle.
pub fn plemelj_plus(f: &LaurentPoly, t: Complex64) -> Complex64 {
    nonnegative_part(f, t)
}

/// Boundary value from outside at `t` on the circle.
pub fn plemelj_minus(f: &LaurentPoly, t: Complex64) -> Complex64 {
    -negative_part(f, t)
}

/// Singular (principal value) integral at `t`, equal to the sum of the two boundary values.
pub fn principal_value(f: &LaurentPoly, t: Complex64) -> Complex64 {
    plemelj_plus(f, t) + plemelj_minus(f, t)
}
