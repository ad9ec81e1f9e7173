//! Correspondence between the first OTP system and OPUC.
//!
//! At level `n >= 1`, with `(a, b, beta)` the level scalars,
//!
//! ```text
//! Phi_{2n-1}(z)            = z^{n-1} [a sigma_n + (beta + i) b pi_n]
//! kappa_{2n}^2 Phi*_{2n}(z) = z^n E_n,   E_n = ([(1 + beta i)/a] sigma_n - [i/b] pi_n) / 2
//! ```
//!
//! Level 0 is served from the OPUC side (`E_0 = phi_0 = 1`); the OTP
//! conventions `a_0 = b_0 = 1`, `pi_0 = 0` are never substituted here.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::opuc::OpucSystem;
use crate::otp::{OtpSystem, SystemTag};
use crate::tolerances;
use crate::weights::LaurentPoly;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn first_system(sys: &OtpSystem) -> Result<()> {
    if sys.tag() != SystemTag::First {
        return Err(Error::Domain("the bridge uses the first OTP system".into()));
    }
    Ok(())
}

fn positive_level(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("OTP-form identities are stated for n >= 1".into()));
    }
    Ok(())
}

/// `Lambda(n) = [[1, beta + i], [(1 + beta i) / (2 a^2), -i / (2 b^2)]]`,
/// mapping `(a sigma_n, b pi_n)` to `(z^{1-n} Phi_{2n-1}, kappa_{2n}^2 z^{-n} Phi*_{2n})`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConnectionMatrix {
    pub n: usize,
    pub entries: [[Complex64; 2]; 2],
}

impl ConnectionMatrix {
    pub fn new(n: usize, a: f64, b: f64, beta: f64) -> Self {
        let entries = [
            [ONE, re(beta) + I],
            [(ONE + I * beta) * (0.5 / (a * a)), -I * (0.5 / (b * b))],
        ];
        Self { n, entries }
    }

    pub fn from_otp(sys: &OtpSystem, n: usize) -> Result<Self> {
        first_system(sys)?;
        positive_level(n)?;
        let (a, b, beta) = sys.level_scalars(n)?;
        Ok(Self::new(n, a, b, beta))
    }

    /// Determinant from the entries.
    pub fn det(&self) -> Complex64 {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    /// `(lambda_1, lambda_2, lambda_3, lambda_4)`; the second row is `(-lambda_3, -lambda_4)`.
    pub fn lambdas(&self) -> [Complex64; 4] {
        let e = &self.entries;
        [e[0][0], e[0][1], -e[1][0], -e[1][1]]
    }

    /// Exact inverse through the adjugate.
    pub fn inverse(&self) -> Result<[[Complex64; 2]; 2]> {
        let d = self.det();
        if d.norm() < tolerances::INVERSION_FLOOR {
            return Err(Error::InversionDegenerate(format!("det Lambda({}) = {d}", self.n)));
        }
        let e = &self.entries;
        Ok([[e[1][1] / d, -e[0][1] / d], [-e[1][0] / d, e[0][0] / d]])
    }
}

/// `-(a^-2 (1 + beta^2) + b^-2) i / 2`.
pub fn det_closed_form(a: f64, b: f64, beta: f64) -> Complex64 {
    -I * (0.5 * ((1.0 + beta * beta) / (a * a) + 1.0 / (b * b)))
}

/// `a_n sigma_n + (beta_n + i) b_n pi_n` as a Laurent polynomial.
pub fn odd_combination(sys: &OtpSystem, n: usize) -> Result<LaurentPoly> {
    first_system(sys)?;
    positive_level(n)?;
    let (a, b, beta) = sys.level_scalars(n)?;
    Ok(sys.even(n)?.scale_re(a).axpy((re(beta) + I) * b, &sys.odd(n)?))
}

/// `E_n` for `n >= 1`, and `1` at `n = 0`.
pub fn even_combination(sys: &OtpSystem, n: usize) -> Result<LaurentPoly> {
    first_system(sys)?;
    if n == 0 {
        return Ok(LaurentPoly::constant(ONE));
    }
    let (a, b, beta) = sys.level_scalars(n)?;
    Ok(sys
        .even(n)?
        .scale((ONE + I * beta) * (0.5 / a))
        .axpy(-I * (0.5 / b), &sys.odd(n)?))
}

/// `(Phi_{2n-1}, kappa_{2n}^2 Phi*_{2n})` as plain coefficient vectors.
#[derive(Clone, Debug, Serialize)]
pub struct OpucPair {
    pub n: usize,
    /// Degree `2n - 1`, monic.
    pub phi_odd: Vec<Complex64>,
    /// Degree `2n`, constant term `kappa_{2n}^2`.
    pub kappa_sq_phi_star_even: Vec<Complex64>,
}

impl OpucPair {
    /// The pair read off an OPUC system.
    pub fn from_opuc(sys: &OpucSystem, n: usize) -> Result<Self> {
        positive_level(n)?;
        let k2 = sys.kappa(2 * n)?.powi(2);
        Ok(Self {
            n,
            phi_odd: sys.monic(2 * n - 1)?.to_vec(),
            kappa_sq_phi_star_even: sys.monic_star(2 * n)?.iter().map(|c| c * k2).collect(),
        })
    }

    /// `kappa_{2n}^2`, the constant term of the second polynomial.
    pub fn kappa_sq(&self) -> f64 {
        self.kappa_sq_phi_star_even[0].re
    }

    /// `alpha_{2n-1}`, from the top coefficient `-kappa_{2n}^2 alpha_{2n-1}`.
    pub fn alpha_odd(&self) -> Complex64 {
        -self.kappa_sq_phi_star_even[2 * self.n] / self.kappa_sq()
    }

    /// Level scalars implied by the pair.
    pub fn scalars(&self) -> Result<(f64, f64, f64)> {
        scalars_from_opuc_data(self.alpha_odd(), self.kappa_sq())
    }

    /// `(sigma_n, pi_n)` recovered with the given scalars.
    pub fn to_otp_with(&self, a: f64, b: f64, beta: f64) -> Result<(LaurentPoly, LaurentPoly)> {
        let n = self.n as i64;
        let u1 = LaurentPoly::from_poly(&self.phi_odd).shift(1 - n);
        let u2 = LaurentPoly::from_poly(&self.kappa_sq_phi_star_even).shift(-n);
        let inv = ConnectionMatrix::new(self.n, a, b, beta).inverse()?;
        let t1 = u1.scale(inv[0][0]).axpy(inv[0][1], &u2);
        let t2 = u1.scale(inv[1][0]).axpy(inv[1][1], &u2);
        Ok((t1.scale_re(1.0 / a), t2.scale_re(1.0 / b)))
    }

    /// `(sigma_n, pi_n)` using the scalars implied by the pair itself.
    pub fn to_otp(&self) -> Result<(LaurentPoly, LaurentPoly)> {
        let (a, b, beta) = self.scalars()?;
        self.to_otp_with(a, b, beta)
    }
}

/// Builds `Phi_{2n-1}` and `kappa_{2n}^2 Phi*_{2n}` from level `n` of the first OTP system.
pub fn opuc_from_otp(sys: &OtpSystem, n: usize) -> Result<OpucPair> {
    let odd = odd_combination(sys, n)?.shift(n as i64 - 1);
    let even = even_combination(sys, n)?.shift(n as i64);
    let tol = tolerances::BRIDGE_NEGATIVE_POWER;
    let phi_odd = odd.to_poly(2 * n - 1, tol).ok_or_else(|| {
        Error::IdentityViolation(format!("z^(n-1) times the odd combination at level {n} is not a polynomial"))
    })?;
    let kappa_sq_phi_star_even = even.to_poly(2 * n, tol).ok_or_else(|| {
        Error::IdentityViolation(format!("z^n E_n at level {n} is not a polynomial"))
    })?;
    Ok(OpucPair { n, phi_odd, kappa_sq_phi_star_even })
}

/// `(a, b, beta)` from `alpha_{2n-1}` and `kappa_{2n}^2`:
/// `a^-2 = 2 k (1 - Re alpha)`, `beta = -Im alpha / (1 - Re alpha)`,
/// `b^-2 = 4 k - a^-2 (1 + beta^2)` with `k = kappa_{2n}^2`.
pub fn scalars_from_opuc_data(alpha_odd: Complex64, kappa_sq: f64) -> Result<(f64, f64, f64)> {
    let gap = 1.0 - alpha_odd.re;
    if !(gap > tolerances::INVERSION_FLOOR) {
        return Err(Error::InversionDegenerate(format!("1 - Re alpha = {gap:e}")));
    }
    let a_inv2 = 2.0 * kappa_sq * gap;
    let beta = -alpha_odd.im / gap;
    let b_inv2 = 4.0 * kappa_sq - a_inv2 * (1.0 + beta * beta);
    if !(b_inv2 > tolerances::INVERSION_FLOOR) {
        return Err(Error::InversionDegenerate(format!("b^-2 = {b_inv2:e}")));
    }
    Ok((a_inv2.sqrt().recip(), b_inv2.sqrt().recip(), beta))
}

/// Level-`n` OTP scalars from `alpha_{2n-1}` and `kappa_{2n}` of an OPUC system.
pub fn otp_scalars_from_opuc(sys: &OpucSystem, n: usize) -> Result<(f64, f64, f64)> {
    positive_level(n)?;
    let alpha = sys.alpha(2 * n - 1)?;
    let k = sys.kappa(2 * n)?;
    scalars_from_opuc_data(alpha, k * k)
}

/// `(sigma_n, pi_n)` from an OPUC system through the inverse connection matrix.
pub fn otp_from_opuc(sys: &OpucSystem, n: usize) -> Result<(LaurentPoly, LaurentPoly)> {
    let (a, b, beta) = otp_scalars_from_opuc(sys, n)?;
    OpucPair::from_opuc(sys, n)?.to_otp_with(a, b, beta)
}

/// Residuals of the coefficient relations at level `n`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CoefficientRelations {
    /// `|kappa_{2n}^2 - (a^-2 (1 + beta^2) + b^-2) / 4|`.
    pub kappa_sq: f64,
    /// `|Re alpha_{2n-1} - (b^-2 - a^-2 (1 - beta^2)) / (4 kappa^2)|`.
    pub alpha_re: f64,
    /// `|Im alpha_{2n-1} + a^-2 beta / (2 kappa^2)|`.
    pub alpha_im: f64,
    /// `|det Lambda(n) + 2 kappa_{2n}^2 i|`.
    pub det: f64,
    /// `|det Lambda(n) - closed form|`.
    pub det_closed_form: f64,
}

pub fn coefficient_relations(otp: &OtpSystem, opuc: &OpucSystem, n: usize) -> Result<CoefficientRelations> {
    first_system(otp)?;
    positive_level(n)?;
    let (a, b, beta) = otp.level_scalars(n)?;
    let k2 = opuc.kappa(2 * n)?.powi(2);
    let alpha = opuc.alpha(2 * n - 1)?;
    let (ai2, bi2) = (1.0 / (a * a), 1.0 / (b * b));
    let lam = ConnectionMatrix::new(n, a, b, beta);
    Ok(CoefficientRelations {
        kappa_sq: (k2 - 0.25 * (ai2 * (1.0 + beta * beta) + bi2)).abs(),
        alpha_re: (alpha.re - 0.25 / k2 * (bi2 - ai2 * (1.0 - beta * beta))).abs(),
        alpha_im: (alpha.im + 0.5 / k2 * ai2 * beta).abs(),
        det: (lam.det() + I * (2.0 * k2)).norm(),
        det_closed_form: (lam.det() - det_closed_form(a, b, beta)).norm(),
    })
}

/// `|z^{n-1} [a sigma_n + (beta + i) b pi_n](z) - Phi_{2n-1}(z)|`.
pub fn bridge_residual(otp: &OtpSystem, opuc: &OpucSystem, n: usize, z: Complex64) -> Result<f64> {
    let lhs = odd_combination(otp, n)?.eval(z) * z.powi(n as i32 - 1);
    Ok((lhs - opuc.monic_at(2 * n - 1, z)?).norm())
}

/// `|z^n E_n(z) - kappa_{2n}^2 Phi*_{2n}(z)|`.
pub fn bridge_residual_even(otp: &OtpSystem, opuc: &OpucSystem, n: usize, z: Complex64) -> Result<f64> {
    positive_level(n)?;
    let lhs = even_combination(otp, n)?.eval(z) * z.powi(n as i32);
    let k2 = opuc.kappa(2 * n)?.powi(2);
    Ok((lhs - opuc.monic_star_at(2 * n, z)? * k2).norm())
}

/// `|LHS - RHS|` of the four-term recurrence from level `n` to `n + 1`.
pub fn recurrence_residual(otp: &OtpSystem, opuc: &OpucSystem, n: usize, z: Complex64) -> Result<f64> {
    positive_level(n)?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("recurrence check needs z != 0".into()));
    }
    let lhs = odd_combination(otp, n + 1)?.eval(z);
    let (a, b, beta) = otp.level_scalars(n)?;
    let k2inv = opuc.kappa(2 * n)?.powi(-2);
    let ab = opuc.alpha(2 * n)?.conj();
    let sigma = otp.even(n)?.eval(z);
    let pi = otp.odd(n)?.eval(z);
    let rhs = (z * (ONE - I * beta) - ab * (ONE + I * beta)) * sigma * (0.5 * k2inv / a)
        + I * (0.5 * k2inv / b) * (z + ab) * pi;
    Ok((lhs - rhs).norm())
}

/// Partial CD sums and kernel numerators at `(zeta, z, n)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CdValues {
    pub n: usize,
    /// `sum_{j=1}^n conj(phi_{2j-1}(zeta)) phi_{2j-1}(z)`.
    pub s_odd: Complex64,
    /// `sum_{j=0}^n conj(phi_{2j}(zeta)) phi_{2j}(z)`.
    pub s_even: Complex64,
    /// The even sum through `n - 1` (zero when `n = 0`).
    pub s_even_prev: Complex64,
    /// `conj(phi*_{2n+1}(zeta)) phi*_{2n+1}(z) - conj(phi_{2n+1}(zeta)) phi_{2n+1}(z)`.
    pub d_odd: Complex64,
    /// The same difference at index `2n`.
    pub d_even: Complex64,
    /// `d_odd` with `phi_{2n+1}` taken directly from the OPUC system.
    pub d_odd_opuc: Complex64,
    /// `d_even` with `phi_{2n}` taken directly from the OPUC system.
    pub d_even_opuc: Complex64,
    /// Closed form for the odd difference as displayed in the literature.
    pub stated_d_odd: Complex64,
    /// Closed form for the even difference as displayed in the literature.
    pub stated_d_even: Complex64,
    /// `|s_odd + s_even - d_odd / (1 - conj(zeta) z)|`.
    pub residual_odd: f64,
    /// `|s_odd + s_even_prev - d_even / (1 - conj(zeta) z)|`.
    pub residual_even: f64,
}

impl CdValues {
    /// `stated_d_even / d_even`; undefined (NaN) when `d_even = 0`.
    pub fn stated_even_ratio(&self) -> Complex64 {
        self.stated_d_even / self.d_even
    }

    /// `stated_d_odd / d_odd`.
    pub fn stated_odd_ratio(&self) -> Complex64 {
        self.stated_d_odd / self.d_odd
    }
}

struct LevelValues {
    sigma_z: Complex64,
    sigma_w: Complex64,
    pi_z: Complex64,
    pi_w: Complex64,
    a: f64,
    b: f64,
    beta: f64,
}

impl LevelValues {
    fn new(sys: &OtpSystem, k: usize, zeta: Complex64, z: Complex64) -> Result<Self> {
        let (a, b, beta) = sys.level_scalars(k)?;
        let (s, p) = (sys.even(k)?, sys.odd(k)?);
        Ok(Self { sigma_z: s.eval(z), sigma_w: s.eval(zeta).conj(), pi_z: p.eval(z), pi_w: p.eval(zeta).conj(), a, b, beta })
    }

    /// `conj(sigma(zeta)) pi(z) - conj(pi(zeta)) sigma(z)`.
    fn cross(&self) -> Complex64 {
        self.sigma_w * self.pi_z - self.pi_w * self.sigma_z
    }
}

/// Evaluates both CD identities at `(zeta, z)` for OTP level `n`.
///
/// Needs OTP levels through `n + 1` and OPUC indices through `2n + 1`.
pub fn cd_values(otp: &OtpSystem, opuc: &OpucSystem, n: usize, zeta: Complex64, z: Complex64) -> Result<CdValues> {
    first_system(otp)?;
    let q = zeta.conj() * z;
    let denom = ONE - q;
    if denom.norm() < tolerances::KERNEL_SINGULARITY {
        return Err(Error::SingularKernel(denom.norm()));
    }
    if n + 1 > otp.n_max() {
        return Err(Error::IndexOutOfRange { index: n + 1, available: otp.n_max() });
    }
    opuc.kappa(2 * n + 1)?;

    let mut s_odd = Complex64::new(0.0, 0.0);
    let mut s_even = ONE;
    let mut s_even_prev = Complex64::new(0.0, 0.0);
    for j in 1..=n {
        let v = LevelValues::new(otp, j, zeta, z)?;
        let (a, b, beta) = (v.a, v.b, v.beta);
        let k_odd = opuc.kappa(2 * j - 1)?.powi(2);
        let odd_term = re(a * a) * v.sigma_w * v.sigma_z
            + re(b * b * (1.0 + beta * beta)) * v.pi_w * v.pi_z
            + re(a * b) * ((re(beta) + I) * v.sigma_w * v.pi_z + (re(beta) - I) * v.pi_w * v.sigma_z);
        s_odd += q.powi(j as i32 - 1) * k_odd * odd_term;
        let k_even = opuc.kappa(2 * j)?.powi(-2);
        let even_term = re((1.0 + beta * beta) / (a * a)) * v.sigma_w * v.sigma_z
            + re(1.0 / (b * b)) * v.pi_w * v.pi_z
            - re(1.0 / (a * b)) * ((re(beta) - I) * v.sigma_w * v.pi_z + (re(beta) + I) * v.pi_w * v.sigma_z);
        s_even_prev = s_even;
        s_even += q.powi(j as i32) * (0.25 * k_even) * even_term;
    }

    // Index 2n + 1 through level n + 1.
    let up = LevelValues::new(otp, n + 1, zeta, z)?;
    let k_up = opuc.kappa(2 * n + 1)?;
    let comb = |s: Complex64, p: Complex64, c: Complex64| re(up.a) * s + c * up.b * p;
    let zn = z.powi(n as i32);
    let wn = zeta.powi(n as i32).conj();
    let phi_z = zn * k_up * comb(up.sigma_z, up.pi_z, re(up.beta) + I);
    let phi_w = wn * k_up * comb(up.sigma_w, up.pi_w, re(up.beta) - I);
    let star_z = zn * z * k_up * comb(up.sigma_z, up.pi_z, re(up.beta) - I);
    let star_w = wn * zeta.conj() * k_up * comb(up.sigma_w, up.pi_w, re(up.beta) + I);
    let d_odd = star_w * star_z - phi_w * phi_z;
    let m = 2 * n + 1;
    let d_odd_opuc = opuc.phi_star(m, zeta)?.conj() * opuc.phi_star(m, z)? - opuc.phi(m, zeta)?.conj() * opuc.phi(m, z)?;
    let stated_d_odd = -I * (2.0 * k_up * k_up * up.a * up.b) * wn * zn * up.cross();

    // Index 2n through level n (index 0 from the OPUC side).
    let (d_even, stated_d_even) = if n == 0 {
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    } else {
        let v = LevelValues::new(otp, n, zeta, z)?;
        let k = opuc.kappa(2 * n)?;
        let half = 0.5 / k;
        let phi_z = zn * half * (re((1.0) / v.a) * (ONE - I * v.beta) * v.sigma_z + I * (1.0 / v.b) * v.pi_z);
        let phi_w = wn * half * (re(1.0 / v.a) * (ONE + I * v.beta) * v.sigma_w - I * (1.0 / v.b) * v.pi_w);
        let star_z = zn * half * (re(1.0 / v.a) * (ONE + I * v.beta) * v.sigma_z - I * (1.0 / v.b) * v.pi_z);
        let star_w = wn * half * (re(1.0 / v.a) * (ONE - I * v.beta) * v.sigma_w + I * (1.0 / v.b) * v.pi_w);
        let d = star_w * star_z - phi_w * phi_z;
        let stated = -I * (1.0 / (k * k * v.a * v.b)) * wn * zn * v.cross();
        (d, stated)
    };
    let m = 2 * n;
    let d_even_opuc = opuc.phi_star(m, zeta)?.conj() * opuc.phi_star(m, z)? - opuc.phi(m, zeta)?.conj() * opuc.phi(m, z)?;

    Ok(CdValues {
        n,
        s_odd,
        s_even,
        s_even_prev,
        d_odd,
        d_even,
        d_odd_opuc,
        d_even_opuc,
        stated_d_odd,
        stated_d_even,
        residual_odd: (s_odd + s_even - d_odd / denom).norm(),
        residual_even: (s_odd + s_even_prev - d_even / denom).norm(),
    })
}
