//! Moving between OTP and OPUC data at one level.
//!
//! `cargo run --example bridge`

use num_complex::Complex64;
use otp_opuc::bridge::{coefficient_relations, opuc_from_otp, otp_from_opuc, otp_scalars_from_opuc, ConnectionMatrix};
use otp_opuc::opuc::build_opuc;
use otp_opuc::otp::{gram_schmidt, SystemTag};
use otp_opuc::weights::{trig_moments, WeightKind, WeightSpec};

fn main() -> otp_opuc::Result<()> {
    let w = WeightSpec::new(WeightKind::ExpTrig { p: 1.0, q: 0.5 })?;
    let m = trig_moments(&w, 16, 1e-15)?;
    let otp = gram_schmidt(&m, SystemTag::First, 6)?;
    let opuc = build_opuc(&m, 14)?;
    let n = 3;

    let pair = opuc_from_otp(&otp, n)?;
    let direct = opuc.monic(2 * n - 1)?;
    let diff = direct.iter().zip(&pair.phi_odd).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("Phi_{} from (sigma_{n}, pi_{n}) vs Szegő recurrence: {diff:.2e}", 2 * n - 1);

    let (sigma, pi) = otp_from_opuc(&opuc, n)?;
    println!("sigma_{n} from OPUC: {:.2e}", sigma.max_abs_diff(otp.even(n)?));
    println!("pi_{n} from OPUC: {:.2e}", pi.max_abs_diff(&otp.odd(n)?));

    let (a, b, beta) = otp.level_scalars(n)?;
    println!("(a, b, beta) from Gram-Schmidt: ({a:.16}, {b:.16}, {beta:+.16})");
    let (a, b, beta) = otp_scalars_from_opuc(&opuc, n)?;
    println!("(a, b, beta) from alpha, kappa: ({a:.16}, {b:.16}, {beta:+.16})");

    let lam = ConnectionMatrix::from_otp(&otp, n)?;
    let k2 = opuc.kappa(2 * n)?.powi(2);
    println!("det Lambda = {:.6}, -2 kappa^2 i = {:.6}", lam.det(), Complex64::new(0.0, -2.0 * k2));
    let r = coefficient_relations(&otp, &opuc, n)?;
    println!("relation residuals: kappa^2 {:.1e}, Re alpha {:.1e}, Im alpha {:.1e}", r.kappa_sq, r.alpha_re, r.alpha_im);
    Ok(())
}
