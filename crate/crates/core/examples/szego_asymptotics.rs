//! Szegő function of exp(cos) and the decay of the OTP asymptotic residuals.
//!
//! `cargo run --example szego_asymptotics`

use num_complex::Complex64;
use otp_opuc::otp::{gram_schmidt, SystemTag};
use otp_opuc::szego::{asymptotic_residuals, AsymptoticRegion, SzegoFunction};
use otp_opuc::weights::{trig_moments, WeightKind, WeightSpec};

fn main() -> otp_opuc::Result<()> {
    let w = WeightSpec::new(WeightKind::ExpTrig { p: 1.0, q: 0.0 })?;
    let sf = SzegoFunction::new(&w)?;
    println!("|D+ D- - w| on 256 points: {:.2e}", sf.factorization_residual(&w, 256));
    println!("D(0) = {:.16}", sf.interior(Complex64::new(0.0, 0.0)).re);

    let otp = gram_schmidt(&trig_moments(&w, 28, 1e-15)?, SystemTag::First, 12)?;
    for (region, r) in [(AsymptoticRegion::Exterior, 2.0), (AsymptoticRegion::Interior, 0.3), (AsymptoticRegion::Boundary, 1.0)] {
        let points: Vec<Complex64> = (0..8).map(|j| Complex64::from_polar(r, 0.17 + 0.785 * j as f64)).collect();
        let rep = asymptotic_residuals(&otp, &sf, region, &points, 3..=12)?;
        println!("{region:?} |z| = {r}");
        for (n, res) in rep.rows() {
            println!("  n = {n:>2}: {res:.2e}");
        }
        println!("  fitted rate {:?}, monotone above noise floor: {}", rep.fitted_rate, rep.monotone);
    }
    Ok(())
}
