//! Verblunsky coefficients and norms from the Szegő recurrence.
//!
//! `cargo run --example opuc_recurrence`

use num_complex::Complex64;
use otp_opuc::opuc::build_opuc;
use otp_opuc::weights::{trig_moments, WeightKind, WeightSpec};

fn main() -> otp_opuc::Result<()> {
    // alpha_0 = 1/2 and every later coefficient vanishes.
    let w = WeightSpec::new(WeightKind::BernsteinSzego { alpha0: Complex64::new(0.5, 0.0) })?;
    let sys = build_opuc(&trig_moments(&w, 10, 1e-15)?, 8)?;
    println!("{:>3} {:>24} {:>20}", "n", "alpha_n", "kappa_n");
    for n in 0..8 {
        let a = sys.alpha(n)?;
        println!("{n:>3} {:>11.3e} {:+.3e}i {:>20.16}", a.re, a.im, sys.kappa(n)?);
    }
    println!("Gram residual: {:.2e}", sys.gram_residual(&trig_moments(&w, 10, 1e-15)?)?);
    println!("recurrence consistency: {:.2e}", sys.verblunsky_consistency());
    Ok(())
}
