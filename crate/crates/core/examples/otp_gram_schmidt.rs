//! Both OTP systems for an asymmetric weight, with the level scalars.
//!
//! `cargo run --example otp_gram_schmidt`

use otp_opuc::otp::{gram_schmidt, gram_schmidt_cholesky, structure_residual, SystemTag};
use otp_opuc::weights::{trig_moments, WeightKind, WeightSpec};

fn main() -> otp_opuc::Result<()> {
    let w = WeightSpec::new(WeightKind::CosinePoly { constant: 1.0, cos: vec![0.5], sin: vec![0.25] })?;
    let m = trig_moments(&w, 12, 1e-15)?;
    for tag in [SystemTag::First, SystemTag::Second] {
        let gs = gram_schmidt(&m, tag, 5)?;
        let ch = gram_schmidt_cholesky(&m, tag, 5)?;
        println!("{tag:?} system, Gram residual {:.2e}", gs.gram_residual(&m)?);
        println!("{:>3} {:>20} {:>20} {:>20} {:>10}", "k", "a", "b", "beta", "vs chol");
        for k in 1..=5 {
            let (a, b, beta) = gs.level_scalars(k)?;
            let (a2, b2, beta2) = ch.level_scalars(k)?;
            let d = (a - a2).abs().max((b - b2).abs()).max((beta - beta2).abs());
            println!("{k:>3} {a:>20.16} {b:>20.16} {beta:>+20.16} {d:>10.1e}");
        }
    }
    let first = gram_schmidt(&m, SystemTag::First, 5)?;
    println!("sigma_2 coefficients:");
    for (k, c) in first.even(2)?.terms() {
        println!("  z^{k:+}: {:+.16} {:+.16}i", c.re, c.im);
    }
    println!("structure residual at k = 3: {:.2e}", structure_residual(&first, 3)?);
    Ok(())
}
