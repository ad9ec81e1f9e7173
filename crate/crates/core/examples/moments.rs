//! Trigonometric moments of a few weights.
//!
//! `cargo run --example moments`

use otp_opuc::weights::{trig_moments, WeightKind, WeightSpec};

fn main() -> otp_opuc::Result<()> {
    let weights = [
        ("1 + cos/2", WeightKind::CosinePoly { constant: 1.0, cos: vec![0.5], sin: vec![] }),
        ("exp(cos)", WeightKind::ExpTrig { p: 1.0, q: 0.0 }),
        ("exp(cos + sin/2)", WeightKind::ExpTrig { p: 1.0, q: 0.5 }),
    ];
    for (name, kind) in weights {
        let w = WeightSpec::new(kind)?;
        let m = trig_moments(&w, 6, 1e-15)?;
        println!("{name}");
        for k in 0..=5 {
            let c = m.get(k)?;
            println!("  c_{k} = {:+.16} {:+.16}i", c.re, c.im);
        }
        println!("  Toeplitz(6) positive definite: {}", m.toeplitz_positive_definite(6)?);
    }
    Ok(())
}
