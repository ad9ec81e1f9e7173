//! Zeros of sigma_n and pi_n and the identities they satisfy.
//!
//! `cargo run --example zeros`

use otp_opuc::opuc::build_opuc;
use otp_opuc::otp::{gram_schmidt, SystemTag};
use otp_opuc::weights::{trig_moments, WeightKind, WeightSpec};
use otp_opuc::zeros::{zero_diagnostics, zero_identities};

fn main() -> otp_opuc::Result<()> {
    let w = WeightSpec::new(WeightKind::ExpTrig { p: 1.0, q: 0.5 })?;
    let m = trig_moments(&w, 16, 1e-15)?;
    let otp = gram_schmidt(&m, SystemTag::First, 6)?;
    let opuc = build_opuc(&m, 14)?;
    let n = 3;
    let d = zero_diagnostics(&otp, n)?;
    for (name, set) in [("sigma", &d.sigma), ("pi", &d.pi)] {
        println!("{name}_{n}: min gap {:.3}", set.min_gap());
        for (j, angle, residual) in set.rows() {
            println!("  {j}: theta = {angle:.12}  |p| = {residual:.1e}");
        }
    }
    println!("separation {:.3}", d.separation);
    let id = zero_identities(&otp, &opuc, n)?;
    println!("ratio identities {:.1e}, determinant {:.1e}", id.first_equalities(), id.determinant);
    Ok(())
}
