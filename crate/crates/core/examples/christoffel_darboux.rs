//! OTP kernel partial sums against their OPUC closed forms.
//!
//! `cargo run --example christoffel_darboux`

use num_complex::Complex64;
use otp_opuc::bridge::cd_values;
use otp_opuc::opuc::{build_opuc, cd_kernel_forms};
use otp_opuc::otp::{gram_schmidt, SystemTag};
use otp_opuc::weights::{trig_moments, WeightKind, WeightSpec};

fn main() -> otp_opuc::Result<()> {
    let w = WeightSpec::new(WeightKind::ExpTrig { p: 1.0, q: 0.0 })?;
    let m = trig_moments(&w, 16, 1e-15)?;
    let otp = gram_schmidt(&m, SystemTag::First, 7)?;
    let opuc = build_opuc(&m, 16)?;
    let zeta = Complex64::new(0.3, 0.1);
    let z = Complex64::new(0.5, 0.0);
    println!("{:>3} {:>12} {:>12} {:>12} {:>24}", "n", "odd", "even", "opuc forms", "stated even / true");
    for n in 1..=6 {
        let v = cd_values(&otp, &opuc, n, zeta, z)?;
        let k = cd_kernel_forms(&opuc, 2 * n, zeta, z)?;
        let forms = (k.direct - k.closed_next).norm().max((k.direct - k.closed_same).norm());
        let r = v.stated_even_ratio();
        println!("{n:>3} {:>12.2e} {:>12.2e} {forms:>12.2e} {:>12.6} {:+.1e}i", v.residual_odd, v.residual_even, r.re, r.im);
    }
    Ok(())
}
