//! The 2x2 Riemann-Hilbert solution built two ways.
//!
//! `cargo run --example riemann_hilbert`

use num_complex::Complex64;
use otp_opuc::opuc::build_opuc;
use otp_opuc::otp::{gram_schmidt, SystemTag};
use otp_opuc::szego::{RhpSolution, RhpSystems, YForm};
use otp_opuc::weights::{trig_moments, weight_spectrum, WeightKind, WeightSpec};

fn main() -> otp_opuc::Result<()> {
    let w = WeightSpec::new(WeightKind::CosinePoly { constant: 1.0, cos: vec![0.5], sin: vec![0.25] })?;
    let m = trig_moments(&w, 16, 1e-15)?;
    let otp = gram_schmidt(&m, SystemTag::First, 6)?;
    let opuc = build_opuc(&m, 14)?;
    let spectrum = weight_spectrum(&w)?;
    let sys = RhpSystems { otp: &otp, opuc: &opuc, spectrum: &spectrum, weight: &w };
    for n in 1..=4 {
        let a = RhpSolution::new(YForm::Otp, sys, n)?;
        let b = RhpSolution::new(YForm::Opuc, sys, n)?;
        let mut forms: f64 = 0.0;
        for z in [Complex64::new(0.4, 0.2), Complex64::new(-1.5, 0.7)] {
            forms = forms.max(a.off_circle(z)?.distance(&b.off_circle(z)?));
        }
        let jump = (0..64).map(|j| a.jump_residual(0.1 + j as f64 * 0.098)).collect::<Result<Vec<_>, _>>()?;
        println!(
            "n = {n}: forms {forms:.1e}, jump {:.1e}, origin {:.1e}, principal part {:.1e}",
            jump.into_iter().fold(0.0, f64::max),
            a.origin_defect(),
            a.principal_part_defect()
        );
    }
    Ok(())
}
