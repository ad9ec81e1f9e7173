//! Weights on the unit circle, their trigonometric moments, and the two
//! inner products every other module is built on.

mod laurent;
mod moments;
mod spec;

pub use laurent::LaurentPoly;
pub use moments::{
    inner_complex, inner_real, trig_moments, trig_moments_capped, weight_spectrum, MomentTable,
};
pub use spec::{eval_weight, WeightKind, WeightSpec};
