//! Orthogonal trigonometric polynomials (OTP) and orthogonal polynomials on
//! the unit circle (OPUC) for positive weights, together with numerical
//! checks of the identities that connect them.
//!
//! The pipeline is: a [`weights::WeightSpec`] gives trigonometric moments,
//! the moments give the Szegő recurrence ([`opuc`]) and the ordered
//! Gram–Schmidt process ([`otp`]), and [`bridge`] converts between the two.
//! [`szego`] covers the Szegő function, Cauchy transforms, the
//! Riemann–Hilbert matrix and asymptotics; [`zeros`] locates zeros of the
//! OTP and checks the ratio identities at them.

pub mod bridge;
pub mod cli;
pub mod error;
pub mod io;
pub mod opuc;
pub mod otp;
pub mod roots;
pub mod szego;
pub mod tolerances;
pub mod weights;
pub mod zeros;

pub use error::{Error, Result};
pub use opuc::{build_opuc, OpucSystem};
pub use otp::{gram_schmidt, OtpSystem, SystemTag};
pub use weights::{trig_moments, LaurentPoly, MomentTable, WeightKind, WeightSpec};
