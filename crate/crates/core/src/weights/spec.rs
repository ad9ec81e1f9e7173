use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances;

/// Parametrized weight family, before normalization.
///
/// Serialized as `{"kind": "...", params}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightKind {
    /// `w = 1`.
    Lebesgue,
    /// `constant + sum_k cos[k-1] cos(k theta) + sin[k-1] sin(k theta)`.
    CosinePoly {
        constant: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
    },
    /// `exp(p cos theta + q sin theta)`.
    ExpTrig { p: f64, q: f64 },
    /// `(1 - |a|^2) / |1 - a e^{i theta}|^2`, whose Verblunsky sequence is `(a, 0, 0, ...)`.
    BernsteinSzego { alpha0: Complex64 },
}

impl WeightKind {
    fn raw(&self, theta: f64) -> f64 {
        match self {
            WeightKind::Lebesgue => 1.0,
            WeightKind::CosinePoly { constant, cos, sin } => {
                let mut s = *constant;
                for (k, a) in cos.iter().enumerate() {
                    s += a * ((k + 1) as f64 * theta).cos();
                }
                for (k, b) in sin.iter().enumerate() {
                    s += b * ((k + 1) as f64 * theta).sin();
                }
                s
            }
            WeightKind::ExpTrig { p, q } => (p * theta.cos() + q * theta.sin()).exp(),
            WeightKind::BernsteinSzego { alpha0 } => {
                let d = Complex64::new(1.0, 0.0) - alpha0 * Complex64::from_polar(1.0, theta);
                (1.0 - alpha0.norm_sqr()) / d.norm_sqr()
            }
        }
    }

    fn check_params(&self) -> Result<()> {
        let finite = match self {
            WeightKind::Lebesgue => true,
            WeightKind::CosinePoly { constant, cos, sin } => {
                constant.is_finite() && cos.iter().chain(sin).all(|v| v.is_finite())
            }
            WeightKind::ExpTrig { p, q } => p.is_finite() && q.is_finite(),
            WeightKind::BernsteinSzego { alpha0 } => {
                if !(alpha0.norm() < 1.0) {
                    return Err(Error::InvalidWeight(format!(
                        "bernstein_szego parameter must satisfy |alpha0| < 1, got {alpha0}"
                    )));
                }
                true
            }
        };
        if finite {
            Ok(())
        } else {
            Err(Error::InvalidWeight("non-finite parameter".into()))
        }
    }

    /// Mean of the raw weight over the circle, exact where a closed form exists.
    fn mean(&self) -> Result<f64> {
        match self {
            WeightKind::Lebesgue | WeightKind::BernsteinSzego { .. } => Ok(1.0),
            WeightKind::CosinePoly { constant, .. } => Ok(*constant),
            WeightKind::ExpTrig { .. } => self.trapezoid_mean(),
        }
    }

    fn trapezoid_mean(&self) -> Result<f64> {
        let mut m = 64usize;
        let mut prev = mean_on_grid(|t| self.raw(t), m);
        while m < tolerances::QUAD_NODE_CAP {
            m *= 2;
            let next = mean_on_grid(|t| self.raw(t), m);
            let diff = (next - prev).abs();
            if diff <= 1e-15 * next.abs() {
                return Ok(next);
            }
            prev = next;
        }
        Err(Error::QuadratureFailure { cap: tolerances::QUAD_NODE_CAP, diff: f64::NAN })
    }
}

fn mean_on_grid(f: impl Fn(f64) -> f64, m: usize) -> f64 {
    let h = 2.0 * PI / m as f64;
    (0..m).map(|j| f(j as f64 * h)).sum::<f64>() / m as f64
}

/// A validated weight together with the constant that makes it a probability density.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightSpec {
    #[serde(flatten)]
    kind: WeightKind,
    normalization_constant: f64,
}

impl WeightSpec {
    /// Validates the parameters, screens positivity on the fixed grid and
    /// computes the normalization constant.
    pub fn new(kind: WeightKind) -> Result<Self> {
        kind.check_params()?;
        let n = tolerances::POSITIVITY_GRID;
        let (mut min, mut arg) = (f64::INFINITY, 0.0);
        for j in 0..n {
            let theta = 2.0 * PI * j as f64 / n as f64;
            let v = kind.raw(theta);
            if !(v >= min) {
                min = v;
                arg = theta;
            }
        }
        let floor = match kind {
            WeightKind::CosinePoly { .. } => tolerances::POSITIVITY_FLOOR,
            _ => 0.0,
        };
        if !(min > floor) || !min.is_finite() {
            return Err(Error::NotPositive { min, theta: arg });
        }
        let mean = kind.mean()?;
        if !(mean > 0.0 && mean.is_finite()) {
            return Err(Error::InvalidWeight(format!("weight mean {mean} is not positive")));
        }
        Ok(Self { kind, normalization_constant: 1.0 / mean })
    }

    pub fn lebesgue() -> Self {
        Self::new(WeightKind::Lebesgue).expect("lebesgue weight is valid")
    }

    /// Parses `{"kind": ..., params}` and validates.
    pub fn from_json(text: &str) -> Result<Self> {
        let kind: WeightKind = serde_json::from_str(text)?;
        Self::new(kind)
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    pub fn normalization_constant(&self) -> f64 {
        self.normalization_constant
    }

    /// Normalized weight `w(theta)`.
    pub fn eval(&self, theta: f64) -> f64 {
        self.kind.raw(theta) * self.normalization_constant
    }

    /// Normalized `log w(theta)`.
    pub fn log_eval(&self, theta: f64) -> f64 {
        match &self.kind {
            WeightKind::ExpTrig { p, q } => {
                p * theta.cos() + q * theta.sin() + self.normalization_constant.ln()
            }
            _ => self.eval(theta).ln(),
        }
    }

    /// True when `w(theta) = w(-theta)`.
    pub fn is_even(&self) -> bool {
        match &self.kind {
            WeightKind::Lebesgue => true,
            WeightKind::CosinePoly { sin, .. } => sin.iter().all(|&b| b == 0.0),
            WeightKind::ExpTrig { q, .. } => *q == 0.0,
            WeightKind::BernsteinSzego { alpha0 } => alpha0.im == 0.0,
        }
    }
}

impl<'de> Deserialize<'de> for WeightSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let kind = WeightKind::deserialize(d)?;
        WeightSpec::new(kind).map_err(serde::de::Error::custom)
    }
}

/// Normalized `w(theta)` for a validated spec.
pub fn eval_weight(spec: &WeightSpec, theta: f64) -> f64 {
    spec.eval(theta)
}
