use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{WeightKind, WeightSpec};

/// Named test weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// `w = 1`.
    Lebesgue,
    /// `1 + cos(t) / 2`.
    Cosine,
    /// `1 + cos(t) / 2 + sin(t) / 4`.
    CosineSine,
    /// `exp(cos t)`.
    ExpCos,
    /// Bernstein–Szegő weight with `alpha_0 = 1/2`.
    BernsteinSzego,
}

impl Preset {
    pub const ALL: [Preset; 5] =
        [Preset::Lebesgue, Preset::Cosine, Preset::CosineSine, Preset::ExpCos, Preset::BernsteinSzego];

    pub fn kind(self) -> WeightKind {
        match self {
            Preset::Lebesgue => WeightKind::Lebesgue,
            Preset::Cosine => WeightKind::CosinePoly { constant: 1.0, cos: vec![0.5], sin: vec![] },
            Preset::CosineSine => WeightKind::CosinePoly { constant: 1.0, cos: vec![0.5], sin: vec![0.25] },
            Preset::ExpCos => WeightKind::ExpTrig { p: 1.0, q: 0.0 },
            Preset::BernsteinSzego => WeightKind::BernsteinSzego { alpha0: Complex64::new(0.5, 0.0) },
        }
    }

    pub fn spec(self) -> WeightSpec {
        WeightSpec::new(self.kind()).expect("presets are valid weights")
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Lebesgue => "lebesgue",
            Preset::Cosine => "cosine",
            Preset::CosineSine => "cosine-sine",
            Preset::ExpCos => "exp-cos",
            Preset::BernsteinSzego => "bernstein-szego",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

/// Where the weight comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSource {
    Preset { preset: Preset },
    Inline(WeightKind),
    File(PathBuf),
}

impl WeightSource {
    pub fn resolve(&self) -> Result<WeightSpec> {
        match self {
            WeightSource::Preset { preset } => Ok(preset.spec()),
            WeightSource::Inline(kind) => WeightSpec::new(kind.clone()),
            WeightSource::File(path) => {
                let text = fs::read_to_string(path)?;
                WeightSpec::from_json(&text)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            WeightSource::Preset { preset } => preset.name().to_string(),
            WeightSource::Inline(kind) => format!("{kind:?}"),
            WeightSource::File(path) => path.display().to_string(),
        }
    }
}

/// Settings for one run after merging the config file and the flags.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub weight: WeightSource,
    pub n_max: usize,
    pub tol: f64,
    pub quad_node_cap: usize,
    pub sample_seed: u64,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            weight: WeightSource::Preset { preset: Preset::Lebesgue },
            n_max: 8,
            tol: 1e-14,
            quad_node_cap: crate::tolerances::QUAD_NODE_CAP,
            sample_seed: 42,
            output_dir: PathBuf::from("out"),
            format: OutputFormat::Json,
        }
    }
}

/// Optional fields of a JSON config file; anything absent keeps its default.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub weight: Option<WeightSource>,
    pub preset: Option<Preset>,
    pub n_max: Option<usize>,
    pub tol: Option<f64>,
    pub quad_node_cap: Option<usize>,
    pub sample_seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl ConfigFile {
    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }
}

/// Flag values; `None` means the flag was not given.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub weight_file: Option<PathBuf>,
    pub preset: Option<Preset>,
    pub n_max: Option<usize>,
    pub tol: Option<f64>,
    pub quad_node_cap: Option<usize>,
    pub sample_seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

impl RunConfig {
    /// Defaults, then the config file, then the flags.
    pub fn merge(file: Option<ConfigFile>, flags: Overrides) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(f) = file {
            if f.weight.is_some() && f.preset.is_some() {
                return Err(Error::Config("config file sets both weight and preset".into()));
            }
            if let Some(w) = f.weight {
                cfg.weight = w;
            }
            if let Some(p) = f.preset {
                cfg.weight = WeightSource::Preset { preset: p };
            }
            cfg.n_max = f.n_max.unwrap_or(cfg.n_max);
            cfg.tol = f.tol.unwrap_or(cfg.tol);
            cfg.quad_node_cap = f.quad_node_cap.unwrap_or(cfg.quad_node_cap);
            cfg.sample_seed = f.sample_seed.unwrap_or(cfg.sample_seed);
            cfg.output_dir = f.output_dir.unwrap_or(cfg.output_dir);
            cfg.format = f.format.unwrap_or(cfg.format);
        }
        match (flags.weight_file, flags.preset) {
            (Some(_), Some(_)) => return Err(Error::Config("--weight and --preset are exclusive".into())),
            (Some(path), None) => cfg.weight = WeightSource::File(path),
            (None, Some(preset)) => cfg.weight = WeightSource::Preset { preset },
            (None, None) => {}
        }
        cfg.n_max = flags.n_max.unwrap_or(cfg.n_max);
        cfg.tol = flags.tol.unwrap_or(cfg.tol);
        cfg.quad_node_cap = flags.quad_node_cap.unwrap_or(cfg.quad_node_cap);
        cfg.sample_seed = flags.sample_seed.unwrap_or(cfg.sample_seed);
        cfg.output_dir = flags.output_dir.unwrap_or(cfg.output_dir);
        cfg.format = flags.format.unwrap_or(cfg.format);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 {
            return Err(Error::Config("n_max must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return Err(Error::Config(format!("tol must lie in (0, 1e-3], got {}", self.tol)));
        }
        if self.quad_node_cap < 2 {
            return Err(Error::Config("quad_node_cap must be at least 2".into()));
        }
        Ok(())
    }
}

/// `count` points `r e^{i theta}` with `r` uniform in `[r_lo, r_hi]` and
/// `theta` uniform in `[0, 2 pi)`, from a ChaCha stream keyed by `seed`.
pub fn sample_points(seed: u64, count: usize, r_lo: f64, r_hi: f64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.random_range(r_lo..=r_hi);
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, t)
        })
        .collect()
}
