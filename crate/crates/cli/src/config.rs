//! JSON experiment configuration: one document drives every subcommand,
//! with serde defaults so minimal configs stay short.

use serde::{Deserialize, Serialize};
use std::sync::Arc;
use young_sewing::nonlinear::{SigmaHat, VectorField};
use young_sewing::paths::{make_fbm_path, make_power_path, make_weierstrass_path, HolderPath};
use young_sewing::scale::{
    DiagonalMatrixModel, IdentityModel, ScaleElement, SemigroupScale, SpectralDirichletModel,
};
use young_sewing::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    Spectral { n: usize },
    Diagonal { eigenvalues: Vec<f64> },
    Identity { dimension: usize },
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig::Spectral { n: 64 }
    }
}

impl ModelConfig {
    pub fn build(&self) -> Result<Arc<dyn SemigroupScale>> {
        match self {
            ModelConfig::Spectral { n } => {
                if *n == 0 {
                    return Err(Error::Usage("spectral model needs n >= 1".into()));
                }
                Ok(Arc::new(SpectralDirichletModel::new(*n)))
            }
            ModelConfig::Diagonal { eigenvalues } => {
                Ok(Arc::new(DiagonalMatrixModel::new(eigenvalues)?))
            }
            ModelConfig::Identity { dimension } => {
                if *dimension == 0 {
                    return Err(Error::Usage("identity model needs dimension >= 1".into()));
                }
                Ok(Arc::new(IdentityModel::new(*dimension)))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PathConfig {
    Power { eta: f64 },
    Weierstrass { a: f64, b: u32, terms: u32 },
    Fbm { hurst: f64, seed: u64 },
}

impl Default for PathConfig {
    fn default() -> Self {
        PathConfig::Power { eta: 0.75 }
    }
}

impl PathConfig {
    pub fn build(&self, level: u32, seed_override: Option<u64>) -> Result<HolderPath> {
        match self {
            PathConfig::Power { eta } => make_power_path(*eta, level),
            PathConfig::Weierstrass { a, b, terms } => make_weierstrass_path(*a, *b, level, *terms),
            PathConfig::Fbm { hurst, seed } => {
                make_fbm_path(*hurst, level, seed_override.unwrap_or(*seed))
            }
        }
    }

    /// The classical quadrature oracle needs a C^1 driver with a closed-form
    /// derivative; only the linear ramp qualifies in the catalog.
    pub fn derivative(&self) -> Option<impl Fn(f64) -> f64 + Sync> {
        match self {
            PathConfig::Power { eta } if *eta == 1.0 => Some(|_t: f64| 1.0),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Exponents {
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
    pub gamma: f64,
    pub rho: f64,
    pub epsilon: f64,
    /// Blow-up indices reported by the rates subcommand.
    pub mu: Vec<f64>,
}

impl Default for Exponents {
    fn default() -> Self {
        Exponents {
            alpha: 0.4,
            beta: 0.0,
            theta: 0.25,
            gamma: 0.0,
            rho: 0.5,
            epsilon: 0.0,
            mu: vec![0.0],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Levels {
    /// Solver output grid level: 2^m steps on [0,1].
    pub m: u32,
    /// Finest sewing level.
    pub n_max: u32,
    /// Per-step solver refinement.
    pub refine: u32,
    /// Driver sampling level.
    pub path_level: u32,
}

impl Default for Levels {
    fn default() -> Self {
        Levels { m: 10, n_max: 14, refine: 0, path_level: 14 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldConfig {
    Zero,
    Linear { kappa: f64 },
    Constant { coefficients: Vec<f64>, growth: f64 },
    Nemytskii { sigma: String, amplitude: f64, grid: usize },
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig::Zero
    }
}

impl FieldConfig {
    pub fn build(&self, model: &dyn SemigroupScale) -> Result<VectorField> {
        match self {
            FieldConfig::Zero => Ok(VectorField::zero()),
            FieldConfig::Linear { kappa } => Ok(VectorField::linear(*kappa)),
            FieldConfig::Constant { coefficients, growth } => {
                let value = model.element(coefficients.clone())?;
                Ok(VectorField::constant(value, *growth))
            }
            FieldConfig::Nemytskii { sigma, amplitude, grid } => {
                let sigma = match sigma.as_str() {
                    "identity" => SigmaHat::Identity,
                    "zero" => SigmaHat::Zero,
                    "constant" => SigmaHat::Constant(*amplitude),
                    "scaled_sin" => SigmaHat::ScaledSin(*amplitude),
                    "tanh" => SigmaHat::Tanh,
                    other => {
                        return Err(Error::Usage(format!(
                            "unknown composition function '{other}' (catalog: identity, zero, constant, scaled_sin, tanh)"
                        )))
                    }
                };
                Ok(VectorField::nemytskii(sigma, *grid))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DatumConfig {
    /// psi_k = k^{-exponent}.
    PowerLaw { exponent: f64 },
    Coefficients { values: Vec<f64> },
    Basis { index: usize, scale: f64 },
}

impl Default for DatumConfig {
    fn default() -> Self {
        // Just inside the X_theta summability boundary for the default
        // theta = 0.25: exponent = 2 theta + 0.5 + 0.01.
        DatumConfig::PowerLaw { exponent: 1.01 }
    }
}

impl DatumConfig {
    pub fn build(&self, model: &dyn SemigroupScale) -> Result<ScaleElement> {
        match self {
            DatumConfig::PowerLaw { exponent } => model.element(
                (1..=model.dimension()).map(|k| (k as f64).powf(-exponent)).collect(),
            ),
            DatumConfig::Coefficients { values } => model.element(values.clone()),
            DatumConfig::Basis { index, scale } => {
                if *index >= model.dimension() {
                    return Err(Error::Usage(format!(
                        "basis index {index} outside model dimension {}",
                        model.dimension()
                    )));
                }
                Ok(model.basis(*index).scaled(*scale))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub rel_tol: f64,
    pub identity_tol: f64,
    pub picard_tol: f64,
    pub max_iterations: usize,
    /// Acceptance band for fitted-vs-expected exponents.
    pub rate_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rel_tol: 1e-9,
            identity_tol: 1e-10,
            picard_tol: 1e-10,
            max_iterations: 60,
            rate_tol: 0.15,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegralConfig {
    pub s: f64,
    pub t: f64,
    pub singular: bool,
    /// Compare against classical quadrature (smooth drivers only).
    pub oracle: bool,
    pub oracle_panels: usize,
}

impl Default for IntegralConfig {
    fn default() -> Self {
        IntegralConfig { s: 0.0, t: 1.0, singular: false, oracle: false, oracle_panels: 1 << 14 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveConfig {
    /// "stepper" or "picard".
    pub mode: String,
    pub report_lambdas: Vec<f64>,
    /// Also run the other mode and report the maximum deviation.
    pub cross_check: bool,
    /// Emit the full coefficient table alongside the norm table.
    pub export_coefficients: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: "stepper".into(),
            report_lambdas: vec![0.0],
            cross_check: false,
            export_coefficients: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RatesConfig {
    /// Any of: "integral_holder", "sewing_decay", "blowup".
    pub targets: Vec<String>,
    /// Dyadic window exponents: fit over t = 2^{-k}, k_hi >= k >= k_lo.
    pub window_k: (u32, u32),
}

impl Default for RatesConfig {
    fn default() -> Self {
        RatesConfig {
            targets: vec!["integral_holder".into(), "sewing_decay".into(), "blowup".into()],
            window_k: (5, 12),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    pub path: PathConfig,
    pub exponents: Exponents,
    pub levels: Levels,
    pub field: FieldConfig,
    pub datum: DatumConfig,
    pub tolerances: Tolerances,
    pub integral: IntegralConfig,
    pub solve: SolveConfig,
    pub rates: RatesConfig,
    pub eta: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<String>,
}

impl ExperimentConfig {
    /// Driver Hoelder exponent: explicit override, else the path's nominal one.
    pub fn eta(&self, path: &HolderPath) -> f64 {
        self.eta.unwrap_or_else(|| path.nominal_exponent())
    }
}
