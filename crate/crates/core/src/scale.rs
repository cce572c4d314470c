//! Concrete semigroup-scale models: a family of spaces `X_lambda` on which an
//! analytic semigroup `S(t)` acts with the smoothing estimate
//! `||S(t)||_{zeta->lambda} <= L t^{zeta-lambda}` and the Hoelder estimate
//! `||S(t)-I||_{mu->nu} <= C t^{mu-nu}`.
//!
//! All shipped models are diagonal: `S(t)` multiplies mode `k` by
//! `exp(-rate_k * t)` and the `X_lambda` norm is the weighted Euclidean norm
//! `sqrt(sum_k w_k(lambda) c_k^2)`. That keeps every operation exactly
//! computable, which the convergence tests rely on.

use crate::diagnostics::pairwise_sum;
use crate::error::{Error, Result};

/// Supported smoothness-index range. The theory is stated for a larger range
/// but nothing here exercises indices above 2.
pub const LAMBDA_RANGE: (f64, f64) = (0.0, 2.0);

/// A coefficient vector representing an element of `X` in a model's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleElement {
    pub coefficients: Vec<f64>,
    pub model_tag: String,
}

impl ScaleElement {
    pub fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    pub fn add(&self, other: &ScaleElement) -> ScaleElement {
        assert_eq!(self.model_tag, other.model_tag, "mixed scale models");
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a + b)
            .collect();
        ScaleElement { coefficients, model_tag: self.model_tag.clone() }
    }

    pub fn sub(&self, other: &ScaleElement) -> ScaleElement {
        assert_eq!(self.model_tag, other.model_tag, "mixed scale models");
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a - b)
            .collect();
        ScaleElement { coefficients, model_tag: self.model_tag.clone() }
    }

    pub fn scaled(&self, c: f64) -> ScaleElement {
        ScaleElement {
            coefficients: self.coefficients.iter().map(|a| c * a).collect(),
            model_tag: self.model_tag.clone(),
        }
    }
}

/// Abstract diagonal semigroup-scale model.
///
/// Implementors supply the mode decay rates and the norm weights; everything
/// else (applying `S(t)`, norms, the scale constants) is derived.
pub trait SemigroupScale: Send + Sync {
    /// Identifier stamped onto owned elements; guards against model mixing.
    fn tag(&self) -> &str;

    /// Per-mode decay rates: `S(t)` multiplies mode `k` by `exp(-rate_k t)`.
    fn rates(&self) -> &[f64];

    /// Squared-coefficient weight of mode `k` in the `X_lambda` norm.
    fn norm_weight(&self, lambda: f64, k: usize) -> f64;

    fn dimension(&self) -> usize {
        self.rates().len()
    }

    /// Wrap raw coefficients as an element of this model, validating shape.
    fn element(&self, coefficients: Vec<f64>) -> Result<ScaleElement> {
        if coefficients.len() != self.dimension() {
            return Err(Error::Usage(format!(
                "element has {} coefficients but model '{}' has dimension {}",
                coefficients.len(),
                self.tag(),
                self.dimension()
            )));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("element coefficients must be finite".into()));
        }
        Ok(ScaleElement { coefficients, model_tag: self.tag().to_string() })
    }

    fn zero(&self) -> ScaleElement {
        ScaleElement {
            coefficients: vec![0.0; self.dimension()],
            model_tag: self.tag().to_string(),
        }
    }

    /// The `k`-th basis mode (0-based index).
    fn basis(&self, k: usize) -> ScaleElement {
        let mut coefficients = vec![0.0; self.dimension()];
        coefficients[k] = 1.0;
        ScaleElement { coefficients, model_tag: self.tag().to_string() }
    }

    fn check_owned(&self, u: &ScaleElement) -> Result<()> {
        if u.model_tag != self.tag() {
            return Err(Error::Usage(format!(
                "element belongs to model '{}', not '{}'",
                u.model_tag,
                self.tag()
            )));
        }
        if u.coefficients.len() != self.dimension() {
            return Err(Error::Usage(format!(
                "element dimension {} does not match model dimension {}",
                u.coefficients.len(),
                self.dimension()
            )));
        }
        Ok(())
    }

    /// Apply `S(t)`: exact diagonal exponential scaling.
    fn apply(&self, t: f64, u: &ScaleElement) -> Result<ScaleElement> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("semigroup time must be >= 0, got {t}")));
        }
        self.check_owned(u)?;
        let coefficients = self
            .rates()
            .iter()
            .zip(&u.coefficients)
            .map(|(&r, &c)| (-r * t).exp() * c)
            .collect();
        Ok(ScaleElement { coefficients, model_tag: u.model_tag.clone() })
    }

    /// `||u||_{X_lambda}` in the model's weighted Euclidean norm.
    fn norm(&self, lambda: f64, u: &ScaleElement) -> Result<f64> {
        if !(LAMBDA_RANGE.0..=LAMBDA_RANGE.1).contains(&lambda) {
            return Err(Error::Domain(format!(
                "norm index {lambda} outside supported range [{}, {}]",
                LAMBDA_RANGE.0, LAMBDA_RANGE.1
            )));
        }
        self.check_owned(u)?;
        let terms: Vec<f64> = u
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, &c)| self.norm_weight(lambda, k) * c * c)
            .collect();
        Ok(pairwise_sum(&terms).sqrt())
    }

    /// Embedding constant `K(lambda, beta)` with `beta <= lambda`:
    /// `||u||_beta <= K ||u||_lambda`. Exact for diagonal models.
    fn embedding_constant(&self, lambda: f64, beta: f64) -> Result<f64> {
        if beta > lambda {
            return Err(Error::Domain(format!(
                "embedding constant requires beta <= lambda, got beta={beta}, lambda={lambda}"
            )));
        }
        let k = (0..self.dimension())
            .map(|k| (self.norm_weight(beta, k) / self.norm_weight(lambda, k)).sqrt())
            .fold(0.0_f64, f64::max);
        Ok(k)
    }

    /// Smoothing constant `L(zeta, lambda) = sup_{t in (0,1]} t^{lambda-zeta}
    /// ||S(t)||_{zeta->lambda}`, from the per-mode closed form of
    /// `sup_x x^p e^{-x}`.
    fn smoothing_constant(&self, zeta: f64, lambda: f64) -> Result<f64> {
        if zeta > lambda {
            return Err(Error::Domain(format!(
                "smoothing constant requires zeta <= lambda, got zeta={zeta}, lambda={lambda}"
            )));
        }
        let p = lambda - zeta;
        if p == 0.0 {
            return Ok(1.0);
        }
        // Per mode, t^p * w(lambda,k)^{1/2}/w(zeta,k)^{1/2} * e^{-r t}. For the
        // shipped models the weight ratio is rate^p, so the sup over t <= 1 is
        // x^p e^{-x} over x in (0, rate], maximized at x = min(p, rate).
        let mut best = 0.0_f64;
        for (k, &r) in self.rates().iter().enumerate() {
            let ratio = (self.norm_weight(lambda, k) / self.norm_weight(zeta, k)).sqrt();
            if r == 0.0 {
                // No decay in this mode: sup_t t^p * ratio at t = 1.
                best = best.max(ratio);
                continue;
            }
            let x = p.min(r);
            best = best.max(ratio / r.powf(p) * x.powf(p) * (-x).exp());
        }
        Ok(best)
    }

    /// Hoelder constant `C(mu, nu) = sup_{t in (0,1]} t^{nu-mu}
    /// ||S(t)-I||_{mu->nu}` with `nu <= mu <= nu + 1`, by grid search in
    /// `x = rate * t` (no closed form for `(1-e^{-x}) x^{nu-mu}`).
    fn holder_constant(&self, mu: f64, nu: f64) -> Result<f64> {
        if nu > mu || mu - nu > 1.0 {
            return Err(Error::Domain(format!(
                "holder constant requires nu <= mu <= nu + 1, got mu={mu}, nu={nu}"
            )));
        }
        let q = mu - nu;
        let mut best = 0.0_f64;
        for (k, &r) in self.rates().iter().enumerate() {
            let ratio = (self.norm_weight(nu, k) / self.norm_weight(mu, k)).sqrt();
            if r == 0.0 {
                // S(t) = I on this mode.
                continue;
            }
            // sup over x in (0, r] of (1 - e^{-x}) x^{-q} * ratio * r^q.
            let mode_sup = sup_one_minus_exp_over_power(q, r);
            best = best.max(ratio * r.powf(q) * mode_sup);
        }
        Ok(best)
    }

    /// Empirical check of the smoothing and Hoelder estimates on a `t`-grid.
    fn verify_scale_estimates(&self, zeta: f64, lambda: f64, t_grid: &[f64]) -> Result<ScaleEstimateReport> {
        if zeta > lambda {
            return Err(Error::Domain(format!(
                "verify_scale_estimates requires zeta <= lambda, got zeta={zeta}, lambda={lambda}"
            )));
        }
        if t_grid.iter().any(|&t| !(t > 0.0) || t > 1.0) {
            return Err(Error::Domain("t grid must lie in (0, 1]".into()));
        }
        let mut smoothing = 0.0_f64;
        let mut holder = 0.0_f64;
        for &t in t_grid {
            // Diagonal operator norms between weighted Euclidean spaces.
            let mut op_s = 0.0_f64;
            let mut op_a = 0.0_f64;
            for (k, &r) in self.rates().iter().enumerate() {
                let ratio = (self.norm_weight(lambda, k) / self.norm_weight(zeta, k)).sqrt();
                let ratio_rev = (self.norm_weight(zeta, k) / self.norm_weight(lambda, k)).sqrt();
                op_s = op_s.max(ratio * (-r * t).exp());
                op_a = op_a.max(ratio_rev * (1.0 - (-r * t).exp()));
            }
            smoothing = smoothing.max(t.powf(lambda - zeta) * op_s);
            // Hoelder estimate measured from X_lambda down to X_zeta.
            holder = holder.max(t.powf(zeta - lambda) * op_a);
        }
        Ok(ScaleEstimateReport { empirical_smoothing: smoothing, empirical_holder: holder })
    }
}

/// `sup_{x in (0, x_max]} (1 - e^{-x}) / x^q` for `q in [0, 1]`, by golden-
/// section-free dense grid search (monotone pieces, desk scale).
fn sup_one_minus_exp_over_power(q: f64, x_max: f64) -> f64 {
    if q == 0.0 {
        return 1.0 - (-x_max).exp();
    }
    let n = 20_000;
    let lo = 1e-8_f64.ln();
    let hi = x_max.ln();
    let mut best = 0.0_f64;
    for i in 0..=n {
        let x = (lo + (hi - lo) * i as f64 / n as f64).exp();
        best = best.max((1.0 - (-x).exp()) / x.powf(q));
    }
    best
}

/// Empirical suprema from `verify_scale_estimates`.
#[derive(Debug, Clone)]
pub struct ScaleEstimateReport {
    pub empirical_smoothing: f64,
    pub empirical_holder: f64,
}

/// Dirichlet-Laplacian spectral model on the unit interval: sine modes with
/// eigenvalues `(k pi)^2` and the homogeneous fractional-power norm
/// `||u||_lambda = sqrt(sum_k ((k pi)^2)^{2 lambda} c_k^2)`.
pub struct SpectralDirichletModel {
    rates: Vec<f64>,
}

impl SpectralDirichletModel {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "spectral model needs at least one mode");
        let rates = (1..=n).map(|k| (k as f64 * std::f64::consts::PI).powi(2)).collect();
        SpectralDirichletModel { rates }
    }

    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.rates[k]
    }
}

impl SemigroupScale for SpectralDirichletModel {
    fn tag(&self) -> &str {
        "spectral-dirichlet"
    }

    fn rates(&self) -> &[f64] {
        &self.rates
    }

    fn norm_weight(&self, lambda: f64, k: usize) -> f64 {
        self.rates[k].powf(2.0 * lambda)
    }
}

/// Diagonal matrix model: generator `diag(lambda_1..lambda_N)` with all
/// eigenvalues strictly negative; norm weights `|lambda_k|^{2 lambda}`.
pub struct DiagonalMatrixModel {
    rates: Vec<f64>,
}

impl DiagonalMatrixModel {
    /// `eigenvalues` are the generator's (negative) diagonal entries.
    pub fn new(eigenvalues: &[f64]) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::Domain("diagonal model needs at least one eigenvalue".into()));
        }
        if eigenvalues.iter().any(|&l| !(l < 0.0)) {
            return Err(Error::Domain(
                "diagonal model eigenvalues must be strictly negative".into(),
            ));
        }
        Ok(DiagonalMatrixModel { rates: eigenvalues.iter().map(|&l| -l).collect() })
    }
}

impl SemigroupScale for DiagonalMatrixModel {
    fn tag(&self) -> &str {
        "diagonal"
    }

    fn rates(&self) -> &[f64] {
        &self.rates
    }

    fn norm_weight(&self, lambda: f64, k: usize) -> f64 {
        self.rates[k].powf(2.0 * lambda)
    }
}

/// Trivial model `S(t) = Id` with all `X_lambda` equal; the Hoelder constant
/// vanishes, which is what makes the plain Young specialization exact.
pub struct IdentityModel {
    rates: Vec<f64>,
}

impl IdentityModel {
    pub fn new(dimension: usize) -> Self {
        assert!(dimension >= 1, "identity model needs dimension >= 1");
        IdentityModel { rates: vec![0.0; dimension] }
    }
}

impl SemigroupScale for IdentityModel {
    fn tag(&self) -> &str {
        "identity"
    }

    fn rates(&self) -> &[f64] {
        &self.rates
    }

    fn norm_weight(&self, _lambda: f64, _k: usize) -> f64 {
        1.0
    }
}
