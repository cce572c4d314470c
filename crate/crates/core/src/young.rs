//! Scalar Young integrals: the `S = Id` specialization of the sewing
//! construction, including integrands singular at the left endpoint.
//!
//! This is deliberately a thin wrapper over `sewing` with the identity model
//! so there is a single summation code path.

use crate::error::{Error, Result};
use crate::paths::HolderPath;
use crate::scale::{IdentityModel, SemigroupScale};
use crate::sewing::{convolution_integral, singular_convolution_integral, SewingConfig};
use crate::simplex::SimplexFn1;
use std::sync::Arc;

/// Exponents and convergence control for a scalar Young integral.
#[derive(Debug, Clone)]
pub struct YoungSpec {
    /// Hoelder exponent of the integrand increments.
    pub rho: f64,
    /// Driver Hoelder exponent.
    pub eta: f64,
    /// Left-endpoint blow-up order of the integrand (0 when regular).
    pub gamma: f64,
    /// Integrand singular at the interval's left endpoint: use trimmed sums.
    pub singular: bool,
    pub max_level: u32,
    pub rel_tol: f64,
}

impl Default for YoungSpec {
    fn default() -> Self {
        YoungSpec { rho: 0.5, eta: 0.75, gamma: 0.0, singular: false, max_level: 14, rel_tol: 1e-9 }
    }
}

impl YoungSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho + self.eta > 1.0) {
            return Err(Error::Regime(format!(
                "rho + eta > 1 violated (outside the Young regime): rho = {}, eta = {}",
                self.rho, self.eta
            )));
        }
        if self.singular && !(self.gamma > 0.0 && self.gamma < self.eta) {
            return Err(Error::Regime(format!(
                "gamma in (0, eta) violated: gamma = {}, eta = {}",
                self.gamma, self.eta
            )));
        }
        Ok(())
    }

    fn to_sewing(&self) -> SewingConfig {
        SewingConfig {
            max_level: self.max_level,
            rel_tol: self.rel_tol,
            lambda_mon: 0.0,
            eta: self.eta,
            rho: self.rho,
            alpha: 0.0,
            beta: 0.0,
            epsilon: 0.0,
            gamma: self.gamma,
            singular: self.singular,
        }
    }
}

/// Scalar result with the same level diagnostics as the general machinery.
#[derive(Debug, Clone)]
pub struct YoungResult {
    pub value: f64,
    pub level_deltas: Vec<f64>,
    pub fitted_decay_rate: Option<f64>,
    pub converged: bool,
    pub levels_used: u32,
}

/// `int_s^t y(r) dx(r)` as the limit of left Riemann sums on dyadic
/// partitions; the first term is trimmed when `spec.singular` and `y` blows
/// up at `s`.
pub fn young_integral(
    y: impl Fn(f64) -> f64 + Send + Sync + 'static,
    x: &HolderPath,
    s: f64,
    t: f64,
    spec: &YoungSpec,
) -> Result<YoungResult> {
    spec.validate()?;
    let model = Arc::new(IdentityModel::new(1));
    let m2 = model.clone();
    let phi = SimplexFn1::new(s.min(0.0), t.max(1.0), move |r| {
        let v = y(r);
        if !v.is_finite() {
            return Err(Error::Numerical(format!("integrand not finite at r = {r}")));
        }
        m2.element(vec![v])
    });
    let cfg = spec.to_sewing();
    let r = if spec.singular {
        singular_convolution_integral(model.as_ref(), &phi, x, s, t, &cfg)?
    } else {
        convolution_integral(model.as_ref(), &phi, x, s, t, &cfg)?
    };
    Ok(YoungResult {
        value: r.value.coefficients[0],
        level_deltas: r.level_deltas,
        fitted_decay_rate: r.fitted_decay_rate,
        converged: r.converged,
        levels_used: r.levels_used,
    })
}

/// Empirically verify that `f(t) = t^{-alpha}`-type integrands lie in the
/// singular Hoelder class: `sup s^{2 alpha} |f(t)-f(s)| / (t-s)^alpha` over a
/// dyadic grid (excluding `s = 0` and the diagonal). The analytic bound for
/// `t^{-alpha}` is exactly 1.
pub fn singular_order_check(f: impl Fn(f64) -> f64, alpha: f64, level: u32) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must be in (0,1), got {alpha}")));
    }
    let n = 1usize << level;
    let mut sup = 0.0_f64;
    for i in 1..n {
        let s = i as f64 / n as f64;
        let fs = f(s);
        for j in (i + 1)..=n {
            let t = j as f64 / n as f64;
            let r = s.powf(2.0 * alpha) * (f(t) - fs).abs() / (t - s).powf(alpha);
            if r > sup {
                sup = r;
            }
        }
    }
    Ok(sup)
}
