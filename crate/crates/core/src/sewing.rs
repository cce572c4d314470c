//! The dyadic sewing map and the (possibly singular) convolution integral.
//!
//! For a two-argument `g` the level-`n` sewing approximation is
//!
//! ```text
//! M_n(s,t) = psi(s,t) - sum_{i=1}^{2^n} S(t - r_i) psi(r_{i-1}, r_i),
//! psi(u,v) = S(v-u) g(u,v),   r_i = s + i (t-s) / 2^n,
//! ```
//!
//! whose level increments decay like `2^{-n(mu-1)}` with `mu = eta + rho > 1`.
//! The convolution integral `I(s,t) = int_s^t S(t-r) phi(r) dx(r)` is the
//! limit of the left Riemann sums `sum_i S(t - r_{i-1}) phi(r_{i-1}) dx_i`;
//! by the semigroup law this sum is exactly `S(t-s) g(s,t) - M_n(s,t)` for
//! `g(u,v) = (x(v) - x(u)) phi(u)`, so one summation serves both views.
//! Integrands singular at the left endpoint use the trimmed sums that omit
//! the first subinterval.

use crate::diagnostics::fit_rate;
use crate::error::{Error, Result};
use crate::paths::HolderPath;
use crate::scale::{ScaleElement, SemigroupScale};
use crate::simplex::{SimplexFn1, SimplexFn2};
use std::cell::RefCell;
use std::collections::HashMap;

/// Exponent bookkeeping and convergence control for the sewing sums.
#[derive(Debug, Clone)]
pub struct SewingConfig {
    /// Finest dyadic level attempted.
    pub max_level: u32,
    /// Relative tolerance on the monitored norm of the level increment.
    pub rel_tol: f64,
    /// Norm index used to monitor convergence.
    pub lambda_mon: f64,
    /// Driver Hoelder exponent.
    pub eta: f64,
    /// Increment exponent of the integrand (`hat_delta_1 phi` order).
    pub rho: f64,
    /// Target / source space indices.
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    /// Left-endpoint singularity order (only read when `singular`).
    pub gamma: f64,
    pub singular: bool,
}

impl Default for SewingConfig {
    fn default() -> Self {
        SewingConfig {
            max_level: 14,
            rel_tol: 1e-9,
            lambda_mon: 0.0,
            eta: 0.75,
            rho: 0.5,
            alpha: 0.0,
            beta: 0.0,
            epsilon: 0.0,
            gamma: 0.0,
            singular: false,
        }
    }
}

impl SewingConfig {
    /// `mu = eta + rho`, the combined increment order.
    pub fn mu(&self) -> f64 {
        self.eta + self.rho
    }

    /// Check the hypotheses of the sewing construction; error messages name
    /// the violated inequality.
    pub fn validate(&self) -> Result<()> {
        if !(self.mu() > 1.0) {
            return Err(Error::Regime(format!(
                "mu = eta + rho > 1 violated: eta = {}, rho = {}, mu = {}",
                self.eta,
                self.rho,
                self.mu()
            )));
        }
        if !(self.alpha - self.beta >= 0.0 && self.alpha - self.beta < 1.0) {
            return Err(Error::Regime(format!(
                "0 <= alpha - beta < 1 violated: alpha = {}, beta = {}",
                self.alpha, self.beta
            )));
        }
        if self.singular {
            let cap = self.eta.min(self.mu() + self.beta - self.alpha);
            if !(self.gamma > 0.0 && self.gamma < cap) {
                return Err(Error::Regime(format!(
                    "gamma in (0, eta /\\ (mu + beta - alpha)) violated: gamma = {}, bound = {}",
                    self.gamma, cap
                )));
            }
        }
        Ok(())
    }
}

/// Value of a sewing / integral computation with its level history.
#[derive(Debug, Clone)]
pub struct SewingResult {
    pub value: ScaleElement,
    /// `||A_{n+1} - A_n||` in the monitored norm, for consecutive levels.
    pub level_deltas: Vec<f64>,
    /// Fitted slope of `log2(delta)` vs level, when enough positive deltas exist.
    pub fitted_decay_rate: Option<f64>,
    pub converged: bool,
    pub levels_used: u32,
}

fn pairwise_sum_elements(model: &dyn SemigroupScale, items: &[ScaleElement]) -> ScaleElement {
    match items.len() {
        0 => model.zero(),
        1 => items[0].clone(),
        2 => items[0].add(&items[1]),
        n => {
            let mid = n / 2;
            pairwise_sum_elements(model, &items[..mid])
                .add(&pairwise_sum_elements(model, &items[mid..]))
        }
    }
}

fn fit_level_decay(deltas: &[f64], start_level: u32) -> Option<f64> {
    if deltas.len() < 4 || deltas.iter().any(|&d| !(d > 0.0)) {
        return None;
    }
    let pairs: Vec<(f64, f64)> = deltas
        .iter()
        .enumerate()
        .map(|(i, &d)| (2f64.powi(-(start_level as i32 + i as i32)), d))
        .collect();
    // fit_rate gives v ~ s^p with s = 2^{-n}; slope per level is -p.
    fit_rate(&pairs).ok().map(|f| -f.slope)
}

/// Drive `level -> value` evaluations until the monitored increment is small.
///
/// `floor` is the absolute noise floor added to the relative test, so that
/// data collapsing exactly to zero (e.g. `delta_{S,2} g = 0`) converges at
/// the first level instead of chasing rounding noise.
fn converge<F>(
    model: &dyn SemigroupScale,
    cfg: &SewingConfig,
    start_level: u32,
    floor: f64,
    mut value_at_level: F,
) -> Result<SewingResult>
where
    F: FnMut(u32) -> Result<ScaleElement>,
{
    let mut prev = value_at_level(start_level)?;
    let mut deltas = Vec::new();
    let mut converged = false;
    let mut level = start_level;
    while level < cfg.max_level {
        let next = value_at_level(level + 1)?;
        let delta = model.norm(cfg.lambda_mon, &next.sub(&prev))?;
        deltas.push(delta);
        prev = next;
        level += 1;
        let scale = model.norm(cfg.lambda_mon, &prev)?;
        if delta <= cfg.rel_tol * scale + floor {
            converged = true;
            break;
        }
    }
    Ok(SewingResult {
        value: prev,
        fitted_decay_rate: fit_level_decay(&deltas, start_level),
        level_deltas: deltas,
        converged,
        levels_used: level,
    })
}

/// Memoizing wrapper for pointwise integrand evaluations. Dyadic abscissae
/// are bit-identical across levels, so keying on the `f64` bit pattern makes
/// each point cost one evaluation over the whole refinement.
struct PointCache<'a> {
    f: &'a SimplexFn1,
    cache: RefCell<HashMap<u64, ScaleElement>>,
}

impl<'a> PointCache<'a> {
    fn new(f: &'a SimplexFn1) -> Self {
        PointCache { f, cache: RefCell::new(HashMap::new()) }
    }

    fn eval(&self, t: f64) -> Result<ScaleElement> {
        if let Some(v) = self.cache.borrow().get(&t.to_bits()) {
            return Ok(v.clone());
        }
        let v = self.f.eval(t)?;
        self.cache.borrow_mut().insert(t.to_bits(), v.clone());
        Ok(v)
    }
}

fn dyadic_point(s: f64, t: f64, i: usize, n: u32) -> f64 {
    // i / 2^n is exact in binary, so points coincide bitwise across levels.
    s + (t - s) * (i as f64 / (1u64 << n) as f64)
}

/// Level-`n` sewing approximation `M_n(s,t)` for a general two-argument `g`.
pub fn sew_level(
    model: &dyn SemigroupScale,
    g: &SimplexFn2,
    s: f64,
    t: f64,
    n: u32,
) -> Result<ScaleElement> {
    let lead = model.apply(t - s, &g.eval(s, t)?)?;
    let mut terms = Vec::with_capacity(1usize << n);
    for i in 1..=(1usize << n) {
        let r_prev = dyadic_point(s, t, i - 1, n);
        let r_i = dyadic_point(s, t, i, n);
        // S(t - r_i) S(r_i - r_{i-1}) g = S(t - r_{i-1}) g, applied in one shot.
        terms.push(model.apply(t - r_prev, &g.eval(r_prev, r_i)?)?);
    }
    Ok(lead.sub(&pairwise_sum_elements(model, &terms)))
}

/// Sewing map `M(s,t)` by dyadic refinement up to `cfg.max_level`.
pub fn sew(
    model: &dyn SemigroupScale,
    g: &SimplexFn2,
    s: f64,
    t: f64,
    cfg: &SewingConfig,
) -> Result<SewingResult> {
    cfg.validate()?;
    if !(s <= t) {
        return Err(Error::Domain(format!("sew requires s <= t, got s={s}, t={t}")));
    }
    if s == t {
        return Ok(SewingResult {
            value: model.zero(),
            level_deltas: vec![],
            fitted_decay_rate: None,
            converged: true,
            levels_used: 0,
        });
    }
    let floor = 1e-14 * model.norm(cfg.lambda_mon, &model.apply(t - s, &g.eval(s, t)?)?)?;
    converge(model, cfg, 0, floor, |n| sew_level(model, g, s, t, n))
}

fn riemann_level(
    model: &dyn SemigroupScale,
    phi: &PointCache,
    x: &HolderPath,
    s: f64,
    t: f64,
    n: u32,
    skip_first: bool,
) -> Result<ScaleElement> {
    let start = if skip_first { 2 } else { 1 };
    let mut terms = Vec::with_capacity(1usize << n);
    for i in start..=(1usize << n) {
        let r_prev = dyadic_point(s, t, i - 1, n);
        let r_i = dyadic_point(s, t, i, n);
        let dx = x.increment(r_prev, r_i)?;
        if dx == 0.0 {
            continue;
        }
        terms.push(model.apply(t - r_prev, &phi.eval(r_prev)?)?.scaled(dx));
    }
    Ok(pairwise_sum_elements(model, &terms))
}

/// Convolution integral `I_{S,phi}(s,t) = int_s^t S(t-r) phi(r) dx(r)` as the
/// limit of left Riemann sums over dyadic partitions of `[s,t]`.
///
/// The sum equals `S(t-s) g(s,t) - M_n(s,t)` with `g(u,v) = (x(v)-x(u)) phi(u)`
/// identically (semigroup-law algebra), so the returned value is simultaneously
/// the `k_g` form; `I(s,s) = 0` exactly.
pub fn convolution_integral(
    model: &dyn SemigroupScale,
    phi: &SimplexFn1,
    x: &HolderPath,
    s: f64,
    t: f64,
    cfg: &SewingConfig,
) -> Result<SewingResult> {
    cfg.validate()?;
    if !(s <= t) {
        return Err(Error::Domain(format!(
            "convolution integral requires s <= t, got s={s}, t={t}"
        )));
    }
    if s == t {
        return Ok(SewingResult {
            value: model.zero(),
            level_deltas: vec![],
            fitted_decay_rate: None,
            converged: true,
            levels_used: 0,
        });
    }
    let cache = PointCache::new(phi);
    // Noise floor from the coarsest kernel psi(s,t) = S(t-s) g(s,t).
    let g_st = cache.eval(s)?.scaled(x.increment(s, t)?);
    let floor = 1e-14 * model.norm(cfg.lambda_mon, &model.apply(t - s, &g_st)?)?;
    converge(model, cfg, 0, floor, |n| riemann_level(model, &cache, x, s, t, n, false))
}

/// Singular convolution integral from the left endpoint `a`, where `phi` may
/// blow up like `(r-a)^{-gamma}`: uses the trimmed sums that omit the first
/// subinterval, so `phi` is never evaluated at `a`.
pub fn singular_convolution_integral(
    model: &dyn SemigroupScale,
    phi: &SimplexFn1,
    x: &HolderPath,
    a: f64,
    t: f64,
    cfg: &SewingConfig,
) -> Result<SewingResult> {
    let mut scfg = cfg.clone();
    scfg.singular = true;
    scfg.validate()?;
    if !(a <= t) {
        return Err(Error::Domain(format!(
            "singular convolution integral requires a <= t, got a={a}, t={t}"
        )));
    }
    if a == t {
        return Ok(SewingResult {
            value: model.zero(),
            level_deltas: vec![],
            fitted_decay_rate: None,
            converged: true,
            levels_used: 0,
        });
    }
    let cache = PointCache::new(phi);
    // The floor cannot use phi(a); scale by the first regular evaluation.
    let mid = dyadic_point(a, t, 1, 1);
    let floor = 1e-14 * model.norm(cfg.lambda_mon, &cache.eval(mid)?)?
        * x.increment(a, t)?.abs().max(1.0);
    // Level 0 of the trimmed sum is empty; start at level 1.
    converge(model, &scfg, 1, floor, |n| {
        riemann_level(model, &cache, x, a, t, n, true)
    })
}

/// Classical oracle for smooth drivers: `int_s^t S(t-xi) phi(xi) x'(xi) dxi`
/// by composite Simpson quadrature with `panels` subintervals.
pub fn classical_convolution(
    model: &dyn SemigroupScale,
    phi: &SimplexFn1,
    x_deriv: &(dyn Fn(f64) -> f64 + Sync),
    s: f64,
    t: f64,
    panels: usize,
) -> Result<ScaleElement> {
    if !(s <= t) {
        return Err(Error::Domain(format!(
            "classical convolution requires s <= t, got s={s}, t={t}"
        )));
    }
    if panels == 0 {
        return Err(Error::Domain("quadrature needs at least one panel".into()));
    }
    if s == t {
        return Ok(model.zero());
    }
    let h = (t - s) / panels as f64;
    let integrand = |xi: f64| -> Result<ScaleElement> {
        Ok(model.apply(t - xi, &phi.eval(xi)?)?.scaled(x_deriv(xi)))
    };
    let mut terms = Vec::with_capacity(panels);
    for p in 0..panels {
        let l = s + p as f64 * h;
        let r = l + h;
        let m = 0.5 * (l + r);
        let simpson = integrand(l)?
            .add(&integrand(m)?.scaled(4.0))
            .add(&integrand(r)?)
            .scaled(h / 6.0);
        terms.push(simpson);
    }
    Ok(pairwise_sum_elements(model, &terms))
}

/// Chasles composition: a value on `(s,tau)` and one on `(tau,t)` compose to
/// `S(t-tau) I_left + I_right` on `(s,t)`.
pub fn chasles_compose(
    model: &dyn SemigroupScale,
    i_left: &ScaleElement,
    i_right: &ScaleElement,
    tau: f64,
    t: f64,
) -> Result<ScaleElement> {
    if !(tau <= t) {
        return Err(Error::Domain(format!(
            "chasles composition requires tau <= t, got tau={tau}, t={t}"
        )));
    }
    Ok(model.apply(t - tau, i_left)?.add(i_right))
}

/// Left Riemann sum over an arbitrary partition with the driver given as a
/// closure. Only used by the partition-robustness tests; the production path
/// is dyadic.
pub fn convolution_sum_on_partition(
    model: &dyn SemigroupScale,
    phi: &SimplexFn1,
    x: &(dyn Fn(f64) -> f64 + Sync),
    partition: &[f64],
    t: f64,
) -> Result<ScaleElement> {
    if partition.len() < 2 {
        return Err(Error::Domain("partition needs at least two points".into()));
    }
    for w in partition.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::Domain("partition must be strictly increasing".into()));
        }
    }
    if *partition.last().unwrap() > t {
        return Err(Error::Domain("partition exceeds the right endpoint".into()));
    }
    let mut terms = Vec::with_capacity(partition.len() - 1);
    for w in partition.windows(2) {
        let dx = x(w[1]) - x(w[0]);
        terms.push(model.apply(t - w[0], &phi.eval(w[0])?)?.scaled(dx));
    }
    Ok(pairwise_sum_elements(model, &terms))
}
