//! Vector fields for the evolution equation: zero, constant, linear, and
//! Nemytskii (pointwise composition) operators, carrying the Lipschitz
//! metadata the solver's a-priori formulas and regime gates consume.
//!
//! Nemytskii fields act on the Dirichlet spectral model through a discrete
//! sine transform on the midpoint grid `x_j = (j + 1/2)/G`: for mode indices
//! up to `G - 1` the discrete modes are exactly orthogonal, so the round trip
//! is exact for band-limited inputs. The transform is a direct O(N G)
//! summation, which keeps results bit-stable and dependency-free.

use crate::diagnostics::pairwise_sum;
use crate::error::{Error, Result};
use crate::scale::{ScaleElement, SemigroupScale};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Scalar functions certified for Nemytskii composition. All catalog entries
/// have explicit derivative bounds, which the metadata needs in closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum SigmaHat {
    Identity,
    Zero,
    Constant(f64),
    /// `kappa * sin(y)`.
    ScaledSin(f64),
    Tanh,
}

impl SigmaHat {
    pub fn value(&self, y: f64) -> f64 {
        match self {
            SigmaHat::Identity => y,
            SigmaHat::Zero => 0.0,
            SigmaHat::Constant(c) => *c,
            SigmaHat::ScaledSin(k) => k * y.sin(),
            SigmaHat::Tanh => y.tanh(),
        }
    }

    pub fn derivative(&self, y: f64) -> f64 {
        match self {
            SigmaHat::Identity => 1.0,
            SigmaHat::Zero | SigmaHat::Constant(_) => 0.0,
            SigmaHat::ScaledSin(k) => k * y.cos(),
            SigmaHat::Tanh => {
                let t = y.tanh();
                1.0 - t * t
            }
        }
    }

    /// `sup |sigma_hat'|`.
    pub fn lipschitz(&self) -> f64 {
        match self {
            SigmaHat::Identity => 1.0,
            SigmaHat::Zero | SigmaHat::Constant(_) => 0.0,
            SigmaHat::ScaledSin(k) => k.abs(),
            SigmaHat::Tanh => 1.0,
        }
    }

    pub fn value_at_zero(&self) -> f64 {
        self.value(0.0)
    }

    pub fn catalog_name(&self) -> String {
        match self {
            SigmaHat::Identity => "identity".into(),
            SigmaHat::Zero => "zero".into(),
            SigmaHat::Constant(c) => format!("constant({c})"),
            SigmaHat::ScaledSin(k) => format!("scaled_sin({k})"),
            SigmaHat::Tanh => "tanh".into(),
        }
    }
}

/// Which set of hypotheses the solver may assume for a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeTag {
    GlobalLipschitz,
    LocallyLipschitzOmega,
    DerivativeLocallyLipschitz,
}

/// Declared analytic constants of a field. These are metadata, not inferred:
/// the catalog ships them in closed form and `field_metadata_check` samples
/// the inequalities they assert.
#[derive(Debug, Clone)]
pub struct FieldMeta {
    /// `X -> X` Lipschitz constant.
    pub lip_sigma: f64,
    /// Growth constant in `||sigma(u)||_alpha <= L (1 + ||u||_alpha)`,
    /// declared at the index the field is used with.
    pub l_alpha: f64,
    /// Local-Lipschitz exponent (Nemytskii fields with C^2_b symbol: 1).
    pub omega: f64,
    pub regime: RegimeTag,
}

/// The shape of a vector field.
#[derive(Clone)]
pub enum FieldKind {
    Zero,
    Constant(ScaleElement),
    /// `sigma(u) = kappa * u`.
    Linear(f64),
    Nemytskii { sigma: SigmaHat, grid_size: usize },
}

/// A vector field with its declared metadata.
#[derive(Clone)]
pub struct VectorField {
    pub kind: FieldKind,
    pub meta: FieldMeta,
}

impl VectorField {
    pub fn zero() -> Self {
        VectorField {
            kind: FieldKind::Zero,
            meta: FieldMeta {
                lip_sigma: 0.0,
                l_alpha: 0.0,
                omega: 0.0,
                regime: RegimeTag::GlobalLipschitz,
            },
        }
    }

    /// Constant field; `l_alpha` must dominate the constant's norm at the
    /// working index.
    pub fn constant(value: ScaleElement, l_alpha: f64) -> Self {
        VectorField {
            kind: FieldKind::Constant(value),
            meta: FieldMeta {
                lip_sigma: 0.0,
                l_alpha,
                omega: 0.0,
                regime: RegimeTag::GlobalLipschitz,
            },
        }
    }

    pub fn linear(kappa: f64) -> Self {
        VectorField {
            kind: FieldKind::Linear(kappa),
            meta: FieldMeta {
                lip_sigma: kappa.abs(),
                l_alpha: kappa.abs(),
                omega: 0.0,
                regime: RegimeTag::GlobalLipschitz,
            },
        }
    }

    /// Nemytskii field over a C^2_b symbol. Ships with `omega = 1`, the
    /// exponent certified for such symbols.
    pub fn nemytskii(sigma: SigmaHat, grid_size: usize) -> Self {
        let lip = sigma.lipschitz();
        let l0 = lip.max(sigma.value_at_zero().abs()).max(match &sigma {
            // sup |sigma_hat| is a cheaper growth constant where finite.
            SigmaHat::ScaledSin(k) => k.abs(),
            SigmaHat::Tanh => 1.0,
            _ => 0.0,
        });
        VectorField {
            kind: FieldKind::Nemytskii { sigma, grid_size },
            meta: FieldMeta {
                lip_sigma: lip,
                l_alpha: l0,
                omega: 1.0,
                regime: RegimeTag::DerivativeLocallyLipschitz,
            },
        }
    }

    /// Apply the field.
    pub fn eval(&self, model: &dyn SemigroupScale, u: &ScaleElement) -> Result<ScaleElement> {
        model.check_owned(u)?;
        match &self.kind {
            FieldKind::Zero => Ok(model.zero()),
            FieldKind::Constant(c) => {
                model.check_owned(c)?;
                Ok(c.clone())
            }
            FieldKind::Linear(k) => Ok(u.scaled(*k)),
            FieldKind::Nemytskii { sigma, grid_size } => {
                nemytskii_apply(model, sigma, u, *grid_size)
            }
        }
    }

    /// Gateaux derivative action `sigma'(u) h` where available.
    pub fn derivative_action(
        &self,
        model: &dyn SemigroupScale,
        u: &ScaleElement,
        h: &ScaleElement,
    ) -> Result<ScaleElement> {
        match &self.kind {
            FieldKind::Zero | FieldKind::Constant(_) => Ok(model.zero()),
            FieldKind::Linear(k) => Ok(h.scaled(*k)),
            FieldKind::Nemytskii { sigma, grid_size } => {
                let g = *grid_size;
                check_grid(model, g)?;
                let u_grid = to_grid(u, g);
                let h_grid = to_grid(h, g);
                let vals: Vec<f64> = u_grid
                    .iter()
                    .zip(&h_grid)
                    .map(|(&uv, &hv)| sigma.derivative(uv) * hv)
                    .collect();
                from_grid(model, &vals)
            }
        }
    }
}

fn check_grid(model: &dyn SemigroupScale, grid_size: usize) -> Result<()> {
    if grid_size < 2 * model.dimension() {
        return Err(Error::Usage(format!(
            "Nemytskii grid size {grid_size} is below the anti-aliasing margin 2N = {}",
            2 * model.dimension()
        )));
    }
    Ok(())
}

/// Synthesize `u(x_j)` on the midpoint grid from sine coefficients.
fn to_grid(u: &ScaleElement, grid_size: usize) -> Vec<f64> {
    let n = u.coefficients.len();
    let sqrt2 = std::f64::consts::SQRT_2;
    (0..grid_size)
        .map(|j| {
            let x = (j as f64 + 0.5) / grid_size as f64;
            let terms: Vec<f64> = (0..n)
                .map(|k| {
                    u.coefficients[k] * sqrt2 * ((k + 1) as f64 * std::f64::consts::PI * x).sin()
                })
                .collect();
            pairwise_sum(&terms)
        })
        .collect()
}

/// Project grid values back onto the first `N` sine modes (midpoint rule;
/// exact for inputs band-limited below the grid's Nyquist index).
fn from_grid(model: &dyn SemigroupScale, values: &[f64]) -> Result<ScaleElement> {
    let n = model.dimension();
    let g = values.len();
    let sqrt2 = std::f64::consts::SQRT_2;
    let coefficients = (0..n)
        .map(|k| {
            let terms: Vec<f64> = (0..g)
                .map(|j| {
                    let x = (j as f64 + 0.5) / g as f64;
                    values[j] * sqrt2 * ((k + 1) as f64 * std::f64::consts::PI * x).sin()
                })
                .collect();
            pairwise_sum(&terms) / g as f64
        })
        .collect();
    model.element(coefficients)
}

/// `sigma_hat` composed with `u`, computed as inverse transform -> pointwise
/// application -> forward transform.
pub fn nemytskii_apply(
    model: &dyn SemigroupScale,
    sigma: &SigmaHat,
    u: &ScaleElement,
    grid_size: usize,
) -> Result<ScaleElement> {
    model.check_owned(u)?;
    check_grid(model, grid_size)?;
    let grid = to_grid(u, grid_size);
    let vals: Vec<f64> = grid.iter().map(|&y| sigma.value(y)).collect();
    from_grid(model, &vals)
}

/// A sampled violation of a declared field inequality.
#[derive(Debug, Clone)]
pub struct MetadataViolation {
    pub description: String,
    pub lhs: f64,
    pub rhs: f64,
}

/// Sample the declared growth/Lipschitz inequalities on random elements.
/// Inequalities are checked in `X_0` (growth additionally at `alpha`), with a
/// small roundoff allowance.
pub fn field_metadata_check(
    model: &dyn SemigroupScale,
    field: &VectorField,
    alpha: f64,
    sample_count: usize,
    seed: u64,
) -> Result<Vec<MetadataViolation>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let tol = 1.0 + 1e-10;
    for _ in 0..sample_count {
        let u = model.element(
            (0..model.dimension()).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )?;
        let v = model.element(
            (0..model.dimension()).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )?;
        let su = field.eval(model, &u)?;
        let sv = field.eval(model, &v)?;
        let lip_lhs = model.norm(0.0, &su.sub(&sv))?;
        let lip_rhs = field.meta.lip_sigma * model.norm(0.0, &u.sub(&v))?;
        if lip_lhs > lip_rhs * tol + 1e-12 {
            violations.push(MetadataViolation {
                description: "||sigma(u)-sigma(v)||_0 <= Lip ||u-v||_0".into(),
                lhs: lip_lhs,
                rhs: lip_rhs,
            });
        }
        let growth_lhs = model.norm(alpha, &su)?;
        let growth_rhs = field.meta.l_alpha * (1.0 + model.norm(alpha, &u)?);
        // Growth is only declared at the working index for fields that map
        // into X_alpha; Nemytskii output is checked at index 0.
        let (growth_lhs, growth_rhs) = match &field.kind {
            FieldKind::Nemytskii { .. } => (
                model.norm(0.0, &su)?,
                field.meta.l_alpha * (1.0 + model.norm(0.0, &u)?),
            ),
            _ => (growth_lhs, growth_rhs),
        };
        if growth_lhs > growth_rhs * tol + 1e-12 {
            violations.push(MetadataViolation {
                description: "||sigma(u)|| <= L (1 + ||u||)".into(),
                lhs: growth_lhs,
                rhs: growth_rhs,
            });
        }
    }
    Ok(violations)
}
