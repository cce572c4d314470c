//! Eta-Hoelder driver paths on the unit interval, sampled on uniform dyadic
//! grids.
//!
//! Paths are grid samples, not closures: the sewing sums only ever evaluate
//! the driver at dyadic points, so sampling at the maximum needed level is
//! exact for the algorithm, and evaluation off the sampled grid is an error
//! rather than an invented interpolation.

use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// How a path was generated; recorded for reproducibility metadata.
#[derive(Debug, Clone, PartialEq)]
pub enum PathKind {
    Power { eta: f64 },
    Weierstrass { a: f64, b: u32, terms: u32 },
    Fbm { hurst: f64, seed: u64 },
    Custom { label: String },
}

/// A driver sampled at `t_i = i 2^{-m}`, `i = 0..=2^m`, with its nominal
/// Hoelder exponent.
#[derive(Debug, Clone)]
pub struct HolderPath {
    values: Vec<f64>,
    level: u32,
    nominal_exponent: f64,
    kind: PathKind,
}

impl HolderPath {
    /// Wrap explicit samples (length must be `2^m + 1`).
    pub fn from_values(values: Vec<f64>, level: u32, eta: f64, kind: PathKind) -> Result<Self> {
        if values.len() != (1usize << level) + 1 {
            return Err(Error::Usage(format!(
                "path at level {level} needs {} samples, got {}",
                (1usize << level) + 1,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("path samples must be finite".into()));
        }
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::Domain(format!("Hoelder exponent must be in (0,1], got {eta}")));
        }
        Ok(HolderPath { values, level, nominal_exponent: eta, kind })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn nominal_exponent(&self) -> f64 {
        self.nominal_exponent
    }

    pub fn kind(&self) -> &PathKind {
        &self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Grid times matching `values()`.
    pub fn times(&self) -> Vec<f64> {
        let n = 1usize << self.level;
        (0..=n).map(|i| i as f64 / n as f64).collect()
    }

    /// Value at a grid point. `t` must lie exactly on the sampled dyadic
    /// grid; anything else is refused naming the resolution that would be
    /// needed, so rough paths are never silently interpolated.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!("path time {t} outside [0,1]")));
        }
        let n = (1usize << self.level) as f64;
        let idx = t * n;
        let rounded = idx.round();
        if (idx - rounded).abs() > 1e-9 {
            // How fine a dyadic grid would contain t (best effort, capped).
            let mut need = self.level + 1;
            while need < 60 {
                let scaled = t * (1u64 << need) as f64;
                if (scaled - scaled.round()).abs() < 1e-9 {
                    break;
                }
                need += 1;
            }
            return Err(Error::Resolution(format!(
                "t = {t} is not on the level-{} dyadic grid; a path of resolution level >= {need} is required",
                self.level
            )));
        }
        Ok(self.values[rounded as usize])
    }

    /// Increment `x(t) - x(s)` at grid points.
    pub fn increment(&self, s: f64, t: f64) -> Result<f64> {
        Ok(self.value_at(t)? - self.value_at(s)?)
    }

    /// Empirical Hoelder seminorm `max |x(t)-x(s)| / (t-s)^eta` over sampled
    /// pairs, optionally restricted to a subinterval. `max_lag = None` scans
    /// all pairs (O(n^2), fine at desk scale); `Some(l)` restricts to pairs
    /// at most `l` grid steps apart for large levels.
    pub fn holder_seminorm(&self, eta: f64, subinterval: Option<(f64, f64)>, max_lag: Option<usize>) -> Result<f64> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::Domain(format!("Hoelder exponent must be in (0,1], got {eta}")));
        }
        let n = 1usize << self.level;
        let (lo, hi) = match subinterval {
            None => (0usize, n),
            Some((a, b)) => {
                if !(0.0 <= a && a < b && b <= 1.0) {
                    return Err(Error::Domain(format!("bad subinterval [{a}, {b}]")));
                }
                ((a * n as f64).ceil() as usize, (b * n as f64).floor() as usize)
            }
        };
        let lag_cap = max_lag.unwrap_or(n);
        let mut best = 0.0_f64;
        for i in lo..hi {
            let top = (i + lag_cap).min(hi);
            for j in (i + 1)..=top {
                let dt = (j - i) as f64 / n as f64;
                let r = (self.values[j] - self.values[i]).abs() / dt.powf(eta);
                if r > best {
                    best = r;
                }
            }
        }
        Ok(best)
    }
}

/// `x(t) = t^eta`: the canonical eta-Hoelder driver (rough only at 0).
pub fn make_power_path(eta: f64, level: u32) -> Result<HolderPath> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::Domain(format!("power path exponent must be in (0,1], got {eta}")));
    }
    if level < 1 {
        return Err(Error::Domain("path level must be >= 1".into()));
    }
    let n = 1usize << level;
    let values = (0..=n).map(|i| (i as f64 / n as f64).powf(eta)).collect();
    HolderPath::from_values(values, level, eta, PathKind::Power { eta })
}

/// Pointwise Weierstrass sum `sum_{k<terms} a^k cos(b^k pi t)`; exposed so
/// tests can evaluate the same function off the path grid.
pub fn weierstrass_value(a: f64, b: u32, terms: u32, t: f64) -> f64 {
    let mut acc = 0.0;
    let mut amp = 1.0;
    let mut freq = std::f64::consts::PI;
    for _ in 0..terms {
        acc += amp * (freq * t).cos();
        amp *= a;
        freq *= b as f64;
    }
    acc
}

/// Weierstrass path `x(t) = sum a^k cos(b^k pi t)` with nominal exponent
/// `eta = -ln a / ln b`; genuinely eta-Hoelder at every point when `ab > 1`.
pub fn make_weierstrass_path(a: f64, b: u32, level: u32, terms: u32) -> Result<HolderPath> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("Weierstrass amplitude must be in (0,1), got {a}")));
    }
    if b < 2 {
        return Err(Error::Domain(format!("Weierstrass frequency base must be >= 2, got {b}")));
    }
    if a * b as f64 <= 1.0 {
        return Err(Error::Usage(format!(
            "Weierstrass roughness regime requires a*b > 1, got a*b = {}",
            a * b as f64
        )));
    }
    if a.powi(terms as i32) >= 1e-14 {
        return Err(Error::Usage(format!(
            "terms = {terms} leaves truncation a^terms = {:e} >= 1e-14; increase terms",
            a.powi(terms as i32)
        )));
    }
    let eta = -a.ln() / (b as f64).ln();
    let n = 1usize << level;
    let values = (0..=n)
        .map(|i| weierstrass_value(a, b, terms, i as f64 / n as f64))
        .collect();
    HolderPath::from_values(values, level, eta, PathKind::Weierstrass { a, b, terms })
}

/// Fractional Brownian motion on [0,1] by Davies-Harte circulant embedding
/// (exact Gaussian synthesis). The nominal exponent is declared as
/// `H - 0.05`: almost-sure Hoelder regularity is any exponent below `H`, and
/// the margin keeps rate tests away from the critical exponent.
///
/// Fails explicitly (no fallback) if the circulant embedding is not positive
/// semidefinite.
pub fn make_fbm_path(hurst: f64, level: u32, seed: u64) -> Result<HolderPath> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(Error::Domain(format!("Hurst parameter must be in (0,1), got {hurst}")));
    }
    if level < 1 {
        return Err(Error::Domain("path level must be >= 1".into()));
    }
    let n = 1usize << level;
    // Autocovariance of unit-step fractional Gaussian noise.
    let cov = |k: f64| -> f64 {
        0.5 * ((k - 1.0).abs().powf(2.0 * hurst) - 2.0 * k.abs().powf(2.0 * hurst)
            + (k + 1.0).abs().powf(2.0 * hurst))
    };
    // First row of the 2n x 2n circulant embedding.
    let mut row: Vec<Complex<f64>> = Vec::with_capacity(2 * n);
    for i in 0..=n {
        row.push(Complex::new(cov(i as f64), 0.0));
    }
    for i in (1..n).rev() {
        row.push(Complex::new(cov(i as f64), 0.0));
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(2 * n);
    fft.process(&mut row);
    let eigs: Vec<f64> = row.iter().map(|c| c.re).collect();
    let max_eig = eigs.iter().cloned().fold(0.0_f64, f64::max);
    if eigs.iter().any(|&l| l < -1e-8 * max_eig) {
        return Err(Error::Numerical(format!(
            "circulant embedding not positive semidefinite for H = {hurst}, level = {level}"
        )));
    }

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut draw = || -> f64 { StandardNormal.sample(&mut rng) };
    // Spectral synthesis: w has Hermitian symmetry so its DFT is real.
    let two_n = 2.0 * n as f64;
    let mut w = vec![Complex::new(0.0, 0.0); 2 * n];
    w[0] = Complex::new((eigs[0].max(0.0) / two_n).sqrt() * draw(), 0.0);
    for k in 1..n {
        let amp = (eigs[k].max(0.0) / (2.0 * two_n)).sqrt();
        let re = draw();
        let im = draw();
        w[k] = Complex::new(amp * re, amp * im);
        w[2 * n - k] = w[k].conj();
    }
    w[n] = Complex::new((eigs[n].max(0.0) / two_n).sqrt() * draw(), 0.0);
    let fft2 = planner.plan_fft_forward(2 * n);
    fft2.process(&mut w);
    let scale = (1.0 / n as f64).powf(hurst);
    let mut values = Vec::with_capacity(n + 1);
    values.push(0.0);
    let mut acc = 0.0;
    for item in w.iter().take(n) {
        acc += item.re * scale;
        values.push(acc);
    }
    HolderPath::from_values(values, level, (hurst - 0.05).clamp(1e-6, 1.0), PathKind::Fbm { hurst, seed })
}
