//! Acceptance gate: twelve numbered criteria, each printing a single
//! pass/fail line. Tolerances are pinned; run with `--nocapture` to see the
//! lines for passing criteria as well.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::sync::Arc;
use young_sewing::diagnostics::fit_rate;
use young_sewing::nonlinear::{RegimeTag, SigmaHat, VectorField};
use young_sewing::paths::{make_power_path, weierstrass_value, HolderPath, PathKind};
use young_sewing::scale::{
    DiagonalMatrixModel, IdentityModel, ScaleElement, SemigroupScale, SpectralDirichletModel,
};
use young_sewing::sewing::{
    chasles_compose, classical_convolution, convolution_integral, sew_level, SewingConfig,
};
use young_sewing::simplex::{
    delta_s1, delta_s2, delta_s3, hat_delta1, hat_delta2, s_wrap1, s_wrap2, SimplexFn1, SimplexFn2,
};
use young_sewing::solver::{
    picard_residual, solve_mild, SolverConfig, SolverMode,
};
use young_sewing::young::{young_integral, YoungSpec};

/// Print the single criterion line and fail the test on a violation.
fn report(id: u32, description: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("criterion {id:02} [PASS] {description}"),
        Err(msg) => {
            println!("criterion {id:02} [FAIL] {description}: {msg}");
            panic!("criterion {id:02} failed: {msg}");
        }
    }
}

fn models() -> Vec<Arc<dyn SemigroupScale>> {
    vec![
        Arc::new(SpectralDirichletModel::new(8)),
        Arc::new(DiagonalMatrixModel::new(&[-0.5, -1.0, -2.0, -4.0]).unwrap()),
        Arc::new(IdentityModel::new(3)),
    ]
}

fn random_point_fn(model: Arc<dyn SemigroupScale>, rng: &mut ChaCha20Rng) -> SimplexFn1 {
    let amps: Vec<f64> = (0..model.dimension()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let phases: Vec<f64> = (0..model.dimension()).map(|_| rng.gen_range(0.0..6.28)).collect();
    SimplexFn1::new(0.0, 1.0, move |t| {
        model.element(
            amps.iter()
                .zip(&phases)
                .map(|(&a, &p)| a * (1.0 + 0.5 * (2.0 * t + p).sin()))
                .collect(),
        )
    })
}

fn random_pair_fn(model: Arc<dyn SemigroupScale>, rng: &mut ChaCha20Rng) -> SimplexFn2 {
    let amps: Vec<f64> = (0..model.dimension()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    SimplexFn2::new(0.0, 1.0, move |s, t| {
        model.element(amps.iter().map(|&a| a * (t - s) * (1.0 + s).cos()).collect())
    })
}

fn ordered_tuple<const K: usize>(rng: &mut ChaCha20Rng) -> [f64; K] {
    let mut v = [0.0; K];
    loop {
        for slot in v.iter_mut() {
            *slot = rng.gen_range(0.0..1.0);
        }
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if v.windows(2).all(|w| w[1] - w[0] > 1e-3) {
            return v;
        }
    }
}

#[test]
fn criterion_01_increment_operator_identities() {
    let outcome = (|| -> Result<(), String> {
        let mut rng = ChaCha20Rng::seed_from_u64(101);
        for model in models() {
            let f = random_point_fn(model.clone(), &mut rng);
            let g = random_pair_fn(model.clone(), &mut rng);
            let d1f = hat_delta1(model.clone(), &f);
            let d2d1 = hat_delta2(model.clone(), &d1f);
            let ds2g = delta_s2(model.clone(), &g);
            let ds3ds2 = delta_s3(model.clone(), &ds2g);
            let lhs1 = hat_delta1(model.clone(), &s_wrap1(model.clone(), &f));
            let rhs1_inner = delta_s1(model.clone(), &f);
            let rhs1 = s_wrap2(model.clone(), &rhs1_inner);
            let lhs2 = hat_delta2(model.clone(), &s_wrap2(model.clone(), &g));
            for _ in 0..200 {
                let [r, s, t] = ordered_tuple::<3>(&mut rng);
                let n1 = model.norm(0.0, &d2d1.eval(r, s, t).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                if n1 > 1e-10 {
                    return Err(format!("second twisted increment of first: {n1:.3e}"));
                }
                let [t1, t2, t3, t4] = ordered_tuple::<4>(&mut rng);
                let n2 = model
                    .norm(0.0, &ds3ds2.eval(t1, t2, t3, t4).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                if n2 > 1e-10 {
                    return Err(format!("third shifted of second shifted: {n2:.3e}"));
                }
                let [s2, t5] = ordered_tuple::<2>(&mut rng);
                let d = lhs1
                    .eval(s2, t5)
                    .map_err(|e| e.to_string())?
                    .sub(&rhs1.eval(s2, t5).map_err(|e| e.to_string())?);
                let n3 = model.norm(0.0, &d).map_err(|e| e.to_string())?;
                if n3 > 1e-10 {
                    return Err(format!("commutation n=1: {n3:.3e}"));
                }
                let [r3, s3, t6] = ordered_tuple::<3>(&mut rng);
                let ds2g_v = ds2g.eval(r3, s3, t6).map_err(|e| e.to_string())?;
                // s_wrap3 of delta_s2 g at (r,s,t) is S(t - s) applied to it.
                let rhs2 = model.apply(t6 - s3, &ds2g_v).map_err(|e| e.to_string())?;
                let d2 = lhs2.eval(r3, s3, t6).map_err(|e| e.to_string())?.sub(&rhs2);
                let n4 = model.norm(0.0, &d2).map_err(|e| e.to_string())?;
                if n4 > 1e-10 {
                    return Err(format!("commutation n=2: {n4:.3e}"));
                }
            }
        }
        Ok(())
    })();
    report(1, "increment-operator identities on 200 random tuples x 3 models (<= 1e-10)", outcome);
}

#[test]
fn criterion_02_convolution_matches_classical_quadrature() {
    let outcome = (|| -> Result<(), String> {
        let model = Arc::new(SpectralDirichletModel::new(64));
        let mut rng = ChaCha20Rng::seed_from_u64(202);
        let psi = model
            .element((0..64).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .unwrap();
        let m2 = model.clone();
        let psi2 = psi.clone();
        let phi = SimplexFn1::new(0.0, 1.0, move |r| m2.apply(r, &psi2));
        let level = 15u32;
        let n = 1usize << level;
        let values: Vec<f64> = (0..=n)
            .map(|i| (2.0 * std::f64::consts::PI * i as f64 / n as f64).sin())
            .collect();
        let x = HolderPath::from_values(values, level, 1.0, PathKind::Custom {
            label: "sin".into(),
        })
        .unwrap();
        let x_deriv = |xi: f64| 2.0 * std::f64::consts::PI * (2.0 * std::f64::consts::PI * xi).cos();
        let cfg = SewingConfig { max_level: 12, eta: 1.0, rho: 1.0, ..Default::default() };
        // Dyadic intervals chosen so the driver increment is nonzero (the
        // relative comparison is meaningless where sin has a full period).
        let pairs: [(f64, f64); 10] = [
            (0.0, 0.125),
            (0.0, 0.25),
            (0.125, 0.625),
            (0.625, 0.75),
            (0.25, 0.75),
            (0.25, 0.5),
            (0.375, 0.875),
            (0.375, 0.625),
            (0.75, 1.0),
            (0.5, 0.75),
        ];
        for (s, t) in pairs {
            let got = convolution_integral(model.as_ref(), &phi, &x, s, t, &cfg)
                .map_err(|e| e.to_string())?;
            let oracle = classical_convolution(model.as_ref(), &phi, &x_deriv, s, t, 1 << 14)
                .map_err(|e| e.to_string())?;
            let rel = model.norm(0.0, &got.value.sub(&oracle)).unwrap()
                / model.norm(0.0, &oracle).unwrap();
            if rel > 1e-3 {
                return Err(format!("(s,t)=({s},{t}): rel = {rel:.3e}"));
            }
        }
        Ok(())
    })();
    report(
        2,
        "convolution integral vs classical quadrature oracle on smooth data (rel <= 1e-3, 10 intervals)",
        outcome,
    );
}

#[test]
fn criterion_03_chasles_composition() {
    let outcome = (|| -> Result<(), String> {
        let model = Arc::new(SpectralDirichletModel::new(16));
        let mut rng = ChaCha20Rng::seed_from_u64(303);
        let x = make_power_path(0.75, 12).unwrap();
        for scenario in 0..20 {
            let phi = random_point_fn(model.clone(), &mut rng);
            // Dyadic geometry: s on the 1/16 grid, width a power of two, split
            // at the midpoint so the level-m partition of [s,t] is exactly the
            // two level-(m-1) partitions of the halves.
            let a = rng.gen_range(0..8u32);
            let b = rng.gen_range(1..=3u32);
            let s = a as f64 / 16.0;
            let t = s + 2f64.powi(-(b as i32));
            let tau = 0.5 * (s + t);
            let m = 6u32;
            let cfg = SewingConfig { max_level: m, rel_tol: 0.0, ..Default::default() };
            let cfg_half = SewingConfig { max_level: m - 1, ..cfg.clone() };
            let left = convolution_integral(model.as_ref(), &phi, &x, s, tau, &cfg_half)
                .map_err(|e| e.to_string())?;
            let right = convolution_integral(model.as_ref(), &phi, &x, tau, t, &cfg_half)
                .map_err(|e| e.to_string())?;
            let direct = convolution_integral(model.as_ref(), &phi, &x, s, t, &cfg)
                .map_err(|e| e.to_string())?;
            let composed = chasles_compose(model.as_ref(), &left.value, &right.value, tau, t)
                .map_err(|e| e.to_string())?;
            let denom = model.norm(0.0, &direct.value).unwrap().max(1e-30);
            let rel = model.norm(0.0, &direct.value.sub(&composed)).unwrap() / denom;
            if rel > 1e-10 {
                return Err(format!("scenario {scenario} (s={s}, t={t}): rel = {rel:.3e}"));
            }
        }
        Ok(())
    })();
    report(3, "two-interval Chasles composition on matched dyadic partitions (<= 1e-10, 20 scenarios)", outcome);
}

#[test]
fn criterion_04_sewing_level_decay_rate() {
    let outcome = (|| -> Result<(), String> {
        // Scalar model, rough-rough pair sharing dyadic frequencies so the
        // level deltas decay at the slow rate 2^{-n(mu-1)}, mu = eta + rho =
        // 1.25.
        let model = IdentityModel::new(1);
        let eta = 0.75f64;
        let rho = 0.5f64;
        let ax = 2f64.powf(-eta);
        let ap = 2f64.powf(-rho);
        let g = SimplexFn2::new(0.0, 1.0, move |u, v| {
            let dx = weierstrass_value(ax, 2, 200, v) - weierstrass_value(ax, 2, 200, u);
            Ok(ScaleElement {
                coefficients: vec![dx * weierstrass_value(ap, 2, 200, u)],
                model_tag: "identity".into(),
            })
        });
        let mut prev: Option<ScaleElement> = None;
        let mut pairs = Vec::new();
        for n in 4..=12u32 {
            let m = sew_level(&model, &g, 0.0, 1.0, n).map_err(|e| e.to_string())?;
            if let Some(p) = &prev {
                let d = model.norm(0.0, &m.sub(p)).unwrap();
                pairs.push((2f64.powi(-(n as i32)), d));
            }
            prev = Some(m);
        }
        let fit = fit_rate(&pairs).map_err(|e| e.to_string())?;
        // Slope convention: deltas ~ 2^{-n(mu-1)} against x = 2^{-n} gives
        // slope mu - 1 = 0.25.
        if (fit.slope - 0.25).abs() > 0.15 {
            return Err(format!("fitted decay exponent {:.3} not within 0.25 +/- 0.15", fit.slope));
        }
        Ok(())
    })();
    report(4, "sewing level-delta decay exponent matches mu - 1 = 0.25 (+/- 0.15)", outcome);
}

#[test]
fn criterion_05_singular_trimmed_sums() {
    let outcome = (|| -> Result<(), String> {
        // Part 1: integrand r^{-1/4} against x(t) = t; trimmed sums converge
        // to the improper integral 4/3.
        let x = make_power_path(1.0, 14).unwrap();
        let spec = YoungSpec {
            rho: 0.25,
            eta: 1.0,
            gamma: 0.25,
            singular: true,
            max_level: 14,
            rel_tol: 1e-12,
        };
        let r = young_integral(|r: f64| r.powf(-0.25), &x, 0.0, 1.0, &spec)
            .map_err(|e| e.to_string())?;
        let err = (r.value - 4.0 / 3.0).abs();
        if err > 1e-3 {
            return Err(format!("trimmed-sum value {} vs 4/3: err = {err:.3e}", r.value));
        }
        // Part 2: semigroup-collapsed integrand S(r) psi gives the exact
        // closed form at every level.
        let model = Arc::new(SpectralDirichletModel::new(16));
        let psi = model.element((1..=16).map(|k| 1.0 / k as f64).collect()).unwrap();
        let m2 = model.clone();
        let psi2 = psi.clone();
        let phi = SimplexFn1::new(0.0, 1.0, move |r| m2.apply(r, &psi2));
        let xp = make_power_path(0.75, 14).unwrap();
        let (s, t) = (0.25, 0.75);
        let exact = model
            .apply(t, &psi)
            .unwrap()
            .scaled(xp.increment(s, t).unwrap());
        for k in 1..=6u32 {
            let cfg = SewingConfig { max_level: k, rel_tol: 0.0, ..Default::default() };
            let got = convolution_integral(model.as_ref(), &phi, &xp, s, t, &cfg)
                .map_err(|e| e.to_string())?;
            let rel = model.norm(0.0, &got.value.sub(&exact)).unwrap()
                / model.norm(0.0, &exact).unwrap();
            if rel > 1e-12 {
                return Err(format!("collapsed case at level {k}: rel = {rel:.3e}"));
            }
        }
        Ok(())
    })();
    report(
        5,
        "singular trimmed sums hit the improper integral (<= 1e-3) and collapsed integrands are exact per level (<= 1e-12)",
        outcome,
    );
}

#[test]
fn criterion_06_integral_time_regularity_exponent() {
    let outcome = (|| -> Result<(), String> {
        let model = Arc::new(SpectralDirichletModel::new(256));
        let theta_datum = 1.2f64;
        let psi = model
            .element((1..=256).map(|k| (k as f64).powf(-theta_datum)).collect())
            .unwrap();
        let m2 = model.clone();
        let psi2 = psi.clone();
        let phi = SimplexFn1::new(0.0, 1.0, move |r| m2.apply(r, &psi2));
        let x = make_power_path(0.9, 14).unwrap();
        let cfg = SewingConfig { eta: 0.9, rho: 0.5, ..Default::default() };
        let alpha = 0.45;
        let mut pairs = Vec::new();
        for k in 3..=10 {
            let t = 2f64.powi(-k);
            let i = convolution_integral(model.as_ref(), &phi, &x, 0.0, t, &cfg)
                .map_err(|e| e.to_string())?;
            pairs.push((t, model.norm(alpha, &i.value).unwrap()));
        }
        let fit = fit_rate(&pairs).map_err(|e| e.to_string())?;
        if (fit.slope - 0.55).abs() > 0.1 {
            return Err(format!("fitted exponent {:.3} not within 0.55 +/- 0.1", fit.slope));
        }
        Ok(())
    })();
    report(
        6,
        "X_alpha regularity exponent of the convolution integral in t is eta + theta - alpha = 0.55 (+/- 0.1)",
        outcome,
    );
}

#[test]
fn criterion_07_zero_field_reduces_to_semigroup_orbit() {
    let outcome = (|| -> Result<(), String> {
        let model = SpectralDirichletModel::new(32);
        let psi = model.element((1..=32).map(|k| 1.0 / k as f64).collect()).unwrap();
        let x = make_power_path(0.75, 12).unwrap();
        let cfg = SolverConfig { level_m: 10, ..Default::default() };
        let sol = solve_mild(&model, &VectorField::zero(), &x, &psi, &cfg)
            .map_err(|e| e.to_string())?;
        let psi_norm = model.norm(0.0, &psi).unwrap();
        for (t, v) in sol.times.iter().zip(&sol.values) {
            let expect = model.apply(*t, &psi).unwrap();
            let rel = model.norm(0.0, &v.sub(&expect)).unwrap() / psi_norm;
            if rel > 1e-12 {
                return Err(format!("t = {t}: rel = {rel:.3e}"));
            }
        }
        Ok(())
    })();
    report(7, "zero vector field reproduces the semigroup orbit S(t) psi (<= 1e-12)", outcome);
}

#[test]
fn criterion_08_scalar_closed_form_and_step_refinement() {
    let outcome = (|| -> Result<(), String> {
        // Scalar A = -1, sigma = Id, psi = 1, x(t) = t^{0.75}:
        // y(t) = exp(-t + x(t) - x(0)), so y(1) = exp(0) = 1.
        let model = DiagonalMatrixModel::new(&[-1.0]).unwrap();
        let psi = model.element(vec![1.0]).unwrap();
        let x = make_power_path(0.75, 16).unwrap();
        let field = VectorField::linear(1.0);
        let mut errors = Vec::new();
        for m in [8u32, 10, 12] {
            let cfg = SolverConfig { level_m: m, refine: 4, ..Default::default() };
            let sol = solve_mild(&model, &field, &x, &psi, &cfg).map_err(|e| e.to_string())?;
            errors.push((m, (sol.values.last().unwrap().coefficients[0] - 1.0).abs()));
        }
        let final_err = errors.last().unwrap().1;
        if final_err > 1e-2 {
            return Err(format!("error at t = 1 with m = 12: {final_err:.3e} > 1e-2"));
        }
        for w in errors.windows(2) {
            if !(w[1].1 < w[0].1) {
                return Err(format!(
                    "error not monotone in level: m = {} gives {:.3e}, m = {} gives {:.3e}",
                    w[0].0, w[0].1, w[1].0, w[1].1
                ));
            }
        }
        Ok(())
    })();
    report(
        8,
        "scalar linear equation matches exp(lambda t + x(t) - x(0)) (<= 1e-2 at t = 1, error monotone in level)",
        outcome,
    );
}

#[test]
fn criterion_09_constant_field_decoupling() {
    let outcome = (|| -> Result<(), String> {
        let model = SpectralDirichletModel::new(6);
        let psi = model.element((1..=6).map(|k| 1.0 / k as f64).collect()).unwrap();
        let c = model.basis(1).scaled(0.5);
        let field = VectorField::constant(c.clone(), 1.0);
        let x = make_power_path(0.75, 12).unwrap();
        let cfg = SolverConfig { level_m: 8, ..Default::default() };
        let sol = solve_mild(&model, &field, &x, &psi, &cfg).map_err(|e| e.to_string())?;
        let phi = SimplexFn1::new(0.0, 1.0, move |_| Ok(c.clone()));
        for &j in &[1usize << 6, 1usize << 7, 1usize << 8] {
            let t = sol.times[j];
            // Matched partition: level log2(j) dyadic partition of [0, t] is
            // the stepper's own substep sequence.
            let scfg = SewingConfig {
                max_level: j.trailing_zeros(),
                rel_tol: 0.0,
                eta: 0.75,
                rho: 1.0,
                ..Default::default()
            };
            let i = convolution_integral(&model, &phi, &x, 0.0, t, &scfg)
                .map_err(|e| e.to_string())?;
            let expect = model.apply(t, &psi).unwrap().add(&i.value);
            let rel = model.norm(0.0, &sol.values[j].sub(&expect)).unwrap()
                / model.norm(0.0, &expect).unwrap();
            if rel > 1e-10 {
                return Err(format!("t = {t}: rel = {rel:.3e}"));
            }
        }
        Ok(())
    })();
    report(
        9,
        "constant-field solution decouples into orbit plus deterministic convolution integral (<= 1e-10 at t = 1/4, 1/2, 1)",
        outcome,
    );
}

#[test]
fn criterion_10_initial_layer_exponent_and_nemytskii_stability() {
    let outcome = (|| -> Result<(), String> {
        let model = SpectralDirichletModel::new(256);
        let theta = 0.25f64;
        // Generic X_theta datum: coefficients just inside the summability
        // boundary for the X_theta norm.
        let psi = model
            .element((1..=256).map(|k| (k as f64).powf(-(2.0 * theta + 0.51))).collect())
            .unwrap();
        let x = make_power_path(0.85, 12).unwrap();
        let base_cfg = SolverConfig {
            level_m: 12,
            alpha: 0.4,
            theta,
            eta: 0.85,
            report_lambdas: vec![1.0],
            ..Default::default()
        };
        let slope_of = |sol: &young_sewing::solver::MildSolution| -> Result<f64, String> {
            let mut pairs = Vec::new();
            for k in 3..=10u32 {
                let j = 1usize << (12 - k);
                pairs.push((sol.times[j], sol.norms[0].1[j]));
            }
            Ok(fit_rate(&pairs).map_err(|e| e.to_string())?.slope)
        };
        let free = solve_mild(&model, &VectorField::zero(), &x, &psi, &base_cfg)
            .map_err(|e| e.to_string())?;
        let s_free = slope_of(&free)?;
        if (s_free - (-0.75)).abs() > 0.1 {
            return Err(format!(
                "free-orbit X_1 blow-up exponent {s_free:.3} not within -(1 - theta) = -0.75 +/- 0.1"
            ));
        }
        let field = VectorField::nemytskii(SigmaHat::ScaledSin(0.1), 512);
        let forced = solve_mild(&model, &field, &x, &psi, &base_cfg).map_err(|e| e.to_string())?;
        let s_forced = slope_of(&forced)?;
        if (s_forced - s_free).abs() > 0.15 {
            return Err(format!(
                "composition forcing moved the exponent from {s_free:.3} to {s_forced:.3} (> 0.15)"
            ));
        }
        Ok(())
    })();
    report(
        10,
        "initial-layer X_1 blow-up exponent is -(1 - theta) = -0.75 (+/- 0.1) and stable under composition forcing (<= 0.15)",
        outcome,
    );
}

#[test]
fn criterion_11_picard_cross_validates_stepper() {
    let outcome = (|| -> Result<(), String> {
        let model = SpectralDirichletModel::new(8);
        let psi = model.element((1..=8).map(|k| 1.0 / (k * k) as f64).collect()).unwrap();
        let x = make_power_path(0.8, 10).unwrap();
        let field = VectorField::nemytskii(SigmaHat::ScaledSin(0.2), 32);
        let cfg = SolverConfig {
            level_m: 8,
            eta: 0.8,
            alpha: 0.35,
            theta: 0.25,
            picard_tol: 1e-11,
            ..Default::default()
        };
        let step = solve_mild(&model, &field, &x, &psi, &cfg).map_err(|e| e.to_string())?;
        let cfg_p = SolverConfig { mode: SolverMode::Picard, ..cfg.clone() };
        let pic = solve_mild(&model, &field, &x, &psi, &cfg_p).map_err(|e| e.to_string())?;
        for (j, (a, b)) in step.values.iter().zip(&pic.values).enumerate() {
            let d = model.norm(0.0, &a.sub(b)).unwrap();
            if d > 5.0 * cfg.picard_tol {
                return Err(format!("trajectories differ at index {j}: {d:.3e}"));
            }
        }
        if !pic.contraction_ratios.iter().all(|&r| r < 1.0) {
            return Err("contraction ratios not all below 1".into());
        }
        let res = picard_residual(&model, &field, &x, &psi, &cfg_p, &pic)
            .map_err(|e| e.to_string())?;
        if res > cfg.picard_tol {
            return Err(format!("fixed-point residual {res:.3e} above tolerance"));
        }
        Ok(())
    })();
    report(
        11,
        "Picard iteration converges to the stepper trajectory (<= 5x tol) with fixed-point residual below tol",
        outcome,
    );
}

#[test]
fn criterion_12_regime_gates_name_their_inequalities() {
    let outcome = (|| -> Result<(), String> {
        let cases: Vec<(&str, String)> = vec![
            ("mu = eta + rho > 1", {
                SewingConfig { eta: 0.5, rho: 0.4, ..Default::default() }
                    .validate()
                    .unwrap_err()
                    .to_string()
            }),
            ("gamma in (0, eta /\\ (mu + beta - alpha))", {
                SewingConfig { singular: true, gamma: 0.9, eta: 0.75, rho: 0.5, ..Default::default() }
                    .validate()
                    .unwrap_err()
                    .to_string()
            }),
            ("rho + eta > 1", {
                YoungSpec { rho: 0.4, eta: 0.5, ..Default::default() }
                    .validate()
                    .unwrap_err()
                    .to_string()
            }),
            ("eta > 2*alpha - theta", {
                SolverConfig { eta: 0.6, alpha: 0.45, theta: 0.1, ..Default::default() }
                    .validate(RegimeTag::GlobalLipschitz, 0.0)
                    .unwrap_err()
                    .to_string()
            }),
            ("eta > alpha + (1+omega)*(alpha-theta)", {
                SolverConfig { eta: 0.75, alpha: 0.4, theta: 0.1, ..Default::default() }
                    .validate(RegimeTag::DerivativeLocallyLipschitz, 1.0)
                    .unwrap_err()
                    .to_string()
            }),
            ("alpha + eta > 1", {
                SolverConfig { eta: 0.75, alpha: 0.2, theta: 0.1, ..Default::default() }
                    .validate(RegimeTag::GlobalLipschitz, 0.0)
                    .unwrap_err()
                    .to_string()
            }),
        ];
        for (expected, msg) in cases {
            if !msg.contains(expected) {
                return Err(format!("expected message naming '{expected}', got '{msg}'"));
            }
        }
        Ok(())
    })();
    report(12, "out-of-regime inputs are refused with the violated inequality named (6 gates)", outcome);
}
