//! Increment operators on simplex functions: the twisted coboundaries
//! `hat_delta_n`, the semigroup-side increments `delta_{S,n}`, the wrapping
//! maps `S_n`, and `frak_a(s,t) = S(t-s) - Id`.
//!
//! Simplex functions are callables over ordered tuples, not dense tensors:
//! the sewing sums need O(2^n) evaluations per level, and the algebraic
//! identities are checked pointwise on random ordered tuples.

use crate::error::{Error, Result};
use crate::scale::{ScaleElement, SemigroupScale};
use std::sync::Arc;

type Eval1 = Arc<dyn Fn(f64) -> Result<ScaleElement> + Send + Sync>;
type Eval2 = Arc<dyn Fn(f64, f64) -> Result<ScaleElement> + Send + Sync>;
type Eval3 = Arc<dyn Fn(f64, f64, f64) -> Result<ScaleElement> + Send + Sync>;
type Eval4 = Arc<dyn Fn(f64, f64, f64, f64) -> Result<ScaleElement> + Send + Sync>;

fn check_ordered(args: &[f64], a: f64, b: f64) -> Result<()> {
    for w in args.windows(2) {
        if w[0] > w[1] {
            return Err(Error::Domain(format!(
                "simplex arguments must be ordered, got {:?}",
                args
            )));
        }
    }
    if args[0] < a || *args.last().unwrap() > b {
        return Err(Error::Domain(format!(
            "simplex arguments {:?} outside [{a}, {b}]",
            args
        )));
    }
    Ok(())
}

/// One-argument function `[a,b] -> X`.
#[derive(Clone)]
pub struct SimplexFn1 {
    pub a: f64,
    pub b: f64,
    f: Eval1,
}

/// Two-argument function on the ordered square `{a <= s <= t <= b}`.
#[derive(Clone)]
pub struct SimplexFn2 {
    pub a: f64,
    pub b: f64,
    f: Eval2,
}

/// Three-argument function on the ordered cube.
#[derive(Clone)]
pub struct SimplexFn3 {
    pub a: f64,
    pub b: f64,
    f: Eval3,
}

/// Four-argument function; only produced by `delta_s3` for identity checks.
#[derive(Clone)]
pub struct SimplexFn4 {
    pub a: f64,
    pub b: f64,
    f: Eval4,
}

impl SimplexFn1 {
    pub fn new(a: f64, b: f64, f: impl Fn(f64) -> Result<ScaleElement> + Send + Sync + 'static) -> Self {
        SimplexFn1 { a, b, f: Arc::new(f) }
    }
    pub fn eval(&self, t: f64) -> Result<ScaleElement> {
        check_ordered(&[t], self.a, self.b)?;
        (self.f)(t)
    }
}

impl SimplexFn2 {
    pub fn new(a: f64, b: f64, f: impl Fn(f64, f64) -> Result<ScaleElement> + Send + Sync + 'static) -> Self {
        SimplexFn2 { a, b, f: Arc::new(f) }
    }
    pub fn eval(&self, s: f64, t: f64) -> Result<ScaleElement> {
        check_ordered(&[s, t], self.a, self.b)?;
        (self.f)(s, t)
    }
}

impl SimplexFn3 {
    pub fn new(a: f64, b: f64, f: impl Fn(f64, f64, f64) -> Result<ScaleElement> + Send + Sync + 'static) -> Self {
        SimplexFn3 { a, b, f: Arc::new(f) }
    }
    pub fn eval(&self, r: f64, s: f64, t: f64) -> Result<ScaleElement> {
        check_ordered(&[r, s, t], self.a, self.b)?;
        (self.f)(r, s, t)
    }
}

impl SimplexFn4 {
    pub fn eval(&self, t1: f64, t2: f64, t3: f64, t4: f64) -> Result<ScaleElement> {
        check_ordered(&[t1, t2, t3, t4], self.a, self.b)?;
        (self.f)(t1, t2, t3, t4)
    }
}

/// `frak_a(s,t) u = (S(t-s) - Id) u`.
pub fn frak_a(model: &dyn SemigroupScale, s: f64, t: f64, u: &ScaleElement) -> Result<ScaleElement> {
    if s > t {
        return Err(Error::Domain(format!("frak_a requires s <= t, got s={s}, t={t}")));
    }
    Ok(model.apply(t - s, u)?.sub(u))
}

/// `(hat_delta_1 f)(s,t) = f(t) - S(t-s) f(s)`.
pub fn hat_delta1(model: Arc<dyn SemigroupScale>, f: &SimplexFn1) -> SimplexFn2 {
    let f = f.clone();
    SimplexFn2::new(f.a, f.b, move |s, t| {
        let ft = f.eval(t)?;
        let fs = f.eval(s)?;
        Ok(ft.sub(&model.apply(t - s, &fs)?))
    })
}

/// `(hat_delta_2 f)(r,s,t) = f(r,t) - f(s,t) - S(t-s) f(r,s)`.
pub fn hat_delta2(model: Arc<dyn SemigroupScale>, f: &SimplexFn2) -> SimplexFn3 {
    let f = f.clone();
    SimplexFn3::new(f.a, f.b, move |r, s, t| {
        let frt = f.eval(r, t)?;
        let fst = f.eval(s, t)?;
        let frs = f.eval(r, s)?;
        Ok(frt.sub(&fst).sub(&model.apply(t - s, &frs)?))
    })
}

/// `(delta_{S,1} f)(t1,t2) = S(t1-a)(f(t2) - f(t1))`.
pub fn delta_s1(model: Arc<dyn SemigroupScale>, f: &SimplexFn1) -> SimplexFn2 {
    let f = f.clone();
    let a = f.a;
    SimplexFn2::new(f.a, f.b, move |t1, t2| {
        let d = f.eval(t2)?.sub(&f.eval(t1)?);
        model.apply(t1 - a, &d)
    })
}

/// `(delta_{S,2} g)(r,s,t) = -g(s,t) + S(s-r) g(r,t) - S(s-r) g(r,s)`.
pub fn delta_s2(model: Arc<dyn SemigroupScale>, g: &SimplexFn2) -> SimplexFn3 {
    let g = g.clone();
    SimplexFn3::new(g.a, g.b, move |r, s, t| {
        let grt = model.apply(s - r, &g.eval(r, t)?)?;
        let grs = model.apply(s - r, &g.eval(r, s)?)?;
        Ok(grt.sub(&g.eval(s, t)?).sub(&grs))
    })
}

/// `(delta_{S,3} f)(t1,t2,t3,t4) = f(t2,t3,t4) - f(t1,t3,t4)
///  + S(t3-t2) [ f(t1,t2,t4) - f(t1,t2,t3) ]`.
pub fn delta_s3(model: Arc<dyn SemigroupScale>, f: &SimplexFn3) -> SimplexFn4 {
    let f = f.clone();
    SimplexFn4 {
        a: f.a,
        b: f.b,
        f: Arc::new(move |t1, t2, t3, t4| {
            let lead = f.eval(t2, t3, t4)?.sub(&f.eval(t1, t3, t4)?);
            let inner = f.eval(t1, t2, t4)?.sub(&f.eval(t1, t2, t3)?);
            Ok(lead.add(&model.apply(t3 - t2, &inner)?))
        }),
    }
}

/// `(S_1 f)(t) = S(t-a) f(t)`.
pub fn s_wrap1(model: Arc<dyn SemigroupScale>, f: &SimplexFn1) -> SimplexFn1 {
    let f = f.clone();
    let a = f.a;
    SimplexFn1::new(f.a, f.b, move |t| model.apply(t - a, &f.eval(t)?))
}

/// `(S_2 f)(s,t) = S(t-s) f(s,t)`.
pub fn s_wrap2(model: Arc<dyn SemigroupScale>, f: &SimplexFn2) -> SimplexFn2 {
    let f = f.clone();
    SimplexFn2::new(f.a, f.b, move |s, t| model.apply(t - s, &f.eval(s, t)?))
}

/// `(S_3 f)(r,s,t) = S(t-s) f(r,s,t)`.
pub fn s_wrap3(model: Arc<dyn SemigroupScale>, f: &SimplexFn3) -> SimplexFn3 {
    let f = f.clone();
    SimplexFn3::new(f.a, f.b, move |r, s, t| model.apply(t - s, &f.eval(r, s, t)?))
}

/// Empirical singular-Hoelder class estimate for a two-argument function:
/// `sup (s-a)^gamma ||f(s,t)||_alpha / (t-s)^beta` over a dyadic grid of the
/// given level, excluding `s = a` and the diagonal.
pub fn holder_class_estimate(
    model: &dyn SemigroupScale,
    f: &SimplexFn2,
    alpha: f64,
    beta: f64,
    gamma: f64,
    level: u32,
) -> Result<f64> {
    let n = 1usize << level;
    let (a, b) = (f.a, f.b);
    let mut sup = 0.0_f64;
    for i in 1..n {
        let s = a + (b - a) * i as f64 / n as f64;
        for j in (i + 1)..=n {
            let t = a + (b - a) * j as f64 / n as f64;
            let v = model.norm(alpha, &f.eval(s, t)?)?;
            let r = (s - a).powf(gamma) * v / (t - s).powf(beta);
            if r > sup {
                sup = r;
            }
        }
    }
    Ok(sup)
}
