//! Numeric sampling of the Maxwell stratum (P and P★ share two simple roots)
//! and of tangency points, checking that the exact factors `C` and `B`
//! vanish at the sampled points.
//!
//! Residuals are relative: `|f(a)| / sum |term(a)|`.

mod roots;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::family::{build_dm, build_p, build_pmk, build_pstar, FamilyConfig, FamilyError};
use crate::polyring::format_rational;
use crate::theorem::{verify_theorem, FactorizationReport, TheoremError};

use roots::FloatUni;
pub use roots::{eval_poly_complex, horner, roots, FloatPoly};

pub const DEFAULT_TOL: f64 = 1e-8;
/// Size of the off-stratum perturbation, relative to `1 + |a_j|`.
pub const OFF_STRATUM_STEP: f64 = 1e-2;
/// Off-stratum residuals must exceed `tol` by this factor.
pub const CONTROL_FACTOR: f64 = 1e3;
const ROOT_SEPARATION: f64 = 1e-3;
const MAX_DRAWS_PER_SAMPLE: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("zero leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("eigenvalue iteration did not converge")]
    EigenFailure,
    #[error("sampling needs 2 <= m <= n-2 (got n = {n}, m = {m})")]
    OutOfRange { n: usize, m: usize },
    #[error("no usable draw after {0} attempts")]
    Exhausted(usize),
    #[error("factor {0} is absent from the factorization")]
    MissingFactor(&'static str),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StratumTag {
    /// P and P★ share two simple roots.
    Maxwell,
    /// A root of P is a double root of P★.
    Theta,
    /// `P_{m,k}` has a double root which is also a common root of P and P★.
    ThetaPmk,
}

impl StratumTag {
    /// Name of the factor expected to vanish.
    pub fn target(self) -> &'static str {
        match self {
            StratumTag::Maxwell => "C",
            StratumTag::Theta | StratumTag::ThetaPmk => "B",
        }
    }
}

fn ser_complex_vec<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StratumSample {
    pub tag: StratumTag,
    pub index: usize,
    pub seed: u64,
    #[serde(serialize_with = "ser_complex_vec")]
    pub a_point: Vec<Complex64>,
    #[serde(serialize_with = "ser_complex_vec")]
    pub shared_roots: Vec<Complex64>,
    /// Relative residual of `C` at the point.
    #[serde(rename = "residual_C")]
    pub residual_c: f64,
    #[serde(rename = "residual_B")]
    pub residual_b: f64,
    /// Relative residual of `D_m` itself.
    #[serde(rename = "residual_D")]
    pub residual_d: f64,
    /// Target factor at perturbed points: largest over all sign patterns of a
    /// step in every coordinate except `a_k` (up to overall sign).
    pub residual_off: f64,
}

impl StratumSample {
    pub fn target_residual(&self) -> f64 {
        match self.tag.target() {
            "C" => self.residual_c,
            _ => self.residual_b,
        }
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.target_residual() < tol && self.residual_d < tol && self.residual_off >= CONTROL_FACTOR * tol
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataRun {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub b: Vec<String>,
    pub tag: StratumTag,
    pub seed: u64,
    pub tol: f64,
    pub count: usize,
    pub passed: bool,
    pub max_target_residual: f64,
    pub max_residual_d: f64,
    pub min_residual_off: f64,
    pub samples: Vec<StratumSample>,
}

impl StrataRun {
    fn new(
        cfg: &FamilyConfig,
        k: usize,
        tag: StratumTag,
        seed: u64,
        tol: f64,
        samples: Vec<StratumSample>,
    ) -> StrataRun {
        let fold =
            |f: fn(&StratumSample) -> f64, init: f64, pick: fn(f64, f64) -> f64| samples.iter().map(f).fold(init, pick);
        StrataRun {
            n: cfg.n(),
            m: cfg.m(),
            k,
            b: cfg.b().iter().map(format_rational).collect(),
            tag,
            seed,
            tol,
            count: samples.len(),
            passed: samples.iter().all(|s| s.passed(tol)),
            max_target_residual: fold(StratumSample::target_residual, 0.0, f64::max),
            max_residual_d: fold(|s| s.residual_d, 0.0, f64::max),
            min_residual_off: fold(|s| s.residual_off, f64::INFINITY, f64::min),
            samples,
        }
    }
}

/// Float versions of every polynomial the samplers touch.
struct Kit {
    k: usize,
    p: FloatUni,
    pstar: FloatUni,
    dm: FloatPoly,
    b: FloatPoly,
    c: FloatPoly,
}

impl Kit {
    fn new(cfg: &FamilyConfig, k: usize, report: &FactorizationReport, need_c: bool) -> Result<Kit, StrataError> {
        let c = match &report.c_poly {
            Some(c) => FloatPoly::new(c),
            None if need_c => return Err(StrataError::MissingFactor("C")),
            None => FloatPoly::new(&crate::polyring::MultiPoly::one(cfg.n())),
        };
        Ok(Kit {
            k,
            p: FloatUni::new(&build_p(cfg)),
            pstar: FloatUni::new(&build_pstar(cfg)),
            dm: FloatPoly::new(&build_dm(cfg)?),
            b: FloatPoly::new(&report.b_poly),
            c,
        })
    }

    fn finish(
        &self,
        tag: StratumTag,
        index: usize,
        seed: u64,
        point: Vec<Complex64>,
        shared: Vec<Complex64>,
    ) -> StratumSample {
        let target = if tag.target() == "C" { &self.c } else { &self.b };
        let free: Vec<usize> = (0..point.len()).filter(|&j| j + 1 != self.k).collect();
        let residual_off = (0..1u32 << (free.len() - 1))
            .map(|pattern| {
                let mut off = point.clone();
                for (bit, &j) in free.iter().enumerate() {
                    let sign = if pattern >> bit & 1 == 1 { -1.0 } else { 1.0 };
                    off[j] += OFF_STRATUM_STEP * (1.0 + point[j].norm()) * sign;
                }
                target.relative_residual(&off)
            })
            .fold(0.0, f64::max);
        StratumSample {
            tag,
            index,
            seed,
            residual_c: self.c.relative_residual(&point),
            residual_b: self.b.relative_residual(&point),
            residual_d: self.dm.relative_residual(&point),
            residual_off,
            a_point: point,
            shared_roots: shared,
        }
    }
}

fn draw(rng: &mut ChaCha8Rng) -> f64 {
    // dyadic rationals in [-3, 3], exact in binary
    rng.gen_range(-24i32..=24) as f64 / 8.0
}

fn draw_nonzero(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let v = draw(rng);
        if v != 0.0 {
            return v;
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Solves `f = g = 0` for the slots `u`, `v` of `point`, assuming both are
/// affine in those slots. `None` for a (near-)singular system.
fn solve_affine2(
    point: &mut [Complex64],
    (u, v): (usize, usize),
    f: impl Fn(&[Complex64]) -> Complex64,
    g: impl Fn(&[Complex64]) -> Complex64,
) -> Option<()> {
    point[u] = c(0.0);
    point[v] = c(0.0);
    let (f0, g0) = (f(point), g(point));
    point[u] = c(1.0);
    let (fu, gu) = (f(point) - f0, g(point) - g0);
    point[u] = c(0.0);
    point[v] = c(1.0);
    let (fv, gv) = (f(point) - f0, g(point) - g0);
    let det = fu * gv - fv * gu;
    let size = (fu.norm() + fv.norm()) * (gu.norm() + gv.norm());
    if det.norm() <= 1e-10 * size || size == 0.0 {
        return None;
    }
    point[u] = (-f0 * gv + g0 * fv) / det;
    point[v] = (-g0 * fu + f0 * gu) / det;
    Some(())
}

/// Solves `f = 0` for slot `u` of `point`, with `f` affine in it.
fn solve_affine1(point: &mut [Complex64], u: usize, f: impl Fn(&[Complex64]) -> Complex64) -> Option<()> {
    point[u] = c(0.0);
    let f0 = f(point);
    point[u] = c(1.0);
    let fu = f(point) - f0;
    if fu.norm() <= 1e-12 * (1.0 + f0.norm()) {
        return None;
    }
    point[u] = -f0 / fu;
    Some(())
}

fn check_range(cfg: &FamilyConfig) -> Result<(), StrataError> {
    let (n, m) = (cfg.n(), cfg.m());
    if m < 2 || m + 2 > n {
        return Err(StrataError::OutOfRange { n, m });
    }
    Ok(())
}

fn separated(x: Complex64, y: Complex64) -> bool {
    (x - y).norm() > ROOT_SEPARATION * x.norm().max(y.norm()).max(1.0)
}

/// Points where P and P★ share two distinct roots; `C` should vanish at
/// their projection forgetting `a_k`.
pub fn sample_maxwell(
    cfg: &FamilyConfig,
    k: usize,
    count: usize,
    seed: u64,
    tol: f64,
) -> Result<StrataRun, StrataError> {
    check_range(cfg)?;
    let report = verify_theorem(cfg, k)?;
    let kit = Kit::new(cfg, k, &report, true)?;
    let (n, d) = (cfg.n(), cfg.n() - cfg.m());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(count);
    let mut attempts = 0;
    while samples.len() < count {
        attempts += 1;
        if attempts > MAX_DRAWS_PER_SAMPLE * count.max(1) {
            return Err(StrataError::Exhausted(attempts - 1));
        }
        let mut point = vec![c(0.0); n];
        for z in point.iter_mut().take(d) {
            *z = c(draw(&mut rng));
        }
        let rs = roots(&kit.pstar.coeffs_at(&point))?;
        let all_simple = rs.iter().enumerate().all(|(i, &x)| rs[i + 1..].iter().all(|&y| separated(x, y)));
        if !all_simple {
            continue;
        }
        let i = rng.gen_range(0..rs.len());
        let j = (i + rng.gen_range(1..rs.len())) % rs.len();
        let (xi, eta) = (rs[i], rs[j]);
        for z in point.iter_mut().take(n - 2).skip(d) {
            *z = c(draw(&mut rng));
        }
        let solved = solve_affine2(&mut point, (n - 2, n - 1), |a| kit.p.value(a, xi), |a| kit.p.value(a, eta));
        if solved.is_none() {
            continue;
        }
        samples.push(kit.finish(StratumTag::Maxwell, samples.len(), seed, point, vec![xi, eta]));
    }
    Ok(StrataRun::new(cfg, k, StratumTag::Maxwell, seed, tol, samples))
}

/// Tangency points on which `B` should vanish.
///
/// For `k > n-m`: a double root `λ` of P★ which is also a root of P. For
/// `k <= n-m` (best effort): a double root `λ` of `P_{m,k}` with `a_k`
/// chosen so that `P(λ) = 0`, which forces `P★(λ) = 0` as well.
pub fn sample_theta(cfg: &FamilyConfig, k: usize, count: usize, seed: u64, tol: f64) -> Result<StrataRun, StrataError> {
    check_range(cfg)?;
    let report = verify_theorem(cfg, k)?;
    let kit = Kit::new(cfg, k, &report, false)?;
    let (n, d) = (cfg.n(), cfg.n() - cfg.m());
    let tag = if k > d { StratumTag::Theta } else { StratumTag::ThetaPmk };
    let pmk = if k <= d { Some(FloatUni::new(&build_pmk(cfg, k)?)) } else { None };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(count);
    let mut attempts = 0;
    while samples.len() < count {
        attempts += 1;
        if attempts > MAX_DRAWS_PER_SAMPLE * count.max(1) {
            return Err(StrataError::Exhausted(attempts - 1));
        }
        let lambda = c(draw_nonzero(&mut rng));
        let mut point: Vec<Complex64> = (0..n).map(|_| c(draw(&mut rng))).collect();
        let solved = match &pmk {
            None => solve_affine2(
                &mut point,
                (d - 2, d - 1),
                |a| kit.pstar.value(a, lambda),
                |a| kit.pstar.slope(a, lambda),
            )
            .and_then(|_| solve_affine1(&mut point, n - 1, |a| kit.p.value(a, lambda))),
            Some(q) => solve_affine2(&mut point, (n - 2, n - 1), |a| q.value(a, lambda), |a| q.slope(a, lambda))
                .and_then(|_| solve_affine1(&mut point, k - 1, |a| kit.p.value(a, lambda))),
        };
        if solved.is_none() {
            continue;
        }
        samples.push(kit.finish(tag, samples.len(), seed, point, vec![lambda]));
    }
    Ok(StrataRun::new(cfg, k, tag, seed, tol, samples))
}
