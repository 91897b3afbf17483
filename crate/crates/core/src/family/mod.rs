//! The polynomial family `P = x^n + a1 x^{n-1} + ... + an`, its weighted
//! companion `P★ = sum_j b_j a_j x^{n-m-j}`, the combinations
//! `P_{m,k} = b_k P - x^m P★`, and the discriminants built from them.
//!
//! `D_m = Res_x(P, P★)` and `D_{m,k} = Res_{a_k}(D_m, dD_m/da_k)` are memoized
//! per `(n, m, b)` in a process-wide once-per-key cache.

mod cache;
mod prop1;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{format_rational, parse_rational, MultiPoly, PolyError, Rational, UniPoly, UniVar, MAX_VARS};
use crate::resultants::{resultant, ResultantError};

pub use cache::{cached, preload, CacheKey};
pub use prop1::{check_prop1, DegreeCheck, MonomialCheck, Prop1Report};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("n = {0} out of range 3..={MAX_VARS}")]
    BadN(usize),
    #[error("m = {m} out of range 1..={max} for n = {n}")]
    BadM { n: usize, m: usize, max: usize },
    #[error("k = {k} out of range 1..={max}")]
    BadK { k: usize, max: usize },
    #[error("expected {expected} values b_0..b_(n-m), got {got}")]
    BLength { expected: usize, got: usize },
    #[error("genericity violated: b_{0} = 0 (every b_j must be nonzero)")]
    ZeroB(usize),
    #[error("genericity violated: b_{0} = b_{1} (the b_j must be pairwise distinct)")]
    RepeatedB(usize, usize),
    #[error("invalid b specification: {0}")]
    BadSpec(String),
    #[error("{0}")]
    Resultant(#[from] ResultantError),
    #[error("{0}")]
    Poly(#[from] PolyError),
}

/// How the weights `b_0..b_{n-m}` were chosen.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BMode {
    /// `b_j = (n-j)!/(n-m-j)!`, i.e. `P★ = P^(m)`.
    Derivative,
    /// `b_j = 2j + 1`.
    Generic,
    Custom,
}

impl fmt::Display for BMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BMode::Derivative => "derivative",
            BMode::Generic => "generic",
            BMode::Custom => "custom",
        })
    }
}

/// Requested `b`, before validation against `(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BSpec {
    Derivative,
    Generic,
    Custom(Vec<Rational>),
}

impl BSpec {
    /// Accepts `derivative`, `generic`, or a comma-separated list of `p/q`.
    pub fn parse(s: &str) -> Result<BSpec, FamilyError> {
        match s.trim() {
            "derivative" => Ok(BSpec::Derivative),
            "generic" => Ok(BSpec::Generic),
            list => list
                .split(',')
                .map(|v| parse_rational(v).map_err(|e| FamilyError::BadSpec(e.to_string())))
                .collect::<Result<Vec<_>, _>>()
                .map(BSpec::Custom),
        }
    }
}

/// Validated `(n, m, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyConfig {
    n: usize,
    m: usize,
    b: Vec<Rational>,
    mode: BMode,
}

/// `(n-j)!/(n-m-j)!`
pub fn derivative_weight(n: usize, m: usize, j: usize) -> BigInt {
    ((n - m - j + 1)..=(n - j)).map(BigInt::from).product()
}

impl FamilyConfig {
    pub fn new(n: usize, m: usize, spec: BSpec) -> Result<FamilyConfig, FamilyError> {
        if !(3..=MAX_VARS).contains(&n) {
            return Err(FamilyError::BadN(n));
        }
        if !(1..n).contains(&m) {
            return Err(FamilyError::BadM { n, m, max: n - 1 });
        }
        let len = n - m + 1;
        let (b, mode) = match spec {
            BSpec::Derivative => {
                ((0..len).map(|j| Rational::from_integer(derivative_weight(n, m, j))).collect(), BMode::Derivative)
            }
            BSpec::Generic => {
                ((0..len).map(|j| Rational::from_integer(BigInt::from(2 * j + 1))).collect(), BMode::Generic)
            }
            BSpec::Custom(b) => (b, BMode::Custom),
        };
        if b.len() != len {
            return Err(FamilyError::BLength { expected: len, got: b.len() });
        }
        for (i, bi) in b.iter().enumerate() {
            if bi == &Rational::from_integer(0.into()) {
                return Err(FamilyError::ZeroB(i));
            }
            if let Some(j) = b[..i].iter().position(|bj| bj == bi) {
                return Err(FamilyError::RepeatedB(j, i));
            }
        }
        Ok(FamilyConfig { n, m, b, mode })
    }

    pub fn derivative(n: usize, m: usize) -> Result<FamilyConfig, FamilyError> {
        FamilyConfig::new(n, m, BSpec::Derivative)
    }

    pub fn generic(n: usize, m: usize) -> Result<FamilyConfig, FamilyError> {
        FamilyConfig::new(n, m, BSpec::Generic)
    }

    pub fn custom(n: usize, m: usize, b: Vec<Rational>) -> Result<FamilyConfig, FamilyError> {
        FamilyConfig::new(n, m, BSpec::Custom(b))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn mode(&self) -> &BMode {
        &self.mode
    }

    /// True when `b` coincides with the derivative weights, whatever the mode.
    pub fn is_derivative(&self) -> bool {
        (0..self.b.len()).all(|j| self.b[j] == Rational::from_integer(derivative_weight(self.n, self.m, j)))
    }

    pub fn check_k(&self, k: usize) -> Result<(), FamilyError> {
        if (1..=self.n).contains(&k) {
            Ok(())
        } else {
            Err(FamilyError::BadK { k, max: self.n })
        }
    }

    pub fn b_strings(&self) -> Vec<String> {
        self.b.iter().map(format_rational).collect()
    }

    /// `{"n": .., "m": .., "b": ["p/q", ..]}`; derivative and generic presets
    /// are written by name.
    pub fn to_json(&self) -> serde_json::Value {
        let b = match self.mode {
            BMode::Derivative => serde_json::json!("derivative"),
            BMode::Generic => serde_json::json!("generic"),
            BMode::Custom => serde_json::json!(self.b_strings()),
        };
        serde_json::json!({"n": self.n, "m": self.m, "b": b})
    }

    pub fn from_json(value: &serde_json::Value) -> Result<FamilyConfig, FamilyError> {
        let raw: RawConfig = serde_json::from_value(value.clone()).map_err(|e| FamilyError::BadSpec(e.to_string()))?;
        let spec = match raw.b {
            RawB::Named(s) => match s.as_str() {
                "derivative" => BSpec::Derivative,
                "generic" => BSpec::Generic,
                other => return Err(FamilyError::BadSpec(format!("unknown preset {other:?}"))),
            },
            RawB::List(v) => BSpec::Custom(
                v.iter()
                    .map(|s| parse_rational(s).map_err(|e| FamilyError::BadSpec(e.to_string())))
                    .collect::<Result<_, _>>()?,
            ),
        };
        FamilyConfig::new(raw.n, raw.m, spec)
    }
}

#[derive(Deserialize)]
struct RawConfig {
    n: usize,
    m: usize,
    b: RawB,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawB {
    Named(String),
    List(Vec<String>),
}

fn a_var(n: usize, j: usize) -> MultiPoly {
    if j == 0 {
        MultiPoly::one(n)
    } else {
        MultiPoly::var(n, j).expect("index within 1..=n")
    }
}

/// `x^n + a1 x^{n-1} + ... + an`.
pub fn build_p(cfg: &FamilyConfig) -> UniPoly {
    let n = cfg.n;
    let coeffs = (0..=n).map(|i| a_var(n, n - i)).collect();
    UniPoly::new(UniVar::X, n, coeffs).expect("well-formed")
}

/// `sum_{j=0}^{n-m} b_j a_j x^{n-m-j}` with `a_0 = 1`.
pub fn build_pstar(cfg: &FamilyConfig) -> UniPoly {
    let (n, d) = (cfg.n, cfg.n - cfg.m);
    let coeffs = (0..=d).map(|i| a_var(n, d - i).scale(&cfg.b[d - i])).collect();
    UniPoly::new(UniVar::X, n, coeffs).expect("well-formed")
}

/// `b_k P - x^m P★` for `1 <= k <= n-m`; its `x^{n-k}` coefficient vanishes.
pub fn build_pmk(cfg: &FamilyConfig, k: usize) -> Result<UniPoly, FamilyError> {
    let max = cfg.n - cfg.m;
    if !(1..=max).contains(&k) {
        return Err(FamilyError::BadK { k, max });
    }
    let lhs = build_p(cfg).scale(&MultiPoly::constant(cfg.n, cfg.b[k].clone()));
    Ok(lhs.checked_sub(&build_pstar(cfg).shift(cfg.m))?)
}

/// `Res_x(P, P★)`.
pub fn build_dm(cfg: &FamilyConfig) -> Result<MultiPoly, FamilyError> {
    cached(CacheKey::new(cfg, None), || Ok(resultant(&build_p(cfg), &build_pstar(cfg))?))
}

/// `Res_{a_k}(D_m, dD_m/da_k)`; free of `a_k`.
pub fn build_dmk(cfg: &FamilyConfig, k: usize) -> Result<MultiPoly, FamilyError> {
    cfg.check_k(k)?;
    cached(CacheKey::new(cfg, Some(k)), || {
        let dm = build_dm(cfg)?;
        let f = UniPoly::in_variable(&dm, k)?;
        if f.degree().unwrap_or(0) == 0 {
            return Err(ResultantError::DegreeTooSmall(0, 0).into());
        }
        Ok(resultant(&f, &f.derivative())?)
    })
}
