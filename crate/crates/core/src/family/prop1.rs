//! Structural checks on `D_m`: per-variable degrees, the extreme monomials
//! `M_j = ±b_j^n (1 - b_0/b_j)^j a_j^n a_n^{n-m-j}` and
//! `N_s = ±b_{n-m}^{m-s} b_0^{n-m+s} a_{n-m}^{m-s} a_{n-m+s}^{n-m}`, and the
//! quasi-homogeneous weight `n(n-m)`.

use num_traits::Signed;
use serde::Serialize;

use super::{build_dm, FamilyConfig, FamilyError};
use crate::polyring::{format_rational, ExpVec, MultiPoly, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub var: usize,
    pub expected: u32,
    pub actual: u32,
}

impl DegreeCheck {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialCheck {
    pub label: String,
    pub exps: Vec<u32>,
    #[serde(serialize_with = "ser_rational")]
    pub expected_abs: Rational,
    #[serde(serialize_with = "ser_opt_rational")]
    pub actual: Option<Rational>,
    /// The monomial is the only term carrying its top power of the
    /// distinguished variable.
    pub unique: bool,
}

impl MonomialCheck {
    pub fn ok(&self) -> bool {
        self.unique && self.actual.as_ref().is_some_and(|c| c.abs() == self.expected_abs)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop1Report {
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<DegreeCheck>,
    pub monomials: Vec<MonomialCheck>,
    pub qhw: Option<u64>,
    pub expected_qhw: u64,
}

impl Prop1Report {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(DegreeCheck::ok)
            && self.monomials.iter().all(MonomialCheck::ok)
            && self.qhw == Some(self.expected_qhw)
    }
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&format_rational(q)),
        None => s.serialize_none(),
    }
}

/// Looks up `exps` in `dm` and checks that it is the sole term of degree
/// `top` in `a_var`.
fn monomial_check(
    dm: &MultiPoly,
    label: String,
    exps: Vec<u32>,
    var: usize,
    top: u32,
    expected_abs: Rational,
) -> MonomialCheck {
    let target = ExpVec::from_exponents(&exps);
    let actual = dm.terms().iter().find(|(e, _)| *e == target).map(|(_, c)| c.clone());
    let carriers = dm.terms().iter().filter(|(e, _)| e.exp(var - 1) == top).count();
    MonomialCheck { label, exps, expected_abs, actual, unique: carriers == 1 }
}

pub fn check_prop1(cfg: &FamilyConfig) -> Result<Prop1Report, FamilyError> {
    let (n, m) = (cfg.n(), cfg.m());
    let d = n - m;
    let b = cfg.b();
    let dm = build_dm(cfg)?;
    let degrees = (1..=n)
        .map(|j| DegreeCheck { var: j, expected: if j <= d { n as u32 } else { d as u32 }, actual: dm.degree_in(j) })
        .collect();
    let mut monomials = Vec::new();
    for j in 1..=d {
        let mut exps = vec![0u32; n];
        exps[j - 1] = n as u32;
        exps[n - 1] += (d - j) as u32;
        // b_j^n (1 - b_0/b_j)^j = b_j^{n-j} (b_j - b_0)^j
        let expected = (b[j].pow((n - j) as i32) * (&b[j] - &b[0]).pow(j as i32)).abs();
        monomials.push(monomial_check(&dm, format!("M_{j}"), exps, j, n as u32, expected));
    }
    for s in 1..m {
        let mut exps = vec![0u32; n];
        exps[d - 1] = (m - s) as u32;
        exps[d + s - 1] = d as u32;
        let expected = (b[d].pow((m - s) as i32) * b[0].pow((d + s) as i32)).abs();
        monomials.push(monomial_check(&dm, format!("N_{s}"), exps, d + s, d as u32, expected));
    }
    Ok(Prop1Report { n, m, degrees, monomials, qhw: dm.qhw().weight(), expected_qhw: (n * d) as u64 })
}
