//! Canonical text and JSON forms of [`MultiPoly`].
//!
//! Text: terms in canonical order joined by `" + "`, each written as
//! `coeff * a1^e1*a3^e3` with zero exponents omitted and `^1` dropped; a
//! constant term is just its coefficient and the zero polynomial is `0`.
//! Coefficients are `p/q`, or `p` when `q = 1`.
//!
//! JSON: an array of `{"coeff": "p/q", "exps": [e1, ..., en]}` objects.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::expvec::{ExpVec, MAX_VARS};
use super::{MultiPoly, PolyError, Rational};

pub fn format_rational(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let s = s.trim();
    let bad = || PolyError::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(PolyError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

fn format_monomial(e: ExpVec, nvars: usize) -> String {
    let mut parts = Vec::new();
    for slot in 0..nvars {
        match e.exp(slot) {
            0 => {}
            1 => parts.push(format!("a{}", slot + 1)),
            d => parts.push(format!("a{}^{}", slot + 1, d)),
        }
    }
    parts.join("*")
}

impl MultiPoly {
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .terms()
            .iter()
            .map(|(e, c)| {
                if e.is_one() {
                    format_rational(c)
                } else {
                    format!("{} * {}", format_rational(c), format_monomial(*e, self.nvars()))
                }
            })
            .collect();
        terms.join(" + ")
    }

    /// Parses the canonical text form (and a few lenient variants such as a
    /// bare monomial without coefficient).
    pub fn parse(text: &str, nvars: usize) -> Result<MultiPoly, PolyError> {
        if nvars > MAX_VARS {
            return Err(PolyError::TooManyVariables(nvars));
        }
        let text = text.trim();
        if text == "0" {
            return Ok(MultiPoly::zero(nvars));
        }
        let mut terms = Vec::new();
        for raw in text.split(" + ") {
            let raw = raw.trim();
            let (coeff, mono) = match raw.split_once(" * ") {
                Some((c, m)) => (parse_rational(c)?, Some(m)),
                None => match parse_rational(raw) {
                    Ok(c) => (c, None),
                    Err(_) => (Rational::from_integer(1.into()), Some(raw)),
                },
            };
            let e = match mono {
                None => ExpVec::ONE,
                Some(m) => parse_monomial(m, nvars)?,
            };
            terms.push((e, coeff));
        }
        Ok(MultiPoly::from_terms(nvars, terms))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .terms()
            .iter()
            .map(|(e, c)| JsonTerm { coeff: format_rational(c), exps: e.exponents(self.nvars()) })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value, nvars: usize) -> Result<MultiPoly, PolyError> {
        let terms: Vec<JsonTerm> =
            serde_json::from_value(value.clone()).map_err(|e| PolyError::Parse(e.to_string()))?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            if t.exps.len() != nvars {
                return Err(PolyError::DimensionMismatch(nvars, t.exps.len()));
            }
            out.push((ExpVec::from_exponents(&t.exps), parse_rational(&t.coeff)?));
        }
        Ok(MultiPoly::from_terms(nvars, out))
    }
}

fn parse_monomial(m: &str, nvars: usize) -> Result<ExpVec, PolyError> {
    let mut exps = vec![0u32; nvars];
    for factor in m.split('*') {
        let factor = factor.trim();
        let bad = || PolyError::Parse(format!("invalid factor {factor:?}"));
        let body = factor.strip_prefix('a').ok_or_else(bad)?;
        let (idx, e) = match body.split_once('^') {
            Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
            None => (body, 1),
        };
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if !(1..=nvars).contains(&idx) {
            return Err(PolyError::VariableOutOfRange { index: idx, nvars });
        }
        exps[idx - 1] += e;
    }
    Ok(ExpVec::from_exponents(&exps))
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    exps: Vec<u32>,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
