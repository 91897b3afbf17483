//! Complex polynomial roots and floating-point evaluation of exact polynomials.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::StrataError;
use crate::polyring::{MultiPoly, UniPoly};

const NEWTON_STEPS: usize = 2;

/// Value of `sum c_i x^i` (coefficients lowest degree first).
pub fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

/// All complex roots of `sum c_i x^i` (lowest degree first): eigenvalues of
/// the companion matrix, each refined by Newton steps.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, StrataError> {
    let d = coeffs.len().checked_sub(1).filter(|&d| d >= 1).ok_or(StrataError::ConstantPolynomial)?;
    let lead = coeffs[d];
    if lead.is_zero() {
        return Err(StrataError::ZeroLeadingCoefficient);
    }
    let mut companion = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        companion[(i, d - 1)] = -coeffs[i] / lead;
    }
    let eig = nalgebra::Schur::try_new(companion, f64::EPSILON, 10_000)
        .and_then(|s| s.eigenvalues())
        .ok_or(StrataError::EigenFailure)?;
    let dp = derivative(coeffs);
    Ok(eig
        .iter()
        .map(|&z| {
            let mut z = z;
            for _ in 0..NEWTON_STEPS {
                let slope = horner(&dp, z);
                if slope.norm() == 0.0 {
                    break;
                }
                let step = horner(coeffs, z) / slope;
                if !step.is_finite() {
                    break;
                }
                z -= step;
            }
            z
        })
        .collect())
}

/// An exact polynomial with coefficients converted to `f64` once.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl FloatPoly {
    pub fn new(p: &MultiPoly) -> FloatPoly {
        let nvars = p.nvars();
        let terms = p.terms().iter().map(|(e, c)| (e.exponents(nvars), c.to_f64().unwrap_or(f64::NAN))).collect();
        FloatPoly { nvars, terms }
    }

    /// `(value, sum of |term|)` at `point` (one entry per variable).
    pub fn eval_with_scale(&self, point: &[Complex64]) -> (Complex64, f64) {
        assert_eq!(point.len(), self.nvars, "point length");
        let max_exp = self.terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Complex64>> = point
            .iter()
            .map(|&z| {
                let mut row = Vec::with_capacity(max_exp + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=max_exp {
                    row.push(acc);
                    acc *= z;
                }
                row
            })
            .collect();
        let mut value = Complex64::zero();
        let mut scale = 0.0;
        for (exps, c) in &self.terms {
            let term =
                exps.iter().enumerate().fold(Complex64::new(*c, 0.0), |acc, (i, &e)| acc * powers[i][e as usize]);
            value += term;
            scale += term.norm();
        }
        (value, scale)
    }

    /// `|value| / sum |term|`, or 0 when every term vanishes.
    pub fn relative_residual(&self, point: &[Complex64]) -> f64 {
        let (v, s) = self.eval_with_scale(point);
        if s == 0.0 {
            0.0
        } else {
            v.norm() / s
        }
    }
}

/// Evaluates `p` at a complex point.
pub fn eval_poly_complex(p: &MultiPoly, point: &[Complex64]) -> Complex64 {
    FloatPoly::new(p).eval_with_scale(point).0
}

/// A polynomial in `x` with float-compiled coefficients.
#[derive(Clone, Debug)]
pub(crate) struct FloatUni {
    coeffs: Vec<FloatPoly>,
    deriv: Vec<FloatPoly>,
}

impl FloatUni {
    pub(crate) fn new(p: &UniPoly) -> FloatUni {
        FloatUni {
            coeffs: p.coeffs().iter().map(FloatPoly::new).collect(),
            deriv: p.derivative().coeffs().iter().map(FloatPoly::new).collect(),
        }
    }

    pub(crate) fn coeffs_at(&self, point: &[Complex64]) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.eval_with_scale(point).0).collect()
    }

    pub(crate) fn value(&self, point: &[Complex64], x: Complex64) -> Complex64 {
        horner(&self.coeffs_at(point), x)
    }

    pub(crate) fn slope(&self, point: &[Complex64], x: Complex64) -> Complex64 {
        horner(&self.deriv.iter().map(|c| c.eval_with_scale(point).0).collect::<Vec<_>>(), x)
    }
}
