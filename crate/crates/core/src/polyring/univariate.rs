use std::fmt;

use super::{MultiPoly, PolyError, Rational};

/// Distinguished variable of a [`UniPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UniVar {
    /// The formal variable `x`, not one of the ambient variables.
    X,
    /// The ambient variable `a_k` (1-based).
    A(usize),
}

impl fmt::Display for UniVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniVar::X => f.write_str("x"),
            UniVar::A(k) => write!(f, "a{k}"),
        }
    }
}

/// Dense univariate polynomial with [`MultiPoly`] coefficients;
/// `coeffs[i]` multiplies `var^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    var: UniVar,
    nvars: usize,
    coeffs: Vec<MultiPoly>,
}

impl UniPoly {
    /// Trims zero top coefficients; rejects coefficients that involve the
    /// distinguished ambient variable.
    pub fn new(var: UniVar, nvars: usize, mut coeffs: Vec<MultiPoly>) -> Result<UniPoly, PolyError> {
        for c in &coeffs {
            if c.nvars() != nvars {
                return Err(PolyError::DimensionMismatch(nvars, c.nvars()));
            }
            if let UniVar::A(k) = var {
                if k == 0 || k > nvars {
                    return Err(PolyError::VariableOutOfRange { index: k, nvars });
                }
                if c.involves(k) {
                    return Err(PolyError::ContainsVariable(k));
                }
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(UniPoly { var, nvars, coeffs })
    }

    /// `p` viewed as a polynomial in `a_k`.
    pub fn in_variable(p: &MultiPoly, k: usize) -> Result<UniPoly, PolyError> {
        UniPoly::new(UniVar::A(k), p.nvars(), p.coefficients_in(k)?)
    }

    pub fn var(&self) -> UniVar {
        self.var
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&MultiPoly> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> MultiPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    /// Derivative with respect to the distinguished variable.
    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Rational::from_integer((i as i64).into())))
            .collect();
        UniPoly::new(self.var, self.nvars, coeffs).expect("derivative keeps the variable structure")
    }

    /// Recombines an `a_k`-polynomial into a plain [`MultiPoly`].
    pub fn to_multipoly(&self) -> Option<MultiPoly> {
        match self.var {
            UniVar::A(k) => Some(
                MultiPoly::from_coefficients_in(self.nvars, k, &self.coeffs).expect("coefficients are free of a_k"),
            ),
            UniVar::X => None,
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> UniPoly {
        let coeffs = self.coeffs.iter().map(|q| q * c).collect();
        UniPoly::new(self.var, self.nvars, coeffs).expect("scaling by a free coefficient")
    }

    pub fn checked_sub(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        self.check_compatible(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        UniPoly::new(self.var, self.nvars, coeffs)
    }

    pub fn checked_mul(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(self.var, self.nvars, Vec::new());
        }
        let mut coeffs = vec![MultiPoly::zero(self.nvars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.var, self.nvars, coeffs)
    }

    /// Multiplies by `var^s`.
    pub fn shift(&self, s: usize) -> UniPoly {
        let mut coeffs = vec![MultiPoly::zero(self.nvars); s];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly::new(self.var, self.nvars, coeffs).expect("shift keeps the variable structure")
    }

    fn check_compatible(&self, other: &UniPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch(self.nvars, other.nvars));
        }
        if self.var != other.var {
            return Err(PolyError::VariableMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*{}", self.var),
                _ => format!("({c})*{}^{i}", self.var),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
