//! Operations specific to rational-coefficient polynomials.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::expvec::ExpVec;
use super::poly::check_var;
use super::{IntPoly, MultiPoly, PolyError, Rational};

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

impl MultiPoly {
    /// Splits `self` as `unit * prim`, where `prim` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn normalize_primitive(&self) -> Result<(Rational, MultiPoly), PolyError> {
        let Some(lead) = self.leading_coeff() else {
            return Err(PolyError::ZeroPolynomial);
        };
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in self.terms() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut unit = Rational::new(g, l);
        if lead.is_negative() {
            unit = -unit;
        }
        let inv = unit.recip();
        Ok((unit, self.scale(&inv)))
    }

    /// Primitive part; the zero polynomial maps to itself.
    pub fn primitive(&self) -> MultiPoly {
        self.normalize_primitive().map(|(_, p)| p).unwrap_or_else(|_| self.clone())
    }

    /// Exact square root, normalized to a positive leading coefficient.
    ///
    /// Recurses on the lowest-index variable present: views `self` as a
    /// univariate polynomial with polynomial coefficients, takes the root of
    /// the leading coefficient and peels the remaining root coefficients in
    /// descending degree by exact division. The candidate is verified by
    /// squaring.
    pub fn sqrt_exact(&self) -> Option<MultiPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let root = self.sqrt_candidate()?;
        let root = if root.leading_coeff()?.is_negative() { -root } else { root };
        (&root * &root == *self).then_some(root)
    }

    fn sqrt_candidate(&self) -> Option<MultiPoly> {
        if let Some(c) = self.constant_value() {
            return rational_sqrt(&c).map(|r| MultiPoly::constant(self.nvars(), r));
        }
        let k = self.variables()[0];
        let coeffs = self.coefficients_in(k).ok()?;
        let deg = coeffs.len() - 1;
        if deg % 2 == 1 {
            return None;
        }
        let half = deg / 2;
        let mut root: Vec<MultiPoly> = vec![MultiPoly::zero(self.nvars()); half + 1];
        root[half] = coeffs[deg].sqrt_candidate()?;
        let twice_lead = root[half].scale(&Rational::from_integer(2.into()));
        for j in (0..half).rev() {
            // coefficient of x^(half+j) in root^2 is 2*r_half*r_j + sum of r_i*r_l, j < i,l < half
            let mut acc = coeffs[half + j].clone();
            for i in (j + 1)..half {
                let l = half + j - i;
                if l > j && l < half {
                    acc = &acc - &(&root[i] * &root[l]);
                }
            }
            root[j] = acc.divide_exact(&twice_lead).ok()??;
        }
        MultiPoly::from_coefficients_in(self.nvars(), k, &root).ok()
    }

    /// Partial or full evaluation at the given (1-based index) values.
    pub fn substitute(&self, point: &BTreeMap<usize, Rational>) -> Result<MultiPoly, PolyError> {
        for &k in point.keys() {
            check_var(k, self.nvars())?;
        }
        let terms = self.terms().iter().map(|(e, c)| {
            let mut coeff = c.clone();
            let mut exp = *e;
            for (&k, v) in point {
                let d = e.exp(k - 1);
                if d > 0 {
                    coeff *= num_traits::pow(v.clone(), d as usize);
                    exp = exp.with_exp(k - 1, 0);
                }
            }
            (exp, coeff)
        });
        Ok(MultiPoly::from_terms(self.nvars(), terms))
    }

    /// Full evaluation at `values[j] = a_{j+1}`.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational, PolyError> {
        if values.len() != self.nvars() {
            return Err(PolyError::DimensionMismatch(self.nvars(), values.len()));
        }
        let mut sum = Rational::zero();
        for (e, c) in self.terms() {
            let mut t = c.clone();
            for (slot, v) in values.iter().enumerate() {
                let d = e.exp(slot);
                if d > 0 {
                    t *= num_traits::pow(v.clone(), d as usize);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// `(L, L * self)` with `L` the lcm of all denominators.
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let l = self.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let lr = Rational::from_integer(l.clone());
        let ints = self.map_coeffs(|c| (c * &lr).to_integer());
        (l, ints)
    }

    /// Constant rational polynomial helper.
    pub fn from_rational(nvars: usize, c: Rational) -> MultiPoly {
        MultiPoly::constant(nvars, c)
    }

    /// Sign of the leading coefficient (`0` for the zero polynomial).
    pub fn leading_sign(&self) -> Sign {
        match self.leading_coeff() {
            None => Sign::NoSign,
            Some(c) if c.is_negative() => Sign::Minus,
            Some(_) => Sign::Plus,
        }
    }
}

impl IntPoly {
    pub fn to_rational(&self) -> MultiPoly {
        self.map_coeffs(|c| Rational::from_integer(c.clone()))
    }
}

/// `a1^e1 * ... ` helper used by constructors and tests.
pub fn monomial(nvars: usize, exps: &[u32], c: Rational) -> MultiPoly {
    let mut full = vec![0u32; nvars];
    full[..exps.len()].copy_from_slice(exps);
    MultiPoly::monomial(nvars, ExpVec::from_exponents(&full), c)
}
