//! Sylvester matrices, exact determinants over `Q[a1..an]`, resultants and
//! the first principal subresultant coefficient.

mod determinant;

use thiserror::Error;

use crate::polyring::{MultiPoly, PolyError, UniPoly};

pub use determinant::{determinant, determinant_with, DetStrategy, SPARSE_ZERO_FRACTION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResultantError {
    #[error("both polynomials are constant")]
    BothConstant,
    #[error("zero polynomial input")]
    ZeroInput,
    #[error("polynomials are in different variables")]
    VariableMismatch,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("degrees ({0}, {1}) too small")]
    DegreeTooSmall(usize, usize),
    #[error("matrix order {0} exceeds the minor-expansion limit")]
    TooLarge(usize),
    #[error("an interior division was not exact")]
    InexactDivision,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Dense row-major matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> PolyMatrix {
        PolyMatrix { rows, cols, nvars, entries: vec![MultiPoly::zero(nvars); rows * cols] }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Result<PolyMatrix, ResultantError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(ResultantError::NotSquare { rows: nrows, cols: row.len() });
            }
            for e in row {
                if e.nvars() != nvars {
                    return Err(PolyError::DimensionMismatch(nvars, e.nvars()).into());
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix { rows: nrows, cols: ncols, nvars, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        assert_eq!(v.nvars(), self.nvars);
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[MultiPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn zero_fraction(&self) -> f64 {
        if self.entries.is_empty() {
            return 0.0;
        }
        self.entries.iter().filter(|e| e.is_zero()).count() as f64 / self.entries.len() as f64
    }

    /// Debug dump: nested arrays of canonical polynomial strings.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(MultiPoly::to_text).collect()).collect();
        serde_json::json!(rows)
    }
}

/// Sylvester matrix of `q` and `r` in their shared variable: the first
/// `deg r` rows carry the coefficients of `q` (highest degree first),
/// shifted one column right per row, followed by `deg q` rows built the
/// same way from `r`.
pub fn sylvester(q: &UniPoly, r: &UniPoly) -> Result<PolyMatrix, ResultantError> {
    if q.var() != r.var() {
        return Err(ResultantError::VariableMismatch);
    }
    if q.nvars() != r.nvars() {
        return Err(PolyError::DimensionMismatch(q.nvars(), r.nvars()).into());
    }
    let dq = q.degree().ok_or(ResultantError::ZeroInput)?;
    let dr = r.degree().ok_or(ResultantError::ZeroInput)?;
    if dq + dr == 0 {
        return Err(ResultantError::BothConstant);
    }
    let size = dq + dr;
    let mut m = PolyMatrix::zeros(size, size, q.nvars());
    for i in 0..dr {
        for t in 0..=dq {
            m.set(i, i + t, q.coeff(dq - t));
        }
    }
    for i in 0..dq {
        for t in 0..=dr {
            m.set(dr + i, i + t, r.coeff(dr - t));
        }
    }
    Ok(m)
}

/// `Res(q, r)` as the determinant of [`sylvester`].
pub fn resultant(q: &UniPoly, r: &UniPoly) -> Result<MultiPoly, ResultantError> {
    determinant(&sylvester(q, r)?)
}

/// First principal subresultant coefficient: the determinant of the leading
/// `(deg q + deg r - 2)`-square block of the Sylvester matrix after dropping
/// the last row of each of its two blocks.
pub fn subresultant1(q: &UniPoly, r: &UniPoly) -> Result<MultiPoly, ResultantError> {
    if q.var() != r.var() {
        return Err(ResultantError::VariableMismatch);
    }
    let dq = q.degree().ok_or(ResultantError::ZeroInput)?;
    let dr = r.degree().ok_or(ResultantError::ZeroInput)?;
    if dq < 2 || dr < 1 {
        return Err(ResultantError::DegreeTooSmall(dq, dr));
    }
    let full = sylvester(q, r)?;
    let size = dq + dr - 2;
    let keep: Vec<usize> = (0..dr - 1).chain(dr..dr + dq - 1).collect();
    let mut m = PolyMatrix::zeros(size, size, q.nvars());
    for (i, &src) in keep.iter().enumerate() {
        for j in 0..size {
            m.set(i, j, full.get(src, j).clone());
        }
    }
    determinant(&m)
}

/// Coefficients `[R0, R1, ...]` (lowest degree first, length `deg r`) of the
/// Euclidean remainder of `q` by `r`. Every step divides by the leading
/// coefficient of `r` exactly.
pub fn euclid_remainder(q: &UniPoly, r: &UniPoly) -> Result<Vec<MultiPoly>, ResultantError> {
    if q.var() != r.var() {
        return Err(ResultantError::VariableMismatch);
    }
    let dr = r.degree().ok_or(ResultantError::ZeroInput)?;
    let lead = r.leading().expect("nonzero");
    let mut rem: Vec<MultiPoly> = q.coeffs().to_vec();
    while rem.len() > dr {
        let top = rem.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let factor = top.divide_exact(lead)?.ok_or(ResultantError::InexactDivision)?;
        let offset = rem.len() - dr;
        for t in 0..dr {
            rem[offset + t] = &rem[offset + t] - &(&factor * &r.coeff(t));
        }
    }
    rem.resize(dr, MultiPoly::zero(q.nvars()));
    Ok(rem)
}

/// Matrix with `r_j` on the diagonal, `q_nu` at `(nu, nu + s)` for
/// `nu = 1..=p-s` and `q_{mu+p-s}` at `(mu + p - s, mu)` for `mu = 1..=s`
/// (1-based positions). For `gcd(p, s) = 1` its determinant is
/// `prod r + (-1)^{s(p-s)} prod q`; in general it factors over the cycles
/// of `i -> i + s mod p` as `prod_cycles (prod r + (-1)^{len-1} prod q)`.
pub fn two_diagonal(s: usize, r: &[MultiPoly], q: &[MultiPoly]) -> Result<PolyMatrix, ResultantError> {
    let p = r.len();
    if q.len() != p || s == 0 || s >= p {
        return Err(ResultantError::DegreeTooSmall(p, s));
    }
    let nvars = r[0].nvars();
    let mut m = PolyMatrix::zeros(p, p, nvars);
    for (j, rj) in r.iter().enumerate() {
        m.set(j, j, rj.clone());
    }
    for nu in 1..=p - s {
        m.set(nu - 1, nu + s - 1, q[nu - 1].clone());
    }
    for mu in 1..=s {
        m.set(mu + p - s - 1, mu - 1, q[mu + p - s - 1].clone());
    }
    Ok(m)
}

#[cfg(test)]
mod tests;
