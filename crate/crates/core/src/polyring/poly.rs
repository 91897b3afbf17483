use std::collections::hash_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::coeff::Coeff;
use super::expvec::{ExpVec, MAX_VARS};
use super::PolyError;

/// Sparse multivariate polynomial in the ambient variables `a1..an`.
///
/// Terms are kept sorted in strictly descending graded-lex order with no
/// zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C> {
    nvars: usize,
    terms: Vec<(ExpVec, C)>,
}

/// Result of a quasi-homogeneity query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Qhw {
    /// The zero polynomial is homogeneous of every weight.
    Any,
    Weight(u64),
    NotHomogeneous,
}

impl Qhw {
    pub fn weight(self) -> Option<u64> {
        match self {
            Qhw::Weight(w) => Some(w),
            _ => None,
        }
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((ExpVec::ONE, c));
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The variable `a_k` (1-based).
    pub fn var(nvars: usize, k: usize) -> Result<Self, PolyError> {
        check_var(k, nvars)?;
        Ok(Self::monomial(nvars, ExpVec::var_power(k - 1, 1), C::one()))
    }

    pub fn monomial(nvars: usize, e: ExpVec, c: C) -> Self {
        debug_assert!(e.support_len() <= nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((e, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (ExpVec, C)>) -> Self {
        let mut acc: FxHashMap<ExpVec, C> = FxHashMap::default();
        for (e, c) in terms {
            assert!(e.support_len() <= nvars, "monomial exceeds {nvars} variables");
            match acc.entry(e) {
                Entry::Occupied(mut o) => o.get_mut().add_assign_ref(&c),
                Entry::Vacant(v) => {
                    v.insert(c);
                }
            }
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: FxHashMap<ExpVec, C>) -> Self {
        let mut terms: Vec<(ExpVec, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> &[(ExpVec, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(e, c)] if e.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(ExpVec, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| e.total_degree())
    }

    /// Degree in `a_k` (1-based); zero for the zero polynomial.
    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e.exp(k - 1)).max().unwrap_or(0)
    }

    /// Largest power of `a_k` dividing every term.
    pub fn min_degree_in(&self, k: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e.exp(k - 1)).min().unwrap_or(0)
    }

    pub fn involves(&self, k: usize) -> bool {
        self.terms.iter().any(|(e, _)| e.exp(k - 1) > 0)
    }

    /// 1-based indices of the variables occurring in the polynomial.
    pub fn variables(&self) -> Vec<usize> {
        (1..=self.nvars).filter(|&k| self.involves(k)).collect()
    }

    fn check_same(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same(other)?;
        Ok(self.mul_impl(other))
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if subtract { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if subtract {
                        c.sub_assign_ref(&b[j].1);
                    } else {
                        c.add_assign_ref(&b[j].1);
                    }
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (e, c) in &b[j..] {
            out.push((*e, if subtract { c.neg() } else { c.clone() }));
        }
        Poly { nvars: self.nvars, terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.mul_term(*e, c);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.mul_term(*e, c);
        }
        let mut acc: FxHashMap<ExpVec, C> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len().min(64));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let prod = ca.mul_ref(cb);
                match acc.entry(ea.times(*eb)) {
                    Entry::Occupied(mut o) => o.get_mut().add_assign_ref(&prod),
                    Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// `sum ± f_i * g_i` accumulated in a single pass.
    pub fn sum_of_products<'a>(nvars: usize, pairs: impl IntoIterator<Item = (&'a Self, &'a Self, bool)>) -> Self
    where
        C: 'a,
    {
        let mut acc: FxHashMap<ExpVec, C> = FxHashMap::default();
        for (f, g, negate) in pairs {
            assert!(f.nvars == nvars && g.nvars == nvars, "dimension mismatch");
            for (ea, ca) in &f.terms {
                for (eb, cb) in &g.terms {
                    let prod = ca.mul_ref(cb);
                    match acc.entry(ea.times(*eb)) {
                        Entry::Occupied(mut o) if negate => o.get_mut().sub_assign_ref(&prod),
                        Entry::Occupied(mut o) => o.get_mut().add_assign_ref(&prod),
                        Entry::Vacant(v) => {
                            v.insert(if negate { prod.neg() } else { prod });
                        }
                    }
                }
            }
        }
        Self::from_map(nvars, acc)
    }

    /// Multiplies by the single term `c * e`.
    pub fn mul_term(&self, e: ExpVec, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(te, tc)| (te.times(e), tc.mul_ref(c))).collect();
        // multiplying by a monomial preserves a monomial order
        Poly { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(ExpVec::ONE, c)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `a_k` (1-based).
    pub fn partial_derivative(&self, k: usize) -> Result<Self, PolyError> {
        check_var(k, self.nvars)?;
        let slot = k - 1;
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.exp(slot) > 0)
            .map(|(e, c)| {
                let d = e.exp(slot);
                (e.with_exp(slot, d - 1), c.mul_ref(&C::from_i64(d as i64)))
            })
            .collect();
        Ok(Poly { nvars: self.nvars, terms })
    }

    /// Quasi-homogeneous weight with `weight(a_j) = j`.
    pub fn qhw(&self) -> Qhw {
        let mut weights = self.terms.iter().map(|(e, _)| e.weight(self.nvars));
        match weights.next() {
            None => Qhw::Any,
            Some(w) => {
                if weights.all(|v| v == w) {
                    Qhw::Weight(w)
                } else {
                    Qhw::NotHomogeneous
                }
            }
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Repeatedly cancels the leading term of the running remainder by a
    /// multiple of the leading term of `d`; divisibility holds iff the
    /// remainder reaches zero.
    pub fn divide_exact(&self, d: &Self) -> Result<Option<Self>, PolyError> {
        self.check_same(d)?;
        let Some((lead_e, lead_c)) = d.terms.first() else {
            return Err(PolyError::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(Some(Self::zero(self.nvars)));
        }
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                if !lead_e.divides(*e) {
                    return Ok(None);
                }
                let Some(q) = c.exact_div(lead_c) else {
                    return Ok(None);
                };
                out.push((lead_e.quotient_of(*e), q));
            }
            return Ok(Some(Poly { nvars: self.nvars, terms: out }));
        }
        for k in 1..=self.nvars {
            if d.degree_in(k) > self.degree_in(k) {
                return Ok(None);
            }
        }
        let mut rem: BTreeMap<ExpVec, C> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((e, c)) = rem.pop_last() {
            if !lead_e.divides(e) {
                return Ok(None);
            }
            let Some(qc) = c.exact_div(lead_c) else {
                return Ok(None);
            };
            let qe = lead_e.quotient_of(e);
            for (de, dc) in &d.terms[1..] {
                let t = qe.times(*de);
                let v = qc.mul_ref(dc);
                match rem.entry(t) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        o.get_mut().sub_assign_ref(&v);
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(v.neg());
                    }
                }
            }
            quotient.push((qe, qc));
        }
        Ok(Some(Poly { nvars: self.nvars, terms: quotient }))
    }

    /// Coefficients of `self` viewed as a polynomial in `a_k`; entry `i`
    /// multiplies `a_k^i` and is free of `a_k`.
    pub fn coefficients_in(&self, k: usize) -> Result<Vec<Self>, PolyError> {
        check_var(k, self.nvars)?;
        let slot = k - 1;
        let deg = self.degree_in(k) as usize;
        let mut buckets: Vec<Vec<(ExpVec, C)>> = vec![Vec::new(); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            buckets[e.exp(slot) as usize].push((e.with_exp(slot, 0), c.clone()));
        }
        Ok(buckets.into_iter().map(|terms| Poly { nvars: self.nvars, terms }).collect())
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(nvars: usize, k: usize, coeffs: &[Self]) -> Result<Self, PolyError> {
        check_var(k, nvars)?;
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            if c.nvars != nvars {
                return Err(PolyError::DimensionMismatch(nvars, c.nvars));
            }
            for (e, v) in &c.terms {
                if e.exp(k - 1) != 0 {
                    return Err(PolyError::ContainsVariable(k));
                }
                terms.push((e.with_exp(k - 1, i as u32), v.clone()));
            }
        }
        Ok(Self::from_terms(nvars, terms))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let d = f(c);
                (!d.is_zero()).then_some((*e, d))
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    /// Same polynomial in a different ambient dimension. Fails if a variable
    /// beyond the new dimension occurs.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self, PolyError> {
        if nvars > MAX_VARS {
            return Err(PolyError::TooManyVariables(nvars));
        }
        if self.terms.iter().any(|(e, _)| e.support_len() > nvars) {
            return Err(PolyError::DimensionMismatch(self.nvars, nvars));
        }
        Ok(Poly { nvars, terms: self.terms.clone() })
    }
}

pub(crate) fn check_var(k: usize, nvars: usize) -> Result<(), PolyError> {
    if (1..=nvars).contains(&k) {
        Ok(())
    } else {
        Err(PolyError::VariableOutOfRange { index: k, nvars })
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}
