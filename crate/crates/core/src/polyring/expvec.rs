//! Packed exponent vectors.
//!
//! An [`ExpVec`] stores up to [`MAX_VARS`] exponents of 16 bits each in a
//! single `u128`, preceded by the total degree in the top 16 bits. With that
//! layout the native integer order *is* the graded-lex order
//! (total degree first, then `a1 > a2 > ... > an`), and monomial
//! multiplication is a single integer addition.

use std::fmt;

/// Largest number of ambient variables an [`ExpVec`] can hold.
pub const MAX_VARS: usize = 7;

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u128 = 0xffff;
const TOTAL_SHIFT: u32 = 112;

#[inline]
fn shift(slot: usize) -> u32 {
    TOTAL_SHIFT - FIELD_BITS * (slot as u32 + 1)
}

/// Exponent vector of a monomial `a1^e1 * ... * an^en`.
///
/// Slots are 0-based: slot `i` holds the exponent of `a_{i+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpVec(u128);

impl ExpVec {
    /// The constant monomial `1`.
    pub const ONE: ExpVec = ExpVec(0);

    pub fn from_exponents(exps: &[u32]) -> ExpVec {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables supported");
        let mut bits = 0u128;
        let mut total = 0u32;
        for (slot, &e) in exps.iter().enumerate() {
            assert!(e <= FIELD_MASK as u32, "exponent {e} overflows a 16-bit field");
            bits |= (e as u128) << shift(slot);
            total += e;
        }
        assert!(total <= FIELD_MASK as u32, "total degree {total} overflows");
        ExpVec(bits | ((total as u128) << TOTAL_SHIFT))
    }

    /// `a_{slot+1}^e`.
    pub fn var_power(slot: usize, e: u32) -> ExpVec {
        assert!(slot < MAX_VARS);
        assert!(e <= FIELD_MASK as u32);
        ExpVec(((e as u128) << shift(slot)) | ((e as u128) << TOTAL_SHIFT))
    }

    #[inline]
    pub fn exp(self, slot: usize) -> u32 {
        ((self.0 >> shift(slot)) & FIELD_MASK) as u32
    }

    #[inline]
    pub fn total_degree(self) -> u32 {
        (self.0 >> TOTAL_SHIFT) as u32
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Quasi-homogeneous weight `sum_j j * e_j` (weight of `a_j` is `j`).
    pub fn weight(self, nvars: usize) -> u64 {
        (0..nvars).map(|s| (s as u64 + 1) * self.exp(s) as u64).sum()
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|s| self.exp(s)).collect()
    }

    /// Number of the highest slot in use plus one.
    pub fn support_len(self) -> usize {
        (0..MAX_VARS).rev().find(|&s| self.exp(s) > 0).map_or(0, |s| s + 1)
    }

    #[inline]
    pub fn times(self, other: ExpVec) -> ExpVec {
        let total = self.total_degree() + other.total_degree();
        assert!(total <= FIELD_MASK as u32, "total degree {total} overflows");
        // every field is bounded by the total, so no carries cross fields
        ExpVec(self.0 + other.0)
    }

    /// `true` when `self` divides `other` componentwise.
    #[inline]
    pub fn divides(self, other: ExpVec) -> bool {
        (0..MAX_VARS).all(|s| self.exp(s) <= other.exp(s))
    }

    /// `other / self`; caller guarantees divisibility.
    #[inline]
    pub fn quotient_of(self, other: ExpVec) -> ExpVec {
        debug_assert!(self.divides(other));
        ExpVec(other.0 - self.0)
    }

    pub fn with_exp(self, slot: usize, e: u32) -> ExpVec {
        let old = self.exp(slot);
        let total = self.total_degree() - old + e;
        assert!(e <= FIELD_MASK as u32 && total <= FIELD_MASK as u32);
        let cleared = self.0 & !(FIELD_MASK << shift(slot)) & !(FIELD_MASK << TOTAL_SHIFT);
        ExpVec(cleared | ((e as u128) << shift(slot)) | ((total as u128) << TOTAL_SHIFT))
    }

    /// Componentwise half; `None` if some exponent is odd.
    pub fn halve(self) -> Option<ExpVec> {
        let mut exps = [0u32; MAX_VARS];
        for (s, e) in exps.iter_mut().enumerate() {
            let v = self.exp(s);
            if v % 2 == 1 {
                return None;
            }
            *e = v / 2;
        }
        Some(ExpVec::from_exponents(&exps))
    }

    pub fn pow(self, k: u32) -> ExpVec {
        let exps: Vec<u32> = (0..MAX_VARS).map(|s| self.exp(s) * k).collect();
        ExpVec::from_exponents(&exps)
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpVec({:?})", self.exponents(self.support_len()))
    }
}
