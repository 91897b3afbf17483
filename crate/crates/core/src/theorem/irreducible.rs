//! One-sided irreducibility heuristic for multivariate polynomials.
//!
//! `true` means: every variable direction admitted a specialization of the
//! remaining variables to an irreducible univariate of unchanged degree, and
//! no split of the variables into two groups factors the polynomial as
//! `f(X) g(Y)`. `false` is inconclusive.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyring::{rational_sqrt, MultiPoly, Rational};

const PRIMES: [u64; 12] = [1_000_003, 1_000_033, 1_000_037, 10_007, 10_009, 101, 103, 107, 109, 113, 997, 65_537];

pub fn irreducible_heuristic(p: &MultiPoly, trials: usize) -> bool {
    irreducible_heuristic_seeded(p, trials, 0x5eed)
}

pub fn irreducible_heuristic_seeded(p: &MultiPoly, trials: usize, seed: u64) -> bool {
    if p.is_constant() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = p.variables();
    for &v in &vars {
        let degree = p.degree_in(v) as usize;
        let found = (0..trials.max(1)).any(|_| {
            let point: BTreeMap<usize, Rational> =
                vars.iter().filter(|&&w| w != v).map(|&w| (w, random_value(&mut rng))).collect();
            let uni = p.substitute(&point).expect("indices in range");
            let coeffs = integer_coeffs(&uni.coefficients_in(v).expect("in range"));
            coeffs.len() == degree + 1 && univariate_irreducible(&coeffs)
        });
        if !found {
            return false;
        }
    }
    !splits_over_bipartition(p, &vars, &mut rng)
}

fn random_value(rng: &mut ChaCha8Rng) -> Rational {
    let v: i64 = rng.gen_range(-9..=9);
    Rational::from_integer(BigInt::from(if v == 0 { 10 } else { v }))
}

/// Integer coefficients (lowest degree first) of a constant-coefficient
/// list, scaled by the common denominator.
fn integer_coeffs(coeffs: &[MultiPoly]) -> Vec<BigInt> {
    let vals: Vec<Rational> = coeffs.iter().map(|c| c.constant_value().unwrap_or_else(Rational::zero)).collect();
    let l = vals.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let mut out: Vec<BigInt> = vals.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Irreducibility over the rationals of an integer polynomial (lowest
/// degree first). Exact for degree <= 2; for higher degree, true only when
/// some small prime not dividing the leading coefficient certifies it.
pub fn univariate_irreducible(c: &[BigInt]) -> bool {
    match c.len() {
        0 | 1 => false,
        2 => true,
        3 => {
            let disc = &c[1] * &c[1] - BigInt::from(4) * &c[2] * &c[0];
            rational_sqrt(&Rational::from_integer(disc)).is_none()
        }
        _ => PRIMES.iter().any(|&p| {
            let lead = c.last().expect("nonempty").mod_floor(&BigInt::from(p));
            !lead.is_zero() && irreducible_mod_p(&reduce(c, p), p)
        }),
    }
}

fn reduce(c: &[BigInt], p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    c.iter().map(|x| x.mod_floor(&bp).to_u64().expect("reduced")).collect()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// `a mod f` for monic `f`.
fn rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    trim(&mut a);
    while a.len() > d {
        let top = a.pop().expect("nonempty");
        if top != 0 {
            let off = a.len() - d;
            for i in 0..d {
                a[off + i] = (a[off + i] + p - mulmod(top, f[i], p)) % p;
            }
        }
        trim(&mut a);
    }
    a
}

fn mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    rem(out, f, p)
}

/// `g^p mod f`.
fn frobenius(g: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = g.to_vec();
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_rem(&result, &base, f, p);
        }
        base = mul_rem(&base, &base, f, p);
        e >>= 1;
    }
    result
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead = *b.last().expect("nonempty");
        let il = inv(lead, p);
        let monic: Vec<u64> = b.iter().map(|&x| mulmod(x, il, p)).collect();
        let r = rem(a, &monic, p);
        a = monic;
        b = r;
    }
    a.len().saturating_sub(1)
}

fn prime_factors(mut d: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= d {
        if d.is_multiple_of(q) {
            out.push(q);
            while d.is_multiple_of(q) {
                d /= q;
            }
        }
        q += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// Rabin's test: monic `f` of degree `d` is irreducible over `F_p` iff
/// `x^{p^d} = x mod f` and `gcd(x^{p^{d/q}} - x, f) = 1` for each prime `q | d`.
fn irreducible_mod_p(c: &[u64], p: u64) -> bool {
    let d = c.len() - 1;
    let il = inv(*c.last().expect("nonempty"), p);
    let f: Vec<u64> = c.iter().map(|&x| mulmod(x, il, p)).collect();
    let x = rem(vec![0, 1], &f, p);
    // powers[i] = x^{p^i} mod f
    let mut powers = vec![x.clone()];
    for _ in 0..d {
        let next = frobenius(powers.last().expect("nonempty"), &f, p);
        powers.push(next);
    }
    if !sub(&powers[d], &x, p).is_empty() {
        return false;
    }
    prime_factors(d).into_iter().all(|q| gcd_degree(f.clone(), sub(&powers[d / q], &x, p), p) == 0)
}

/// Detects `p = f(X) g(Y)` for a nontrivial split `X | Y` of the variables:
/// such a product satisfies `p(X, Y) p(X0, Y0) = p(X, Y0) p(X0, Y)`.
fn splits_over_bipartition(p: &MultiPoly, vars: &[usize], rng: &mut ChaCha8Rng) -> bool {
    if vars.len() < 2 {
        return false;
    }
    let count = 1u32 << (vars.len() - 1);
    (1..count).any(|mask| {
        (0..3).all(|_| {
            let here: Vec<Rational> = vars.iter().map(|_| random_value(rng)).collect();
            let base: Vec<Rational> = vars.iter().map(|_| random_value(rng)).collect();
            let eval = |take_here: &dyn Fn(usize) -> bool| {
                let point: BTreeMap<usize, Rational> = vars
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, if take_here(i) { here[i].clone() } else { base[i].clone() }))
                    .collect();
                p.substitute(&point).expect("in range").constant_value().unwrap_or_else(Rational::zero)
            };
            let in_x = |i: usize| mask & (1 << i) != 0;
            let full = eval(&|_| true);
            let none = eval(&|_| false);
            let x_only = eval(&|i| in_x(i));
            let y_only = eval(&|i| !in_x(i));
            full * none == x_only * y_only
        })
    })
}
