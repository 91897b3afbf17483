use std::collections::BTreeMap;

use proptest::prelude::*;

use num_traits::Zero;

use super::*;
use crate::polyring::{int, ratio, Rational, UniVar};

fn p(s: &str) -> MultiPoly {
    MultiPoly::parse(s, 4).unwrap()
}

fn ux(coeffs_high_first: &[&str]) -> UniPoly {
    let coeffs = coeffs_high_first.iter().rev().map(|s| p(s)).collect();
    UniPoly::new(UniVar::X, 4, coeffs).unwrap()
}

fn cx(nvars: usize, roots: &[Rational]) -> UniPoly {
    // monic product of (x - t)
    let mut acc = UniPoly::new(UniVar::X, nvars, vec![MultiPoly::one(nvars)]).unwrap();
    for t in roots {
        let lin = UniPoly::new(UniVar::X, nvars, vec![MultiPoly::constant(nvars, -t.clone()), MultiPoly::one(nvars)])
            .unwrap();
        acc = acc.checked_mul(&lin).unwrap();
    }
    acc
}

/// Oracle: first-row Laplace expansion.
fn cofactor_det(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut acc = MultiPoly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let t = &m[0][j] * &cofactor_det(&minor, nvars);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn rows_of(m: &PolyMatrix) -> Vec<Vec<MultiPoly>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

#[test]
fn sylvester_layouts() {
    let m = sylvester(&ux(&["1", "-1 * a1"]), &ux(&["1", "-1 * a2"])).unwrap();
    assert_eq!(rows_of(&m), vec![vec![p("1"), p("-1 * a1")], vec![p("1"), p("-1 * a2")]]);
    let m = sylvester(&ux(&["1", "a1", "a2"]), &ux(&["2", "a1"])).unwrap();
    assert_eq!(
        rows_of(&m),
        vec![vec![p("1"), p("a1"), p("a2")], vec![p("2"), p("a1"), p("0")], vec![p("0"), p("2"), p("a1")]]
    );
    assert_eq!(sylvester(&ux(&["3"]), &ux(&["a1"])), Err(ResultantError::BothConstant));
    let zero = UniPoly::new(UniVar::X, 4, vec![]).unwrap();
    assert_eq!(sylvester(&zero, &ux(&["1", "a1"])), Err(ResultantError::ZeroInput));
}

#[test]
fn determinant_examples() {
    let mut id = PolyMatrix::zeros(5, 5, 4);
    for i in 0..5 {
        id.set(i, i, MultiPoly::one(4));
    }
    for s in [DetStrategy::Auto, DetStrategy::Bareiss, DetStrategy::MinorExpansion] {
        assert_eq!(determinant_with(&id, s).unwrap(), MultiPoly::one(4));
    }
    let m = PolyMatrix::from_rows(4, vec![vec![p("a1"), p("a2")], vec![p("a3"), p("a4")]]).unwrap();
    assert_eq!(determinant(&m).unwrap(), p("a1*a4 + -1 * a2*a3"));
    let m = two_diagonal(1, &[p("a1"), p("a2"), p("a3")], &[p("a4"), p("2"), p("3")]).unwrap();
    assert_eq!(rows_of(&m)[0], vec![p("a1"), p("a4"), p("0")]);
    assert_eq!(rows_of(&m)[2], vec![p("3"), p("0"), p("a3")]);
    assert_eq!(determinant(&m).unwrap(), p("a1*a2*a3 + 6 * a4"));
    let nonsquare = PolyMatrix::zeros(2, 3, 4);
    assert_eq!(determinant(&nonsquare), Err(ResultantError::NotSquare { rows: 2, cols: 3 }));
}

#[test]
fn resultant_examples() {
    assert_eq!(resultant(&ux(&["1", "-1 * a1"]), &ux(&["1", "-1 * a2"])).unwrap(), p("a1 + -1 * a2"));
    // hand expansion: 1*(a1^2 - 2 a2) - a1*(2 a1) + a2*4
    assert_eq!(resultant(&ux(&["1", "a1", "a2"]), &ux(&["2", "a1"])).unwrap(), p("-1 * a1^2 + 4 * a2"));
}

/// `n! (x + a1/n)` against `x^n + a1 x^{n-1} + ... + an`.
#[test]
fn resultant_with_last_derivative() {
    for n in 4..=6usize {
        let nv = n;
        let mut pc: Vec<MultiPoly> =
            (0..=n).map(|i| if i == n { MultiPoly::one(nv) } else { MultiPoly::var(nv, n - i).unwrap() }).collect();
        pc.truncate(n + 1);
        let big_p = UniPoly::new(UniVar::X, nv, pc).unwrap();
        let fact: i64 = (1..=n as i64).product();
        let lin = UniPoly::new(
            UniVar::X,
            nv,
            vec![MultiPoly::var(nv, 1).unwrap().scale(&ratio(fact, n as i64)), MultiPoly::constant(nv, int(fact))],
        )
        .unwrap();
        let res = resultant(&big_p, &lin).unwrap();
        // (-1)^n (n!)^n P(-a1/n) expanded directly
        let t = MultiPoly::var(nv, 1).unwrap().scale(&ratio(-1, n as i64));
        let mut pv = MultiPoly::zero(nv);
        for j in 0..=n {
            let aj = if j == 0 { MultiPoly::one(nv) } else { MultiPoly::var(nv, j).unwrap() };
            pv = &pv + &(&aj * &t.pow((n - j) as u32));
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let expected = pv.scale(&Rational::from_integer(
            num_bigint::BigInt::from(sign) * num_bigint::BigInt::from(fact).pow(n as u32),
        ));
        assert_eq!(res, expected, "n = {n}");
    }
}

#[test]
fn subresultant_examples() {
    let one = int(1);
    let q = cx(4, &[one.clone(), int(2)]);
    let r = cx(4, &[one, int(3)]);
    assert!(resultant(&q, &r).unwrap().is_zero());
    // minor of order 2: [[1, -3], [1, -4]] -> -4 + 3
    assert_eq!(subresultant1(&q, &r).unwrap(), MultiPoly::constant(4, int(-1)));
    assert!(subresultant1(&q, &q).unwrap().is_zero());
    let g = ux(&["1", "a1", "a2"]);
    assert!(subresultant1(&g, &g).unwrap().is_zero());
    assert_eq!(subresultant1(&ux(&["1", "a1"]), &g), Err(ResultantError::DegreeTooSmall(1, 2)));
}

#[test]
fn euclid_remainder_examples() {
    let rem = euclid_remainder(&ux(&["1", "a1", "a2"]), &ux(&["1", "a1"])).unwrap();
    assert_eq!(rem, vec![p("a2")]);
    let q = ux(&["1", "a1", "a2", "a3"]);
    let rem = euclid_remainder(&q, &q).unwrap();
    assert!(rem.iter().all(MultiPoly::is_zero));
    assert_eq!(rem.len(), 3);
    // x^3 + a1 x^2 + a2 x + a3 by x^2 + a4: remainder (a2 - a4) x + a3 - a1 a4
    let rem = euclid_remainder(&q, &ux(&["1", "0", "a4"])).unwrap();
    assert_eq!(rem, vec![p("-1 * a1*a4 + a3"), p("a2 + -1 * a4")]);
}

#[test]
fn bareiss_and_minors_agree_on_sylvester() {
    let q = ux(&["1", "a1", "a2", "a3", "a4"]);
    let r = ux(&["4", "3 * a1", "2 * a2", "a3"]);
    let m = sylvester(&q, &r).unwrap();
    let b = determinant_with(&m, DetStrategy::Bareiss).unwrap();
    let e = determinant_with(&m, DetStrategy::MinorExpansion).unwrap();
    assert_eq!(b, e);
    assert_eq!(b, cofactor_det(&rows_of(&m), 4));
    assert_eq!(b.qhw().weight(), Some(12));
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn arb_nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn arb_entry() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 3), arb_rational()), 0..=3).prop_map(|terms| {
        MultiPoly::from_terms(3, terms.into_iter().map(|(e, c)| (crate::polyring::ExpVec::from_exponents(&e), c)))
    })
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<MultiPoly>>> {
    (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(arb_entry(), n), n))
}

fn arb_const_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    (arb_nonzero_rational(), prop::collection::vec(arb_rational(), 1..=max_deg)).prop_map(|(lead, mut rest)| {
        rest.push(lead);
        UniPoly::new(UniVar::X, 2, rest.into_iter().map(|c| MultiPoly::constant(2, c)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_matches_cofactor_expansion(rows in arb_matrix()) {
        let m = PolyMatrix::from_rows(3, rows.clone()).unwrap();
        let oracle = cofactor_det(&rows, 3);
        prop_assert_eq!(determinant_with(&m, DetStrategy::Bareiss).unwrap(), oracle.clone());
        prop_assert_eq!(determinant_with(&m, DetStrategy::MinorExpansion).unwrap(), oracle);
    }

    #[test]
    fn planted_common_root_kills_resultant(q in arb_const_poly(3), r in arb_const_poly(3), t in arb_rational()) {
        let lin = cx(2, &[t]);
        let qq = q.checked_mul(&lin).unwrap();
        let rr = r.checked_mul(&lin).unwrap();
        prop_assert!(resultant(&qq, &rr).unwrap().is_zero());
    }

    #[test]
    fn resultant_is_multiplicative(q1 in arb_const_poly(3), q2 in arb_const_poly(2), r in arb_const_poly(3)) {
        let lhs = resultant(&q1.checked_mul(&q2).unwrap(), &r).unwrap();
        let rhs = &resultant(&q1, &r).unwrap() * &resultant(&q2, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn planted_quadratic_kills_subresultant(q in arb_const_poly(2), r in arb_const_poly(2), s in arb_rational(), t in arb_rational()) {
        let quad = UniPoly::new(UniVar::X, 2, vec![
            MultiPoly::constant(2, t),
            MultiPoly::constant(2, s),
            MultiPoly::one(2),
        ]).unwrap();
        let qq = q.checked_mul(&quad).unwrap();
        let rr = r.checked_mul(&quad).unwrap();
        prop_assert!(subresultant1(&qq, &rr).unwrap().is_zero());
    }
}

/// The q-positions form the rotation `i -> i + s (mod p)`, which splits into
/// `gcd(p, s)` cycles; each cycle contributes its own `prod r +- prod q`.
fn cycle_formula(p: usize, s: usize, r: &[Rational], q: &[Rational]) -> Rational {
    let g = num_integer::gcd(p, s);
    let len = p / g;
    let sign = if (len - 1).is_multiple_of(2) { int(1) } else { int(-1) };
    let mut det = int(1);
    for start in 0..g {
        let (mut pr, mut pq) = (int(1), int(1));
        let mut i = start;
        for _ in 0..len {
            pr *= &r[i];
            pq *= &q[i];
            i = (i + s) % p;
        }
        det *= pr + &sign * pq;
    }
    det
}

#[test]
fn two_diagonal_determinants() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let mut seen: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let strat = (2usize..=8).prop_flat_map(|p| {
        (
            Just(p),
            1..p,
            prop::collection::vec(arb_nonzero_rational(), p),
            prop::collection::vec(arb_nonzero_rational(), p),
        )
    });
    for _ in 0..500 {
        let (pp, s, r, q) = proptest::strategy::ValueTree::current(&strat.new_tree(&mut runner).unwrap());
        let rp: Vec<MultiPoly> = r.iter().map(|c| MultiPoly::constant(1, c.clone())).collect();
        let qp: Vec<MultiPoly> = q.iter().map(|c| MultiPoly::constant(1, c.clone())).collect();
        let det = determinant(&two_diagonal(s, &rp, &qp).unwrap()).unwrap();
        let d = det.constant_value().unwrap_or_else(|| int(0));
        assert_eq!(d, cycle_formula(pp, s, &r, &q), "p={pp} s={s}");
        if num_integer::gcd(pp, s) != 1 {
            continue;
        }
        let prod_r: Rational = r.iter().product();
        let prod_q: Rational = q.iter().product();
        let plus = d == &prod_r + &prod_q;
        assert!(plus || d == &prod_r - &prod_q, "p={pp} s={s}");
        if prod_q.is_zero() {
            continue;
        }
        assert_eq!(*seen.entry((pp, s)).or_insert(plus), plus, "sign changed for p={pp} s={s}");
        assert_eq!(plus, (s * (pp - s)) % 2 == 0);
    }
}

#[test]
fn two_diagonal_with_shared_cycles_has_cross_terms() {
    let r: Vec<MultiPoly> = (1..=4).map(|k| MultiPoly::var(4, k).unwrap()).collect();
    let q: Vec<MultiPoly> = (1..=4).map(|k| MultiPoly::constant(4, int(k as i64 + 1))).collect();
    let det = determinant(&two_diagonal(2, &r, &q).unwrap()).unwrap();
    // (a1 a3 - 2*4)(a2 a4 - 3*5)
    assert_eq!(det, &p("a1*a3 + -8") * &p("a2*a4 + -15"));
}
