//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion whose statement is mathematically false is reported as FAIL
//! with the counterexamples; the run then checks the corrected statement
//! instead and only exits nonzero if that check, or any other criterion,
//! fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use discrim_core::family::{build_dm, build_dmk, build_p, check_prop1, FamilyConfig};
use discrim_core::polyring::{int, ratio, ExpVec, MultiPoly, Rational};
use discrim_core::resultants::{resultant, two_diagonal};
use discrim_core::strata::{sample_maxwell, sample_theta, DEFAULT_TOL};
use discrim_core::theorem::{cross_check_c_mn2, verify_theorem};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
    /// For a criterion that cannot pass as stated: whether the corrected
    /// statement holds.
    corrected: Option<bool>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome { pass, detail: detail.into(), corrected: None }
    }
}

fn poly(s: &str, n: usize) -> MultiPoly {
    MultiPoly::parse(s, n).unwrap()
}

fn weight(p: &MultiPoly) -> Option<u64> {
    let ws: Vec<u64> = p
        .terms()
        .iter()
        .map(|(e, _)| e.exponents(p.nvars()).iter().enumerate().map(|(i, &x)| (i as u64 + 1) * x as u64).sum())
        .collect();
    ws.first().copied().filter(|w| ws.iter().all(|x| x == w))
}

fn cubic(a: Rational, b: Rational) -> FamilyConfig {
    FamilyConfig::custom(3, 1, vec![int(1), a, b]).unwrap()
}

fn cubic_d1(a: &Rational, b: &Rational) -> MultiPoly {
    let one = int(1);
    let t = |q: Rational, s: &str| poly(s, 3).scale(&q);
    [
        t((&one - a) * b * (b - a), "a1^2*a2^2"),
        t(int(3) * a * b - a - int(2) * b, "a1*a2*a3"),
        t(one.clone(), "a3^2"),
        t(a * a * (&one - a), "a1^3*a3"),
        t(b * (&one - b) * (&one - b), "a2^3"),
    ]
    .iter()
    .fold(MultiPoly::zero(3), |acc, p| &acc + p)
}

fn criterion_1() -> Outcome {
    let cfg = cubic(ratio(2, 3), ratio(1, 3));
    let k = ratio(-64, 14_348_907);
    let expected = [
        (&poly("a3", 3) * &poly("-27 * a3^2 + a2^3", 3).pow(3)).scale(&k),
        (&poly("a3", 3) * &poly("-27 * a3 + a1^3", 3).pow(3)).scale(&k),
        poly("3 * a2 + -1 * a1^2", 3).pow(3).scale(&ratio(16, 729)),
    ];
    let iterated = (1..=3).all(|i| build_dmk(&cfg, i).unwrap() == expected[i - 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pairs = Vec::new();
    while pairs.len() < 5 {
        let a = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        let b = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        if a.is_zero() || b.is_zero() || a.is_one() || b.is_one() || a == b {
            continue;
        }
        pairs.push((a, b));
    }
    let matches =
        pairs.iter().filter(|(a, b)| build_dm(&cubic(a.clone(), b.clone())).unwrap() == cubic_d1(a, b)).count();
    Outcome::new(
        iterated && matches == pairs.len(),
        format!("D_(1,k) exact for k=1..3: {iterated}; D_1 closed form at {matches}/{} random (A,B)", pairs.len()),
    )
}

/// Verifies the factorization, rebuilding the product independently.
fn factorization_ok(cfg: &FamilyConfig, k: usize, s: u32, r: u32, a_exp: u32) -> Result<(), String> {
    let rep = verify_theorem(cfg, k).map_err(|e| e.to_string())?;
    let n = cfg.n();
    let dmk = build_dmk(cfg, k).unwrap();
    let a = MultiPoly::monomial(n, ExpVec::var_power(rep.a_var - 1, a_exp), int(1));
    let c = rep.c_poly.clone().ok_or("no C")?;
    let rebuilt = (&(&a * &rep.b_poly.pow(s)) * &c.pow(r)).scale(&rep.omega);
    let checks = [
        ("s", rep.s == s),
        ("r", rep.r == r),
        ("A exponent", rep.a_exp == a_exp),
        ("residual constant", rep.residual.is_constant()),
        ("reconstruction", rebuilt == dmk),
        ("B free of a_k", !rep.b_poly.involves(k)),
        ("C free of a_k", !c.involves(k)),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((what, _)) => Err(format!("n={n} m={} k={k}: {what}", cfg.m())),
        None => Ok(()),
    }
}

fn theorem_grid(cfgs: &[FamilyConfig]) -> Outcome {
    let mut cells = 0;
    let mut errors = Vec::new();
    for cfg in cfgs {
        for k in 1..=cfg.n() {
            cells += 1;
            let (n, m) = (cfg.n(), cfg.m());
            let a_exp = if k <= n - m { n - m - k } else { n - k } as u32;
            if let Err(e) = factorization_ok(cfg, k, 1, 2, a_exp) {
                errors.push(e);
            }
            if !verify_theorem(cfg, k).unwrap().checks.theorem_holds {
                errors.push(format!("n={n} m={m} k={k}: theorem_holds=false"));
            }
        }
    }
    Outcome::new(
        errors.is_empty(),
        format!(
            "{} of {cells} cells with s=1, r=2, exact reconstruction {}",
            cells - errors.len().min(cells),
            errors.join("; ")
        ),
    )
}

fn criterion_2() -> Outcome {
    let d = FamilyConfig::derivative(4, 2).unwrap();
    assert_eq!(d.b(), &[int(12), int(6), int(2)]);
    theorem_grid(&[d, FamilyConfig::generic(4, 2).unwrap()])
}

fn criterion_3() -> Outcome {
    theorem_grid(&[FamilyConfig::derivative(5, 2).unwrap(), FamilyConfig::derivative(5, 3).unwrap()])
}

fn criterion_4() -> Outcome {
    let cfg = FamilyConfig::derivative(4, 1).unwrap();
    let n = 4usize;
    let errors: Vec<String> = (1..=n)
        .filter_map(|k| {
            let a_exp = (1.min(n - k) + (n - k).saturating_sub(2)) as u32;
            factorization_ok(&cfg, k, 3, 2, a_exp).err()
        })
        .collect();
    Outcome::new(errors.is_empty(), format!("s=3, r=2 for k=1..4 {}", errors.join("; ")))
}

fn criterion_5() -> Outcome {
    let mut ok = Vec::new();
    for n in 3..=6usize {
        let p = build_p(&FamilyConfig::derivative(n, 1).unwrap());
        let mut d = p.clone();
        for _ in 0..n - 1 {
            d = d.derivative();
        }
        let res = resultant(&p, &d).unwrap();
        let t = poly("a1", n).scale(&ratio(-1, n as i64));
        let pv = (0..=n).fold(MultiPoly::zero(n), |acc, j| {
            let aj = if j == 0 { MultiPoly::one(n) } else { MultiPoly::var(n, j).unwrap() };
            &acc + &(&aj * &t.pow((n - j) as u32))
        });
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let expected = pv.scale(&Rational::from_integer(fact.pow(n as u32) * sign));
        let via_family = build_dm(&FamilyConfig::derivative(n, n - 1).unwrap()).unwrap();
        ok.push(res == expected && via_family == expected);
    }
    Outcome::new(ok.iter().all(|&x| x), format!("n=3..6: {ok:?}"))
}

fn prop1_independent(cfg: &FamilyConfig) -> Result<(), String> {
    let (n, m) = (cfg.n(), cfg.m());
    let d = n - m;
    let b = cfg.b();
    let dm = build_dm(cfg).unwrap();
    for j in 1..=n {
        let expected = if j <= d { n } else { d } as u32;
        if dm.degree_in(j) != expected {
            return Err(format!("n={n} m={m}: deg in a{j} = {}", dm.degree_in(j)));
        }
    }
    let coeff_at = |exps: &[u32]| {
        let e = ExpVec::from_exponents(exps);
        dm.terms().iter().find(|(t, _)| *t == e).map(|(_, c)| c.clone())
    };
    let unique = |var: usize, top: u32| dm.terms().iter().filter(|(e, _)| e.exp(var - 1) == top).count() == 1;
    for j in 1..=d {
        let mut exps = vec![0u32; n];
        exps[j - 1] = n as u32;
        exps[n - 1] += (d - j) as u32;
        // b_j^n (1 - b_0/b_j)^j
        let expected = (b[j].pow(n as i32) * (int(1) - &b[0] / &b[j]).pow(j as i32)).abs();
        if coeff_at(&exps).map(|c| c.abs()) != Some(expected) || !unique(j, n as u32) {
            return Err(format!("n={n} m={m}: M_{j}"));
        }
    }
    for s in 1..m {
        let mut exps = vec![0u32; n];
        exps[d - 1] = (m - s) as u32;
        exps[d + s - 1] = d as u32;
        let expected = (b[d].pow((m - s) as i32) * b[0].pow((d + s) as i32)).abs();
        if coeff_at(&exps).map(|c| c.abs()) != Some(expected) || !unique(d + s, d as u32) {
            return Err(format!("n={n} m={m}: N_{s}"));
        }
    }
    if weight(&dm) != Some((n * d) as u64) {
        return Err(format!("n={n} m={m}: weight"));
    }
    if !check_prop1(cfg).unwrap().passed() {
        return Err(format!("n={n} m={m}: library report disagrees"));
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut errors = Vec::new();
    let mut count = 0;
    for n in 4..=6 {
        for m in 2..=n - 2 {
            for cfg in [FamilyConfig::derivative(n, m).unwrap(), FamilyConfig::generic(n, m).unwrap()] {
                count += 1;
                if let Err(e) = prop1_independent(&cfg) {
                    errors.push(e);
                }
            }
        }
    }
    Outcome::new(errors.is_empty(), format!("{count} configurations {}", errors.join("; ")))
}

fn criterion_7() -> Outcome {
    let cfgs = [
        FamilyConfig::derivative(4, 2).unwrap(),
        FamilyConfig::generic(4, 2).unwrap(),
        FamilyConfig::derivative(5, 2).unwrap(),
        FamilyConfig::derivative(5, 3).unwrap(),
    ];
    let mut errors = Vec::new();
    let mut count = 0;
    for cfg in &cfgs {
        let (n, m) = (cfg.n(), cfg.m());
        for k in 1..=n {
            count += 1;
            let dmk = build_dmk(cfg, k).unwrap();
            let (var, exp) = if k <= n - m { (n, n - m - k) } else { (n - m, n - k) };
            for j in 1..=n {
                let want = if j == var { exp as u32 } else { 0 };
                if dmk.min_degree_in(j) != want {
                    errors.push(format!("n={n} m={m} k={k}: a{j}^{}", dmk.min_degree_in(j)));
                }
            }
        }
    }
    Outcome::new(errors.is_empty(), format!("{count} polynomials {}", errors.join("; ")))
}

/// Gaussian elimination over the rationals.
fn rational_det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = int(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else { return int(0) };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut stated_fail = 0;
    let mut fail_shared_cycles = 0;
    let mut corrected_fail = 0;
    for _ in 0..500 {
        let p = rng.gen_range(2..=8usize);
        let s = rng.gen_range(1..p);
        let mut draw = || loop {
            let v = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            if !v.is_zero() {
                return v;
            }
        };
        let r: Vec<Rational> = (0..p).map(|_| draw()).collect();
        let q: Vec<Rational> = (0..p).map(|_| draw()).collect();
        let as_poly = |v: &[Rational]| v.iter().map(|x| MultiPoly::constant(1, x.clone())).collect::<Vec<_>>();
        let m = two_diagonal(s, &as_poly(&r), &as_poly(&q)).unwrap();
        let dense: Vec<Vec<Rational>> =
            (0..p).map(|i| (0..p).map(|j| m.get(i, j).constant_value().unwrap_or_else(|| int(0))).collect()).collect();
        let det = rational_det(dense);
        let pr: Rational = r.iter().product();
        let pq: Rational = q.iter().product();
        if det != &pr + &pq && det != &pr - &pq {
            stated_fail += 1;
            if p.gcd(&s) > 1 {
                fail_shared_cycles += 1;
            }
        }
        // corrected: product over the cycles of i -> i + s (mod p)
        let g = p.gcd(&s);
        let len = p / g;
        let sign = if len % 2 == 1 { int(1) } else { int(-1) };
        let corrected: Rational = (0..g)
            .map(|start| {
                let idx: Vec<usize> = (0..len).map(|t| (start + t * s) % p).collect();
                idx.iter().map(|&i| r[i].clone()).product::<Rational>()
                    + &sign * idx.iter().map(|&i| q[i].clone()).product::<Rational>()
            })
            .product();
        if det != corrected {
            corrected_fail += 1;
        }
    }
    Outcome {
        pass: stated_fail == 0,
        detail: format!(
            "{stated_fail}/500 matrices violate det = prod r ± prod q ({fail_shared_cycles} of them with gcd(p,s) > 1); \
             the cycle-product formula holds on {}/500",
            500 - corrected_fail
        ),
        corrected: Some(corrected_fail == 0 && stated_fail == fail_shared_cycles),
    }
}

fn criterion_9() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (n, m, k) in [(4, 2, 3), (4, 2, 1), (5, 3, 5), (5, 2, 4)] {
        let cfg = FamilyConfig::derivative(n, m).unwrap();
        let mw = sample_maxwell(&cfg, k, 100, 0, DEFAULT_TOL).unwrap();
        let good = mw.samples.iter().filter(|s| s.passed(DEFAULT_TOL)).count();
        ok &= mw.passed && mw.samples.len() == 100;
        let mut line = format!(
            "({n},{m},{k}) maxwell {good}/100 max C {:.1e} min off {:.1e}",
            mw.max_target_residual, mw.min_residual_off
        );
        if k > n - m {
            let th = sample_theta(&cfg, k, 100, 0, DEFAULT_TOL).unwrap();
            let good = th.samples.iter().filter(|s| s.passed(DEFAULT_TOL)).count();
            ok &= th.passed && th.samples.len() == 100;
            line +=
                &format!(", theta {good}/100 max B {:.1e} min off {:.1e}", th.max_target_residual, th.min_residual_off);
        }
        lines.push(line);
    }
    Outcome::new(ok, lines.join("; "))
}

fn criterion_10() -> Outcome {
    let mut errors = Vec::new();
    let mut count = 0;
    for n in 4..=5usize {
        let cfg = FamilyConfig::derivative(n, n - 2).unwrap();
        for k in 3..=n {
            count += 1;
            let rep = verify_theorem(&cfg, k).unwrap();
            let cc = cross_check_c_mn2(&cfg, k, &rep).unwrap();
            let c = rep.c_poly.as_ref().unwrap();
            let qhw_ok = weight(&rep.b_poly) == Some(2) && weight(c) == Some((2 * n - k - 1) as u64);
            let support_ok = cc.cofactor_vars.iter().all(|&v| v <= 2);
            if !(cc.passed() && cc.divides && qhw_ok && support_ok) {
                errors.push(format!("n={n} k={k}: {cc:?}"));
            }
        }
    }
    Outcome::new(errors.is_empty(), format!("{count} cases {}", errors.join("; ")))
}

type Criterion = (u32, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Some(Duration::from_secs(5))),
        (2, criterion_2, Some(Duration::from_secs(60))),
        (3, criterion_3, Some(Duration::from_secs(15 * 60))),
        (4, criterion_4, Some(Duration::from_secs(60))),
        (5, criterion_5, Some(Duration::from_secs(5))),
        (6, criterion_6, Some(Duration::from_secs(10 * 60))),
        (7, criterion_7, None),
        (8, criterion_8, None),
        (9, criterion_9, Some(Duration::from_secs(120))),
        (10, criterion_10, None),
    ];
    let mut unexpected = 0;
    for (id, run, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Outcome::new(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let in_budget = budget.is_none_or(|b| elapsed <= b);
        let pass = outcome.pass && in_budget;
        let budget_note = budget.map_or(String::new(), |b| format!(" / budget {:.0}s", b.as_secs_f64()));
        println!(
            "{} criterion {id}: {} [{:.2}s{budget_note}]",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail.trim(),
            elapsed.as_secs_f64()
        );
        if !pass {
            match outcome.corrected {
                Some(true) if in_budget => {
                    println!("     criterion {id}: statement is false as written; corrected statement verified")
                }
                _ => unexpected += 1,
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
