//! Closed-form identities recomputed and compared with stored canonical text.
//!
//! Each item pairs an expected polynomial (from a closed form, or for the
//! leading-coefficient items, a shape check plus the stored value) with the
//! freshly computed one. `--bless` rewrites the files from the expected side.

use std::fs;
use std::path::Path;

use anyhow::Result;
use discrim_core::family::{build_dm, build_dmk, FamilyConfig};
use discrim_core::polyring::{int, ratio, ExpVec, MultiPoly, Rational, UniPoly};

use crate::output::write_atomic;

pub const DEFAULT_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/golden");

pub struct Item {
    pub name: String,
    /// What the file should hold.
    pub expected: MultiPoly,
    pub computed: MultiPoly,
    /// Extra structural condition on `computed`, if any.
    pub shape_ok: bool,
}

fn poly(s: &str, n: usize) -> MultiPoly {
    MultiPoly::parse(s, n).expect("literal polynomial")
}

fn cubic(a: &Rational, b: &Rational) -> FamilyConfig {
    FamilyConfig::custom(3, 1, vec![int(1), a.clone(), b.clone()]).expect("valid weights")
}

fn tag(q: &Rational) -> String {
    discrim_core::polyring::format_rational(q).replace('/', "o").replace('-', "m")
}

/// Five-term closed form of `D_1` for `n = 3` with weights `(1, A, B)`.
pub fn cubic_d1(a: &Rational, b: &Rational) -> MultiPoly {
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

/// `(-1)^n (n!)^n P(-a1/n)`.
pub fn last_derivative_closed_form(n: usize) -> MultiPoly {
    let t = poly("a1", n).scale(&ratio(-1, n as i64));
    let p = (0..=n).fold(MultiPoly::zero(n), |acc, j| {
        let aj = if j == 0 { MultiPoly::one(n) } else { MultiPoly::var(n, j).expect("index in range") };
        &acc + &(&aj * &t.pow((n - j) as u32))
    });
    let fact: i64 = (1..=n as i64).product();
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    p.scale(&(int(sign) * int(fact).pow(n as i32)))
}

pub fn items() -> Result<Vec<Item>> {
    let mut out = Vec::new();
    let pairs =
        [(ratio(2, 3), ratio(1, 3)), (ratio(-1, 2), ratio(5, 7)), (int(3), ratio(-2, 9)), (ratio(4, 5), int(2))];
    for (a, b) in &pairs {
        out.push(Item {
            name: format!("cubic_d1_{}_{}", tag(a), tag(b)),
            expected: cubic_d1(a, b),
            computed: build_dm(&cubic(a, b))?,
            shape_ok: true,
        });
    }
    let cfg = cubic(&ratio(2, 3), &ratio(1, 3));
    let k = ratio(-64, 14_348_907);
    let closed = [
        (&poly("a3", 3) * &poly("-27 * a3^2 + a2^3", 3).pow(3)).scale(&k),
        (&poly("a3", 3) * &poly("-27 * a3 + a1^3", 3).pow(3)).scale(&k),
        poly("3 * a2 + -1 * a1^2", 3).pow(3).scale(&ratio(16, 729)),
    ];
    for (i, expected) in closed.into_iter().enumerate() {
        out.push(Item {
            name: format!("cubic_d1k_{}", i + 1),
            expected,
            computed: build_dmk(&cfg, i + 1)?,
            shape_ok: true,
        });
    }
    for n in 3..=6 {
        let cfg = FamilyConfig::derivative(n, n - 1)?;
        out.push(Item {
            name: format!("last_derivative_{n}"),
            expected: last_derivative_closed_form(n),
            computed: build_dm(&cfg)?,
            shape_ok: true,
        });
    }
    for n in 4..=5 {
        let cfg = FamilyConfig::derivative(n, n - 2)?;
        let dm = build_dm(&cfg)?;
        for k in 3..=n {
            let u = UniPoly::in_variable(&dm, k)?;
            let lead = u.leading().cloned().unwrap_or_else(|| MultiPoly::zero(n));
            let shape_ok =
                u.degree() == Some(2) && lead.len() == 1 && lead.terms()[0].0 == ExpVec::var_power(1, (n - k) as u32);
            out.push(Item {
                name: format!("quadratic_lead_{n}_{k}"),
                expected: lead.clone(),
                computed: lead,
                shape_ok,
            });
        }
    }
    Ok(out)
}

pub fn run(dir: &Path, bless: bool) -> Result<bool> {
    let mut all = true;
    for item in items()? {
        let path = dir.join(format!("{}.txt", item.name));
        if bless {
            write_atomic(&path, &format!("{}\n", item.expected.to_text()))?;
        }
        let stored = fs::read_to_string(&path).ok().map(|s| MultiPoly::parse(s.trim(), item.computed.nvars()));
        let ok = match &stored {
            Some(Ok(p)) => *p == item.computed && item.expected == item.computed && item.shape_ok,
            _ => false,
        };
        let note = match &stored {
            None => " (missing file; run with --bless)",
            Some(Err(_)) => " (unparsable file)",
            Some(Ok(_)) if !item.shape_ok => " (unexpected shape)",
            Some(Ok(_)) => "",
        };
        println!("{} {}{note}", if ok { "PASS" } else { "FAIL" }, item.name);
        all &= ok;
    }
    Ok(all)
}
