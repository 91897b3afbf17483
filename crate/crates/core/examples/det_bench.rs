//! Times both determinant strategies on the Sylvester matrices behind
//! `D_m` and `D_{m,k}`.
//!
//! `cargo run --release -p discrim-core --example det_bench -- 5 2 [derivative|generic]`

use std::time::Instant;

use discrim_core::family::{build_dm, build_p, build_pstar, BSpec, FamilyConfig};
use discrim_core::polyring::UniPoly;
use discrim_core::resultants::{determinant_with, sylvester, DetStrategy};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(4);
    let m: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let spec = BSpec::parse(args.get(2).map_or("derivative", String::as_str)).expect("b");
    let cfg = FamilyConfig::new(n, m, spec).expect("config");
    let s = sylvester(&build_p(&cfg), &build_pstar(&cfg)).unwrap();
    let dm = time("D_m", &s);
    assert_eq!(dm, build_dm(&cfg).unwrap());
    for k in 1..=n {
        let f = UniPoly::in_variable(&dm, k).unwrap();
        let s = sylvester(&f, &f.derivative()).unwrap();
        time(&format!("D_m,{k}"), &s);
    }
}

fn time(label: &str, s: &discrim_core::resultants::PolyMatrix) -> discrim_core::polyring::MultiPoly {
    let mut out = None;
    for strategy in [DetStrategy::MinorExpansion, DetStrategy::Bareiss] {
        let t = Instant::now();
        let d = determinant_with(s, strategy).unwrap();
        println!(
            "{label:8} order {:2} zeros {:.2} {strategy:?}: {:.3}s, {} terms",
            s.rows(),
            s.zero_fraction(),
            t.elapsed().as_secs_f64(),
            d.len()
        );
        if let Some(prev) = &out {
            assert_eq!(prev, &d);
        }
        out = Some(d);
    }
    out.unwrap()
}
