use std::path::Path;

use anyhow::{bail, Context, Result};
use discrim_core::family::{build_dm, build_dmk, BSpec, FamilyConfig};
use discrim_core::polyring::MultiPoly;
use discrim_core::strata::{sample_maxwell, sample_theta, StrataRun};
use discrim_core::theorem::{cross_check_c_mn2, verify_theorem, CrossCheck, FactorizationReport};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{b_tag, load_cached_dm, store_cached_dm, to_pretty, write_atomic, Document, RunManifest};
use crate::{FamilyArgs, StratumArg};

pub fn config(args: &FamilyArgs) -> Result<FamilyConfig> {
    let spec = BSpec::parse(&args.b).context("invalid --b")?;
    Ok(FamilyConfig::new(args.n, args.m, spec)?)
}

/// `D_m`, going through the on-disk memo when configured.
fn dm(cfg: &FamilyConfig) -> Result<MultiPoly> {
    load_cached_dm(cfg);
    let dm = build_dm(cfg)?;
    store_cached_dm(cfg, &dm)?;
    Ok(dm)
}

#[derive(Serialize)]
struct PolySummary {
    text: String,
    terms: usize,
    qhw: Option<u64>,
    total_degree: Option<u32>,
}

impl PolySummary {
    fn new(p: &MultiPoly) -> PolySummary {
        PolySummary { text: p.to_text(), terms: p.len(), qhw: p.qhw().weight(), total_degree: p.total_degree() }
    }
}

#[derive(Serialize)]
struct ComputeBody {
    dm: PolySummary,
    dmk: Option<PolySummary>,
}

pub fn compute(args: &FamilyArgs, k: Option<usize>, json: bool, out: Option<&Path>) -> Result<bool> {
    let cfg = config(args)?;
    if let Some(k) = k {
        cfg.check_k(k)?;
    }
    let manifest = RunManifest::new("compute", &cfg, k.into_iter().collect(), out);
    let dm = dm(&cfg)?;
    let dmk = k.map(|k| build_dmk(&cfg, k)).transpose()?;
    let doc = to_pretty(&Document {
        manifest: &manifest,
        body: ComputeBody { dm: PolySummary::new(&dm), dmk: dmk.as_ref().map(PolySummary::new) },
    });
    if json {
        print!("{doc}");
    } else {
        println!("{}", dm.to_text());
        if let Some(p) = &dmk {
            println!("{}", p.to_text());
        }
    }
    if let Some(dir) = out {
        let stem = format!("dm_{}_{}_{}", cfg.n(), cfg.m(), b_tag(&cfg));
        write_atomic(&dir.join(format!("{stem}.txt")), &format!("{}\n", dm.to_text()))?;
        if let (Some(k), Some(p)) = (k, &dmk) {
            write_atomic(&dir.join(format!("{stem}_k{k}.txt")), &format!("{}\n", p.to_text()))?;
        }
        let json_name = match k {
            Some(k) => format!("{stem}_k{k}.json"),
            None => format!("{stem}.json"),
        };
        write_atomic(&dir.join(json_name), &doc)?;
    }
    eprintln!("D_m: {} terms, weight {:?}", dm.len(), dm.qhw().weight());
    Ok(true)
}

#[derive(Serialize)]
struct VerifyEntry {
    report: FactorizationReport,
    cross_check: Option<CrossCheck>,
}

impl VerifyEntry {
    fn ok(&self, in_range: bool) -> bool {
        let holds = !in_range || self.report.checks.theorem_holds;
        holds && self.cross_check.as_ref().is_none_or(CrossCheck::passed)
    }
}

#[derive(Serialize)]
struct VerifyBody<'a> {
    passed: bool,
    reports: &'a [VerifyEntry],
}

#[derive(Serialize)]
struct VerifyFile<'a> {
    report: &'a VerifyEntry,
}

pub fn verify(args: &FamilyArgs, ks: Vec<usize>, out: Option<&Path>) -> Result<bool> {
    let cfg = config(args)?;
    let ks = if ks.is_empty() { (1..=cfg.n()).collect() } else { ks };
    for &k in &ks {
        cfg.check_k(k)?;
    }
    let manifest = RunManifest::new("verify", &cfg, ks.clone(), out);
    // computed up front: the k jobs below all depend on it
    dm(&cfg)?;
    let entries: Vec<VerifyEntry> = ks
        .par_iter()
        .map(|&k| -> Result<VerifyEntry> {
            let report = verify_theorem(&cfg, k)?;
            let applicable = cfg.m() >= 2 && cfg.m() + 2 == cfg.n() && k >= 3 && report.c_poly.is_some();
            let cross_check = if applicable { Some(cross_check_c_mn2(&cfg, k, &report)?) } else { None };
            let entry = VerifyEntry { report, cross_check };
            if let Some(dir) = out {
                let name = format!("verify_{}_{}_{}_k{k}.json", cfg.n(), cfg.m(), b_tag(&cfg));
                write_atomic(
                    &dir.join(name),
                    &to_pretty(&Document { manifest: &manifest, body: VerifyFile { report: &entry } }),
                )?;
            }
            Ok(entry)
        })
        .collect::<Result<_>>()?;
    let in_range = entries.first().is_some_and(|e| e.report.checks.in_theorem_range);
    let passed = entries.iter().all(|e| e.ok(in_range));
    for e in &entries {
        let r = &e.report;
        eprintln!(
            "k={}: theorem_holds={} s={} r={} A=a{}^{} reconstruction={}{}",
            r.k,
            r.checks.theorem_holds,
            r.s,
            r.r,
            r.a_var,
            r.a_exp,
            r.checks.reconstruction,
            e.cross_check.as_ref().map_or(String::new(), |c| format!(" cross_check={}", c.passed())),
        );
    }
    if !in_range {
        eprintln!("m = {} is outside 2 <= m <= n-2: report is descriptive", cfg.m());
    }
    print!("{}", to_pretty(&Document { manifest: &manifest, body: VerifyBody { passed, reports: &entries } }));
    Ok(passed)
}

#[derive(Serialize)]
struct SampleBody<'a> {
    run: &'a StrataRun,
}

pub fn sample(
    stratum: StratumArg,
    args: &FamilyArgs,
    k: usize,
    count: usize,
    seed: u64,
    tol: f64,
    out: Option<&Path>,
) -> Result<bool> {
    if count == 0 {
        bail!("--count must be positive");
    }
    if !(tol.is_finite() && tol > 0.0) {
        bail!("--tol must be a positive number");
    }
    let cfg = config(args)?;
    cfg.check_k(k)?;
    let mut manifest = RunManifest::new("sample", &cfg, vec![k], out);
    manifest.seed = Some(seed);
    manifest.tol = Some(tol);
    dm(&cfg)?;
    let run = match stratum {
        StratumArg::Maxwell => sample_maxwell(&cfg, k, count, seed, tol)?,
        StratumArg::Theta => sample_theta(&cfg, k, count, seed, tol)?,
    };
    let doc = to_pretty(&Document { manifest: &manifest, body: SampleBody { run: &run } });
    if let Some(dir) = out {
        let name =
            format!("sample_{:?}_{}_{}_{}_k{k}_s{seed}.json", run.tag, cfg.n(), cfg.m(), b_tag(&cfg)).to_lowercase();
        write_atomic(&dir.join(name), &doc)?;
    }
    print!("{doc}");
    let failed = run.samples.iter().filter(|s| !s.passed(tol)).count();
    eprintln!(
        "{:?}: {} samples, max target residual {:.2e}, max D residual {:.2e}, min off-stratum {:.2e}, {} failed",
        run.tag, run.count, run.max_target_residual, run.max_residual_d, run.min_residual_off, failed
    );
    Ok(run.passed)
}
