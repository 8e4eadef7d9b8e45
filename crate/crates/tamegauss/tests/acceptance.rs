//! The acceptance battery: thirteen criteria, one PASS/FAIL line each.

use std::io::Write;
use std::time::{Duration, Instant};

use tamegauss::suite::{run_suite, Config, FamilySpec, Record, SuiteName};

const FAMILIES: [FamilySpec; 2] = [FamilySpec { p: 3, e: 4, f: 2 }, FamilySpec { p: 5, e: 3, f: 2 }];

fn base() -> Config {
    let mut c = Config::default();
    c.seed = 20_240_617;
    c.primes = vec![3, 5];
    c.residue_degrees = vec![1, 2];
    c.conductor_max = 2;
    c.families = FAMILIES.to_vec();
    c
}

fn only(mut c: Config, suite: SuiteName, checks: &[&str]) -> (SuiteName, Config) {
    let v: Vec<String> = checks.iter().map(|s| s.to_string()).collect();
    match suite {
        SuiteName::Gauss => c.gauss.checks = v,
        SuiteName::Tower => c.tower.checks = v,
        SuiteName::Basis => c.basis.checks = v,
        SuiteName::Krings => c.krings.checks = v,
        SuiteName::All => unreachable!(),
    }
    (suite, c)
}

/// Records of a run; an error is a failure with its message.
fn records(suite: SuiteName, cfg: &Config) -> Result<Vec<Record>, String> {
    run_suite(suite, cfg).map(|r| r.records).map_err(|e| e.to_string())
}

fn all_pass(recs: &[Record]) -> Result<(), String> {
    if recs.is_empty() {
        return Err("no records".into());
    }
    match recs.iter().find(|r| !r.verdict) {
        None => Ok(()),
        Some(r) => Err(format!("{} {} failed: {} vs {} {}", r.check, r.params, r.lhs, r.rhs, r.note.clone().unwrap_or_default())),
    }
}

fn param(r: &Record, key: &str) -> u64 {
    r.params[key].as_u64().unwrap_or(u64::MAX)
}

fn c1() -> Result<String, String> {
    let mut c = base();
    c.primes = vec![5, 13];
    c.families.clear();
    let (s, c) = only(c, SuiteName::Gauss, &["classical"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    if recs.len() != 2 {
        return Err(format!("{} records", recs.len()));
    }
    Ok(format!("tau^2 = chi(-1) p for p = 5, 13: {} and {}", recs[0].lhs, recs[1].lhs))
}

fn c2() -> Result<String, String> {
    let mut c = base();
    c.families.clear();
    let (s, c) = only(c, SuiteName::Gauss, &["modulus"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    for p in [3, 5] {
        for f in [1, 2] {
            if !recs.iter().any(|r| param(r, "p") == p && param(r, "f") == f && param(r, "m") == 2) {
                return Err(format!("no conductor-2 characters for p = {p}, f = {f}"));
            }
        }
    }
    Ok(format!("{} ramified characters, conductor exponent <= 2", recs.len()))
}

fn c3() -> Result<String, String> {
    let mut c = base();
    c.families.clear();
    c.gauss.twist_samples = 50;
    let (s, c) = only(c, SuiteName::Gauss, &["twist"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    for p in [3, 5] {
        for f in [1, 2] {
            let n = recs.iter().filter(|r| param(r, "p") == p && param(r, "f") == f).count();
            if n < 50 {
                return Err(format!("{n} pairs for p = {p}, f = {f}"));
            }
        }
    }
    Ok(format!("{} (chi, rho) pairs over 4 fields", recs.len()))
}

fn c4() -> Result<String, String> {
    let (s, c) = only(base(), SuiteName::Gauss, &["brauer"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    for fam in FAMILIES {
        let deg2: Vec<&Record> = recs.iter().filter(|r| param(r, "p") == fam.p && param(r, "e") == fam.e && param(r, "degree") == 2).collect();
        if deg2.is_empty() {
            return Err(format!("no degree-2 irreducible for {fam:?}"));
        }
        if deg2.iter().any(|r| param(r, "decompositions") < 2) {
            return Err("fewer than two distinct decompositions".into());
        }
    }
    Ok(format!("{} irreducibles of degree >= 2, each from >= 2 decompositions", recs.len()))
}

fn c5() -> Result<String, String> {
    let mut c = base();
    c.gauss.unramified_order_max = 8;
    let (s, c) = only(c, SuiteName::Gauss, &["nonabelian_twist"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    let n: usize = recs.iter().map(|r| r.cases).sum();
    Ok(format!("{n} twists by unramified rho of order <= 8"))
}

fn c6() -> Result<String, String> {
    let mut c = base();
    c.tower.type_w_exponent = 2;
    let (s, c) = only(c, SuiteName::Tower, &["homw"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    let n: usize = recs.iter().map(|r| r.cases).sum();
    Ok(format!("{n} (chi, rho) with rho of order dividing p^2"))
}

fn c7() -> Result<String, String> {
    let mut c = base();
    c.families.push(FamilySpec { p: 3, e: 13, f: 3 });
    c.tower.res_degree_max = 3;
    let (s, c) = only(c, SuiteName::Tower, &["res"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    for d in 1..=3 {
        if !recs.iter().any(|r| param(r, "degree") == d) {
            return Err(format!("no unramified subextension of degree {d}"));
        }
    }
    Ok(format!("{} characters over unramified K'/K of degree 1, 2, 3", recs.len()))
}

fn c8() -> Result<String, String> {
    let mut c = base();
    c.families.clear();
    c.gauss.galois_conductor_max = 3;
    let (s, c) = only(c, SuiteName::Gauss, &["galois"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    if recs.len() != 6 {
        return Err(format!("{} records", recs.len()));
    }
    let n: usize = recs.iter().map(|r| r.cases).sum();
    Ok(format!("{n} pairs (chi, a), conductor <= p^3"))
}

fn c9() -> Result<String, String> {
    let mut c = base();
    c.basis.depth = 4;
    let (s, c) = only(c, SuiteName::Basis, &["nib"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    let layers = recs.iter().filter(|r| r.check == "nib").count();
    let corrupted = recs.iter().filter(|r| r.check == "nib_corrupted").count();
    if layers != 20 || corrupted == 0 {
        return Err(format!("{layers} layers, {corrupted} corrupted candidates"));
    }
    Ok(format!("{layers} layers pass both criteria, {corrupted} corrupted candidates fail both"))
}

fn c10() -> Result<String, String> {
    let mut c = base();
    c.precision = 12;
    c.basis.log_depth = 3;
    c.basis.log_samples = 20;
    let (s, c) = only(c, SuiteName::Basis, &["log"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    let logs: Vec<&Record> = recs.iter().filter(|r| r.check == "log").collect();
    let worst = logs.iter().filter_map(|r| r.lhs.rsplit('=').next()?.parse::<u32>().ok()).min();
    match worst {
        Some(v) if v >= 10 => Ok(format!("{} layers at N = 12, least defect valuation {v}", logs.len())),
        other => Err(format!("least defect valuation {other:?}")),
    }
}

fn c11() -> Result<String, String> {
    let mut c = base();
    c.basis.nu_depth = 3;
    let (s, c) = only(c, SuiteName::Basis, &["nu"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    let units = recs.iter().filter(|r| r.check == "nu_unit").count();
    let rel = recs.iter().filter(|r| r.check == "nu_galois").count();
    Ok(format!("{units} nu_n invertible, {rel} Galois relations"))
}

fn c12() -> Result<String, String> {
    let mut c = base();
    c.krings.layer_depth = 2;
    c.krings.precisions = [8, 12];
    let (s, c) = only(c, SuiteName::Krings, &["correction"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    if recs.len() != 6 {
        return Err(format!("{} records", recs.len()));
    }
    Ok("inverse in Z/p^8[G_n] for n <= 2, stable at p^12, trivial component starred".into())
}

fn c13() -> Result<String, String> {
    let mut c = base();
    c.krings.layer_depth = 2;
    let (s, c) = only(c, SuiteName::Krings, &["det"]);
    let recs = records(s, &c)?;
    all_pass(&recs)?;
    let n: usize = recs.iter().map(|r| r.cases).sum();
    Ok(format!("{n} pairs (g, chi) over layers n <= 2"))
}

type Criterion = (&'static str, fn() -> Result<String, String>, Option<Duration>);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 13] = [
        ("classical quadratic Gauss sums", c1, Some(Duration::from_secs(1))),
        ("modulus identity", c2, Some(Duration::from_secs(60))),
        ("unramified twist", c3, None),
        ("independence of the degree-0 decomposition", c4, None),
        ("non-abelian unramified twist", c5, None),
        ("Hom^W property of the tower value", c6, None),
        ("restriction to unramified subextensions", c7, None),
        ("Galois equivariance over Q_p", c8, Some(Duration::from_secs(120))),
        ("normal integral basis sequences", c9, None),
        ("trace/log against log/norm", c10, None),
        ("nu_n units and their Galois relation", c11, None),
        ("tame correction element", c12, None),
        ("Det(g) against reduced norms", c13, None),
    ];
    let mut failures = Vec::new();
    let mut err = std::io::stderr().lock();
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let took = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if took > *limit {
                outcome = Err(format!("took {took:.2?}, limit {limit:?}"));
            }
        }
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        writeln!(err, "criterion {:>2} {tag} {name} [{took:.2?}]: {detail}", i + 1).unwrap();
        if outcome.is_err() {
            failures.push(i + 1);
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
