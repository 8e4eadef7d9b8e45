//! Verification batteries over parameter grids, with configuration and
//! machine-readable reports.

mod config;
mod report;

pub use config::{BasisConfig, Config, FamilySpec, GaussConfig, KringsConfig, OutputFormat, TowerConfig, CONFIG_ENV};
pub use report::{Record, Report, Summary, REPORT_SCHEMA, SCHEMA_ID};

use std::collections::BTreeSet;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, lcm};
use crate::exactnum::RootOfUnity;
use crate::gauss::{self, tame_conductor, NonabelianGauss};
use crate::groups::{brauer_subgroups, linear_characters, VirtualChar};
use crate::localfields::{FieldDesc, MulChar, TameExtDesc, UnitGroupPres};
use crate::tower::{self, TypeWChar};
use crate::{krings, lattices, Cyc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteName {
    Gauss,
    Tower,
    Basis,
    Krings,
    All,
}

impl SuiteName {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Gauss => "gauss",
            SuiteName::Tower => "tower",
            SuiteName::Basis => "basis",
            SuiteName::Krings => "krings",
            SuiteName::All => "all",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gauss" => SuiteName::Gauss,
            "tower" => SuiteName::Tower,
            "basis" => SuiteName::Basis,
            "krings" => SuiteName::Krings,
            "all" => SuiteName::All,
            _ => return Err(Error::Config(format!("unknown suite `{s}`; expected gauss, tower, basis, krings or all"))),
        })
    }
}

type Task<'a> = Box<dyn Fn() -> Vec<Record> + Send + Sync + 'a>;

/// Runs a battery over the configured grid. Records come back in task
/// order whatever the pool size.
pub fn run_suite(name: SuiteName, cfg: &Config) -> Result<Report> {
    cfg.validate()?;
    let mut tasks: Vec<Task> = Vec::new();
    let all = name == SuiteName::All;
    if all || name == SuiteName::Gauss {
        gauss_tasks(cfg, &mut tasks);
    }
    if all || name == SuiteName::Tower {
        tower_tasks(cfg, &mut tasks);
    }
    if all || name == SuiteName::Basis {
        basis_tasks(cfg, &mut tasks);
    }
    if all || name == SuiteName::Krings {
        krings_tasks(cfg, &mut tasks);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let timing = cfg.output.timing;
    let chunks: Vec<Vec<Record>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| {
                let start = Instant::now();
                let mut recs = t();
                if timing {
                    let ms = start.elapsed().as_millis() as u64;
                    for r in &mut recs {
                        r.wall_ms = Some(ms);
                    }
                }
                recs
            })
            .collect()
    });
    Ok(Report::new(name.as_str(), cfg.seed, chunks.into_iter().flatten().collect()))
}

fn selected(checks: &[String], name: &str) -> bool {
    checks.is_empty() || checks.iter().any(|c| c == name)
}

/// Per-task seed from the run seed and the task coordinates.
fn sub_seed(seed: u64, coords: &[u64]) -> u64 {
    let mut x = seed;
    for &c in coords {
        x = (x ^ c).wrapping_add(0x9e37_79b9_7f4a_7c15);
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^= x >> 31;
    }
    x
}

fn failed(suite: &str, check: &str, params: serde_json::Value, e: &Error) -> Record {
    let mut r = Record::new(suite, check, params, 1, String::new(), String::new(), false);
    r.note = Some(e.to_string());
    r
}

fn guard(suite: &'static str, check: &'static str, params: serde_json::Value, body: impl FnOnce() -> Result<Vec<Record>>) -> Vec<Record> {
    match body() {
        Ok(r) => r,
        Err(e) => vec![failed(suite, check, params, &e)],
    }
}

/// Cyclotomic level of the sums attached to chi, times `extra`.
fn check_level(cfg: &Config, chi: &MulChar, extra: u64) -> Result<()> {
    let level = lcm(chi.order(), chi.field.p.pow(chi.conductor())) * extra;
    if level > cfg.max_level {
        return Err(Error::LevelOverflow { level, max: cfg.max_level });
    }
    Ok(())
}

/// Characters of exact conductor m over K, trivial at p.
fn ramified(k: FieldDesc, m: u32) -> Result<Vec<MulChar>> {
    Ok(MulChar::enumerate(k, m, RootOfUnity::one())?.into_iter().filter(|c| c.conductor() == m).collect())
}

/// Compares many pairs; one record, dumping the first mismatch.
struct Sweep {
    cases: usize,
    mismatch: Option<(String, String, String)>,
}

impl Sweep {
    fn new() -> Self {
        Sweep { cases: 0, mismatch: None }
    }

    fn push<T: PartialEq + std::fmt::Display>(&mut self, what: impl FnOnce() -> String, lhs: &T, rhs: &T) {
        self.cases += 1;
        if lhs != rhs && self.mismatch.is_none() {
            self.mismatch = Some((what(), lhs.to_string(), rhs.to_string()));
        }
    }

    fn record(self, suite: &str, check: &str, params: serde_json::Value) -> Record {
        match self.mismatch {
            None => Record::new(suite, check, params, self.cases, format!("{} equalities", self.cases), String::new(), true),
            Some((what, l, r)) => {
                let mut rec = Record::new(suite, check, params, self.cases, l, r, false);
                rec.note = Some(format!("first mismatch at {what}"));
                rec
            }
        }
    }
}

fn gauss_tasks<'a>(cfg: &'a Config, tasks: &mut Vec<Task<'a>>) {
    let g = &cfg.gauss;
    const S: &str = "gauss";
    for &p in &cfg.primes {
        if selected(&g.checks, "classical") {
            tasks.push(Box::new(move || {
                let params = json!({"p": p});
                guard(S, "classical", params.clone(), || {
                    let k = FieldDesc::qp(p)?;
                    let chi = MulChar::from_exponents(k, 1, (p - 1) / 2, &[], RootOfUnity::one())?;
                    let tau = gauss::gauss_abelian(&chi)?.value;
                    let lhs = (&tau * &tau).normalized();
                    let rhs = (&gauss::root(&chi.sign()) * &Cyc::from_int(p as i64)).normalized();
                    let ok = lhs == rhs;
                    Ok(vec![Record::new(S, "classical", params, 1, lhs.to_string(), rhs.to_string(), ok)])
                })
            }));
        }
        for &f in &cfg.residue_degrees {
            for m in 1..=cfg.conductor_max {
                if selected(&g.checks, "modulus") {
                    tasks.push(Box::new(move || {
                        let params = json!({"p": p, "f": f, "m": m});
                        guard(S, "modulus", params.clone(), || {
                            let mut out = Vec::new();
                            for chi in ramified(FieldDesc::new(p, f)?, m)? {
                                let pr = json!({"p": p, "f": f, "m": m, "chi": chi_label(&chi)});
                                if let Err(e) = check_level(cfg, &chi, 1) {
                                    out.push(failed(S, "modulus", pr, &e));
                                    continue;
                                }
                                let (l, r) = gauss::modulus_identity(&chi)?;
                                let nonzero = !gauss::gauss_abelian(&chi)?.value.is_zero();
                                out.push(Record::new(S, "modulus", pr, 1, l.to_string(), r.to_string(), l == r && nonzero));
                            }
                            Ok(out)
                        })
                    }));
                }
            }
            if selected(&g.checks, "twist") {
                tasks.push(Box::new(move || {
                    let params = json!({"p": p, "f": f});
                    guard(S, "twist", params.clone(), || twist_records(cfg, p, f))
                }));
            }
            if selected(&g.checks, "unit_independence") {
                tasks.push(Box::new(move || {
                    let params = json!({"p": p, "f": f});
                    guard(S, "unit_independence", params.clone(), || unit_records(cfg, p, f))
                }));
            }
        }
        if selected(&g.checks, "galois") {
            for m in 1..=g.galois_conductor_max {
                tasks.push(Box::new(move || {
                    let params = json!({"p": p, "m": m});
                    guard(S, "galois", params.clone(), || {
                        let mut sw = Sweep::new();
                        for chi in ramified(FieldDesc::qp(p)?, m)? {
                            check_level(cfg, &chi, 2)?;
                            let mut level = lcm(chi.order(), p.pow(m));
                            if level % 4 == 2 {
                                level /= 2;
                            }
                            for a in 1..level {
                                if gcd(a, level) != 1 {
                                    continue;
                                }
                                let (l, r) = gauss::galois_equivariance(&chi, a as i64)?;
                                sw.push(|| format!("chi={} a={a}", chi_label(&chi)), &l, &r);
                            }
                        }
                        Ok(vec![sw.record(S, "galois", params)])
                    })
                }));
            }
        }
    }
    for fam in &cfg.families {
        let fam = *fam;
        let params = json!({"p": fam.p, "e": fam.e, "f": fam.f});
        if selected(&g.checks, "brauer") {
            let params = params.clone();
            tasks.push(Box::new(move || guard(S, "brauer", params.clone(), || brauer_records(cfg, fam))));
        }
        if selected(&g.checks, "conductor") {
            let params = params.clone();
            tasks.push(Box::new(move || {
                guard(S, "conductor", params.clone(), || {
                    let ng = family_gauss(fam)?;
                    let mut out = Vec::new();
                    for i in 0..ng.table.len() {
                        let v = VirtualChar::basis(ng.table.len(), i);
                        let a = ng.conductor(&v)?;
                        let b = tame_conductor(&ng.table, &v);
                        let pr = json!({"p": fam.p, "e": fam.e, "f": fam.f, "chi": i});
                        out.push(Record::new(S, "conductor", pr, 1, a.to_string(), b.to_string(), a == b));
                    }
                    Ok(out)
                })
            }));
        }
        if selected(&g.checks, "nonabelian_twist") {
            let params = params.clone();
            tasks.push(Box::new(move || {
                guard(S, "nonabelian_twist", params.clone(), || {
                    let ng = family_gauss(fam)?;
                    let mut out = Vec::new();
                    for i in 0..ng.table.len() {
                        let a = ng.conductor(&VirtualChar::basis(ng.table.len(), i))?;
                        let tau = ng.gauss(i)?.value;
                        let mut sw = Sweep::new();
                        for o in 1..=g.unramified_order_max {
                            for j in (0..o).filter(|&j| gcd(j, o) == 1) {
                                let r = RootOfUnity::new(o, j as i64);
                                let lhs = ng.twisted_by_unramified(i, r)?;
                                let rhs = (&tau * &r.pow(-a).to_cyc()).normalized();
                                sw.push(|| format!("rho(p)=z{o}^{j}"), &lhs, &rhs);
                            }
                        }
                        let pr = json!({"p": fam.p, "e": fam.e, "f": fam.f, "chi": i, "degree": ng.table.irr[i].degree});
                        out.push(sw.record(S, "nonabelian_twist", pr));
                    }
                    Ok(out)
                })
            }));
        }
    }
}

fn chi_label(chi: &MulChar) -> String {
    let principal: Vec<String> = chi.principal.iter().map(|r| format!("{}/{}", r.exponent_at(r.order()), r.order())).collect();
    format!(
        "teich={}/{} principal=[{}] p={}/{}",
        chi.teich.exponent_at(chi.teich.order()),
        chi.teich.order(),
        principal.join(","),
        chi.pival.exponent_at(chi.pival.order()),
        chi.pival.order()
    )
}

fn family_gauss(fam: FamilySpec) -> Result<NonabelianGauss> {
    NonabelianGauss::new(TameExtDesc::over_qp(fam.p, fam.e, fam.f)?)
}

fn all_ramified(cfg: &Config, p: u64, f: u32) -> Result<Vec<MulChar>> {
    let k = FieldDesc::new(p, f)?;
    let mut out = Vec::new();
    for m in 1..=cfg.conductor_max {
        out.extend(ramified(k, m)?);
    }
    Ok(out)
}

fn twist_records(cfg: &Config, p: u64, f: u32) -> Result<Vec<Record>> {
    const S: &str = "gauss";
    let chars = all_ramified(cfg, p, f)?;
    let mut out = Vec::new();
    if chars.is_empty() {
        return Ok(out);
    }
    let k = FieldDesc::new(p, f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, &[1, p, f as u64]));
    let omax = cfg.gauss.unramified_order_max;
    for _ in 0..cfg.gauss.twist_samples {
        let chi = &chars[rng.gen_range(0..chars.len())];
        let o = rng.gen_range(1..=omax);
        let j = rng.gen_range(0..o);
        let rho = MulChar::unramified(k, RootOfUnity::new(o, j as i64));
        let pr = json!({"p": p, "f": f, "chi": chi_label(chi), "rho_p": format!("{j}/{o}")});
        if let Err(e) = check_level(cfg, chi, o) {
            out.push(failed(S, "twist", pr, &e));
            continue;
        }
        let (l, r) = gauss::gauss_twist(chi, &rho)?;
        out.push(Record::new(S, "twist", pr, 1, l.value.to_string(), r.value.to_string(), l.value == r.value));
    }
    Ok(out)
}

/// The defining sum with c = v p^m for random units v.
fn unit_records(cfg: &Config, p: u64, f: u32) -> Result<Vec<Record>> {
    const S: &str = "gauss";
    let chars = all_ramified(cfg, p, f)?;
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, &[2, p, f as u64]));
    for _ in 0..cfg.gauss.unit_samples.min(chars.len() * 4) {
        let chi = &chars[rng.gen_range(0..chars.len())];
        check_level(cfg, chi, 1)?;
        let pres = UnitGroupPres::get(chi.field, chi.conductor())?;
        let exps: Vec<u64> = pres.orders.iter().map(|&o| rng.gen_range(0..o)).collect();
        let v = pres.element(&exps);
        let lhs = gauss::gauss_with_unit(chi, &v)?;
        let rhs = gauss::gauss_abelian(chi)?.value;
        let pr = json!({"p": p, "f": f, "chi": chi_label(chi), "unit": exps});
        out.push(Record::new(S, "unit_independence", pr, 1, lhs.to_string(), rhs.to_string(), lhs == rhs));
    }
    Ok(out)
}

/// tau of every irreducible of degree >= 2 from at least two distinct
/// degree-0 decompositions.
fn brauer_records(cfg: &Config, fam: FamilySpec) -> Result<Vec<Record>> {
    const S: &str = "gauss";
    let ng = family_gauss(fam)?;
    let alt = ng.permuted(sub_seed(cfg.seed, &[3, fam.p, fam.e, fam.f]))?;
    let mut out = Vec::new();
    for i in 0..ng.table.len() {
        if ng.table.irr[i].degree < 2 {
            continue;
        }
        let v = VirtualChar::basis(ng.table.len(), i);
        let d1 = ng.decompose(&v)?;
        let mut decomps = vec![alt.decompose(&v)?];
        for k in 0..2 {
            if let Some(d) = ng.solver.alternate(&ng.degree_zero(&v), &d1, k)? {
                decomps.push(d);
            }
        }
        let tau = ng.tau_of_decomp(&d1)?;
        let mut keys = BTreeSet::new();
        keys.insert(d1.key());
        let mut same = true;
        for d in &decomps {
            keys.insert(d.key());
            same &= ng.tau_of_decomp(d)? == tau;
        }
        let pr = json!({"p": fam.p, "e": fam.e, "f": fam.f, "chi": i, "degree": ng.table.irr[i].degree, "decompositions": keys.len()});
        let mut rec = Record::new(S, "brauer", pr, decomps.len() + 1, tau.to_string(), tau.to_string(), same && keys.len() >= 2);
        if !same {
            rec.rhs = "decompositions disagree".into();
        }
        out.push(rec);
    }
    Ok(out)
}

fn tower_tasks<'a>(cfg: &'a Config, tasks: &mut Vec<Task<'a>>) {
    let t = &cfg.tower;
    const S: &str = "tower";
    let k_w = t.type_w_exponent;
    for &p in &cfg.primes {
        for &f in &cfg.residue_degrees {
            if selected(&t.checks, "homw") {
                tasks.push(Box::new(move || {
                    let params = json!({"p": p, "f": f, "rho_order_divides": p.pow(k_w)});
                    guard(S, "homw", params.clone(), || {
                        let mut sw = Sweep::new();
                        for chi in all_ramified(cfg, p, f)? {
                            check_level(cfg, &chi, p.pow(k_w))?;
                            for rho in TypeWChar::all(p, k_w) {
                                let (l, r) = tower::homw_check_linear(&chi, &rho)?;
                                sw.push(|| format!("chi={} rho={}", chi_label(&chi), rho.value), &l, &r);
                            }
                        }
                        Ok(vec![sw.record(S, "homw", params)])
                    })
                }));
            }
        }
        if selected(&t.checks, "galois") {
            tasks.push(Box::new(move || {
                let params = json!({"p": p, "m_max": cfg.conductor_max});
                guard(S, "galois", params.clone(), || {
                    let mut sw = Sweep::new();
                    for chi in all_ramified(cfg, p, 1)? {
                        check_level(cfg, &chi, 2)?;
                        let mut level = lcm(chi.order(), p.pow(chi.conductor()));
                        if level % 4 == 2 {
                            level /= 2;
                        }
                        for a in (1..level).filter(|&a| gcd(a, level) == 1) {
                            let (l, r) = tower::galois_tower_check(&chi, a as i64)?;
                            sw.push(|| format!("chi={} a={a}", chi_label(&chi)), &l, &r);
                        }
                    }
                    Ok(vec![sw.record(S, "galois", params)])
                })
            }));
        }
    }
    for fam in &cfg.families {
        let fam = *fam;
        let params = json!({"p": fam.p, "e": fam.e, "f": fam.f});
        if selected(&t.checks, "homw") {
            let params = params.clone();
            tasks.push(Box::new(move || {
                guard(S, "homw", params.clone(), || {
                    let ng = family_gauss(fam)?;
                    let mut out = Vec::new();
                    for i in 0..ng.table.len() {
                        let mut sw = Sweep::new();
                        for rho in TypeWChar::all(fam.p, k_w) {
                            let (l, r) = tower::homw_check(&ng, i, &rho)?;
                            sw.push(|| format!("rho={}", rho.value), &l, &r);
                        }
                        let pr = json!({"p": fam.p, "e": fam.e, "f": fam.f, "chi": i, "rho_order_divides": fam.p.pow(k_w)});
                        out.push(sw.record(S, "homw", pr));
                    }
                    Ok(out)
                })
            }));
        }
        if selected(&t.checks, "multiplicative") {
            let params = params.clone();
            tasks.push(Box::new(move || {
                guard(S, "multiplicative", params.clone(), || {
                    let ng = family_gauss(fam)?;
                    let n = ng.table.len();
                    let vals: Vec<_> = (0..n).map(|i| tower::tau_tower(&ng, &VirtualChar::basis(n, i))).collect::<Result<_>>()?;
                    let mut sw = Sweep::new();
                    for i in 0..n {
                        for j in i..n {
                            let sum = VirtualChar::basis(n, i).add(&VirtualChar::basis(n, j));
                            let l = tower::tau_tower(&ng, &sum)?;
                            sw.push(|| format!("chi={i}+{j}"), &l, &vals[i].mul(&vals[j]));
                        }
                    }
                    Ok(vec![sw.record(S, "multiplicative", params.clone())])
                })
            }));
        }
        if selected(&t.checks, "res") {
            let params = params.clone();
            tasks.push(Box::new(move || {
                guard(S, "res", params.clone(), || {
                    let ng = family_gauss(fam)?;
                    let mut out = Vec::new();
                    for u in brauer_subgroups(&ng.table.group, false, true) {
                        if u.index() as u32 > t.res_degree_max {
                            continue;
                        }
                        for lambda in linear_characters(&u, ng.table.level) {
                            let (l, r, a, b) = tower::res_functoriality(&ng, &lambda)?;
                            let pr = json!({
                                "p": fam.p, "e": fam.e, "f": fam.f, "degree": u.index(),
                                "subgroup": u.generators(), "lambda": lambda.exps,
                                "v_ind": a, "f_times_v": b,
                            });
                            out.push(Record::new(S, "res", pr, 1, l.to_string(), r.to_string(), l == r && a == b));
                        }
                    }
                    Ok(out)
                })
            }));
        }
    }
}

fn basis_tasks<'a>(cfg: &'a Config, tasks: &mut Vec<Task<'a>>) {
    let b = &cfg.basis;
    const S: &str = "basis";
    for &p in &cfg.primes {
        for &f in &cfg.residue_degrees {
            if selected(&b.checks, "nib") {
                tasks.push(Box::new(move || {
                    let params = json!({"p": p, "f": f, "depth": b.depth});
                    guard(S, "nib", params.clone(), || {
                        let seq = lattices::build_nib(p, f, b.depth, None)?;
                        let mut out = Vec::new();
                        for n in 0..=b.depth {
                            let r = seq.verify_layer(n);
                            let ok = r.trace_nonzero && r.circulant_invertible && r.trace_compatible && r.lift_reduces != Some(false);
                            let pr = json!({"p": p, "f": f, "n": n});
                            let mut rec = Record::new(S, "nib", pr, 1, json!(r).to_string(), format!("rank {}", r.rank), ok);
                            rec.note = Some(format!("cokernel mod p dimension {}", r.cokernel_mod_p_dim));
                            out.push(rec);
                            if n == 0 {
                                continue;
                            }
                            for (name, c) in seq.corrupted(n) {
                                let tr = seq.trace_criterion(n, &c);
                                let circ = seq.circulant_criterion(n, &c);
                                let pr = json!({"p": p, "f": f, "n": n, "candidate": name});
                                let lhs = format!("trace_nonzero={tr} circulant_invertible={circ}");
                                out.push(Record::new(S, "nib_corrupted", pr, 1, lhs, "both false".into(), !tr && !circ));
                            }
                        }
                        Ok(out)
                    })
                }));
            }
            if selected(&b.checks, "nu") {
                tasks.push(Box::new(move || {
                    let params = json!({"p": p, "f": f, "depth": b.nu_depth});
                    guard(S, "nu", params.clone(), || {
                        let seq = lattices::build_nib(p, f, b.nu_depth, None)?;
                        let mut out = Vec::new();
                        for n in 1..=b.nu_depth {
                            let nu = lattices::nu_element(&seq, n)?;
                            let inv = lattices::group_ring_inverse(&seq, n, &nu.coeffs).is_some();
                            let trace = seq.trace(n, &seq.residue[n]);
                            let aug_ok = nu.augmentation.first().copied() == Some(trace) && nu.augmentation[1..].iter().all(|&c| c == 0);
                            let pr = json!({"p": p, "f": f, "n": n});
                            let lhs = format!("augmentation={:?} inverse_found={inv}", nu.augmentation);
                            out.push(Record::new(S, "nu_unit", pr, 1, lhs, format!("trace={trace}"), inv && aug_ok));
                            for k in 1..=f as u64 + 1 {
                                let g = lattices::galois_relation(&seq, &nu, k);
                                let pr = json!({"p": p, "f": f, "n": n, "k": k});
                                out.push(Record::new(S, "nu_galois", pr, 1, format!("z={}", g.z), format!("z={}", lattices::transfer_degree(f, k)), g.holds));
                            }
                        }
                        Ok(out)
                    })
                }));
            }
            if selected(&b.checks, "log") {
                tasks.push(Box::new(move || {
                    let params = json!({"p": p, "f": f, "depth": b.log_depth, "N": cfg.precision});
                    guard(S, "log", params.clone(), || {
                        let seed = sub_seed(cfg.seed, &[4, p, f as u64]);
                        let r = lattices::log_tower_check(p, f, b.log_depth, cfg.precision, b.log_samples, seed)?;
                        let mut out = Vec::new();
                        for l in &r.layers {
                            let pr = json!({"p": p, "f": f, "n": l.n, "N": cfg.precision, "samples": l.samples});
                            let lhs = format!("min v_p(defect)={}", l.min_defect_valuation);
                            out.push(Record::new(S, "log", pr, l.samples, lhs, format!(">= {}", r.threshold), l.pass));
                        }
                        let pr = json!({"p": p, "f": f, "depth": b.log_depth, "effective_precision": r.effective_prec});
                        out.push(Record::new(S, "log_norm_chain", pr, 1, r.norm_compatible_traces.to_string(), "true".into(), r.norm_compatible_traces));
                        Ok(out)
                    })
                }));
            }
        }
    }
    if selected(&b.checks, "lattice") {
        for fam in &cfg.families {
            let fam = *fam;
            for n in 0..=b.lattice_depth {
                for &m in &b.lattice_m {
                    tasks.push(Box::new(move || {
                        let params = json!({"p": fam.p, "e": fam.e, "f": fam.f, "n": n, "m": m});
                        guard(S, "lattice", params.clone(), || {
                            let seed = sub_seed(cfg.seed, &[5, fam.p, fam.e, fam.f, n as u64, m as u64]);
                            let r = lattices::tame_lattice_generator(fam.p, fam.e, fam.f as u32, n, m, seed, 50)?;
                            let lhs = format!("generator_found={} tries={}", r.generator_found, r.tries);
                            Ok(vec![Record::new(S, "lattice", params, 1, lhs, format!("rank {}", r.group_order), r.generator_found)])
                        })
                    }));
                }
            }
        }
    }
}

fn krings_tasks<'a>(cfg: &'a Config, tasks: &mut Vec<Task<'a>>) {
    let kc = &cfg.krings;
    const S: &str = "krings";
    for fam in &cfg.families {
        let fam = *fam;
        if fam.e % fam.p == 0 {
            continue;
        }
        for n in 0..=kc.layer_depth {
            let params = json!({"p": fam.p, "e": fam.e, "f": fam.f, "n": n});
            let seed = sub_seed(cfg.seed, &[6, fam.p, fam.e, fam.f, n as u64]);
            if selected(&kc.checks, "det") {
                let params = params.clone();
                tasks.push(Box::new(move || {
                    guard(S, "det", params.clone(), || {
                        let r = krings::det_layer_check(fam.p, fam.e, fam.f, n, kc.pairs, seed)?;
                        let lhs = format!(
                            "{} of {} (g, chi) agree; hom_w {} of {}; products {} of {}",
                            r.checks - r.failures.len(),
                            r.checks,
                            r.homw_checks - r.homw_failures,
                            r.homw_checks,
                            r.product_checks - r.product_failures,
                            r.product_checks
                        );
                        let mut rec = Record::new(S, "det", params.clone(), r.checks, lhs, format!("group order {}", r.group_order), r.pass());
                        if let Some(c) = r.failures.first() {
                            rec.note = Some(format!("first failure {c:?}"));
                        }
                        Ok(vec![rec])
                    })
                }));
            }
            if selected(&kc.checks, "nrd") && n <= kc.nrd_depth {
                let params = params.clone();
                tasks.push(Box::new(move || {
                    guard(S, "nrd", params.clone(), || {
                        let r = krings::nrd_layer_check(fam.p, fam.e, fam.f, n, kc.pairs, seed)?;
                        let lhs = format!("products failing {} of {}; unit components failing {} of {}", r.product_failures, r.pairs, r.unit_failures, r.units);
                        Ok(vec![Record::new(S, "nrd", params.clone(), r.pairs, lhs, "0 failures".into(), r.pass())])
                    })
                }));
            }
            if selected(&kc.checks, "correction") {
                let params = params.clone();
                tasks.push(Box::new(move || {
                    guard(S, "correction", params.clone(), || {
                        let r = krings::correction_layer_check(fam.p, fam.e, fam.f, n, kc.precisions)?;
                        let lhs = format!(
                            "invertible at N={:?}: {:?}; stable={}; trivial component starred={}",
                            r.precisions, r.invertible, r.stable, r.trivial_component_starred
                        );
                        let rhs = format!("m = [{}]", r.quotient.join(", "));
                        Ok(vec![Record::new(S, "correction", params.clone(), 2, lhs, rhs, r.pass())])
                    })
                }));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Config {
        let mut c = Config::default();
        c.primes = vec![3];
        c.residue_degrees = vec![1];
        c.conductor_max = 1;
        c.families = vec![FamilySpec { p: 3, e: 4, f: 2 }];
        c.gauss.twist_samples = 5;
        c.gauss.galois_conductor_max = 1;
        c.tower.type_w_exponent = 1;
        c.basis.depth = 1;
        c.basis.nu_depth = 1;
        c.basis.log_depth = 1;
        c.basis.log_samples = 3;
        c.basis.lattice_depth = 0;
        c.krings.layer_depth = 0;
        c.krings.pairs = 5;
        c
    }

    #[test]
    fn minimal_all_passes() {
        let r = run_suite(SuiteName::All, &tiny()).unwrap();
        assert!(r.summary.failed == 0, "{}", r.to_json().unwrap());
        for s in ["gauss", "tower", "basis", "krings"] {
            assert!(r.records.iter().any(|x| x.suite == s), "{s}");
        }
    }

    #[test]
    fn empty_grid_is_empty_and_passes() {
        let mut c = tiny();
        c.primes.clear();
        c.families.clear();
        let r = run_suite(SuiteName::All, &c).unwrap();
        assert!(r.records.is_empty());
        assert!(r.passed());
    }

    #[test]
    fn reports_are_byte_stable() {
        let mut c = tiny();
        let a = run_suite(SuiteName::Gauss, &c).unwrap().to_json().unwrap();
        c.jobs = 3;
        let b = run_suite(SuiteName::Gauss, &c).unwrap().to_json().unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("wall_ms"));
    }

    #[test]
    fn resource_bound_is_per_record() {
        let mut c = tiny();
        c.max_level = 4;
        c.gauss.checks = vec!["modulus".into()];
        let r = run_suite(SuiteName::Gauss, &c).unwrap();
        assert!(!r.passed());
        assert!(r.records.iter().all(|x| x.note.as_deref().is_some_and(|n| n.contains("exceeds"))));
    }

    #[test]
    fn gauss_p5_modulus_and_twist() {
        let mut c = tiny();
        c.primes = vec![5];
        c.families.clear();
        c.gauss.checks = vec!["twist".into(), "modulus".into()];
        let r = run_suite(SuiteName::Gauss, &c).unwrap();
        assert!(r.passed());
        assert_eq!(r.records.iter().filter(|x| x.check == "twist").count(), 5);
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("krings".parse::<SuiteName>().unwrap(), SuiteName::Krings);
        assert!("everything".parse::<SuiteName>().is_err());
    }

    #[test]
    fn seeds_spread() {
        assert_ne!(sub_seed(1, &[1, 3]), sub_seed(1, &[3, 1]));
        assert_ne!(sub_seed(1, &[1]), sub_seed(2, &[1]));
    }
}
