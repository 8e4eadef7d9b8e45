use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::arith::{gcd, is_prime};
use crate::exactnum::cyclo::DEFAULT_MAX_LEVEL;
use crate::localfields::Convention;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "TAMEGAUSS_CONFIG";

/// L/Q_p tame with ramification e and residue degree f.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub p: u64,
    pub e: u64,
    pub f: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
    /// Record wall time per task; off by default so reports are
    /// byte-stable.
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaussConfig {
    pub checks: Vec<String>,
    pub twist_samples: usize,
    pub unit_samples: usize,
    /// Unramified twists have rho(p) of order at most this.
    pub unramified_order_max: u64,
    pub galois_conductor_max: u32,
}

impl Default for GaussConfig {
    fn default() -> Self {
        GaussConfig { checks: Vec::new(), twist_samples: 50, unit_samples: 10, unramified_order_max: 8, galois_conductor_max: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TowerConfig {
    pub checks: Vec<String>,
    /// Type-W characters of order dividing p^k.
    pub type_w_exponent: u32,
    pub res_degree_max: u32,
}

impl Default for TowerConfig {
    fn default() -> Self {
        TowerConfig { checks: Vec::new(), type_w_exponent: 2, res_degree_max: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BasisConfig {
    pub checks: Vec<String>,
    pub depth: usize,
    pub nu_depth: usize,
    pub log_depth: usize,
    pub log_samples: usize,
    pub lattice_depth: usize,
    pub lattice_m: Vec<u32>,
}

impl Default for BasisConfig {
    fn default() -> Self {
        BasisConfig { checks: Vec::new(), depth: 4, nu_depth: 3, log_depth: 3, log_samples: 20, lattice_depth: 1, lattice_m: vec![0, 1] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KringsConfig {
    pub checks: Vec<String>,
    pub layer_depth: u32,
    pub nrd_depth: u32,
    pub pairs: usize,
    pub precisions: [u32; 2],
}

impl Default for KringsConfig {
    fn default() -> Self {
        KringsConfig { checks: Vec::new(), layer_depth: 2, nrd_depth: 1, pairs: 50, precisions: [8, 12] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub jobs: usize,
    pub primes: Vec<u64>,
    pub residue_degrees: Vec<u32>,
    pub families: Vec<FamilySpec>,
    pub conductor_max: u32,
    /// p-adic precision N.
    pub precision: u32,
    /// Largest cyclotomic level a record may need.
    pub max_level: u64,
    pub convention: Convention,
    pub output: OutputConfig,
    pub gauss: GaussConfig,
    pub tower: TowerConfig,
    pub basis: BasisConfig,
    pub krings: KringsConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 1,
            jobs: 1,
            primes: vec![3, 5],
            residue_degrees: vec![1, 2],
            families: vec![FamilySpec { p: 3, e: 4, f: 2 }, FamilySpec { p: 5, e: 3, f: 2 }, FamilySpec { p: 3, e: 13, f: 3 }],
            conductor_max: 2,
            precision: 12,
            max_level: DEFAULT_MAX_LEVEL,
            convention: Convention::default(),
            output: OutputConfig::default(),
            gauss: GaussConfig::default(),
            tower: TowerConfig::default(),
            basis: BasisConfig::default(),
            krings: KringsConfig::default(),
        }
    }
}

const GAUSS_CHECKS: &[&str] = &["classical", "modulus", "twist", "unit_independence", "galois", "brauer", "conductor", "nonabelian_twist"];
const TOWER_CHECKS: &[&str] = &["homw", "multiplicative", "res", "galois"];
const BASIS_CHECKS: &[&str] = &["nib", "nu", "log", "lattice"];
const KRINGS_CHECKS: &[&str] = &["nrd", "det", "correction"];

fn check_names(section: &str, given: &[String], known: &[&str]) -> Result<()> {
    for c in given {
        if !known.contains(&c.as_str()) {
            return Err(Error::Config(format!("{section}.checks: unknown check `{c}`; expected one of {}", known.join(", "))));
        }
    }
    Ok(())
}

impl Config {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let c: Config = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&s).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        for &p in self.primes.iter().chain(self.families.iter().map(|f| &f.p)) {
            if p == 2 || !is_prime(p) {
                return Err(Error::Config(format!("p = {p} must be an odd prime")));
            }
        }
        if self.residue_degrees.contains(&0) {
            return Err(Error::Config("residue degrees must be positive".into()));
        }
        for fam in &self.families {
            let FamilySpec { p, e, f } = *fam;
            if f == 0 || e == 0 {
                return Err(Error::Config(format!("family ({p}, {e}, {f}): e and f must be positive")));
            }
            if gcd(e, p) != 1 {
                return Err(Error::Config(format!("family ({p}, {e}, {f}): gcd(e, p) must be 1")));
            }
            let q = p.checked_pow(f as u32).ok_or_else(|| Error::Config(format!("family ({p}, {e}, {f}): p^f too large")))?;
            if (q - 1) % e != 0 {
                return Err(Error::Config(format!("family ({p}, {e}, {f}): e must divide p^f - 1 = {}", q - 1)));
            }
        }
        if self.krings.precisions[0] == 0 || self.krings.precisions[0] >= self.krings.precisions[1] {
            return Err(Error::Config("krings.precisions must be two increasing positive values".into()));
        }
        if self.precision < 3 {
            return Err(Error::Config("precision must be at least 3".into()));
        }
        check_names("gauss", &self.gauss.checks, GAUSS_CHECKS)?;
        check_names("tower", &self.tower.checks, TOWER_CHECKS)?;
        check_names("basis", &self.basis.checks, BASIS_CHECKS)?;
        check_names("krings", &self.krings.checks, KRINGS_CHECKS)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = Config::default();
        assert_eq!(Config::from_toml_str(&c.to_toml()).unwrap(), c);
        assert_eq!(Config::from_toml_str("").unwrap(), c);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = Config::from_toml_str("seed = 3\nprimez = [3]\n").unwrap_err().to_string();
        assert!(e.contains("primez"), "{e}");
        let e = Config::from_toml_str("[krings]\ndepth = 2\n").unwrap_err().to_string();
        assert!(e.contains("depth"), "{e}");
    }

    #[test]
    fn family_constraints() {
        let bad = "families = [{ p = 3, e = 5, f = 2 }]";
        assert!(Config::from_toml_str(bad).unwrap_err().to_string().contains("divide"));
        let bad = "families = [{ p = 3, e = 3, f = 2 }]";
        assert!(Config::from_toml_str(bad).is_err());
        assert!(Config::from_toml_str("primes = [2]").is_err());
        assert!(Config::from_toml_str("primes = [9]").is_err());
        let ok = "seed = 9\nfamilies = [{ p = 7, e = 9, f = 3 }]\n[krings]\nchecks = [\"det\"]\n";
        let c = Config::from_toml_str(ok).unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.krings.checks, vec!["det".to_string()]);
        assert!(Config::from_toml_str("[tower]\nchecks = [\"nope\"]").is_err());
    }
}
