//! Run configuration: a TOML file with `[params]`, `[domain]`, `[grid]`,
//! `[tolerances]` and `[run]` sections. Unknown keys are rejected.
//!
//! ```toml
//! [params]
//! n = 3
//! s1 = 1.0          # s2 defaults to s1
//! alpha = 2.0       # beta defaults to 2*(s2) - alpha
//! lambda = 2.0
//! mu = 2.0
//! kappa = 1.0
//!
//! [domain]
//! kind = "whole_space"   # or "supplied" with mu_s = ...
//!
//! [grid]
//! r_min = 1e-6
//! r_max = 1e6
//! n_nodes = 4096
//!
//! [run]
//! seed = 0
//! output_dir = "out"
//! ```

use std::path::{Path, PathBuf};

use hsys_core::checks::Tolerances;
use hsys_core::coupling::DomainConstants;
use hsys_core::params::SystemParams;
use hsys_core::radial::{make_grid, RadialGrid, DEFAULT_NODES, DEFAULT_R_MAX, DEFAULT_R_MIN};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub n: u32,
    pub s1: f64,
    pub s2: Option<f64>,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub lambda: f64,
    pub mu: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKindCfg {
    WholeSpace,
    Supplied,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSection {
    pub kind: DomainKindCfg,
    pub mu_s: Option<f64>,
    pub eta1: Option<f64>,
    pub eta2: Option<f64>,
}

impl Default for DomainSection {
    fn default() -> Self {
        DomainSection {
            kind: DomainKindCfg::WholeSpace,
            mu_s: None,
            eta1: None,
            eta2: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSection {
    pub r_min: f64,
    pub r_max: f64,
    pub n_nodes: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            r_min: DEFAULT_R_MIN,
            r_max: DEFAULT_R_MAX,
            n_nodes: DEFAULT_NODES,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: ParamsSection,
    #[serde(default)]
    pub domain: DomainSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub run: RunSection,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            toml::from_str(&text).map_err(|e| CliError::config(e.to_string()))?;
        if let Ok(s) = std::env::var("HSYS_SEED") {
            cfg.run.seed = s.trim().parse().map_err(|_| {
                CliError::config(format!("HSYS_SEED={s} is not an unsigned integer"))
            })?;
        }
        cfg.system_params()?
            .validate()
            .map_err(|e| CliError::config(e.to_string()))?;
        cfg.grid()?;
        cfg.domain()?;
        Ok(cfg)
    }

    pub fn system_params(&self) -> Result<SystemParams, CliError> {
        let p = &self.params;
        let s2 = p.s2.unwrap_or(p.s1);
        let mut sp = SystemParams::with_alpha(p.n, p.s1, s2, p.alpha, p.lambda, p.mu, p.kappa);
        if let Some(b) = p.beta {
            sp.beta = b;
        }
        Ok(sp)
    }

    pub fn grid(&self) -> Result<RadialGrid, CliError> {
        let g = &self.grid;
        make_grid(g.r_min, g.r_max, g.n_nodes).map_err(|e| CliError::config(e.to_string()))
    }

    pub fn domain(&self) -> Result<DomainConstants, CliError> {
        let p = self.system_params()?;
        let d = &self.domain;
        let mut dc = match d.kind {
            DomainKindCfg::WholeSpace => {
                if d.mu_s.is_some() {
                    return Err(CliError::config(
                        "mu_s is computed for whole_space; remove it or use kind = \"supplied\"",
                    ));
                }
                DomainConstants::whole_space(p.n, p.s1)
                    .map_err(|e| CliError::config(e.to_string()))?
            }
            DomainKindCfg::Supplied => {
                let mu_s = d
                    .mu_s
                    .ok_or_else(|| CliError::config("kind = \"supplied\" needs mu_s"))?;
                DomainConstants::supplied(mu_s)
            }
        };
        dc.eta1 = d.eta1;
        dc.eta2 = d.eta2;
        dc.validate(&p)
            .map_err(|e| CliError::config(e.to_string()))?;
        Ok(dc)
    }

    /// SHA-256 of the canonical JSON form (sorted keys) of the parsed
    /// configuration, seed override included.
    pub fn hash(&self) -> String {
        let v = serde_json::to_value(self).expect("config serializes");
        let text = serde_json::to_string(&v).expect("value serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn output_dir(&self, flag: Option<&Path>) -> Option<PathBuf> {
        flag.map(Path::to_path_buf)
            .or_else(|| self.run.output_dir.clone())
    }
}
