//! Run configuration: a JSON file (from `--config` or `FFD_CONFIG`)
//! overridden by command-line flags.

use std::fs;

use anyhow::{bail, Context, Result};
use ffd::{FieldSpec, Fq};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputConfig {
    /// Directory receiving the JSON document and one CSV per table.
    #[serde(default)]
    pub dir: Option<String>,
    #[serde(default)]
    pub format: Format,
}

fn default_field() -> FieldSpec {
    FieldSpec::prime(3)
}

fn default_precision() -> i64 {
    40
}

fn default_seed() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    #[serde(default = "default_field")]
    pub field: FieldSpec,
    #[serde(default = "default_precision")]
    pub precision: i64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub output: OutputConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config { field: default_field(), precision: default_precision(), seed: default_seed(), output: OutputConfig::default() }
    }
}

/// Flag overrides; `None` keeps the file (or default) value.
#[derive(Debug, Default)]
pub struct Overrides {
    pub path: Option<String>,
    pub q: Option<u32>,
    pub field: Option<String>,
    pub precision: Option<i64>,
    pub seed: Option<u64>,
    pub out: Option<String>,
    pub format: Option<Format>,
}

impl Config {
    pub fn load(o: Overrides) -> Result<Self> {
        let path = o.path.or_else(|| std::env::var("FFD_CONFIG").ok().filter(|s| !s.is_empty()));
        let mut cfg = match path {
            Some(p) => {
                let text = fs::read_to_string(&p).with_context(|| format!("reading config {p}"))?;
                serde_json::from_str(&text).with_context(|| format!("parsing config {p}"))?
            }
            None => Config::default(),
        };
        if o.q.is_some() && o.field.is_some() {
            bail!("give either --q or --field, not both");
        }
        if let Some(q) = o.q {
            cfg.field = FieldSpec::prime(q);
        }
        if let Some(f) = o.field {
            cfg.field = serde_json::from_str(&f).context("parsing --field")?;
        }
        if let Some(p) = o.precision {
            cfg.precision = p;
        }
        if let Some(s) = o.seed {
            cfg.seed = s;
        }
        if let Some(d) = o.out {
            cfg.output.dir = Some(d);
        }
        if let Some(f) = o.format {
            cfg.output.format = f;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        Fq::new(self.field.clone())?;
        if self.precision < 1 {
            bail!("precision must be positive");
        }
        Ok(())
    }

    pub fn fq(&self) -> Result<Fq> {
        Ok(Fq::new(self.field.clone())?)
    }
}
