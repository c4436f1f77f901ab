//! Effective run configuration: defaults, flat `key = value` files and
//! command-line overrides.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Args;
use threehalves::{CallContract, Method, ModelParams, SimSettings};

/// Flags shared by every subcommand. Each one overrides the config-file key
/// of the same name.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Flat `key = value` file read before the flags are applied.
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    /// Write the effective configuration to this file.
    #[arg(long)]
    pub save_config: Option<std::path::PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub s0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub v0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub strike: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub maturity: Option<f64>,
    /// exact-mc, cond-mc, qmc-cond-mc or euler.
    #[arg(long)]
    pub method: Option<String>,
    /// Paths (or pseudo-random points) for exact-mc, cond-mc and euler.
    #[arg(long)]
    pub paths: Option<usize>,
    /// log2 of the points per QMC replicate.
    #[arg(long)]
    pub m: Option<u32>,
    /// QMC replicates.
    #[arg(long)]
    pub reps: Option<usize>,
    /// Euler time steps.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Error target of the integrated-variance CDF.
    #[arg(long)]
    pub tol: Option<f64>,
    /// interpolate or nearest.
    #[arg(long)]
    pub inversion: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub contract: CallContract,
    pub method: Method,
    pub n_paths: usize,
    pub m: u32,
    pub n_reps: usize,
    pub n_steps: usize,
    pub seed: u64,
    pub settings: SimSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: ModelParams::reference(),
            contract: CallContract { strike: 1.0, maturity: 1.0 },
            method: Method::ExactMc,
            n_paths: 40_960,
            m: 8,
            n_reps: 30,
            n_steps: 512,
            seed: 42,
            settings: SimSettings::default(),
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .ok()
        .with_context(|| format!("invalid value `{value}` for `{key}`"))
}

impl RunConfig {
    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key {
            "kappa" => self.params.kappa = parse(key, v)?,
            "theta" => self.params.theta = parse(key, v)?,
            "epsilon" => self.params.epsilon = parse(key, v)?,
            "rho" => self.params.rho = parse(key, v)?,
            "r" => self.params.r = parse(key, v)?,
            "s0" => self.params.s0 = parse(key, v)?,
            "v0" => self.params.v0 = parse(key, v)?,
            "strike" => self.contract.strike = parse(key, v)?,
            "maturity" => self.contract.maturity = parse(key, v)?,
            "method" => self.method = v.parse()?,
            "paths" => self.n_paths = parse(key, v)?,
            "m" => self.m = parse(key, v)?,
            "reps" => self.n_reps = parse(key, v)?,
            "steps" => self.n_steps = parse(key, v)?,
            "seed" => self.seed = parse(key, v)?,
            "tol" => self.settings.tol = parse(key, v)?,
            "inversion" => self.settings.inversion = v.parse()?,
            _ => bail!("unknown configuration key `{key}`"),
        }
        Ok(())
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected `key = value`", lineno + 1))?;
            cfg.set(key.trim(), value)
                .with_context(|| format!("line {}", lineno + 1))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        Self::parse_str(&text).with_context(|| format!("in {}", path.display()))
    }

    /// Reads `--config` (if any), applies the flags, validates, and writes
    /// `--save-config` (if any).
    pub fn resolve(args: &RunArgs) -> Result<Self> {
        let mut cfg = match &args.config {
            Some(path) => Self::load(path)?,
            None => RunConfig::default(),
        };
        let floats = [
            ("kappa", args.kappa),
            ("theta", args.theta),
            ("epsilon", args.epsilon),
            ("rho", args.rho),
            ("r", args.r),
            ("s0", args.s0),
            ("v0", args.v0),
            ("strike", args.strike),
            ("maturity", args.maturity),
            ("tol", args.tol),
        ];
        for (key, value) in floats {
            if let Some(v) = value {
                cfg.set(key, &v.to_string())?;
            }
        }
        let others = [
            ("method", args.method.clone()),
            ("paths", args.paths.map(|v| v.to_string())),
            ("m", args.m.map(|v| v.to_string())),
            ("reps", args.reps.map(|v| v.to_string())),
            ("steps", args.steps.map(|v| v.to_string())),
            ("seed", args.seed.map(|v| v.to_string())),
            ("inversion", args.inversion.clone()),
        ];
        for (key, value) in others {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
        }
        cfg.validate()?;
        if let Some(path) = &args.save_config {
            std::fs::write(path, cfg.to_config_string())
                .with_context(|| format!("cannot write config {}", path.display()))?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.contract.validate()?;
        if !(self.settings.tol > 0.0 && self.settings.tol < 1.0) {
            bail!("invalid parameter `tol`: must lie in (0, 1), got {}", self.settings.tol);
        }
        let need_paths = matches!(self.method, Method::ExactMc | Method::CondMc | Method::Euler);
        if need_paths && self.n_paths < 2 {
            bail!("invalid parameter `paths`: must be >= 2, got {}", self.n_paths);
        }
        if self.method == Method::Euler && self.n_steps < 1 {
            bail!("invalid parameter `steps`: must be >= 1");
        }
        Ok(())
    }

    /// Every key, one per line, in a form [`RunConfig::parse_str`] reads back
    /// exactly.
    pub fn to_config_string(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        let rows: [(&str, String); 17] = [
            ("kappa", p.kappa.to_string()),
            ("theta", p.theta.to_string()),
            ("epsilon", p.epsilon.to_string()),
            ("rho", p.rho.to_string()),
            ("r", p.r.to_string()),
            ("s0", p.s0.to_string()),
            ("v0", p.v0.to_string()),
            ("strike", self.contract.strike.to_string()),
            ("maturity", self.contract.maturity.to_string()),
            ("method", self.method.to_string()),
            ("paths", self.n_paths.to_string()),
            ("m", self.m.to_string()),
            ("reps", self.n_reps.to_string()),
            ("steps", self.n_steps.to_string()),
            ("seed", self.seed.to_string()),
            ("tol", self.settings.tol.to_string()),
            ("inversion", self.settings.inversion.to_string()),
        ];
        for (k, v) in rows {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }
}
