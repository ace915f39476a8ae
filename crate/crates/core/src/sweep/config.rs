use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::efficiency::{GridAxis, Regime, SearchParams};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    LevySweep,
    CtrwSweep,
    Simulate,
    FractionalCompare,
    MlEval,
    PathTrace,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::LevySweep => "levy-sweep",
            Command::CtrwSweep => "ctrw-sweep",
            Command::Simulate => "simulate",
            Command::FractionalCompare => "fractional-compare",
            Command::MlEval => "ml-eval",
            Command::PathTrace => "path-trace",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "levy-sweep" => Command::LevySweep,
            "ctrw-sweep" => Command::CtrwSweep,
            "simulate" => Command::Simulate,
            "fractional-compare" => Command::FractionalCompare,
            "ml-eval" => Command::MlEval,
            "path-trace" => Command::PathTrace,
            other => return Err(Error::invalid("command", format!("unknown `{other}`"))),
        })
    }
}

/// Everything a command needs. Unset optional fields fall back to
/// per-command defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: SearchParams,
    pub lambdas: Vec<f64>,
    pub alpha_range: Option<GridAxis>,
    pub beta_range: Option<GridAxis>,
    pub mu_range: Option<GridAxis>,
    pub z_range: Option<GridAxis>,
    pub regime: Option<Regime>,
    pub seed: u64,
    pub walkers: Option<usize>,
    pub output: Option<PathBuf>,
    pub trace: Option<PathBuf>,
    pub max_captures: u64,
    pub max_steps: u64,
    pub targets: f64,
    pub wait_cutoff: Option<f64>,
    pub k_values: Option<Vec<f64>>,
    pub t_values: Option<Vec<f64>>,
    /// `powerlaw` or `classical` jump/wait laws for `fractional-compare`.
    pub model: String,
}

impl RunConfig {
    pub const DEFAULT_LAMBDAS: [f64; 4] = [10.0, 1e3, 1e5, 1e7];

    pub fn new(command: Command) -> Self {
        Self {
            command,
            params: SearchParams::default(),
            lambdas: Self::DEFAULT_LAMBDAS.to_vec(),
            alpha_range: None,
            beta_range: None,
            mu_range: None,
            z_range: None,
            regime: None,
            seed: 1,
            walkers: None,
            output: None,
            trace: None,
            max_captures: 100,
            max_steps: crate::sim::StopRule::DEFAULT_MAX_STEPS,
            targets: 2000.0,
            wait_cutoff: None,
            k_values: None,
            t_values: None,
            model: "powerlaw".to_string(),
        }
    }

    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let num = |name: &'static str| -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| Error::invalid(name, format!("`{v}` is not a number")))
        };
        match key.trim() {
            "r_v" => self.params.r_v = num("r_v")?,
            "T" | "t_mean" => self.params.t_mean = num("T")?,
            "alpha" => self.params.alpha = num("alpha")?,
            "beta" => self.params.beta = num("beta")?,
            "mu" => self.params.mu = num("mu")?,
            "lambda" => {
                self.lambdas = parse_list(v)?;
                self.params.lambda = self.lambdas[0];
            }
            "alpha_range" => self.alpha_range = Some(parse_range(v)?),
            "beta_range" => self.beta_range = Some(parse_range(v)?),
            "mu_range" => self.mu_range = Some(parse_range(v)?),
            "z_range" => self.z_range = Some(parse_range(v)?),
            "regime" => self.regime = Some(v.parse()?),
            "seed" => {
                self.seed = v
                    .parse()
                    .map_err(|_| Error::invalid("seed", format!("`{v}` is not an integer")))?
            }
            "walkers" => {
                self.walkers = Some(
                    v.parse()
                        .map_err(|_| Error::invalid("walkers", format!("`{v}` is not a count")))?,
                )
            }
            "out" => self.output = Some(PathBuf::from(v)),
            "trace" => self.trace = Some(PathBuf::from(v)),
            "max_captures" => {
                self.max_captures = v
                    .parse()
                    .map_err(|_| Error::invalid("max_captures", format!("`{v}` is not a count")))?
            }
            "max_steps" => {
                self.max_steps = v
                    .parse()
                    .map_err(|_| Error::invalid("max_steps", format!("`{v}` is not a count")))?
            }
            "targets" => self.targets = num("targets")?,
            "wait_cutoff" => self.wait_cutoff = Some(num("wait_cutoff")?),
            "k_values" => self.k_values = Some(parse_list(v)?),
            "t_values" => self.t_values = Some(parse_list(v)?),
            "model" => match v {
                "powerlaw" | "classical" => self.model = v.to_string(),
                other => return Err(Error::invalid("model", format!("unknown `{other}`"))),
            },
            other => return Err(Error::invalid("config", format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Read a flat `key = value` file; `#` starts a comment.
    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Config {
                path: path.to_path_buf(),
                line: i + 1,
                reason: format!("expected `key = value`, got `{line}`"),
            })?;
            self.set(k, v).map_err(|e| Error::Config {
                path: path.to_path_buf(),
                line: i + 1,
                reason: e.to_string(),
            })?;
        }
        Ok(())
    }

    /// Effective settings as `key=value` pairs, in a fixed order.
    pub fn echo(&self) -> Vec<(String, String)> {
        let p = &self.params;
        let axis = |a: &Option<GridAxis>| {
            a.map_or("default".to_string(), |g| format!("{}:{}:{}", g.start, g.stop, g.step))
        };
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        vec![
            ("r_v".into(), p.r_v.to_string()),
            ("T".into(), p.t_mean.to_string()),
            ("alpha".into(), p.alpha.to_string()),
            ("beta".into(), p.beta.to_string()),
            ("mu".into(), p.mu.to_string()),
            ("lambda".into(), list(&self.lambdas)),
            ("alpha_range".into(), axis(&self.alpha_range)),
            ("beta_range".into(), axis(&self.beta_range)),
            ("mu_range".into(), axis(&self.mu_range)),
            ("z_range".into(), axis(&self.z_range)),
            (
                "regime".into(),
                self.regime.map_or("default".into(), |r| r.to_string()),
            ),
            ("seed".into(), self.seed.to_string()),
            (
                "walkers".into(),
                self.walkers.map_or("default".into(), |w| w.to_string()),
            ),
            ("max_captures".into(), self.max_captures.to_string()),
            ("max_steps".into(), self.max_steps.to_string()),
            ("targets".into(), self.targets.to_string()),
            (
                "wait_cutoff".into(),
                self.wait_cutoff.map_or("T".into(), |w| w.to_string()),
            ),
            (
                "k_values".into(),
                self.k_values.as_deref().map_or("default".into(), list),
            ),
            (
                "t_values".into(),
                self.t_values.as_deref().map_or("default".into(), list),
            ),
            ("model".into(), self.model.clone()),
        ]
    }
}

/// Parse `a:b:step` into an inclusive axis.
pub fn parse_range(s: &str) -> Result<GridAxis> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    let bad = || Error::invalid("range", format!("`{s}` is not `start:stop:step`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let axis = GridAxis::new(nums[0], nums[1], nums[2]);
    if !(axis.step > 0.0) {
        return Err(Error::invalid("range", format!("step in `{s}` must be positive")));
    }
    if axis.values().is_empty() {
        return Err(Error::Empty("range"));
    }
    Ok(axis)
}

/// Parse a comma-separated list of numbers.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| Error::invalid("list", format!("`{p}` is not a number")))
        })
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::Empty("list"));
    }
    Ok(v)
}
