//! Run configuration: command-line flags, then an optional `key = value`
//! file whose entries override them.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use helion::hylleraas::SpinSymmetry;

/// A `1sns` label, `1 <= n <= 9`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateLabel {
    pub n: usize,
}

impl FromStr for StateLabel {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let n = t
            .strip_prefix("1s")
            .and_then(|r| r.strip_suffix('s'))
            .and_then(|d| d.parse::<usize>().ok())
            .or_else(|| (t == "1s2").then_some(1))
            .ok_or_else(|| anyhow!("state label {t:?} is not of the form 1sns"))?;
        if !(1..=9).contains(&n) {
            bail!("state label {t:?}: n must be between 1 and 9");
        }
        Ok(StateLabel { n })
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1s{}s", self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Tsv,
}

impl Format {
    pub fn delimiter(self) -> &'static str {
        match self {
            Format::Csv => ",",
            Format::Tsv => "\t",
        }
    }
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            other => bail!("unknown format {other:?} (csv or tsv)"),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Tsv => "tsv",
        })
    }
}

pub const DEFAULT_DIGITS: u32 = 30;
/// Digits used when none are requested and `ω` exceeds [`HIGH_OMEGA`].
pub const HIGH_OMEGA_DIGITS: u32 = 60;
pub const HIGH_OMEGA: u32 = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub state: StateLabel,
    pub spin: SpinSymmetry,
    pub z: f64,
    pub omega: u32,
    pub l_max: u32,
    pub la_max: usize,
    /// Explicit precision; `None` picks a default from `ω`.
    pub digits: Option<u32>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub scale: Option<f64>,
    pub tune_scale: bool,
    pub optimize: bool,
    pub repulsion: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            state: StateLabel { n: 1 },
            spin: SpinSymmetry::Singlet,
            z: 2.0,
            omega: 8,
            l_max: 40,
            la_max: 50,
            digits: None,
            alpha: None,
            beta: None,
            scale: None,
            tune_scale: true,
            optimize: false,
            repulsion: 1.0,
            output: None,
            format: Format::Csv,
        }
    }
}

fn parse_bool(v: &str) -> Result<bool> {
    match v.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => bail!("expected a boolean, got {other:?}"),
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        let ctx = || format!("config key `{key}`");
        match key.trim().replace('-', "_").as_str() {
            "state" => self.state = v.parse().with_context(ctx)?,
            "spin" => {
                self.spin = v
                    .parse()
                    .map_err(|e: String| anyhow!(e))
                    .with_context(ctx)?
            }
            "z" => self.z = v.parse().with_context(ctx)?,
            "omega" => self.omega = v.parse().with_context(ctx)?,
            "l_max" => self.l_max = v.parse().with_context(ctx)?,
            "la_max" => self.la_max = v.parse().with_context(ctx)?,
            "digits" => self.digits = Some(v.parse().with_context(ctx)?),
            "alpha" => self.alpha = Some(v.parse().with_context(ctx)?),
            "beta" => self.beta = Some(v.parse().with_context(ctx)?),
            "scale" => self.scale = Some(v.parse().with_context(ctx)?),
            "tune_scale" => self.tune_scale = parse_bool(v).with_context(ctx)?,
            "optimize" => self.optimize = parse_bool(v).with_context(ctx)?,
            "repulsion" => self.repulsion = v.parse().with_context(ctx)?,
            "output" => self.output = Some(PathBuf::from(v)),
            "format" => self.format = v.parse().with_context(ctx)?,
            other => bail!("unknown config key `{other}`"),
        }
        Ok(())
    }

    /// Apply every `key = value` line of a file; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("{}:{}: expected key = value", path.display(), no + 1))?;
            self.set(k, v)
                .with_context(|| format!("{}:{}", path.display(), no + 1))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_some() != self.beta.is_some() {
            bail!("exponent overrides need both alpha and beta");
        }
        if self.spin == SpinSymmetry::Triplet && self.state.n < 2 {
            bail!("1s1s has no triplet");
        }
        if self.la_max == 0 {
            bail!("la_max must be positive");
        }
        if !(self.z > 0.0) {
            bail!("z must be positive");
        }
        if let Some(d) = self.digits {
            if !(15..=106).contains(&d) {
                bail!("digits must be between 15 and 106, got {d}");
            }
        }
        Ok(())
    }

    /// Root of the basis symmetry matching the label.
    pub fn root(&self) -> usize {
        match self.spin {
            SpinSymmetry::Singlet => self.state.n,
            SpinSymmetry::Triplet => self.state.n - 1,
        }
    }

    pub fn digits_for(&self, omega: u32) -> u32 {
        self.digits.unwrap_or(if omega > HIGH_OMEGA {
            HIGH_OMEGA_DIGITS
        } else {
            DEFAULT_DIGITS
        })
    }

    /// `key=value` pairs for output metadata.
    pub fn echo(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| format!("{v:?}")).unwrap_or_else(|| "auto".into());
        format!(
            "state={} spin={} z={:?} omega={} l_max={} la_max={} digits={} alpha={} beta={} scale={} tune_scale={} repulsion={:?}",
            self.state,
            self.spin,
            self.z,
            self.omega,
            self.l_max,
            self.la_max,
            self.digits.map(|d| d.to_string()).unwrap_or_else(|| "auto".into()),
            opt(self.alpha),
            opt(self.beta),
            opt(self.scale),
            self.tune_scale,
            self.repulsion,
        )
    }

    pub fn default_artifact_name(&self) -> PathBuf {
        artifact_name(self.state, self.spin)
    }
}

pub fn artifact_name(state: StateLabel, spin: SpinSymmetry) -> PathBuf {
    PathBuf::from(format!("{state}-{spin}.state"))
}

/// `5,10,15` or an inclusive range `5..40:5`, mixed freely.
pub fn parse_values(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, rest)) = part.split_once("..") {
            let (hi, step) = rest.split_once(':').unwrap_or((rest, "1"));
            let (lo, hi, step): (u32, u32, u32) = (
                lo.trim()
                    .parse()
                    .with_context(|| format!("range {part:?}"))?,
                hi.trim()
                    .parse()
                    .with_context(|| format!("range {part:?}"))?,
                step.trim()
                    .parse()
                    .with_context(|| format!("range {part:?}"))?,
            );
            if step == 0 || hi < lo {
                bail!("range {part:?} must ascend with a positive step");
            }
            out.extend((lo..=hi).step_by(step as usize));
        } else {
            out.push(part.parse().with_context(|| format!("value {part:?}"))?);
        }
    }
    if out.is_empty() {
        bail!("no values given");
    }
    if out.windows(2).any(|w| w[1] <= w[0]) {
        bail!("values must be strictly ascending");
    }
    Ok(out)
}
