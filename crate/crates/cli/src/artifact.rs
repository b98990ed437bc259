//! State artifact: a plain-text record of one solved state.
//!
//! ```text
//! # helion state artifact
//! z = 2
//! omega = 8
//! spin = singlet
//! root = 1
//! alpha = 2.6038433244
//! beta = 2.370791937
//! repulsion = 1
//! digits = 30
//! energy = -2.9037243146...
//! norm = 1.0
//! terms = 95
//! 0 0 0 1.234...e0
//! ...
//! ```
//!
//! Term lines are `k m n coefficient` in canonical order. Reals carry every
//! digit of the scalar type they were computed in.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use helion::hylleraas::{BasisSpec, HylleraasTerm, SpinSymmetry, StateSolution};
use helion::numerics::{Real, Tier};

/// A parsed artifact, numbers still in text so no digits are lost before the
/// caller picks a scalar type.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub z: f64,
    pub omega: u32,
    pub spin: SpinSymmetry,
    pub root: usize,
    pub alpha: f64,
    pub beta: f64,
    pub repulsion: f64,
    pub digits: u32,
    pub energy: String,
    pub norm: String,
    pub terms: Vec<(HylleraasTerm, String)>,
}

impl Artifact {
    pub fn from_state<R: Real>(state: &StateSolution<R>, digits: u32) -> Self {
        let sci = |x: &R| x.to_sci(R::DIGITS as usize + 3);
        let b = &state.basis;
        Artifact {
            z: b.z,
            omega: b.omega,
            spin: b.spin,
            root: state.root_index,
            alpha: b.alpha,
            beta: b.beta,
            repulsion: b.repulsion,
            digits,
            energy: sci(&state.energy),
            norm: sci(&state.norm_constant),
            terms: b
                .terms
                .iter()
                .copied()
                .zip(state.coefficients.iter().map(sci))
                .collect(),
        }
    }

    pub fn basis(&self) -> Result<BasisSpec> {
        let b = BasisSpec::new(self.z, self.omega, self.spin, self.alpha, self.beta)?
            .with_repulsion(self.repulsion);
        let listed: Vec<HylleraasTerm> = self.terms.iter().map(|t| t.0).collect();
        if listed != b.terms {
            bail!(
                "artifact terms do not match the canonical omega={} basis",
                self.omega
            );
        }
        Ok(b)
    }

    pub fn state<R: Real>(&self) -> Result<StateSolution<R>> {
        let parse = |s: &str| R::parse_decimal(s).ok_or_else(|| anyhow!("bad number {s:?}"));
        Ok(StateSolution {
            basis: self.basis()?,
            root_index: self.root,
            energy: parse(&self.energy)?,
            coefficients: self
                .terms
                .iter()
                .map(|(_, c)| parse(c))
                .collect::<Result<_>>()?,
            norm_constant: parse(&self.norm)?,
        })
    }

    /// Scalar tier matching the stored digits.
    pub fn tier(&self) -> Result<Tier> {
        Tier::for_digits(self.digits).ok_or_else(|| anyhow!("unsupported digits {}", self.digits))
    }

    pub fn energy_f64(&self) -> f64 {
        self.energy.trim().parse().unwrap_or(f64::NAN)
    }

    pub fn render(&self) -> String {
        let mut s = String::from("# helion state artifact\n");
        let _ = writeln!(s, "z = {:?}", self.z);
        let _ = writeln!(s, "omega = {}", self.omega);
        let _ = writeln!(s, "spin = {}", self.spin);
        let _ = writeln!(s, "root = {}", self.root);
        let _ = writeln!(s, "alpha = {:?}", self.alpha);
        let _ = writeln!(s, "beta = {:?}", self.beta);
        let _ = writeln!(s, "repulsion = {:?}", self.repulsion);
        let _ = writeln!(s, "digits = {}", self.digits);
        let _ = writeln!(s, "energy = {}", self.energy);
        let _ = writeln!(s, "norm = {}", self.norm);
        let _ = writeln!(s, "terms = {}", self.terms.len());
        for (t, c) in &self.terms {
            let _ = writeln!(s, "{} {} {} {}", t.k, t.m, t.n, c);
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header = BTreeMap::new();
        let mut terms = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((k, v)) = line.split_once('=') {
                header.insert(k.trim().to_string(), v.trim().to_string());
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                bail!("line {}: expected `k m n coefficient`", no + 1);
            }
            let int = |s: &str| s.parse::<u32>().with_context(|| format!("line {}", no + 1));
            terms.push((
                HylleraasTerm {
                    k: int(f[0])?,
                    m: int(f[1])?,
                    n: int(f[2])?,
                },
                f[3].to_string(),
            ));
        }
        let get = |k: &str| {
            header
                .get(k)
                .ok_or_else(|| anyhow!("missing header field `{k}`"))
        };
        let num = |k: &str| -> Result<f64> {
            get(k)?
                .parse()
                .with_context(|| format!("header field `{k}`"))
        };
        let count: usize = get("terms")?.parse().context("header field `terms`")?;
        if count != terms.len() {
            bail!("header lists {count} terms, found {}", terms.len());
        }
        Ok(Artifact {
            z: num("z")?,
            omega: get("omega")?.parse().context("header field `omega`")?,
            spin: get("spin")?.parse().map_err(|e| anyhow!("{e}"))?,
            root: get("root")?.parse().context("header field `root`")?,
            alpha: num("alpha")?,
            beta: num("beta")?,
            repulsion: num("repulsion")?,
            digits: get("digits")?.parse().context("header field `digits`")?,
            energy: get("energy")?.clone(),
            norm: get("norm")?.clone(),
            terms,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        if !path.exists() {
            bail!("artifact not found: {}", path.display());
        }
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Artifact::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }
}
