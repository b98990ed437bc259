//! Subcommand bodies.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use helion::entropy::{
    analyze_truncations, figure1_dataset, AnalysisOptions, EntropyReport, StateKey,
};
use helion::hylleraas::{
    optimize_exponents_with, preset_exponents, seed_exponents, solve_state, BasisSpec,
    OptimizeOptions, SpinSymmetry,
};
use helion::numerics::{PrecisionConfig, Tier};
use helion::with_real;

use crate::artifact::Artifact;
use crate::config::{artifact_name, RunConfig, StateLabel};
use crate::{Failure, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Omega,
    LMax,
    LaMax,
}

fn precision(digits: u32) -> Outcome<PrecisionConfig> {
    PrecisionConfig::with_digits(digits).map_err(Failure::config)
}

fn fmt(x: f64) -> String {
    format!("{x:.15e}")
}

/// Exponents for a solve at `omega`, and whether they still need refining.
pub fn choose_exponents(c: &RunConfig, omega: u32) -> ((f64, f64), bool) {
    if let (Some(a), Some(b)) = (c.alpha, c.beta) {
        return ((a, b), c.optimize);
    }
    let helium = c.z == 2.0 && c.repulsion == 1.0;
    match preset_exponents(c.spin, c.state.n, omega).filter(|_| helium) {
        Some(ab) => (ab, c.optimize),
        None => (seed_exponents(c.spin, c.state.n), true),
    }
}

/// Solve the configured state at `omega`.
pub fn solve_artifact(c: &RunConfig, omega: u32) -> Outcome<Artifact> {
    let digits = c.digits_for(omega);
    let cfg = precision(digits)?;
    let ((a, b), refine) = choose_exponents(c, omega);
    let basis = BasisSpec::new(c.z, omega, c.spin, a, b)
        .map_err(Failure::config)?
        .with_repulsion(c.repulsion);
    let root = c.root();
    // the simplex only needs energies; double-double is enough while it is
    // well conditioned
    let search_tier = if digits <= 31 {
        Tier::DoubleDouble
    } else {
        cfg.tier()
    };
    let basis = if refine {
        let opts = OptimizeOptions {
            start: Some((a, b)),
            ..OptimizeOptions::default()
        };
        let found = with_real!(search_tier, R => {
            optimize_exponents_with::<R>(&basis, root, &cfg, &opts).map(|o| (o.alpha, o.beta))
        })
        .map_err(Failure::solver)?;
        log::info!("optimized exponents ({}, {})", found.0, found.1);
        basis.with_exponents(found.0, found.1)
    } else {
        basis
    };
    with_real!(cfg.tier(), R => {
        let st = solve_state::<R>(&basis, root, &cfg).map_err(Failure::solver)?;
        Ok(Artifact::from_state(&st, digits))
    })
}

fn write_output(c: &RunConfig, text: &str) -> Outcome<()> {
    match &c.output {
        Some(path) if path.as_os_str() != "-" => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::pipeline),
        _ => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing to stdout")
            .map_err(Failure::pipeline),
    }
}

/// Delimited table with `#` metadata lines.
pub fn render_table(
    c: &RunConfig,
    meta: &[String],
    header: &[&str],
    rows: &[Vec<String>],
) -> String {
    let d = c.format.delimiter();
    let mut s = format!(
        "# helion {}\n# config: {}\n",
        env!("CARGO_PKG_VERSION"),
        c.echo()
    );
    for m in meta {
        s.push_str(&format!("# {m}\n"));
    }
    s.push_str(&header.join(d));
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(d));
        s.push('\n');
    }
    s
}

pub fn solve(c: &RunConfig) -> Outcome<()> {
    let art = solve_artifact(c, c.omega)?;
    let path = c
        .output
        .clone()
        .unwrap_or_else(|| c.default_artifact_name());
    std::fs::write(&path, art.render())
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::solver)?;
    println!(
        "{} {} omega={} terms={} E={} -> {}",
        c.state,
        c.spin,
        art.omega,
        art.terms.len(),
        art.energy,
        path.display()
    );
    Ok(())
}

fn analysis_options(c: &RunConfig) -> AnalysisOptions {
    AnalysisOptions {
        l_max: c.l_max,
        la_max: c.la_max,
        scale: c.scale,
        tune_scale: c.tune_scale,
        ..AnalysisOptions::default()
    }
}

/// Entropy reports of a stored state at several truncations.
pub fn artifact_reports(
    art: &Artifact,
    c: &RunConfig,
    truncations: &[(u32, usize)],
) -> Outcome<Vec<EntropyReport>> {
    let tier = art.tier().map_err(Failure::pipeline)?;
    let cfg = PrecisionConfig::with_digits(art.digits).map_err(Failure::pipeline)?;
    let opts = analysis_options(c);
    with_real!(tier, R => {
        let st = art.state::<R>().map_err(Failure::pipeline)?;
        analyze_truncations(&st, &opts, &cfg, truncations).map_err(Failure::pipeline)
    })
}

pub fn entropy(c: &RunConfig, path: &Path) -> Outcome<()> {
    let art = Artifact::read(path).map_err(Failure::pipeline)?;
    let rep = artifact_reports(&art, c, &[(c.l_max, c.la_max)])?
        .pop()
        .expect("one truncation");
    let eps = rep.epsilon.expect("reports carry a reference");
    let reference = rep.reference.expect("reports carry a reference");
    let mut rows = vec![
        vec!["energy".into(), String::new(), art.energy.clone()],
        vec!["trace".into(), String::new(), fmt(rep.trace)],
        vec!["s_linear".into(), String::new(), fmt(rep.s_linear)],
        vec![
            "s_von_neumann".into(),
            String::new(),
            fmt(rep.s_von_neumann),
        ],
        vec![
            "reference_linear".into(),
            String::new(),
            fmt(reference.linear),
        ],
        vec![
            "reference_von_neumann".into(),
            String::new(),
            fmt(reference.von_neumann),
        ],
        vec!["epsilon_linear".into(), String::new(), fmt(eps.linear)],
        vec![
            "epsilon_von_neumann".into(),
            String::new(),
            fmt(eps.von_neumann),
        ],
    ];
    for ch in &rep.per_channel {
        let l = ch.l.to_string();
        rows.push(vec!["channel_weight".into(), l.clone(), fmt(ch.weight)]);
        rows.push(vec!["channel_s_linear".into(), l.clone(), fmt(ch.linear)]);
        rows.push(vec!["channel_s_von_neumann".into(), l, fmt(ch.von_neumann)]);
    }
    let meta = vec![format!(
        "artifact={} spin={} omega={} root={} alpha={:?} beta={:?}",
        path.display(),
        art.spin,
        art.omega,
        art.root,
        art.alpha,
        art.beta
    )];
    write_output(
        c,
        &render_table(c, &meta, &["quantity", "l", "value"], &rows),
    )
}

pub fn scan(c: &RunConfig, axis: Axis, values: &[u32], artifact: Option<&Path>) -> Outcome<()> {
    let dash = || "-".to_string();
    let mut rows = Vec::with_capacity(values.len());
    let mut meta = Vec::new();
    match axis {
        Axis::Omega => {
            for &w in values {
                let art = solve_artifact(c, w)?;
                let rep = artifact_reports(&art, c, &[(c.l_max, c.la_max)])?
                    .pop()
                    .expect("one truncation");
                log::info!("omega={w} E={}", art.energy);
                rows.push(vec![
                    w.to_string(),
                    art.terms.len().to_string(),
                    fmt(art.energy_f64()),
                    fmt(rep.trace),
                    fmt(rep.s_linear),
                    fmt(rep.s_von_neumann),
                ]);
            }
        }
        Axis::LMax | Axis::LaMax => {
            let art = match artifact {
                Some(p) => Artifact::read(p).map_err(Failure::pipeline)?,
                None => solve_artifact(c, c.omega)?,
            };
            meta.push(format!(
                "state omega={} terms={} energy={}",
                art.omega,
                art.terms.len(),
                art.energy
            ));
            let truncations: Vec<(u32, usize)> = values
                .iter()
                .map(|&v| match axis {
                    Axis::LMax => (v, c.la_max),
                    _ => (c.l_max, v as usize),
                })
                .collect();
            let reps = artifact_reports(&art, c, &truncations)?;
            for (v, rep) in values.iter().zip(&reps) {
                rows.push(vec![
                    v.to_string(),
                    dash(),
                    dash(),
                    fmt(rep.trace),
                    fmt(rep.s_linear),
                    fmt(rep.s_von_neumann),
                ]);
            }
        }
    }
    let first = match axis {
        Axis::Omega => "omega",
        Axis::LMax => "l_max",
        Axis::LaMax => "la_max",
    };
    let header = [
        first,
        "terms",
        "energy",
        "eigenvalue_sum",
        "s_linear",
        "s_von_neumann",
    ];
    write_output(c, &render_table(c, &meta, &header, &rows))
}

/// `1s2s,1s3s:triplet` with `default_spin` for bare labels.
pub fn parse_state_list(s: &str, default_spin: SpinSymmetry) -> anyhow::Result<Vec<StateKey>> {
    let mut keys = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (label, spin) = match item.split_once(':') {
            Some((l, sp)) => (l, sp.parse().map_err(|e: String| anyhow!(e))?),
            None => (item, default_spin),
        };
        let label: StateLabel = label.parse()?;
        if spin == SpinSymmetry::Triplet && label.n < 2 {
            bail!("1s1s has no triplet");
        }
        keys.push(StateKey { spin, n: label.n });
    }
    if keys.is_empty() {
        bail!("empty state list");
    }
    Ok(keys)
}

pub fn figure(c: &RunConfig, keys: &[StateKey], dir: &Path) -> Outcome<()> {
    let paths: Vec<_> = keys
        .iter()
        .map(|k| dir.join(artifact_name(StateLabel { n: k.n }, k.spin)))
        .collect();
    let missing: Vec<String> = keys
        .iter()
        .zip(&paths)
        .filter(|(_, p)| !p.exists())
        .map(|(k, p)| format!("{k} ({})", p.display()))
        .collect();
    if !missing.is_empty() {
        return Err(Failure::pipeline(anyhow!(
            "missing states: {}",
            missing.join(", ")
        )));
    }
    let mut reports = BTreeMap::new();
    for (k, p) in keys.iter().zip(&paths) {
        let art = Artifact::read(p).map_err(Failure::pipeline)?;
        if art.spin != k.spin {
            return Err(Failure::pipeline(anyhow!(
                "{} holds a {} state",
                p.display(),
                art.spin
            )));
        }
        let rep = artifact_reports(&art, c, &[(c.l_max, c.la_max)])?
            .pop()
            .expect("one truncation");
        reports.insert(*k, rep);
    }
    let fig = figure1_dataset(&reports, keys).map_err(Failure::pipeline)?;
    let rows: Vec<Vec<String>> = fig
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.spin.to_string(),
                fmt(r.epsilon_linear),
                fmt(r.epsilon_von_neumann),
                fmt((r.n as f64).log10()),
                fmt(r.epsilon_linear.log10()),
                fmt(r.epsilon_von_neumann.log10()),
            ]
        })
        .collect();
    let meta: Vec<String> = fig
        .warnings
        .iter()
        .map(|w| format!("warning: {w}"))
        .collect();
    for w in &fig.warnings {
        eprintln!("warning: {w}");
    }
    let header = [
        "n",
        "spin",
        "epsilon_linear",
        "epsilon_von_neumann",
        "log10_n",
        "log10_epsilon_linear",
        "log10_epsilon_von_neumann",
    ];
    write_output(c, &render_table(c, &meta, &header, &rows))
}
