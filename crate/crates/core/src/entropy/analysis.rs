//! State to entropies: channels, Laguerre projection, spectra, occupancies.

use crate::hylleraas::StateSolution;
use crate::numerics::{PrecisionConfig, Real, Tier};
use crate::partialwave::{build_channels, ExpansionPolicy};
use crate::rdm::{
    build_radial_basis, channel_spectrum, default_scale, occupancies, tune_scale, ChannelSpectrum,
    OccupancySet, Projection, Projector,
};
use crate::with_real;

use super::{EntropyError, EntropyReport, Reference};

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub l_max: u32,
    pub la_max: usize,
    /// Laguerre scale σ. Without one, start from `2Z/(1+n)`.
    pub scale: Option<f64>,
    /// Maximize the projected weight of the low channels over σ.
    pub tune_scale: bool,
    /// Highest channel entering the scale search.
    pub tune_l_probe: u32,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            l_max: 40,
            la_max: 50,
            scale: None,
            tune_scale: true,
            tune_l_probe: 2,
        }
    }
}

/// Projected channels of one state at the largest truncation; smaller
/// truncations reuse leading blocks.
pub struct Analysis<R> {
    pub scale: f64,
    pub l_max: u32,
    pub la_max: usize,
    principal_n: usize,
    projections: Vec<Projection<R>>,
    cfg: PrecisionConfig,
}

impl<R: Real> Analysis<R> {
    /// The state must be normalized.
    pub fn new(state: &StateSolution<R>, opts: &AnalysisOptions) -> Result<Self, EntropyError> {
        if opts.la_max == 0 {
            return Err(EntropyError::InvalidTruncation(
                "la_max must be positive".into(),
            ));
        }
        let policy = ExpansionPolicy::new(opts.l_max, state.basis.omega);
        let channels = build_channels(state, &policy)?;
        let n = state.principal_n();
        let mut scale = opts
            .scale
            .unwrap_or_else(|| default_scale(state.basis.z, n));
        if opts.tune_scale {
            scale = tune_scale(
                &channels,
                opts.la_max,
                scale,
                opts.tune_l_probe.min(opts.l_max),
            )?;
        }
        log::debug!("laguerre scale {scale}");
        let basis = build_radial_basis(opts.la_max, &R::from_f64(scale))?;
        let projector = Projector::new(&channels, &basis);
        let projections = channels.iter().map(|c| projector.project(c)).collect();
        let cfg = PrecisionConfig::with_digits(R::DIGITS.min(106))?;
        Ok(Analysis {
            scale,
            l_max: opts.l_max,
            la_max: opts.la_max,
            principal_n: n,
            projections,
            cfg,
        })
    }

    fn check(&self, l_max: u32, la_max: usize) -> Result<(), EntropyError> {
        if l_max > self.l_max || la_max > self.la_max || la_max == 0 {
            return Err(EntropyError::InvalidTruncation(format!(
                "(l_max {l_max}, la_max {la_max}) outside (0..={}, 1..={})",
                self.l_max, self.la_max
            )));
        }
        Ok(())
    }

    pub fn spectra(
        &self,
        l_max: u32,
        la_max: usize,
    ) -> Result<Vec<ChannelSpectrum<R>>, EntropyError> {
        self.check(l_max, la_max)?;
        self.projections[..=l_max as usize]
            .iter()
            .enumerate()
            .map(|(l, p)| Ok(channel_spectrum(l as u32, &p.leading(la_max), &self.cfg)?))
            .collect()
    }

    pub fn occupancies(&self, l_max: u32, la_max: usize) -> Result<OccupancySet<R>, EntropyError> {
        Ok(occupancies(&self.spectra(l_max, la_max)?)?)
    }

    pub fn report(&self, l_max: u32, la_max: usize) -> Result<EntropyReport, EntropyError> {
        let occ = self.occupancies(l_max, la_max)?;
        Ok(EntropyReport::from_occupancies(&occ)
            .with_reference(Reference::for_state(self.principal_n)))
    }
}

/// Scalar tier for the projection: 30 digits above the working precision,
/// at least 60, at most 106.
pub fn projection_tier(working_digits: u32) -> Tier {
    let d = (working_digits + 30).clamp(60, 106);
    Tier::for_digits(d).expect("clamped into a supported tier")
}

/// Reports for several `(l_max, la_max)` truncations of one state, in input
/// order. With a fixed scale one projection at the largest truncation serves
/// every row; with tuning each distinct `la_max` gets its own scale.
pub fn analyze_truncations<S: Real>(
    state: &StateSolution<S>,
    opts: &AnalysisOptions,
    cfg: &PrecisionConfig,
    truncations: &[(u32, usize)],
) -> Result<Vec<EntropyReport>, EntropyError> {
    cfg.validate()?;
    let l_top = truncations.iter().map(|t| t.0).max().unwrap_or(opts.l_max);
    let mut groups: Vec<usize> = truncations.iter().map(|t| t.1).collect();
    groups.sort_unstable();
    groups.dedup();
    if !opts.tune_scale {
        groups = groups.last().copied().into_iter().collect();
    }
    with_real!(projection_tier(cfg.working_digits), R => {
        let st = state.convert::<R>();
        let mut out: Vec<Option<EntropyReport>> = vec![None; truncations.len()];
        for &la in &groups {
            let analysis = Analysis::<R>::new(
                &st,
                &AnalysisOptions { l_max: l_top, la_max: la, ..opts.clone() },
            )?;
            for (slot, &(l, la_row)) in out.iter_mut().zip(truncations) {
                if slot.is_none() && la_row <= la && (!opts.tune_scale || la_row == la) {
                    *slot = Some(analysis.report(l, la_row)?);
                }
            }
        }
        Ok(out.into_iter().map(|r| r.expect("every truncation covered")).collect())
    })
}

pub fn analyze<S: Real>(
    state: &StateSolution<S>,
    opts: &AnalysisOptions,
    cfg: &PrecisionConfig,
) -> Result<EntropyReport, EntropyError> {
    let mut reports = analyze_truncations(state, opts, cfg, &[(opts.l_max, opts.la_max)])?;
    Ok(reports.pop().expect("one truncation"))
}
